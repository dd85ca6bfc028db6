#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace lorentzcc {

enum class Signature { definite, lorentzian };
enum class CurvatureSign { positive, negative };

/// One of the four constant-curvature surfaces of radius R.
///
/// Rows are numbered (1) definite/positive,
/// (2) definite/negative, (3) lorentzian/positive, (4) lorentzian/negative.
class SurfaceSpec {
 public:
  /// Throws DomainError unless R > 0.
  SurfaceSpec(Signature signature, CurvatureSign curvature, double radius);

  /// The R = 1 surface, for work in the variables x/R, y/R.
  static SurfaceSpec normalized(Signature signature, CurvatureSign curvature) {
    return SurfaceSpec(signature, curvature, 1.0);
  }
  static SurfaceSpec from_row(int row, double radius);
  /// Accepts def-pos, def-neg, lorentz-pos, lorentz-neg.
  static SurfaceSpec from_name(std::string_view name, double radius);

  Signature signature() const { return signature_; }
  CurvatureSign curvature_sign() const { return curvature_; }
  double radius() const { return radius_; }

  bool lorentzian() const { return signature_ == Signature::lorentzian; }
  bool positive() const { return curvature_ == CurvatureSign::positive; }
  int row() const;
  std::string name() const;

  /// +1 for a definite metric, -1 for a Lorentz metric: the sign in front of
  /// the second differential.
  double metric_sign() const { return lorentzian() ? -1.0 : 1.0; }
  /// +1 for positive curvature, -1 for negative.
  double curvature_unit() const { return positive() ? 1.0 : -1.0; }
  double gauss_curvature() const {
    return curvature_unit() / (radius_ * radius_);
  }

  friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;

 private:
  Signature signature_;
  CurvatureSign curvature_;
  double radius_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// A point of the isometric chart (rho, phi).
struct IsoPoint {
  double rho = 0.0;
  double phi = 0.0;
};

using Mat2 = std::array<std::array<double, 2>, 2>;

enum class CausalType { timelike, spacelike, null };

/// The e = +-1 that makes e ds^2 >= 0; null displacements report +1.
int causal_sign(double ds2);
CausalType classify(double ds2, double tol = 0.0);

/// -r''(u) / r(u) by a central second difference. Throws ProfileZero.
double gauss_curvature_of_profile(const std::function<double(double)>& r,
                                  double u, double step);

/// ln cot(u/2R) for positive curvature, ln tanh(u/2R) for negative.
/// Throws DomainError outside 0 < u < pi R (positive) or u > 0 (negative).
double rho_from_u(const SurfaceSpec& spec, double u);

/// du^2 -+ r(u)^2 dv^2 with r = R sin(u/R) or R sinh(u/R); the sign is
/// + for definite and - for Lorentz surfaces.
double line_element_profile(const SurfaceSpec& spec, double u, double du,
                            double dv);

/// R^2 (drho^2 +- dphi^2) / cosh^2 rho (positive) or / sinh^2 rho
/// (negative). Signed for Lorentz surfaces. Throws SingularPoint at rho = 0
/// on negative-curvature surfaces.
double line_element_isometric(const SurfaceSpec& spec, double rho, double phi,
                              double drho, double dphi);

/// 4 R^4 (dx^2 +- dy^2) / (R^2 + k (x^2 +- y^2))^2 with k the curvature
/// sign. Throws OnLimitingCurve where the denominator vanishes.
double line_element_cartesian(const SurfaceSpec& spec, double x, double y,
                              double dx, double dy);

/// x + u y = R exp(rho + u phi) with u = i (definite) or h (Lorentz).
Point2 exp_map_to_cartesian(const SurfaceSpec& spec, double rho, double phi);

/// Inverse of exp_map_to_cartesian. Lorentz surfaces: right sector only
/// (throws OutOfChart elsewhere). Definite surfaces: phi in (-pi, pi].
IsoPoint cartesian_to_isometric(const SurfaceSpec& spec, double x, double y);

enum class Chart { isometric_rho_phi, cartesian_xy, flat_xy };

/// Conformal metric of one chart of a surface:
///   g = f(p) diag(1, metric_sign).
/// The flat chart ignores the curvature and radius of its spec.
class MetricField {
 public:
  MetricField(SurfaceSpec spec, Chart chart) : spec_(spec), chart_(chart) {}

  const SurfaceSpec& spec() const { return spec_; }
  Chart chart() const { return chart_; }

  /// Test hook: multiplies the conformal factor by (1 + p x^2) where x is
  /// the first chart coordinate. Zero leaves the metric untouched.
  MetricField with_perturbation(double p) const {
    MetricField m = *this;
    m.perturbation_ = p;
    return m;
  }
  double perturbation() const { return perturbation_; }

  /// Strictly positive on the chart domain; throws OnLimitingCurve or
  /// SingularPoint outside it.
  double conformal_factor(const Point2& p) const;
  Mat2 metric_tensor(const Point2& p) const;
  /// Signed squared length of the displacement d at p.
  double line_element(const Point2& p, const Point2& d) const;

  /// First-order estimate of the coordinate distance from p to the chart
  /// boundary; infinity when the chart has none.
  double boundary_distance(const Point2& p) const;

 private:
  SurfaceSpec spec_;
  Chart chart_;
  double perturbation_ = 0.0;
};

Mat2 metric_tensor(const MetricField& field, const Point2& p);

/// Gauss curvature of a conformal metric f (dx^2 + e dy^2) by finite
/// differences: K = -(d_xx + e d_yy) ln f / (2 f).
double curvature_from_conformal_factor(const MetricField& field,
                                       const Point2& p, double step);

}  // namespace lorentzcc
