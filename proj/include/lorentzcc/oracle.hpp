#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lorentzcc/surface.hpp"

namespace lorentzcc {

/// Adaptive Simpson quadrature of f over [a, b] (b < a gives the negated
/// integral). tol is the absolute error target.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-10, int max_depth = 48);

/// gamma[l][i][k] = Gamma^l_ik.
using Christoffel = std::array<Mat2, 2>;

/// Central differences of metric_tensor at spacing step. Throws
/// NearSingular when a stencil point leaves the chart domain.
Christoffel christoffel(const MetricField& field, const Point2& p,
                        double step = 1e-4);

struct GeodesicState {
  Point2 position;
  Point2 velocity;
};

/// |g(v, v)|, which is 1 for an arc-length parametrization.
double normalized_speed(const MetricField& field, const GeodesicState& s);

enum class TrajectoryStatus { completed, domain_exit };

struct Trajectory {
  std::vector<GeodesicState> states;
  /// Arc length of each state, starting at 0.
  std::vector<double> arc;
  TrajectoryStatus status = TrajectoryStatus::completed;
};

struct IntegratorOptions {
  double step = 1e-3;
  /// Speed drift grows like christoffel_step^2; 1e-5 keeps it near 1e-9.
  double christoffel_step = 1e-5;
};

/// Classical fixed-step RK4 on x'' + Gamma(x', x') = 0.
///
/// Stops early with status domain_exit once the chart boundary is within
/// 10 step of the current point. Throws DomainError unless the initial
/// normalized speed is within 1e-9 of 1.
Trajectory integrate_geodesic(const MetricField& field,
                              const GeodesicState& init, double length,
                              const IntegratorOptions& opts = {});

/// Sum of sqrt|ds^2| over the segments, each evaluated with the metric at
/// its midpoint. Throws MixedCausality when the segments mix timelike and
/// spacelike displacements.
double arc_length(const MetricField& field, const std::vector<Point2>& polyline);

/// tau(rho, phi) = A phi + int_{rho_ref}^{rho} sqrt(F(rho) + e' A^2) drho + C
///
/// F is the isometric conformal factor; e' = +1 on Lorentz surfaces and -1 on
/// definite ones, so that the Beltrami parameter of tau equals F. rho_ref is
/// 0 for positive curvature and -1 resp. +1 (the side of rho) for negative.
class TauField {
 public:
  TauField(SurfaceSpec spec, double A, double C = 0.0);

  const SurfaceSpec& spec() const { return spec_; }
  double a() const { return a_; }
  double c() const { return c_; }

  double rho_ref(double rho) const;
  /// sqrt(F(rho) + e' A^2). Throws DomainError where the radicand is negative.
  double integrand(double rho) const;
  double operator()(double rho, double phi) const;

 private:
  SurfaceSpec spec_;
  double a_;
  double c_;
};

/// (d_x tau)^2 + e (d_y tau)^2 by central differences; e = +1 or -1.
double beltrami_delta1(double metric_sign,
                       const std::function<double(double, double)>& tau,
                       const Point2& p, double step);

/// Raw isometric-chart form (d_rho tau)^2 + e (d_phi tau)^2, which equals
/// F(rho) for a TauField.
double beltrami_delta1(const SurfaceSpec& spec, const TauField& tau,
                       const IsoPoint& p, double step = 1e-5);

struct ConstantsSample {
  double s = 0.0;
  double rho = 0.0;
  double phi = 0.0;
  /// phi -+ int A drho / sqrt(F + e' A^2): equal to B along the geodesic.
  double b_recovered = 0.0;
  /// TauField value minus the closed-form arc length.
  double tau_offset = 0.0;
};

struct ConstantsReport {
  std::vector<ConstantsSample> samples;
  /// Positive curvature: max |b_recovered - B|. Negative curvature, whose
  /// quadrature starts at rho = -1: spread of b_recovered.
  double max_b_residual = 0.0;
  /// Spread of tau_offset over the samples.
  double tau_offset_spread = 0.0;
};

/// Samples the geodesic with constants (A, B) on the branch where rho
/// increases with arc length and checks both integrals of the
/// Hamilton-Jacobi solution against the closed forms. Throws
/// DegenerateEpsilon for A = 0.
ConstantsReport geodesic_constants_check(const SurfaceSpec& spec, double A,
                                         double B, int samples);

}  // namespace lorentzcc
