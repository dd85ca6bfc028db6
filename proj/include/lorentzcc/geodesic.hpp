#pragma once

#include <vector>

#include "lorentzcc/surface.hpp"

namespace lorentzcc {

// ---------------------------------------------------------------------------
// Flat pseudo-Euclidean plane

enum class LineKind {
  first_kind,   ///< timelike: x sinh(theta) + y cosh(theta) = c
  second_kind,  ///< spacelike: x cosh(theta) + y sinh(theta) = c
};

struct PlaneLine {
  LineKind kind = LineKind::first_kind;
  double theta = 0.0;
  double c = 0.0;

  /// Left-hand side minus c.
  double residual(const Point2& p) const;
  /// Unit-speed parametrization: |x'^2 - y'^2| = 1.
  Point2 point_at(double tau) const;
  Point2 tangent() const;
};

PlaneLine plane_geodesic(LineKind kind, double theta, double c);

// ---------------------------------------------------------------------------
// Curved surfaces, Cartesian isometric chart

/// quad (x^2 + e y^2) + lin_x x + lin_y y + const_term = 0 where e is the
/// metric sign of the surface. Circles on definite surfaces, equilateral
/// hyperbolas on Lorentz surfaces, lines when quad = 0.
struct GeodesicConic {
  double quad = 0.0;
  double lin_x = 0.0;
  double lin_y = 0.0;
  double const_term = 0.0;
  SurfaceSpec spec;

  double eval(const Point2& p) const;
  Point2 gradient(const Point2& p) const;
  /// |eval| divided by the sum of the magnitudes of its terms.
  double scaled_residual(const Point2& p) const;
  bool is_line(double tol = 1e-14) const;
};

/// The integration constants of a surface geodesic in canonical form. A
/// and B convert through sigma = B and eps = asin(A/R) on rows 1 and 4,
/// eps = asinh(A/R) on rows 2 and 3.
struct GeodesicConstants {
  double eps = 0.0;
  double sigma = 0.0;

  static GeodesicConstants from_ab(const SurfaceSpec& spec, double A,
                                   double B);
  double a(const SurfaceSpec& spec) const;
  double b() const { return sigma; }
  /// tau_0 = A B.
  double tau0(const SurfaceSpec& spec) const;
};

/// Throws DegenerateEpsilon for |eps| < 1e-12 and DomainError when
/// |eps| >= pi/2 on rows 1 and 4.
GeodesicConic geodesic_from_constants(const SurfaceSpec& spec, double eps,
                                      double sigma);

/// The eps -> 0 limit: the straight line through the origin in direction
/// (cos sigma, sin sigma) resp. (cosh sigma, sinh sigma).
GeodesicConic origin_line(const SurfaceSpec& spec, double sigma);

/// (rho, phi) at arc length tau along the geodesic (eps, sigma).
///
/// The isometric chart used for negative curvature is rho < 0. Row 3 needs
/// |cosh(eps) sin((tau - tau0)/R)| < 1 and row 4 needs
/// cos(eps) cosh((tau - tau0)/R) > 1; outside, OutOfChart is thrown.
IsoPoint geodesic_parametric(const SurfaceSpec& spec, double eps, double sigma,
                             double tau);

/// d(rho, phi)/dtau of geodesic_parametric by a five-point stencil.
IsoPoint geodesic_parametric_tangent(const SurfaceSpec& spec, double eps,
                                     double sigma, double tau,
                                     double step = 1e-4);

struct HyperbolaParameters {
  double x0 = 0.0;
  double y0 = 0.0;
  double d = 0.0;
};

/// Centre and half diameter of the geodesic conic for constants (A, B):
/// (y - y0)^2 - (x - x0)^2 = d^2 on Lorentz surfaces, and the circle
/// (x - x0)^2 + (y - y0)^2 = d^2 on definite ones.
HyperbolaParameters hyperbola_parameters(const SurfaceSpec& spec, double A,
                                         double B);

/// Completes the square on a non-degenerate conic: returns (x0, y0) and
/// the signed right-hand side k of (x - x0)^2 + e (y - y0)^2 = k.
struct ConicCentre {
  double x0 = 0.0;
  double y0 = 0.0;
  double k = 0.0;
};
ConicCentre complete_square(const GeodesicConic& conic);

/// The locus where the Cartesian conformal factor diverges:
/// x^2 + y^2 = -R^2, x^2 + y^2 = R^2, y^2 - x^2 = R^2, x^2 - y^2 = R^2.
GeodesicConic limiting_curve(const SurfaceSpec& spec);

struct LimitingIntersection {
  Point2 point;
  /// grad(conic) . grad(limiting) in the metric diag(1, e).
  double pseudo_scalar_product = 0.0;
  /// The same product over the Euclidean norms of both gradients.
  double scaled_product = 0.0;
};

/// Real intersections of a conic with the limiting curve of its surface,
/// possibly none.
std::vector<LimitingIntersection> real_limiting_intersections(
    const GeodesicConic& geo);

/// As above but throws NoRealIntersection when there are none.
std::vector<LimitingIntersection> limiting_intersections(
    const GeodesicConic& geo);

/// Polylines along the conic from p1 to p2 (both assumed on it). Circles
/// yield both arcs; hyperbolas and lines yield one. Throws NoGeodesic when
/// the points lie on different hyperbola branches.
std::vector<std::vector<Point2>> trace_conic_arcs(const GeodesicConic& conic,
                                                  const Point2& p1,
                                                  const Point2& p2,
                                                  int segments);

// ---------------------------------------------------------------------------
// Worldlines and geodesic circles

struct WorldlinePoint {
  double t = 0.0;
  double x = 0.0;
};

/// Constant proper acceleration g > 0:
///   t = t0 + sinh(g s) / g,  x = x0 + cosh(g s) / g.
struct Worldline {
  double t0 = 0.0;
  double x0 = 0.0;
  double accel = 1.0;

  WorldlinePoint at(double s) const;
  /// (x - x0)^2 - (t - t0)^2 - 1/g^2 with the point evaluated in 128-bit
  /// precision, so the result reflects the parametrization and not the
  /// rounding of a double sample.
  double invariant_residual(double s) const;
  /// The same expression on the double-precision point at(s).
  double sample_residual(double s) const;
  /// Upper bound on |sample_residual| from rounding the double sample:
  /// its magnitude grows like eps_mach (x - x0)^2 for large g s.
  double sample_rounding_bound(double s) const;
  /// dx/dt = tanh(g s).
  double velocity(double s) const;
};

/// Throws DomainError for g <= 0.
WorldlinePoint worldline_hyperbolic(double t0, double x0, double g, double s);

/// x = x0 + cos(A K s)/(A K), y = y0 + sin(A K s)/(A K). Throws
/// DegenerateEpsilon when A K = 0.
Point2 circle_geodesic_parametric(double x0, double y0, double A, double K,
                                  double s);

}  // namespace lorentzcc
