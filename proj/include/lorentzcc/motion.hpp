#pragma once

#include <type_traits>

#include "lorentzcc/geodesic.hpp"
#include "lorentzcc/hypernum.hpp"
#include "lorentzcc/surface.hpp"

namespace lorentzcc {

// ---------------------------------------------------------------------------
// Flat pseudo-Euclidean plane

/// w = a z + b, or w = a z~ + b when reflect. a a~ = 1.
struct PlaneMotion {
  HyperbolicNumber a{1.0, 0.0};
  HyperbolicNumber b{};
  bool reflect = false;

  /// a = cosh(theta) + h sinh(theta).
  static PlaneMotion rotation(double theta, HyperbolicNumber shift = {},
                              bool reflect = false);
};

/// Throws InvalidMotion unless |a a~ - 1| <= 1e-12.
HyperbolicNumber plane_apply(const PlaneMotion& m, const HyperbolicNumber& z);

// ---------------------------------------------------------------------------
// Curved surfaces

/// Complex numbers go with definite surfaces, split-complex with Lorentz.
template <class Number>
constexpr bool is_hyperbolic_v = std::is_same_v<Number, HyperbolicNumber>;

/// Fractional-linear isometry of the Cartesian chart, in units of R:
///   w / R = (alpha z/R + beta) / (-beta~ z/R + alpha~)   positive curvature
///   w / R = (alpha z/R + beta) / ( beta~ z/R + alpha~)   negative curvature
/// where ~ is the conjugation of the algebra. (alpha, beta) and
/// (lambda alpha, lambda beta) are the same motion for real lambda != 0.
template <class Number>
struct BilinearMotion {
  Number alpha{1.0};
  Number beta{0.0};
  SurfaceSpec spec;

  /// alpha alpha~ + beta beta~ (positive) or alpha alpha~ - beta beta~
  /// (negative curvature). Zero means the map is degenerate.
  double determinant() const;
  /// The motion with (alpha~, -beta): undoes this one.
  BilinearMotion inverse() const;
};

using ComplexMotion = BilinearMotion<ComplexNumber>;
using HyperbolicMotion = BilinearMotion<HyperbolicNumber>;

/// Throws DomainError when the algebra does not match the signature and
/// InvalidMotion for a degenerate (alpha, beta).
template <class Number>
BilinearMotion<Number> make_motion(const SurfaceSpec& spec, Number alpha,
                                   Number beta);

/// Image of a point in physical coordinates. Throws InvalidMotion and
/// MapsToInfinity when the denominator is not invertible.
template <class Number>
Number apply(const BilinearMotion<Number>& m, const Number& z);

/// Explicit inverse map
///   z/R = (alpha~ w/R - beta) / (beta~ w/R + alpha)     positive curvature
///   z/R = (beta - alpha~ w/R) / (beta~ w/R - alpha)     negative curvature
template <class Number>
Number apply_inverse(const BilinearMotion<Number>& m, const Number& w);

template <class Number>
struct TwoPointSolution {
  BilinearMotion<Number> motion;
  /// Image of the second point is (R l, 0); l >= 0 is dimensionless.
  double l = 0.0;
  /// Hyperbolic: alpha = exp(h theta_alpha), or h exp(h theta_alpha) when the
  /// quotient lies in the left sector. Complex: alpha = exp(i phi_alpha).
  double theta_alpha = 0.0;
  /// beta = rho_beta exp(u theta_beta) with rho_beta signed; for a hyperbolic
  /// beta in the up or down sector an extra factor h is implied.
  double theta_beta = 0.0;
  double rho_beta = 0.0;
};

/// Motion sending z1 to 0 and z2 to the positive real axis.
///
/// Throws CoincidentPoints for z1 = z2 and NoGeodesic when 1 +- z1~ z2 is not
/// invertible, when the quotient (z2 - z1)/(1 +- z1~ z2) is null or in the up
/// or down sector, or when z1 != 0 lies on a null line.
template <class Number>
TwoPointSolution<Number> solve_two_point(const SurfaceSpec& spec,
                                         const Number& z1, const Number& z2);

/// The geodesic through z1 and z2: the preimage of the real axis under the
/// solver's motion, in physical coordinates.
template <class Number>
GeodesicConic geodesic_through(const SurfaceSpec& spec, const Number& z1,
                               const Number& z2);

/// 2 R atanh(l) for negative curvature (OutOfDisk when l >= 1), 2 R atan(l)
/// for positive curvature. Zero for coincident points.
template <class Number>
double geodesic_distance(const SurfaceSpec& spec, const Number& z1,
                         const Number& z2);

/// ((c - a)(d - b)) / ((c - b)(d - a)). Throws DegenerateTuple on repeated
/// points or non-invertible denominators.
template <class Number>
Number cross_ratio(const Number& a, const Number& b, const Number& c,
                   const Number& d);

}  // namespace lorentzcc
