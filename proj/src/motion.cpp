#include "lorentzcc/motion.hpp"

#include <algorithm>
#include <cmath>

#include "lorentzcc/error.hpp"

namespace lorentzcc {

namespace {

HyperbolicNumber tilde(const HyperbolicNumber& z) { return conj(z); }
ComplexNumber tilde(const ComplexNumber& z) { return std::conj(z); }

template <class Number>
void check_algebra(const SurfaceSpec& spec) {
  if (is_hyperbolic_v<Number> != spec.lorentzian()) {
    throw Error(ErrorCode::DomainError,
                std::string(spec.lorentzian()
                                ? "Lorentz surfaces need split-complex points"
                                : "definite surfaces need complex points") +
                    " (" + spec.name() + ")");
  }
}

template <class Number>
double magnitude(const Number& z) {
  return std::hypot(re(z), im(z));
}

template <class Number>
bool same_point(const Number& a, const Number& b) {
  const double scale = std::max({1.0, magnitude(a), magnitude(b)});
  return magnitude(a - b) <= 1e-14 * scale;
}

// +1 for positive curvature: the sign in front of beta beta~ and z1~ z2.
double pcc_sign(const SurfaceSpec& spec) { return spec.curvature_unit(); }

}  // namespace

PlaneMotion PlaneMotion::rotation(double theta, HyperbolicNumber shift,
                                  bool reflect) {
  return {{std::cosh(theta), std::sinh(theta)}, shift, reflect};
}

HyperbolicNumber plane_apply(const PlaneMotion& m, const HyperbolicNumber& z) {
  if (std::abs(square_modulus(m.a) - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidMotion,
                "plane motion needs a a~ = 1, got " +
                    std::to_string(square_modulus(m.a)));
  }
  return m.a * (m.reflect ? conj(z) : z) + m.b;
}

template <class Number>
double BilinearMotion<Number>::determinant() const {
  return square_modulus(alpha) + pcc_sign(spec) * square_modulus(beta);
}

template <class Number>
BilinearMotion<Number> BilinearMotion<Number>::inverse() const {
  return {tilde(alpha), -beta, spec};
}

template <class Number>
BilinearMotion<Number> make_motion(const SurfaceSpec& spec, Number alpha,
                                   Number beta) {
  check_algebra<Number>(spec);
  BilinearMotion<Number> m{alpha, beta, spec};
  const double scale = std::norm(std::complex<double>(re(alpha), im(alpha))) +
                       std::norm(std::complex<double>(re(beta), im(beta)));
  if (!(std::abs(m.determinant()) > 1e-12 * scale)) {
    throw Error(ErrorCode::InvalidMotion,
                "degenerate bilinear motion: alpha alpha~ " +
                    std::string(spec.positive() ? "+" : "-") +
                    " beta beta~ = 0");
  }
  return m;
}

template <class Number>
Number apply(const BilinearMotion<Number>& m, const Number& z) {
  check_algebra<Number>(m.spec);
  const double R = m.spec.radius();
  const double scale = std::norm(std::complex<double>(re(m.alpha), im(m.alpha))) +
                       std::norm(std::complex<double>(re(m.beta), im(m.beta)));
  if (!(std::abs(m.determinant()) > 1e-12 * scale)) {
    throw Error(ErrorCode::InvalidMotion, "degenerate bilinear motion");
  }
  const Number zn = z * (1.0 / R);
  const Number num = m.alpha * zn + m.beta;
  const Number den = -pcc_sign(m.spec) * (tilde(m.beta) * zn) + tilde(m.alpha);
  if (is_divisor_of_zero(den)) {
    throw Error(ErrorCode::MapsToInfinity,
                "motion sends the point out of the chart");
  }
  return (num * inverse(den)) * R;
}

template <class Number>
Number apply_inverse(const BilinearMotion<Number>& m, const Number& w) {
  check_algebra<Number>(m.spec);
  const double R = m.spec.radius();
  const Number wn = w * (1.0 / R);
  Number num;
  Number den;
  if (m.spec.positive()) {
    num = tilde(m.alpha) * wn - m.beta;
    den = tilde(m.beta) * wn + m.alpha;
  } else {
    num = m.beta - tilde(m.alpha) * wn;
    den = tilde(m.beta) * wn - m.alpha;
  }
  if (is_divisor_of_zero(den)) {
    throw Error(ErrorCode::MapsToInfinity,
                "inverse motion sends the point out of the chart");
  }
  return (num * inverse(den)) * R;
}

template <class Number>
TwoPointSolution<Number> solve_two_point(const SurfaceSpec& spec,
                                         const Number& z1, const Number& z2) {
  check_algebra<Number>(spec);
  if (same_point(z1, z2)) {
    throw Error(ErrorCode::CoincidentPoints, "the two points coincide");
  }
  const double R = spec.radius();
  const Number a = z1 * (1.0 / R);
  const Number b = z2 * (1.0 / R);
  const bool at_origin = magnitude(a) == 0.0;
  if constexpr (is_hyperbolic_v<Number>) {
    if (!at_origin && is_divisor_of_zero(a)) {
      throw Error(ErrorCode::NoGeodesic, "first point lies on a null line");
    }
  }
  const Number den = Number(1.0) + pcc_sign(spec) * (tilde(a) * b);
  if (is_divisor_of_zero(den)) {
    throw Error(ErrorCode::NoGeodesic,
                "1 +- z1~ z2 is not invertible for these points");
  }
  const Number q = (b - a) * inverse(den);

  TwoPointSolution<Number> sol{.motion = {Number(1.0), Number(0.0), spec}};
  Number alpha;
  if constexpr (is_hyperbolic_v<Number>) {
    if (is_divisor_of_zero(q)) {
      throw Error(ErrorCode::NoGeodesic,
                  "the points are separated along a null direction");
    }
    const PolarForm pq = polar(q);
    if (pq.sector == Sector::up || pq.sector == Sector::down) {
      throw Error(ErrorCode::NoGeodesic,
                  std::string("quotient lies in the ") + to_string(pq.sector) +
                      " sector; no geodesic of this family joins the points");
    }
    sol.theta_alpha = -0.5 * pq.theta;
    alpha = hyper_exp({0.0, sol.theta_alpha});
    // A left-sector quotient needs alpha / alpha~ = -exp(-h theta) so that
    // the image abscissa stays positive.
    if (pq.sector == Sector::left) alpha = HyperbolicNumber{0.0, 1.0} * alpha;
    sol.l = pq.rho;
  } else {
    sol.theta_alpha = -0.5 * std::arg(q);
    alpha = std::polar(1.0, sol.theta_alpha);
    sol.l = std::abs(q);
  }
  const Number beta = -(alpha * a);
  sol.motion = BilinearMotion<Number>{alpha, beta, spec};
  // det = alpha alpha~ (1 +- D(z1)) vanishes on the limiting curve.
  if (std::abs(1.0 + pcc_sign(spec) * square_modulus(a)) <= 1e-12) {
    throw Error(ErrorCode::NoGeodesic, "first point lies on the limiting curve");
  }
  if (!at_origin) {
    if constexpr (is_hyperbolic_v<Number>) {
      const PolarForm pb = polar(beta);
      sol.theta_beta = pb.theta;
      sol.rho_beta = pb.sign * pb.rho;
    } else {
      sol.theta_beta = std::arg(beta);
      sol.rho_beta = std::abs(beta);
    }
  }
  return sol;
}

template <class Number>
GeodesicConic geodesic_through(const SurfaceSpec& spec, const Number& z1,
                               const Number& z2) {
  const TwoPointSolution<Number> sol = solve_two_point(spec, z1, z2);
  const Number& al = sol.motion.alpha;
  const Number& be = sol.motion.beta;
  const double s = pcc_sign(spec);
  // Im[(alpha z + beta)(-+ beta z~ + alpha)] = 0 in units of R.
  const double ab = im(al * be);
  const Number a2 = al * al;
  const Number b2 = be * be;
  const double R = spec.radius();
  GeodesicConic c{.spec = spec};
  c.quad = -s * ab / (R * R);
  c.lin_x = (im(a2) - s * im(b2)) / R;
  c.lin_y = (re(a2) + s * re(b2)) / R;
  c.const_term = ab;
  return c;
}

template <class Number>
double geodesic_distance(const SurfaceSpec& spec, const Number& z1,
                         const Number& z2) {
  check_algebra<Number>(spec);
  if (same_point(z1, z2)) return 0.0;
  const double l = solve_two_point(spec, z1, z2).l;
  const double R = spec.radius();
  if (spec.positive()) return 2.0 * R * std::atan(l);
  if (!(l < 1.0)) {
    throw Error(ErrorCode::OutOfDisk,
                "points are not both inside the limiting curve (l = " +
                    std::to_string(l) + ")");
  }
  return 2.0 * R * std::atanh(l);
}

template <class Number>
Number cross_ratio(const Number& a, const Number& b, const Number& c,
                   const Number& d) {
  const Number pts[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (same_point(pts[i], pts[j])) {
        throw Error(ErrorCode::DegenerateTuple,
                    "cross ratio needs four distinct points");
      }
    }
  }
  const Number den = (c - b) * (d - a);
  if (is_divisor_of_zero(c - b) || is_divisor_of_zero(d - a)) {
    throw Error(ErrorCode::DegenerateTuple,
                "cross ratio denominator is not invertible");
  }
  return ((c - a) * (d - b)) * inverse(den);
}

#define LORENTZCC_INSTANTIATE(N)                                              \
  template struct BilinearMotion<N>;                                          \
  template BilinearMotion<N> make_motion(const SurfaceSpec&, N, N);           \
  template N apply(const BilinearMotion<N>&, const N&);                       \
  template N apply_inverse(const BilinearMotion<N>&, const N&);               \
  template TwoPointSolution<N> solve_two_point(const SurfaceSpec&, const N&,  \
                                               const N&);                     \
  template GeodesicConic geodesic_through(const SurfaceSpec&, const N&,       \
                                          const N&);                          \
  template double geodesic_distance(const SurfaceSpec&, const N&, const N&);  \
  template N cross_ratio(const N&, const N&, const N&, const N&);

LORENTZCC_INSTANTIATE(ComplexNumber)
LORENTZCC_INSTANTIATE(HyperbolicNumber)

#undef LORENTZCC_INSTANTIATE

}  // namespace lorentzcc
