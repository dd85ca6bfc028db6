#pragma once

#include <cmath>
#include <complex>

namespace lorentzcc {

/// Split-complex number z = x + h y with h^2 = +1.
///
/// The square modulus D(z) = x^2 - y^2 is indefinite. Numbers on the null
/// lines y = +-x are divisors of zero and have no inverse.
struct HyperbolicNumber {
  double x = 0.0;
  double y = 0.0;

  constexpr HyperbolicNumber() = default;
  constexpr HyperbolicNumber(double re) : x(re) {}
  constexpr HyperbolicNumber(double re, double hy) : x(re), y(hy) {}

  constexpr HyperbolicNumber& operator+=(const HyperbolicNumber& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr HyperbolicNumber& operator-=(const HyperbolicNumber& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }

  friend constexpr bool operator==(const HyperbolicNumber&,
                                   const HyperbolicNumber&) = default;
};

using ComplexNumber = std::complex<double>;

constexpr HyperbolicNumber operator+(HyperbolicNumber a,
                                     const HyperbolicNumber& b) {
  return a += b;
}
constexpr HyperbolicNumber operator-(HyperbolicNumber a,
                                     const HyperbolicNumber& b) {
  return a -= b;
}
constexpr HyperbolicNumber operator-(const HyperbolicNumber& a) {
  return {-a.x, -a.y};
}
constexpr HyperbolicNumber operator*(double k, const HyperbolicNumber& a) {
  return {k * a.x, k * a.y};
}
constexpr HyperbolicNumber operator*(const HyperbolicNumber& a, double k) {
  return {k * a.x, k * a.y};
}

constexpr HyperbolicNumber mul(const HyperbolicNumber& a,
                               const HyperbolicNumber& b) {
  return {a.x * b.x + a.y * b.y, a.x * b.y + a.y * b.x};
}
constexpr HyperbolicNumber operator*(const HyperbolicNumber& a,
                                     const HyperbolicNumber& b) {
  return mul(a, b);
}

constexpr HyperbolicNumber conj(const HyperbolicNumber& z) {
  return {z.x, -z.y};
}

/// x^2 - y^2, signed.
constexpr double square_modulus(const HyperbolicNumber& z) {
  return z.x * z.x - z.y * z.y;
}

/// Scale-relative threshold below which |x^2 - y^2| counts as zero.
double tol_zero_divisor(const HyperbolicNumber& z);
bool is_divisor_of_zero(const HyperbolicNumber& z);

/// Throws DivisorOfZero on the null lines.
HyperbolicNumber inverse(const HyperbolicNumber& z);
HyperbolicNumber operator/(const HyperbolicNumber& a,
                           const HyperbolicNumber& b);

/// e^x (cosh y + h sinh y).
HyperbolicNumber hyper_exp(const HyperbolicNumber& w);

/// The four sectors cut out by the null lines: right (x > |y|),
/// up (y > |x|), left (x < -|y|), down (y < -|x|).
enum class Sector { right, up, left, down };

const char* to_string(Sector s);
Sector sector_of(const HyperbolicNumber& z);

struct PolarForm {
  double rho = 0.0;
  double theta = 0.0;
  Sector sector = Sector::right;
  int sign = 1;

  /// right/left: sign rho (cosh theta + h sinh theta)
  /// up/down:    sign rho (sinh theta + h cosh theta)
  HyperbolicNumber reconstruct() const;
};

/// Throws OnNullLine for divisors of zero.
PolarForm polar(const HyperbolicNumber& z);

/// Hyperbolic argument: the theta of polar(z).
double hyper_arg(const HyperbolicNumber& z);

// Complex counterparts share names with the hyperbolic ones so the bilinear
// motion code can be written once for both algebras.

inline double square_modulus(const ComplexNumber& z) { return std::norm(z); }
double tol_zero_divisor(const ComplexNumber& z);
bool is_divisor_of_zero(const ComplexNumber& z);
/// Throws DivisorOfZero at the origin.
ComplexNumber inverse(const ComplexNumber& z);

inline double re(const HyperbolicNumber& z) { return z.x; }
inline double im(const HyperbolicNumber& z) { return z.y; }
inline double re(const ComplexNumber& z) { return z.real(); }
inline double im(const ComplexNumber& z) { return z.imag(); }

/// sqrt|D(z)| for split-complex values, |z| for complex values.
inline double modulus(const HyperbolicNumber& z) {
  return std::sqrt(std::abs(square_modulus(z)));
}
inline double modulus(const ComplexNumber& z) { return std::abs(z); }

/// Quotient a / b that reports a non-invertible denominator.
template <class Number>
Number divide(const Number& a, const Number& b) {
  return a * inverse(b);
}

}  // namespace lorentzcc
