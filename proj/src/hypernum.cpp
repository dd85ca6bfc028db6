#include "lorentzcc/hypernum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorentzcc/error.hpp"

namespace lorentzcc {

namespace {

std::string describe(const HyperbolicNumber& z) {
  return "(" + std::to_string(z.x) + ", " + std::to_string(z.y) + ")";
}

}  // namespace

double tol_zero_divisor(const HyperbolicNumber& z) {
  return 1e-12 * std::max({1.0, std::abs(z.x), std::abs(z.y)});
}

bool is_divisor_of_zero(const HyperbolicNumber& z) {
  // |x^2 - y^2| = |x - y| |x + y|; testing the linear factors keeps the
  // threshold on the same scale as the coordinates.
  const double tol = tol_zero_divisor(z);
  return std::abs(z.x - z.y) <= tol || std::abs(z.x + z.y) <= tol;
}

HyperbolicNumber inverse(const HyperbolicNumber& z) {
  if (is_divisor_of_zero(z)) {
    throw Error(ErrorCode::DivisorOfZero,
                "split-complex number " + describe(z) +
                    " lies on a null line and has no inverse");
  }
  const double d = square_modulus(z);
  return {z.x / d, -z.y / d};
}

HyperbolicNumber operator/(const HyperbolicNumber& a,
                           const HyperbolicNumber& b) {
  return mul(a, inverse(b));
}

HyperbolicNumber hyper_exp(const HyperbolicNumber& w) {
  const double r = std::exp(w.x);
  return {r * std::cosh(w.y), r * std::sinh(w.y)};
}

const char* to_string(Sector s) {
  switch (s) {
    case Sector::right: return "right";
    case Sector::up: return "up";
    case Sector::left: return "left";
    case Sector::down: return "down";
  }
  return "right";
}

Sector sector_of(const HyperbolicNumber& z) {
  if (std::abs(z.x) > std::abs(z.y)) {
    return z.x > 0 ? Sector::right : Sector::left;
  }
  return z.y > 0 ? Sector::up : Sector::down;
}

HyperbolicNumber PolarForm::reconstruct() const {
  const double c = sign * rho * std::cosh(theta);
  const double s = sign * rho * std::sinh(theta);
  if (sector == Sector::right || sector == Sector::left) return {c, s};
  return {s, c};
}

PolarForm polar(const HyperbolicNumber& z) {
  if (is_divisor_of_zero(z)) {
    throw Error(ErrorCode::OnNullLine,
                "hyperbolic polar form undefined on the null line through " +
                    describe(z));
  }
  PolarForm p;
  p.sector = sector_of(z);
  // rho^2 = |x - y| |x + y| avoids the cancellation in x^2 - y^2.
  p.rho = std::sqrt(std::abs(z.x - z.y) * std::abs(z.x + z.y));
  switch (p.sector) {
    case Sector::right:
    case Sector::left:
      p.theta = std::atanh(z.y / z.x);
      p.sign = z.x > 0 ? 1 : -1;
      break;
    case Sector::up:
    case Sector::down:
      p.theta = std::atanh(z.x / z.y);
      p.sign = z.y > 0 ? 1 : -1;
      break;
  }
  return p;
}

double hyper_arg(const HyperbolicNumber& z) { return polar(z).theta; }

double tol_zero_divisor(const ComplexNumber& z) {
  return 1e-12 * std::max({1.0, std::abs(z.real()), std::abs(z.imag())});
}

bool is_divisor_of_zero(const ComplexNumber& z) {
  return std::abs(z) <= tol_zero_divisor(z);
}

ComplexNumber inverse(const ComplexNumber& z) {
  if (is_divisor_of_zero(z)) {
    throw Error(ErrorCode::DivisorOfZero, "complex zero has no inverse");
  }
  return 1.0 / z;
}

}  // namespace lorentzcc
