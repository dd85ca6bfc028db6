#pragma once

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "lorentzcc/error.hpp"
#include "lorentzcc/hypernum.hpp"
#include "lorentzcc/surface.hpp"

namespace lorentzcc::testing {

/// Deterministic source for the hand-rolled property generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }
  double sign() { return index(2) == 0 ? -1.0 : 1.0; }

  HyperbolicNumber hyperbolic(double lim) {
    return {uniform(-lim, lim), uniform(-lim, lim)};
  }
  ComplexNumber complex(double lim) { return {uniform(-lim, lim), uniform(-lim, lim)}; }

  /// Off the null lines by at least gap relative to its size.
  HyperbolicNumber invertible_hyperbolic(double lim, double gap = 0.1) {
    for (;;) {
      const HyperbolicNumber z = hyperbolic(lim);
      const double s = std::max(std::abs(z.x), std::abs(z.y));
      if (s > 1e-3 && std::abs(std::abs(z.x) - std::abs(z.y)) > gap * s) return z;
    }
  }

  SurfaceSpec spec(double r_lo = 0.5, double r_hi = 3.0) {
    return SurfaceSpec::from_row(1 + index(4), uniform(r_lo, r_hi));
  }

 private:
  std::mt19937_64 engine_;
};

inline std::array<SurfaceSpec, 4> all_specs(double R = 1.0) {
  return {SurfaceSpec::from_row(1, R), SurfaceSpec::from_row(2, R),
          SurfaceSpec::from_row(3, R), SurfaceSpec::from_row(4, R)};
}

/// A point of the Cartesian chart kept well away from its boundary: the disk
/// of radius 0.7 R on definite surfaces, a wedge of the right sector with
/// x^2 - y^2 < 0.5 R^2 on Lorentz ones.
template <class Number>
Number chart_point(Gen& g, const SurfaceSpec& spec) {
  const double R = spec.radius();
  if constexpr (std::is_same_v<Number, HyperbolicNumber>) {
    const double x = g.uniform(0.05, 0.7) * R;
    const double y = g.uniform(-0.6, 0.6) * x;
    return {x, y};
  } else {
    const double r = std::sqrt(g.uniform(0.0, 1.0)) * 0.7 * R;
    const double a = g.uniform(-M_PI, M_PI);
    return {r * std::cos(a), r * std::sin(a)};
  }
}

inline Point2 chart_point2(Gen& g, const SurfaceSpec& spec) {
  if (spec.lorentzian()) {
    const HyperbolicNumber z = chart_point<HyperbolicNumber>(g, spec);
    return {z.x, z.y};
  }
  const ComplexNumber z = chart_point<ComplexNumber>(g, spec);
  return {z.real(), z.imag()};
}

/// Runs body(gen, case_index) over count cases; failures report the case.
template <class Body>
void for_all(std::uint64_t seed, int count, Body&& body) {
  Gen gen(seed);
  for (int i = 0; i < count; ++i) {
    SCOPED_TRACE("property case " + std::to_string(i) + ", seed " +
                 std::to_string(seed));
    body(gen, i);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

/// Records that an ErrorCode-carrying exception with the given code is thrown.
#define EXPECT_LORENTZCC_ERROR(stmt, expected_code)                       \
  do {                                                                    \
    bool caught_ = false;                                                 \
    try {                                                                 \
      (void)(stmt);                                                       \
    } catch (const ::lorentzcc::Error& e_) {                              \
      caught_ = true;                                                     \
      EXPECT_EQ(e_.code(), (expected_code)) << e_.what();                 \
    }                                                                     \
    EXPECT_TRUE(caught_) << "expected " << ::lorentzcc::to_string(expected_code); \
  } while (0)

}  // namespace lorentzcc::testing
