#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lorentzcc/geodesic.hpp"
#include "lorentzcc/oracle.hpp"
#include "support.hpp"

namespace lorentzcc {
namespace {

using testing::all_specs;
using testing::for_all;
using testing::Gen;

constexpr double kPi = std::numbers::pi;

// Gamma of g = f diag(1, e) from the gradient L = grad(ln f) / 2:
// Gamma^l_ik = delta^l_k L_i + delta^l_i L_k - delta_ik (e_i / e_l) L_l.
Christoffel conformal_christoffel(double e, double Lx, double Ly) {
  const double L[2] = {Lx, Ly};
  const double sig[2] = {1.0, e};
  Christoffel g{};
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        g[l][i][k] = (l == k ? L[i] : 0.0) + (l == i ? L[k] : 0.0) -
                     (i == k ? sig[i] / sig[l] * L[l] : 0.0);
  return g;
}

// f = 4 R^4 / (R^2 + x^2 - y^2)^2 on the Lorentz positive Cartesian chart.
Christoffel lorentz_pos_christoffel(double R, const Point2& p) {
  const double b = R * R + p.x * p.x - p.y * p.y;
  return conformal_christoffel(-1.0, -2.0 * p.x / b, 2.0 * p.y / b);
}

double max_diff(const Christoffel& a, const Christoffel& b) {
  double m = 0.0;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) m = std::max(m, std::abs(a[l][i][k] - b[l][i][k]));
  return m;
}

TEST(Quadrature, AdaptiveSimpson) {
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi), 2.0, 1e-10);
  EXPECT_NEAR(integrate_adaptive([](double x) { return std::sin(x); }, kPi, 0.0), -2.0, 1e-10);
  EXPECT_NEAR(integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0),
              kPi / 4.0, 1e-10);
  EXPECT_EQ(integrate_adaptive([](double) { return 3.0; }, 1.0, 1.0), 0.0);
}

TEST(Christoffel, FlatChartVanishes) {
  const MetricField flat(SurfaceSpec::from_row(3, 1.0), Chart::flat_xy);
  EXPECT_LT(max_diff(christoffel(flat, {0.3, -2.0}), Christoffel{}), 1e-10);
}

TEST(Christoffel, MatchesAnalyticConformalFactor) {
  const SurfaceSpec spec = SurfaceSpec::from_row(3, 1.0);
  const MetricField f(spec, Chart::cartesian_xy);
  EXPECT_LT(max_diff(christoffel(f, {0.0, 0.0}, 1e-4), lorentz_pos_christoffel(1.0, {0, 0})),
            1e-5);
  for_all(71, 30, [&](Gen& g, int) {
    const Point2 p = testing::chart_point2(g, spec);
    EXPECT_LT(max_diff(christoffel(f, p, 1e-4), lorentz_pos_christoffel(1.0, p)), 1e-5);
  });
}

TEST(Christoffel, SymmetricInLowerIndices) {
  for_all(72, 50, [](Gen& g, int) {
    const SurfaceSpec spec = g.spec();
    const MetricField f(spec, Chart::cartesian_xy);
    const Christoffel c = christoffel(f, testing::chart_point2(g, spec));
    for (int l = 0; l < 2; ++l) EXPECT_EQ(c[l][0][1], c[l][1][0]);
  });
}

TEST(Christoffel, SecondOrderInStep) {
  const MetricField f(SurfaceSpec::from_row(3, 1.0), Chart::cartesian_xy);
  const Point2 p{0.4, 0.15};
  const Christoffel exact = lorentz_pos_christoffel(1.0, p);
  const double e1 = max_diff(christoffel(f, p, 1e-2), exact);
  const double e2 = max_diff(christoffel(f, p, 5e-3), exact);
  EXPECT_GT(e1 / e2, 3.6);
  EXPECT_LT(e1 / e2, 4.4);
}

TEST(Christoffel, NearSingularAtChartEdge) {
  const MetricField f(SurfaceSpec::from_row(2, 1.0), Chart::cartesian_xy);
  EXPECT_LORENTZCC_ERROR(christoffel(f, {1.0 - 1e-5, 0.0}, 1e-4), ErrorCode::NearSingular);
}

TEST(Integrator, FlatFirstKindLineStaysOnLine) {
  const MetricField flat(SurfaceSpec::from_row(3, 1.0), Chart::flat_xy);
  const PlaneLine line = plane_geodesic(LineKind::first_kind, 0.6, 0.4);
  const Trajectory t = integrate_geodesic(flat, {line.point_at(0.0), line.tangent()}, 10.0);
  EXPECT_EQ(t.status, TrajectoryStatus::completed);
  EXPECT_NEAR(t.arc.back(), 10.0, 1e-9);
  double dev = 0.0;
  for (const GeodesicState& s : t.states) dev = std::max(dev, std::abs(line.residual(s.position)));
  EXPECT_LT(dev, 1e-10);
}

GeodesicState row_three_start(const SurfaceSpec& spec, double eps, double sigma) {
  // At s = 0: rho = 0, phi = sigma, d rho/ds = cosh(eps)/R, d phi/ds = -sinh(eps)/R.
  const double R = spec.radius();
  const Point2 p = exp_map_to_cartesian(spec, 0.0, sigma);
  const double dr = std::cosh(eps) / R, dp = -std::sinh(eps) / R;
  return {p, {p.x * dr + p.y * dp, p.y * dr + p.x * dp}};
}

TEST(Integrator, LorentzPositiveTrajectoryFollowsClosedForm) {
  const SurfaceSpec spec = SurfaceSpec::from_row(3, 1.0);
  const MetricField f(spec, Chart::cartesian_xy);
  const double eps = 0.6, sigma = 0.3;
  const GeodesicConic conic = geodesic_from_constants(spec, eps, sigma);
  const GeodesicState init = row_three_start(spec, eps, sigma);
  EXPECT_NEAR(normalized_speed(f, init), 1.0, 1e-12);
  // At s = 1 the curve is already near rho = 2.8, so stop at 0.8.
  const Trajectory t = integrate_geodesic(f, init, 0.8, {.step = 1e-3});
  ASSERT_EQ(t.status, TrajectoryStatus::completed);
  double worst = 0.0, drift = 0.0;
  for (const GeodesicState& s : t.states) {
    worst = std::max(worst, std::abs(conic.scaled_residual(s.position)));
    drift = std::max(drift, std::abs(normalized_speed(f, s) - 1.0));
  }
  EXPECT_LT(worst, 1e-6);
  EXPECT_LT(drift, 1e-7);
  // Compare with the parametric curve at the same arc length.
  const double tau0 = GeodesicConstants{eps, sigma}.tau0(spec);
  for (std::size_t i = 0; i < t.states.size(); i += 100) {
    const IsoPoint q = geodesic_parametric(spec, eps, sigma, tau0 + t.arc[i]);
    const Point2 p = exp_map_to_cartesian(spec, q.rho, q.phi);
    EXPECT_LT(std::hypot(p.x - t.states[i].position.x, p.y - t.states[i].position.y), 1e-5);
  }
}

TEST(Integrator, ReversingVelocityRetraces) {
  for (const SurfaceSpec& spec : all_specs()) {
    SCOPED_TRACE(spec.name());
    const MetricField f(spec, Chart::cartesian_xy);
    const Point2 p{0.2, 0.05};
    const Point2 d{1.0, spec.lorentzian() ? 0.3 : -0.4};
    const double n = std::sqrt(std::abs(f.line_element(p, d)));
    const GeodesicState init{p, {d.x / n, d.y / n}};
    const Trajectory fwd = integrate_geodesic(f, init, 0.5);
    ASSERT_EQ(fwd.status, TrajectoryStatus::completed);
    GeodesicState back = fwd.states.back();
    back.velocity = {-back.velocity.x, -back.velocity.y};
    const Trajectory rev = integrate_geodesic(f, back, 0.5);
    const Point2 end = rev.states.back().position;
    EXPECT_LT(std::hypot(end.x - p.x, end.y - p.y), 2e-6);
  }
}

TEST(Integrator, StopsBeforeLimitingCurve) {
  const MetricField f(SurfaceSpec::from_row(2, 1.0), Chart::cartesian_xy);
  // f(0) = 4, so unit speed along x is 1/2.
  const Trajectory t = integrate_geodesic(f, {{0.0, 0.0}, {0.5, 0.0}}, 100.0);
  EXPECT_EQ(t.status, TrajectoryStatus::domain_exit);
  EXPECT_LT(t.arc.back(), 100.0);
  EXPECT_LT(t.states.back().position.x, 1.0);
  // Along the axis s = 2 atanh(x). RK4 error scales with derivatives of the
  // factor, which blow up as x -> 1, so the tight check is on the interior.
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const double x = t.states[i].position.x;
    if (x < 0.9) {
      ASSERT_NEAR(t.arc[i], 2.0 * std::atanh(x), 1e-8) << i;
    }
  }
  EXPECT_NEAR(t.arc.back(), 2.0 * std::atanh(t.states.back().position.x), 1e-6);
  EXPECT_LORENTZCC_ERROR(integrate_geodesic(f, {{0.0, 0.0}, {0.6, 0.0}}, 1.0),
                         ErrorCode::DomainError);
}

TEST(ArcLength, FlatSegment) {
  const MetricField flat(SurfaceSpec::from_row(1, 1.0), Chart::flat_xy);
  EXPECT_NEAR(arc_length(flat, {{0.0, 0.0}, {0.5, 0.0}, {2.0, 0.0}}), 2.0, 1e-15);
}

TEST(ArcLength, CoordinateCircleOnSphere) {
  // sqrt(f) = 2 R^2 / (R^2 + r^2) is constant on the circle.
  const double R = 1.0;
  const MetricField f(SurfaceSpec::from_row(1, R), Chart::cartesian_xy);
  for (double r : {0.3, 1.0, 2.5}) {
    std::vector<Point2> poly;
    const int n = 10000;
    for (int i = 0; i <= n; ++i) {
      const double a = 2.0 * kPi * i / n;
      poly.push_back({r * std::cos(a), r * std::sin(a)});
    }
    const double exact = 2.0 * kPi * r * 2.0 * R * R / (R * R + r * r);
    EXPECT_NEAR(arc_length(f, poly), exact, 1e-4 * exact);
  }
}

TEST(ArcLength, DiskAxisMatchesDistanceFormula) {
  for (double l : {0.2, 0.5, 0.8}) {
    const double R = 1.5;
    const MetricField f(SurfaceSpec::from_row(2, R), Chart::cartesian_xy);
    std::vector<Point2> poly;
    const int n = 20000;
    for (int i = 0; i <= n; ++i) poly.push_back({R * l * i / n, 0.0});
    EXPECT_NEAR(arc_length(f, poly), 2.0 * R * std::atanh(l), 1e-8);
  }
}

TEST(ArcLength, MixedCausalityRejected) {
  const MetricField f(SurfaceSpec::from_row(3, 1.0), Chart::cartesian_xy);
  EXPECT_LORENTZCC_ERROR(arc_length(f, {{0.0, 0.0}, {0.1, 0.0}, {0.1, 0.1}}),
                         ErrorCode::MixedCausality);
  const MetricField disk(SurfaceSpec::from_row(2, 1.0), Chart::cartesian_xy);
  EXPECT_LORENTZCC_ERROR(arc_length(disk, {{0.9, 0.0}, {1.1, 0.0}}), ErrorCode::OnLimitingCurve);
}

TEST(Beltrami, PlaneLines) {
  for (double th : {-1.0, 0.0, 0.8}) {
    const auto second = [th](double x, double y) { return x * std::sinh(th) + y * std::cosh(th); };
    const auto first = [th](double x, double y) { return x * std::cosh(th) + y * std::sinh(th); };
    EXPECT_NEAR(beltrami_delta1(-1.0, second, {0.3, 0.2}, 1e-3), -1.0, 1e-12);
    EXPECT_NEAR(beltrami_delta1(-1.0, first, {0.3, 0.2}, 1e-3), 1.0, 1e-12);
  }
}

TEST(TauField, LorentzPositiveDelta1IsConformalFactor) {
  const SurfaceSpec spec = SurfaceSpec::from_row(3, 1.0);
  const TauField tau(spec, 0.7);
  for_all(73, 10, [&](Gen& g, int) {
    const IsoPoint p{g.uniform(-2, 2), g.uniform(-2, 2)};
    const double c = std::cosh(p.rho);
    EXPECT_LT(std::abs(beltrami_delta1(spec, tau, p, 1e-5) - 1.0 / (c * c)), 1e-6);
  });
}

TEST(TauField, PartialDerivatives) {
  for_all(74, 40, [](Gen& g, int) {
    const SurfaceSpec spec = g.spec(0.5, 2.0);
    const double R = spec.radius();
    const double A = g.uniform(0.05, 0.3) * R;
    const TauField tau(spec, A, g.uniform(-1, 1));
    const double rho = spec.positive() ? g.uniform(-1, 1) : -g.uniform(0.1, 1.0);
    const double phi = g.uniform(-2, 2);
    EXPECT_NEAR(tau(rho, phi + 0.5) - tau(rho, phi), 0.5 * A, 1e-12 * (1.0 + std::abs(tau(rho, phi))));
    const double h = 1e-4;
    const double d = (tau(rho + h, phi) - tau(rho - h, phi)) / (2 * h);
    EXPECT_NEAR(d, tau.integrand(rho), 1e-6 * tau.integrand(rho));
    const double F = spec.positive() ? R * R / std::pow(std::cosh(rho), 2)
                                     : R * R / std::pow(std::sinh(rho), 2);
    const double ep = spec.lorentzian() ? 1.0 : -1.0;
    EXPECT_NEAR(tau.integrand(rho), std::sqrt(F + ep * A * A), 1e-14 * R);
    const IsoPoint p{rho, phi};
    EXPECT_LT(std::abs(beltrami_delta1(spec, tau, p) - F) / F, 1e-6);
  });
  // Definite surfaces need F > A^2.
  const TauField far(SurfaceSpec::from_row(1, 1.0), 0.9);
  EXPECT_LORENTZCC_ERROR(far.integrand(2.0), ErrorCode::DomainError);
}

TEST(ConstantsCheck, AllRowsReproduceConstants) {
  for (const SurfaceSpec& spec : all_specs(1.3)) {
    SCOPED_TRACE(spec.name());
    for_all(75 + spec.row(), 5, [&](Gen& g, int) {
      const double A = g.sign() * g.uniform(0.1, 0.8) * spec.radius();
      const double B = g.uniform(-1, 1);
      const ConstantsReport r = geodesic_constants_check(spec, A, B, 20);
      ASSERT_EQ(r.samples.size(), 20u);
      EXPECT_LT(r.max_b_residual, 1e-6);
      EXPECT_LT(r.tau_offset_spread, 1e-6);
    });
  }
  EXPECT_LORENTZCC_ERROR(geodesic_constants_check(SurfaceSpec::from_row(3, 1.0), 0.0, 0.1, 5),
                         ErrorCode::DegenerateEpsilon);
}

TEST(ConstantsCheck, RowThreeSamplesSatisfyIsometricEquation) {
  // With A = R sinh(eps), B = sigma: sinh(sigma - phi) = tanh(eps) sinh(rho).
  const SurfaceSpec spec = SurfaceSpec::from_row(3, 1.0);
  const double eps = 0.45, sigma = -0.2;
  const ConstantsReport r = geodesic_constants_check(spec, std::sinh(eps), sigma, 10);
  ASSERT_EQ(r.samples.size(), 10u);
  for (const ConstantsSample& s : r.samples) {
    EXPECT_LT(std::abs(std::sinh(sigma - s.phi) - std::tanh(eps) * std::sinh(s.rho)), 1e-9);
    if (s.rho == 0.0) {
      EXPECT_EQ(s.phi, sigma);
    }
  }
}

}  // namespace
}  // namespace lorentzcc
