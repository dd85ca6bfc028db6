#include "lorentzcc/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>

#include "lorentzcc/error.hpp"
#include "lorentzcc/geodesic.hpp"
#include "lorentzcc/hypernum.hpp"
#include "lorentzcc/motion.hpp"
#include "lorentzcc/oracle.hpp"
#include "lorentzcc/surface.hpp"

namespace lorentzcc {

namespace {

constexpr double kPi = std::numbers::pi;

using Tolerances = std::map<std::string, double>;

struct Context {
  const VerifyConfig& config;
  Tolerances tol;

  int draws(int base) const {
    return std::max(1, int(std::lround(base * config.scale)));
  }
  Rng rng(int criterion) const {
    // Distinct, well-separated streams per criterion.
    return Rng(config.seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(criterion));
  }
};

CheckResult at_most(std::string name, double measured, double tolerance,
                    std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.pass = std::isfinite(measured) && measured <= tolerance;
  c.detail = std::move(detail);
  return c;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

SurfaceSpec all_specs(int row, double R) { return SurfaceSpec::from_row(row, R); }

// ------------------------------------------------------------ 1 curvature

CriterionResult curvature(const Context& ctx) {
  CriterionResult out{1, "Curvature", {}};
  Rng rng = ctx.rng(1);
  double profile_err = 0.0;
  for (double R : {0.5, 1.0, 3.0}) {
    for (bool positive : {true, false}) {
      const int n = ctx.draws(10);
      for (int i = 0; i < n; ++i) {
        const double u = positive ? rng.uniform(0.05, 0.95) * kPi * R
                                  : rng.uniform(0.1, 3.0) * R;
        auto r = [R, positive](double v) {
          return positive ? R * std::sin(v / R) : R * std::sinh(v / R);
        };
        const double K = gauss_curvature_of_profile(r, u, 1e-4 * R);
        const double want = (positive ? 1.0 : -1.0) / (R * R);
        profile_err = std::max(profile_err, std::abs(K - want));
      }
    }
  }
  out.checks.push_back(at_most("profile K vs +-1/R^2", profile_err,
                               ctx.tol.at("curvature"),
                               "R in {0.5, 1, 3}, sin and sinh profiles"));

  double conformal_err = 0.0;
  for (int row = 1; row <= 4; ++row) {
    for (double R : {0.5, 1.0, 3.0}) {
      const SurfaceSpec spec = all_specs(row, R);
      const MetricField cart(spec, Chart::cartesian_xy);
      const MetricField iso(spec, Chart::isometric_rho_phi);
      const int n = ctx.draws(10);
      for (int i = 0; i < n; ++i) {
        // Cartesian chart points well inside the limiting curve.
        const double rr = rng.uniform(0.0, 0.6) * R;
        const double a = rng.uniform(-kPi, kPi);
        Point2 p{rr * std::cos(a), rr * std::sin(a)};
        if (spec.lorentzian()) p = {rr * std::cos(a), 0.5 * rr * std::sin(a)};
        const double K1 = curvature_from_conformal_factor(cart, p, 1e-4 * R);
        // |rho| <= 1 keeps f away from its exponential decay, where the
        // division by f amplifies finite-difference rounding.
        const double rho = spec.positive() ? rng.uniform(-1.0, 1.0)
                                           : -rng.uniform(0.2, 1.0);
        const double K2 = curvature_from_conformal_factor(
            iso, {rho, rng.uniform(-1.0, 1.0)}, 1e-4);
        conformal_err = std::max({conformal_err,
                                  std::abs(K1 - spec.gauss_curvature()),
                                  std::abs(K2 - spec.gauss_curvature())});
      }
    }
  }
  out.checks.push_back(at_most("conformal-factor K vs +-1/R^2", conformal_err,
                               ctx.tol.at("curvature"),
                               "all surfaces, Cartesian and isometric charts"));
  return out;
}

// ------------------------------------------------ 2 surface row consistency

// Arc-length window [lo, hi] (relative to tau0) on which the closed form is
// valid and rho is finite.
std::pair<double, double> window(const SurfaceSpec& spec, double eps,
                                 double length) {
  const double R = spec.radius();
  switch (spec.row()) {
    case 1:
    case 2:
      return {-0.5 * length, 0.5 * length};
    case 3: {
      const double lim = 0.9 * R * std::asin(1.0 / std::cosh(eps));
      const double half = std::min(0.5 * length, lim);
      return {-half, half};
    }
    default: {
      const double s_min = R * std::acosh(1.0 / std::cos(eps));
      return {s_min + 0.3 * R, s_min + 0.3 * R + length};
    }
  }
}

double random_eps(Rng& rng, const SurfaceSpec& spec, double lo, double hi) {
  (void)spec;
  return rng.sign() * rng.uniform(lo, hi);
}

double random_sigma(Rng& rng, const SurfaceSpec& spec) {
  return spec.lorentzian() ? rng.uniform(-1.0, 1.0) : rng.uniform(-kPi, kPi);
}

Point2 closed_form_cartesian(const SurfaceSpec& spec, double eps, double sigma,
                             double s) {
  const GeodesicConstants k{eps, sigma};
  const IsoPoint p = geodesic_parametric(spec, eps, sigma, k.tau0(spec) + s);
  return exp_map_to_cartesian(spec, p.rho, p.phi);
}

CriterionResult row_consistency(const Context& ctx) {
  CriterionResult out{2, "Surface row consistency", {}};
  Rng rng = ctx.rng(2);
  double residual = 0.0;
  double arc_err = 0.0;
  for (int row = 1; row <= 4; ++row) {
    const int n = ctx.draws(20);
    for (int i = 0; i < n; ++i) {
      const SurfaceSpec spec = all_specs(row, rng.uniform(0.5, 2.0));
      const double R = spec.radius();
      const bool circ = row == 1 || row == 4;
      const double eps = random_eps(rng, spec, 0.1, circ ? 1.3 : 1.5);
      const double sigma = random_sigma(rng, spec);
      const GeodesicConic conic = geodesic_from_constants(spec, eps, sigma);
      const auto [lo, hi] = window(spec, eps, 1.5 * R);
      const int segments = 10000;
      std::vector<Point2> line(segments + 1);
      for (int j = 0; j <= segments; ++j) {
        const double s = lo + (hi - lo) * double(j) / segments;
        line[j] = closed_form_cartesian(spec, eps, sigma, s);
        if (j % 100 == 0) {
          residual = std::max(residual, std::abs(conic.eval(line[j])));
        }
      }
      const double L = arc_length(MetricField(spec, Chart::cartesian_xy), line);
      arc_err = std::max(arc_err, std::abs(L - (hi - lo)));
    }
  }
  out.checks.push_back(at_most("conic residual of parametric points", residual,
                               ctx.tol.at("conic_residual"),
                               "101 points per geodesic, 20 geodesics per row"));
  out.checks.push_back(at_most("|arc length - delta tau|", arc_err,
                               ctx.tol.at("arc_length"),
                               "10^4 midpoint segments"));
  return out;
}

// ------------------------------------------------------- 3 oracle vs closed

CriterionResult oracle_equivalence(const Context& ctx) {
  CriterionResult out{3, "Oracle equivalence", {}};
  Rng rng = ctx.rng(3);
  double max_dist = 0.0;
  double max_drift = 0.0;
  int exits = 0;
  for (int row = 1; row <= 4; ++row) {
    const int n = ctx.draws(5);
    for (int i = 0; i < n; ++i) {
      const SurfaceSpec spec = all_specs(row, rng.uniform(1.0, 2.0));
      const double R = spec.radius();
      const bool lor_pos = row == 3;
      const double eps = (row == 1 || lor_pos)
                             ? random_eps(rng, spec, 0.15, 0.6)
                             : random_eps(rng, spec, 0.3, 1.0);
      const double sigma = random_sigma(rng, spec);
      const double s0 =
          row == 4 ? window(spec, eps, 1.0).first : -0.45 * R;
      auto curve = [&](double s) {
        return closed_form_cartesian(spec, eps, sigma, s);
      };
      const double h = 1e-4;
      const Point2 a = curve(s0 - 2 * h), b = curve(s0 - h);
      const Point2 c = curve(s0 + h), d = curve(s0 + 2 * h);
      Point2 v{(a.x - 8 * b.x + 8 * c.x - d.x) / (12 * h),
               (a.y - 8 * b.y + 8 * c.y - d.y) / (12 * h)};
      const MetricField field =
          MetricField(spec, Chart::cartesian_xy)
              .with_perturbation(ctx.config.metric_perturbation);
      const Point2 start = curve(s0);
      const double speed = std::sqrt(std::abs(field.line_element(start, v)));
      v = {v.x / speed, v.y / speed};
      const Trajectory traj =
          integrate_geodesic(field, {start, v}, 1.0, IntegratorOptions{});
      if (traj.status != TrajectoryStatus::completed) ++exits;
      for (std::size_t j = 0; j < traj.states.size(); ++j) {
        const Point2 ref = curve(s0 + traj.arc[j]);
        const Point2& p = traj.states[j].position;
        max_dist = std::max(max_dist, std::hypot(p.x - ref.x, p.y - ref.y));
        max_drift = std::max(
            max_drift, std::abs(normalized_speed(field, traj.states[j]) - 1.0));
      }
    }
  }
  out.checks.push_back(at_most(
      "max chart distance to closed form", max_dist,
      ctx.tol.at("oracle_distance"),
      "RK4 step 1e-3, FD Christoffels, arc length 1.0, 5 geodesics per row"));
  out.checks.push_back(at_most("speed drift per unit length", max_drift,
                               ctx.tol.at("speed_drift")));
  out.checks.push_back(at_most("early domain exits", exits, 0.0));
  return out;
}

// -------------------------------------------------------- random motions

template <class Number>
Number make_number(double a, double b) {
  return Number(a, b);
}

template <class Number>
Number random_point(Rng& rng, const SurfaceSpec& spec) {
  const double R = spec.radius();
  if (!spec.lorentzian()) {
    const double rr = (spec.positive() ? rng.uniform(0.0, 1.5)
                                       : rng.uniform(0.0, 0.6)) * R;
    const double a = rng.uniform(-kPi, kPi);
    return make_number<Number>(rr * std::cos(a), rr * std::sin(a));
  }
  const double lim = spec.positive() ? 0.8 : 0.5;
  return make_number<Number>(rng.uniform(-lim, lim) * R,
                             rng.uniform(-lim, lim) * R);
}

template <class Number>
BilinearMotion<Number> random_motion(Rng& rng, const SurfaceSpec& spec) {
  const double lambda = rng.sign() * rng.uniform(0.5, 2.0);
  Number alpha;
  if constexpr (is_hyperbolic_v<Number>) {
    const double th = rng.uniform(-1.0, 1.0);
    alpha = rng.sign() * rng.uniform(0.7, 1.3) *
            HyperbolicNumber{std::cosh(th), std::sinh(th)};
  } else {
    alpha = std::polar(rng.uniform(0.7, 1.3), rng.uniform(-kPi, kPi));
  }
  const double bmax = 0.35 * modulus(alpha);
  const Number beta =
      make_number<Number>(rng.uniform(-bmax, bmax), rng.uniform(-bmax, bmax));
  return make_motion(spec, lambda * alpha, lambda * beta);
}

template <class Number>
double ds2_at(const SurfaceSpec& spec, const Number& z, const Number& d) {
  return line_element_cartesian(spec, re(z), im(z), re(d), im(d));
}

struct MotionStats {
  double line_element = 0.0;
  double distance = 0.0;
  double inverse = 0.0;
  int accepted = 0;
  int rejected = 0;
};

template <class Number>
void motion_draws(const Context& ctx, Rng& rng, const SurfaceSpec& spec,
                  MotionStats& st) {
  const int want = ctx.draws(50);
  const double R = spec.radius();
  const double e = spec.metric_sign();
  int guard = 0;
  while (st.accepted < want && guard++ < 50 * want) {
    try {
      const BilinearMotion<Number> m = random_motion<Number>(rng, spec);
      const Number z1 = random_point<Number>(rng, spec);
      const Number z2 = random_point<Number>(rng, spec);
      const double da = rng.uniform(-kPi, kPi);
      Number d = make_number<Number>(std::cos(da), std::sin(da));
      if (std::abs(re(d) * re(d) + e * im(d) * im(d)) < 0.2) {
        ++st.rejected;
        continue;
      }
      const double h = 1e-6 * R;
      const Number w1 = lorentzcc::apply(m, z1);
      const Number dw = (lorentzcc::apply(m, z1 + h * d) - lorentzcc::apply(m, z1 - h * d)) *
                        (1.0 / (2.0 * h));
      const double le = std::abs(ds2_at(spec, w1, dw) / ds2_at(spec, z1, d) - 1);
      const double d0 = geodesic_distance(spec, z1, z2);
      const double d1 = geodesic_distance(spec, w1, lorentzcc::apply(m, z2));
      const Number back = apply_inverse(m, w1);
      st.line_element = std::max(st.line_element, le);
      st.distance = std::max(st.distance, std::abs(d1 - d0));
      st.inverse = std::max(
          st.inverse, std::hypot(re(back - z1), im(back - z1)) / R);
      ++st.accepted;
    } catch (const Error&) {
      ++st.rejected;
    }
  }
}

CriterionResult motion_invariance(const Context& ctx) {
  CriterionResult out{4, "Motion invariance", {}};
  Rng rng = ctx.rng(4);
  MotionStats st;
  int short_specs = 0;
  for (int row = 1; row <= 4; ++row) {
    const SurfaceSpec spec = all_specs(row, rng.uniform(0.5, 2.0));
    MotionStats one;
    if (spec.lorentzian()) {
      motion_draws<HyperbolicNumber>(ctx, rng, spec, one);
    } else {
      motion_draws<ComplexNumber>(ctx, rng, spec, one);
    }
    if (one.accepted < ctx.draws(50)) ++short_specs;
    st.line_element = std::max(st.line_element, one.line_element);
    st.distance = std::max(st.distance, one.distance);
    st.inverse = std::max(st.inverse, one.inverse);
    st.accepted += one.accepted;
    st.rejected += one.rejected;
  }
  const std::string draws = fmt::format("{} accepted, {} rejected draws",
                                        st.accepted, st.rejected);
  out.checks.push_back(at_most("line element rel err", st.line_element,
                               ctx.tol.at("line_element"),
                               "finite-difference pushforward, " + draws));
  out.checks.push_back(at_most("|delta(Mz1, Mz2) - delta(z1, z2)|", st.distance,
                               ctx.tol.at("distance_invariance"), draws));
  out.checks.push_back(at_most("inverse map round trip / R", st.inverse,
                               ctx.tol.at("inverse_round_trip")));
  out.checks.push_back(at_most("surfaces short of draws", short_specs, 0.0));
  return out;
}

// ------------------------------------------------------ 5 two-point solver

struct SolverStats {
  double w1 = 0.0;
  double w2 = 0.0;
  double residual = 0.0;
  double distance = 0.0;
  int accepted = 0;
  int rejected = 0;
};

// Shortest arc of the conic between p1 and p2 that stays on the surface.
// The segment count doubles until two resolutions agree to 1e-10, since the
// conformal factor can vary on a scale much shorter than a large circle.
double conic_arc_quadrature(const MetricField& field, const GeodesicConic& conic,
                            const Point2& p1, const Point2& p2) {
  const std::size_t arcs = trace_conic_arcs(conic, p1, p2, 1).size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < arcs; ++a) {
    try {
      double prev = std::numeric_limits<double>::quiet_NaN();
      for (int n = 20000; n <= 2560000; n *= 2) {
        const double L = arc_length(field, trace_conic_arcs(conic, p1, p2, n)[a]);
        const bool converged = std::abs(L - prev) <= 1e-10 * L;
        prev = L;
        if (converged) break;
      }
      best = std::min(best, prev);
    } catch (const Error&) {
      // An arc through the limiting curve is not a path on the surface.
    }
  }
  return best;
}

template <class Number>
void solver_draws(const Context& ctx, Rng& rng, const SurfaceSpec& spec,
                  SolverStats& st) {
  const int want = ctx.draws(20);
  const double R = spec.radius();
  const MetricField field(spec, Chart::cartesian_xy);
  int guard = 0;
  int got = 0;
  while (got < want && guard++ < 50 * want) {
    try {
      const Number z1 = random_point<Number>(rng, spec);
      const Number z2 = random_point<Number>(rng, spec);
      const TwoPointSolution<Number> sol = solve_two_point(spec, z1, z2);
      const double delta = geodesic_distance(spec, z1, z2);
      const GeodesicConic conic = geodesic_through(spec, z1, z2);
      const Point2 p1{re(z1), im(z1)};
      const Point2 p2{re(z2), im(z2)};
      const double best = conic_arc_quadrature(field, conic, p1, p2);
      if (!std::isfinite(best)) {
        ++st.rejected;
        continue;
      }
      const Number w1 = lorentzcc::apply(sol.motion, z1) * (1.0 / R);
      const Number w2 = lorentzcc::apply(sol.motion, z2) * (1.0 / R);
      st.w1 = std::max(st.w1, std::hypot(re(w1), im(w1)));
      st.w2 = std::max(st.w2, std::hypot(re(w2) - sol.l, im(w2)));
      st.residual = std::max({st.residual, conic.scaled_residual(p1),
                              conic.scaled_residual(p2)});
      st.distance = std::max(st.distance, rel_err(best, delta));
      ++st.accepted;
      ++got;
    } catch (const Error&) {
      ++st.rejected;
    }
  }
}

CriterionResult two_point_solver(const Context& ctx) {
  CriterionResult out{5, "Two-point solver", {}};
  Rng rng = ctx.rng(5);
  SolverStats st;
  for (int row = 1; row <= 4; ++row) {
    const SurfaceSpec spec = all_specs(row, rng.uniform(0.5, 2.0));
    if (spec.lorentzian()) {
      solver_draws<HyperbolicNumber>(ctx, rng, spec, st);
    } else {
      solver_draws<ComplexNumber>(ctx, rng, spec, st);
    }
  }
  const std::string draws = fmt::format("{} accepted, {} rejected pairs",
                                        st.accepted, st.rejected);
  out.checks.push_back(at_most("|w(z1)| / R", st.w1, ctx.tol.at("round_trip"),
                               draws));
  out.checks.push_back(at_most("|w(z2)/R - (l, 0)|", st.w2,
                               ctx.tol.at("round_trip")));
  out.checks.push_back(at_most("geodesic_through scaled residual", st.residual,
                               ctx.tol.at("through_residual")));
  out.checks.push_back(at_most("delta vs arc-length quadrature rel err",
                               st.distance, ctx.tol.at("distance_quadrature"),
                               "segments doubled from 2x10^4 until converged"));
  const int shortfall = std::max(0, 4 * ctx.draws(20) - st.accepted);
  out.checks.push_back(at_most("surfaces short of pairs, total", shortfall, 0.0));
  return out;
}

// ----------------------------------------------------------- 6 benchmark

CriterionResult benchmark(const Context& ctx) {
  CriterionResult out{6, "Benchmark delta(0, 0.5) = ln 3", {}};
  const double ln3 = std::log(3.0);
  double closed = 0.0;
  double polyline = 0.0;
  double adaptive = 0.0;
  for (int row : {2, 4}) {
    const SurfaceSpec spec = all_specs(row, 1.0);
    if (spec.lorentzian()) {
      closed = std::max(closed, std::abs(geodesic_distance(
                                              spec, HyperbolicNumber{0.0, 0.0},
                                              HyperbolicNumber{0.5, 0.0}) -
                                          ln3));
    } else {
      closed = std::max(closed, std::abs(geodesic_distance(
                                              spec, ComplexNumber{0.0, 0.0},
                                              ComplexNumber{0.5, 0.0}) -
                                          ln3));
    }
    const int n = 100000;
    std::vector<Point2> axis(n + 1);
    for (int i = 0; i <= n; ++i) axis[i] = {0.5 * double(i) / n, 0.0};
    polyline = std::max(
        polyline,
        std::abs(arc_length(MetricField(spec, Chart::cartesian_xy), axis) - ln3));
    const double q = integrate_adaptive(
        [&](double p) {
          return std::sqrt(std::abs(line_element_cartesian(spec, p, 0, 1, 0)));
        },
        0.0, 0.5, 1e-13);
    adaptive = std::max(adaptive, std::abs(q - ln3));
  }
  const double t = ctx.tol.at("benchmark");
  out.checks.push_back(at_most("closed form", closed, t, "def-neg and lorentz-neg, R = 1"));
  out.checks.push_back(at_most("axis polyline quadrature (10^5 segments)", polyline, t));
  out.checks.push_back(at_most("axis adaptive quadrature", adaptive, t));
  return out;
}

// -------------------------------------------------- 7 pseudo-orthogonality

CriterionResult pseudo_orthogonality(const Context& ctx) {
  CriterionResult out{7, "Pseudo-orthogonality", {}};
  Rng rng = ctx.rng(7);
  double worst = 0.0;
  int ncc_missing = 0;
  int pcc_hits = 0;
  const int n = ctx.draws(20);
  for (int i = 0; i < n; ++i) {
    const SurfaceSpec ncc = all_specs(4, rng.uniform(0.5, 2.0));
    const GeodesicConic g = geodesic_from_constants(
        ncc, random_eps(rng, ncc, 0.1, 1.4), random_sigma(rng, ncc));
    const auto hits = real_limiting_intersections(g);
    if (hits.empty()) ++ncc_missing;
    for (const auto& h : hits) {
      worst = std::max(worst, std::abs(h.pseudo_scalar_product));
    }
    const SurfaceSpec pcc = all_specs(3, rng.uniform(0.5, 2.0));
    const GeodesicConic gp = geodesic_from_constants(
        pcc, random_eps(rng, pcc, 0.1, 1.5), random_sigma(rng, pcc));
    pcc_hits += int(real_limiting_intersections(gp).size());
  }
  out.checks.push_back(at_most("lorentz-neg |indefinite gradient product|",
                               worst, ctx.tol.at("pseudo_orthogonality")));
  out.checks.push_back(at_most("lorentz-neg geodesics missing the boundary",
                               ncc_missing, 0.0));
  out.checks.push_back(at_most("lorentz-pos real intersections with y^2-x^2=R^2",
                               pcc_hits, 0.0));
  return out;
}

// --------------------------------------------------------------- 8 Beltrami

CriterionResult beltrami(const Context& ctx) {
  CriterionResult out{8, "Beltrami checks", {}};
  Rng rng = ctx.rng(8);
  const double t = ctx.tol.at("beltrami");
  double plane = 0.0;
  const int n = ctx.draws(10);
  for (int i = 0; i < n; ++i) {
    const double th = rng.uniform(-1.5, 1.5);
    const Point2 p{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    auto first = [th](double x, double y) {
      return x * std::sinh(th) + y * std::cosh(th);
    };
    auto second = [th](double x, double y) {
      return x * std::cosh(th) + y * std::sinh(th);
    };
    plane = std::max(plane, std::abs(beltrami_delta1(-1.0, first, p, 1e-5) + 1));
    plane = std::max(plane, std::abs(beltrami_delta1(-1.0, second, p, 1e-5) - 1));
  }
  out.checks.push_back(at_most("plane |Delta1 tau -+ 1|", plane, t,
                               "first and second kind linear solutions"));
  for (int row = 1; row <= 4; ++row) {
    const SurfaceSpec spec = all_specs(row, rng.uniform(0.5, 2.0));
    const double R = spec.radius();
    const double A = rng.uniform(0.2, 0.7) * R;
    const TauField tau(spec, A, rng.uniform(-1, 1));
    const MetricField iso(spec, Chart::isometric_rho_phi);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double rho = 0.0;
      switch (row) {
        case 1: rho = rng.uniform(-0.9, 0.9) * std::acosh(R / A); break;
        case 2:
          rho = -rng.uniform(0.2, std::min(1.5, 0.9 * std::asinh(R / A)));
          break;
        case 3: rho = rng.uniform(-2.0, 2.0); break;
        default: rho = -rng.uniform(0.2, 2.0); break;
      }
      const IsoPoint p{rho, rng.uniform(-1.0, 1.0)};
      const double d1 = beltrami_delta1(spec, tau, p, 1e-5);
      worst = std::max(worst,
                       std::abs(d1 - iso.conformal_factor({p.rho, p.phi})));
    }
    out.checks.push_back(at_most("TauField |Delta1 tau - f^2| on " + spec.name(),
                                 worst, t));
  }
  return out;
}

// -------------------------------------------------------------- 9 worldline

CriterionResult worldline(const Context& ctx) {
  CriterionResult out{9, "Worldline", {}};
  Rng rng = ctx.rng(9);
  double invariant = 0.0;
  double sample_excess = 0.0;
  double sample_abs = 0.0;
  for (double g : {0.5, 1.0, 2.0}) {
    const Worldline w{rng.uniform(-1, 1), rng.uniform(-1, 1), g};
    for (int i = 0; i <= 1000; ++i) {
      const double s = -5.0 + 10.0 * double(i) / 1000.0;
      invariant = std::max(invariant, std::abs(w.invariant_residual(s)));
      const double r = std::abs(w.sample_residual(s));
      sample_abs = std::max(sample_abs, r);
      sample_excess = std::max(sample_excess, r / w.sample_rounding_bound(s));
    }
  }
  out.checks.push_back(at_most(
      "|(x-x0)^2 - (t-t0)^2 - 1/g^2| (128-bit evaluation)", invariant,
      ctx.tol.at("worldline"), "s in [-5, 5], g in {0.5, 1, 2}"));
  out.checks.push_back(at_most(
      "double samples: residual / rounding bound", sample_excess, 1.0,
      fmt::format("max absolute residual on double samples {:.3g}",
                  sample_abs)));

  double d_err = 0.0;
  const int n = ctx.draws(20);
  for (int i = 0; i < n; ++i) {
    for (int row : {3, 4}) {
      const SurfaceSpec spec = all_specs(row, rng.uniform(0.5, 2.0));
      const double R = spec.radius();
      const double A = rng.sign() * rng.uniform(0.1, 0.9) * R;
      const double B = rng.uniform(-1.0, 1.0);
      const HyperbolaParameters hp = hyperbola_parameters(spec, A, B);
      d_err = std::max(d_err, rel_err(hp.d, R * R / std::abs(A)));
    }
  }
  out.checks.push_back(at_most("half diameter d vs R^2/|A| rel err", d_err,
                               ctx.tol.at("half_diameter"),
                               "conic completion, lorentz-pos and lorentz-neg"));
  return out;
}

// --------------------------------------------------------- 10 algebra kernel

HyperbolicNumber random_off_null(Rng& rng, double range) {
  for (;;) {
    const HyperbolicNumber z{rng.uniform(-range, range),
                             rng.uniform(-range, range)};
    const double scale = std::max(std::abs(z.x), std::abs(z.y));
    if (std::abs(z.x - z.y) > 0.1 * scale && std::abs(z.x + z.y) > 0.1 * scale &&
        scale > 0.05) {
      return z;
    }
  }
}

double hmag(const HyperbolicNumber& z) { return std::hypot(z.x, z.y); }

CriterionResult algebra(const Context& ctx) {
  CriterionResult out{10, "Algebra kernel", {}};
  Rng rng = ctx.rng(10);
  const double t = ctx.tol.at("algebra");
  const int n = ctx.draws(1000);
  int cases = 0;
  int failures = 0;
  double mult = 0.0, inv = 0.0, expo = 0.0, pol = 0.0, cplx = 0.0;
  for (int i = 0; i < n; ++i) {
    const HyperbolicNumber a = random_off_null(rng, 3.0);
    const HyperbolicNumber b = random_off_null(rng, 3.0);
    const double m = std::abs(square_modulus(a * b) -
                              square_modulus(a) * square_modulus(b)) /
                     (hmag(a) * hmag(a) * hmag(b) * hmag(b));
    const double r = hmag(a * inverse(a) - HyperbolicNumber{1.0, 0.0}) /
                     (hmag(a) * hmag(a) / std::abs(square_modulus(a)));
    const HyperbolicNumber u{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const HyperbolicNumber v{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const HyperbolicNumber lhs = hyper_exp(u + v);
    const double e = hmag(lhs - hyper_exp(u) * hyper_exp(v)) / hmag(lhs);
    const double p = hmag(polar(a).reconstruct() - a) / hmag(a);
    const ComplexNumber ca{a.x, a.y};
    const ComplexNumber cb{b.x, b.y};
    const double c = std::max(
        std::abs(square_modulus(ca * cb) - square_modulus(ca) * square_modulus(cb)) /
            (square_modulus(ca) * square_modulus(cb)),
        std::abs(ca * inverse(ca) - 1.0));
    mult = std::max(mult, m);
    inv = std::max(inv, r);
    expo = std::max(expo, e);
    pol = std::max(pol, p);
    cplx = std::max(cplx, c);
    for (double x : {m, r, e, p, c}) failures += !(x <= t);
    cases += 5;

    // Divisors of zero must be rejected.
    const double k = rng.uniform(-3, 3);
    const HyperbolicNumber null_pt{k, rng.sign() * k};
    bool rejected = false;
    try {
      (void)inverse(null_pt);
    } catch (const Error& err) {
      rejected = err.code() == ErrorCode::DivisorOfZero;
    }
    bool polar_rejected = false;
    try {
      (void)polar(null_pt);
    } catch (const Error& err) {
      polar_rejected = err.code() == ErrorCode::OnNullLine;
    }
    failures += !rejected + !polar_rejected;
    cases += 2;
  }
  out.checks.push_back(at_most("D(ab) = D(a) D(b) rel err", mult, t));
  out.checks.push_back(at_most("a inverse(a) = 1, condition-scaled", inv, t));
  out.checks.push_back(at_most("exp(u + v) = exp(u) exp(v) rel err", expo, t));
  out.checks.push_back(at_most("polar reconstruct rel err", pol, t));
  out.checks.push_back(at_most("complex analogues", cplx, t));
  out.checks.push_back(at_most("failed cases", failures, 0.0,
                               fmt::format("{} randomized cases", cases)));
  return out;
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      {"curvature", 1e-6},
      {"conic_residual", 1e-9},
      {"arc_length", 1e-6},
      {"oracle_distance", 1e-5},
      {"speed_drift", 1e-7},
      {"line_element", 1e-6},
      {"distance_invariance", 1e-9},
      {"inverse_round_trip", 1e-10},
      {"round_trip", 1e-12},
      {"through_residual", 1e-9},
      {"distance_quadrature", 1e-6},
      {"benchmark", 1e-9},
      {"pseudo_orthogonality", 1e-9},
      {"beltrami", 1e-6},
      {"worldline", 1e-12},
      {"half_diameter", 1e-9},
      {"algebra", 1e-12},
  };
  return t;
}

bool CriterionResult::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

bool VerifyReport::pass() const {
  return !criteria.empty() &&
         std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.pass(); });
}

VerifyReport run_verification(const VerifyConfig& config) {
  Context ctx{config, default_tolerances()};
  for (const auto& [name, value] : config.tolerances) {
    if (!ctx.tol.count(name)) {
      throw Error(ErrorCode::DomainError, "unknown tolerance '" + name + "'");
    }
    ctx.tol[name] = value;
  }
  using Fn = CriterionResult (*)(const Context&);
  const Fn criteria[] = {curvature,          row_consistency,
                         oracle_equivalence, motion_invariance,
                         two_point_solver,   benchmark,
                         pseudo_orthogonality, beltrami,
                         worldline,          algebra};
  std::vector<std::future<CriterionResult>> jobs;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    jobs.push_back(std::async(std::launch::async, [&ctx, fn = criteria[i], i] {
      try {
        return fn(ctx);
      } catch (const std::exception& e) {
        CriterionResult r{int(i + 1), "criterion aborted", {}};
        CheckResult c;
        c.name = "exception";
        c.measured = std::numeric_limits<double>::infinity();
        c.detail = e.what();
        r.checks.push_back(c);
        return r;
      }
    }));
  }
  VerifyReport report;
  report.seed = config.seed;
  for (auto& j : jobs) report.criteria.push_back(j.get());
  return report;
}

std::string summary_line(const CriterionResult& c) {
  const CheckResult* worst = nullptr;
  for (const CheckResult& k : c.checks) {
    if (!k.pass) {
      worst = &k;
      break;
    }
  }
  if (!worst && !c.checks.empty()) worst = &c.checks.front();
  std::string line = fmt::format("{}  {:>2}  {}", c.pass() ? "PASS" : "FAIL",
                                 c.id, c.title);
  if (worst) {
    line += fmt::format("  [{}: {:.3g} <= {:.3g}]", worst->name,
                        worst->measured, worst->tolerance);
  }
  return line;
}

}  // namespace lorentzcc
