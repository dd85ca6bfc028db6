#include "lorentzcc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lorentzcc/error.hpp"
#include "lorentzcc/geodesic.hpp"

namespace lorentzcc {

namespace {

double simpson_step(const std::function<double(double)>& f, double a,
                    double fa, double m, double fm, double b, double fb,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, m, fm, b, fb, whole, tol, max_depth);
}

// ---------------------------------------------------------------- Christoffel

Christoffel christoffel(const MetricField& field, const Point2& p,
                        double step) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::DomainError, "finite-difference step must be > 0");
  }
  // The factor is finite on both sides of the limiting curve, so a stencil
  // straddling it would evaluate silently.
  if (field.boundary_distance(p) <= step) {
    throw Error(ErrorCode::NearSingular,
                "stencil crosses the limiting curve");
  }
  auto metric_at = [&](double x, double y) {
    try {
      return field.metric_tensor({x, y});
    } catch (const Error& e) {
      throw Error(ErrorCode::NearSingular,
                  std::string("stencil leaves the chart domain: ") + e.what());
    }
  };
  const Mat2 g = metric_at(p.x, p.y);
  // dg[m] = d g / d x^m
  std::array<Mat2, 2> dg{};
  const Mat2 xp = metric_at(p.x + step, p.y);
  const Mat2 xm = metric_at(p.x - step, p.y);
  const Mat2 yp = metric_at(p.x, p.y + step);
  const Mat2 ym = metric_at(p.x, p.y - step);
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      dg[0][i][k] = (xp[i][k] - xm[i][k]) / (2.0 * step);
      dg[1][i][k] = (yp[i][k] - ym[i][k]) / (2.0 * step);
    }
  }
  const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (det == 0.0) {
    throw Error(ErrorCode::NearSingular, "metric is degenerate at the point");
  }
  const Mat2 ginv = {{{g[1][1] / det, -g[0][1] / det},
                      {-g[1][0] / det, g[0][0] / det}}};
  Christoffel gamma{};
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int k = i; k < 2; ++k) {
        double sum = 0.0;
        for (int m = 0; m < 2; ++m) {
          sum += ginv[l][m] * (dg[i][m][k] + dg[k][m][i] - dg[m][i][k]);
        }
        gamma[l][i][k] = 0.5 * sum;
        gamma[l][k][i] = gamma[l][i][k];
      }
    }
  }
  return gamma;
}

// ---------------------------------------------------------------- integration

double normalized_speed(const MetricField& field, const GeodesicState& s) {
  return std::abs(field.line_element(s.position, s.velocity));
}

namespace {

struct Deriv {
  Point2 dpos;
  Point2 dvel;
};

Deriv geodesic_rhs(const MetricField& field, const GeodesicState& s,
                   double fd_step) {
  const Christoffel gamma = christoffel(field, s.position, fd_step);
  const double v[2] = {s.velocity.x, s.velocity.y};
  double acc[2] = {0.0, 0.0};
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) acc[l] -= gamma[l][i][k] * v[i] * v[k];
    }
  }
  return {s.velocity, {acc[0], acc[1]}};
}

GeodesicState advance(const GeodesicState& s, const Deriv& d, double h) {
  return {{s.position.x + h * d.dpos.x, s.position.y + h * d.dpos.y},
          {s.velocity.x + h * d.dvel.x, s.velocity.y + h * d.dvel.y}};
}

}  // namespace

Trajectory integrate_geodesic(const MetricField& field,
                              const GeodesicState& init, double length,
                              const IntegratorOptions& opts) {
  if (!(opts.step > 0.0) || !(length >= 0.0)) {
    throw Error(ErrorCode::DomainError, "need step > 0 and length >= 0");
  }
  const double speed = normalized_speed(field, init);
  if (std::abs(speed - 1.0) >= 1e-9) {
    throw Error(ErrorCode::DomainError,
                "initial velocity is not unit speed: |g(v,v)| = " +
                    std::to_string(speed));
  }
  const long n = std::max(1L, std::lround(length / opts.step));
  const double h = length / double(n);
  Trajectory traj;
  traj.states.reserve(n + 1);
  traj.arc.reserve(n + 1);
  traj.states.push_back(init);
  traj.arc.push_back(0.0);
  if (length == 0.0) return traj;

  GeodesicState s = init;
  for (long i = 0; i < n; ++i) {
    if (field.boundary_distance(s.position) < 10.0 * opts.step) {
      traj.status = TrajectoryStatus::domain_exit;
      return traj;
    }
    try {
      const Deriv k1 = geodesic_rhs(field, s, opts.christoffel_step);
      const Deriv k2 =
          geodesic_rhs(field, advance(s, k1, 0.5 * h), opts.christoffel_step);
      const Deriv k3 =
          geodesic_rhs(field, advance(s, k2, 0.5 * h), opts.christoffel_step);
      const Deriv k4 = geodesic_rhs(field, advance(s, k3, h),
                                    opts.christoffel_step);
      s.position.x += h / 6.0 *
                      (k1.dpos.x + 2.0 * k2.dpos.x + 2.0 * k3.dpos.x + k4.dpos.x);
      s.position.y += h / 6.0 *
                      (k1.dpos.y + 2.0 * k2.dpos.y + 2.0 * k3.dpos.y + k4.dpos.y);
      s.velocity.x += h / 6.0 *
                      (k1.dvel.x + 2.0 * k2.dvel.x + 2.0 * k3.dvel.x + k4.dvel.x);
      s.velocity.y += h / 6.0 *
                      (k1.dvel.y + 2.0 * k2.dvel.y + 2.0 * k3.dvel.y + k4.dvel.y);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearSingular) throw;
      traj.status = TrajectoryStatus::domain_exit;
      return traj;
    }
    traj.states.push_back(s);
    traj.arc.push_back(double(i + 1) * h);
  }
  return traj;
}

double arc_length(const MetricField& field,
                  const std::vector<Point2>& polyline) {
  double total = 0.0;
  bool timelike = false;
  bool spacelike = false;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const Point2& a = polyline[i - 1];
    const Point2& b = polyline[i];
    const Point2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    const Point2 d{b.x - a.x, b.y - a.y};
    const double ds2 = field.line_element(mid, d);
    const double null_tol =
        1e-12 * field.conformal_factor(mid) * (d.x * d.x + d.y * d.y);
    if (ds2 > null_tol) timelike = true;
    if (ds2 < -null_tol) spacelike = true;
    if (timelike && spacelike) {
      throw Error(ErrorCode::MixedCausality,
                  "polyline mixes timelike and spacelike segments");
    }
    total += std::sqrt(std::abs(ds2));
  }
  return total;
}

// ------------------------------------------------------------------ TauField

namespace {

double isometric_factor(const SurfaceSpec& spec, double rho) {
  return MetricField(spec, Chart::isometric_rho_phi)
      .conformal_factor({rho, 0.0});
}

}  // namespace

TauField::TauField(SurfaceSpec spec, double A, double C)
    : spec_(spec), a_(A), c_(C) {}

double TauField::rho_ref(double rho) const {
  if (spec_.positive()) return 0.0;
  return rho < 0.0 ? -1.0 : 1.0;
}

double TauField::integrand(double rho) const {
  const double ep = spec_.lorentzian() ? 1.0 : -1.0;
  const double rad = isometric_factor(spec_, rho) + ep * a_ * a_;
  if (rad < 0.0) {
    throw Error(ErrorCode::DomainError,
                "F(rho) - A^2 < 0: point unreachable with this A");
  }
  return std::sqrt(rad);
}

double TauField::operator()(double rho, double phi) const {
  const double ref = rho_ref(rho);
  const double integral = integrate_adaptive(
      [this](double r) { return integrand(r); }, ref, rho, 1e-10);
  return a_ * phi + integral + c_;
}

double beltrami_delta1(double metric_sign,
                       const std::function<double(double, double)>& tau,
                       const Point2& p, double step) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::DomainError, "finite-difference step must be > 0");
  }
  try {
    const double dx = (tau(p.x + step, p.y) - tau(p.x - step, p.y)) / (2 * step);
    const double dy = (tau(p.x, p.y + step) - tau(p.x, p.y - step)) / (2 * step);
    return dx * dx + metric_sign * dy * dy;
  } catch (const Error& e) {
    throw Error(ErrorCode::NearSingular,
                std::string("stencil leaves the chart domain: ") + e.what());
  }
}

double beltrami_delta1(const SurfaceSpec& spec, const TauField& tau,
                       const IsoPoint& p, double step) {
  return beltrami_delta1(
      spec.metric_sign(), [&](double r, double f) { return tau(r, f); },
      {p.rho, p.phi}, step);
}

// --------------------------------------------------------- constants check

ConstantsReport geodesic_constants_check(const SurfaceSpec& spec, double A,
                                         double B, int samples) {
  if (A == 0.0) {
    throw Error(ErrorCode::DegenerateEpsilon, "A = 0 has no geodesic family");
  }
  const double R = spec.radius();
  const GeodesicConstants k = GeodesicConstants::from_ab(spec, A, B);
  const double eps = k.eps;
  const double tau0 = k.tau0(spec);

  // The closed forms carry the Hamilton-Jacobi constant as +A on rows 1 and 3
  // and as -A on rows 2 and 4.
  const double a_hj = spec.positive() ? A : -A;
  // Arc-length window on the branch where rho increases, and the closed-form
  // arc length s(rho) on it.
  double s_lo = 0.0;
  double s_hi = 0.0;
  std::function<double(double)> s_of_rho;
  switch (spec.row()) {
    case 1:
      s_lo = -0.45 * std::numbers::pi * R;
      s_hi = -s_lo;
      s_of_rho = [=](double r) {
        return R * std::asin(std::tanh(r) / std::cos(eps));
      };
      break;
    case 2:
      s_lo = 0.05 * R;
      s_hi = 2.0 * R;
      s_of_rho = [=](double r) {
        return R * std::acosh(std::abs(1.0 / std::tanh(r)) / std::cosh(eps));
      };
      break;
    case 3:
      s_hi = 0.9 * R * std::asin(1.0 / std::cosh(eps));
      s_lo = -s_hi;
      s_of_rho = [=](double r) {
        return R * std::asin(std::tanh(r) / std::cosh(eps));
      };
      break;
    case 4: {
      const double s_min = R * std::acosh(1.0 / std::cos(eps));
      s_lo = s_min + 0.05 * R;
      s_hi = s_min + 2.0 * R;
      s_of_rho = [=](double r) {
        return R * std::acosh(std::abs(1.0 / std::tanh(r)) / std::cos(eps));
      };
      break;
    }
  }

  const TauField tau(spec, a_hj);
  const double ep = spec.lorentzian() ? 1.0 : -1.0;
  ConstantsReport report;
  const int n = std::max(2, samples);
  for (int i = 0; i < n; ++i) {
    ConstantsSample smp;
    smp.s = s_lo + (s_hi - s_lo) * double(i) / double(n - 1);
    const IsoPoint p = geodesic_parametric(spec, eps, B, tau0 + smp.s);
    smp.rho = p.rho;
    smp.phi = p.phi;
    const double integral = integrate_adaptive(
        [&](double r) { return a_hj / tau.integrand(r); }, tau.rho_ref(p.rho),
        p.rho, 1e-12);
    // d tau / d A_hj = phi + e' int A_hj / sqrt(F + e' A_hj^2)
    smp.b_recovered = p.phi + ep * integral;
    smp.tau_offset = tau(p.rho, p.phi) - s_of_rho(p.rho);
    report.samples.push_back(smp);
  }

  double b_lo = std::numeric_limits<double>::infinity();
  double b_hi = -b_lo;
  double t_lo = b_lo;
  double t_hi = -b_lo;
  for (const ConstantsSample& smp : report.samples) {
    b_lo = std::min(b_lo, smp.b_recovered);
    b_hi = std::max(b_hi, smp.b_recovered);
    t_lo = std::min(t_lo, smp.tau_offset);
    t_hi = std::max(t_hi, smp.tau_offset);
    if (spec.positive()) {
      report.max_b_residual =
          std::max(report.max_b_residual, std::abs(smp.b_recovered - B));
    }
  }
  if (!spec.positive()) report.max_b_residual = b_hi - b_lo;
  report.tau_offset_spread = t_hi - t_lo;
  return report;
}

}  // namespace lorentzcc
