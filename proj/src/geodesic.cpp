#include "lorentzcc/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <quadmath.h>

#include "lorentzcc/error.hpp"

namespace lorentzcc {

namespace {

constexpr double kPi = std::numbers::pi;

// Rows 1 and 4 carry circular functions of eps, rows 2 and 3 hyperbolic.
bool circular_eps(const SurfaceSpec& spec) {
  return spec.row() == 1 || spec.row() == 4;
}

void check_eps(const SurfaceSpec& spec, double eps) {
  if (!std::isfinite(eps) || std::abs(eps) < 1e-12) {
    throw Error(ErrorCode::DegenerateEpsilon,
                "eps = 0 gives a straight line through the origin; use "
                "origin_line(sigma)");
  }
  if (circular_eps(spec) && std::abs(eps) >= kPi / 2) {
    throw Error(ErrorCode::DomainError, "|eps| must be below pi/2 on " +
                                            spec.name());
  }
}

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

double wrap_angle(double a) {
  return std::remainder(a, 2.0 * kPi);
}

}  // namespace

// --------------------------------------------------------------- plane lines

double PlaneLine::residual(const Point2& p) const {
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  if (kind == LineKind::first_kind) return p.x * sh + p.y * ch - c;
  return p.x * ch + p.y * sh - c;
}

Point2 PlaneLine::tangent() const {
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  if (kind == LineKind::first_kind) return {ch, -sh};
  return {sh, -ch};
}

Point2 PlaneLine::point_at(double tau) const {
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  const Point2 t = tangent();
  const Point2 base = kind == LineKind::first_kind ? Point2{-c * sh, c * ch}
                                                   : Point2{c * ch, -c * sh};
  return {base.x + tau * t.x, base.y + tau * t.y};
}

PlaneLine plane_geodesic(LineKind kind, double theta, double c) {
  return PlaneLine{kind, theta, c};
}

// ------------------------------------------------------------------- conics

double GeodesicConic::eval(const Point2& p) const {
  const double e = spec.metric_sign();
  return quad * (p.x * p.x + e * p.y * p.y) + lin_x * p.x + lin_y * p.y +
         const_term;
}

Point2 GeodesicConic::gradient(const Point2& p) const {
  const double e = spec.metric_sign();
  return {2.0 * quad * p.x + lin_x, 2.0 * e * quad * p.y + lin_y};
}

double GeodesicConic::scaled_residual(const Point2& p) const {
  const double scale = std::abs(quad) * (p.x * p.x + p.y * p.y) +
                       std::abs(lin_x * p.x) + std::abs(lin_y * p.y) +
                       std::abs(const_term);
  const double r = std::abs(eval(p));
  return scale > 0.0 ? r / scale : r;
}

bool GeodesicConic::is_line(double tol) const {
  const double R = spec.radius();
  const double ref = std::max(
      {std::abs(lin_x) * R, std::abs(lin_y) * R, std::abs(const_term)});
  return std::abs(quad) * R * R <= tol * ref;
}

GeodesicConstants GeodesicConstants::from_ab(const SurfaceSpec& spec,
                                             double A, double B) {
  const double ratio = A / spec.radius();
  if (circular_eps(spec)) {
    if (std::abs(ratio) >= 1.0) {
      throw Error(ErrorCode::DomainError,
                  "|A| must be below R on " + spec.name());
    }
    return {std::asin(ratio), B};
  }
  return {std::asinh(ratio), B};
}

double GeodesicConstants::a(const SurfaceSpec& spec) const {
  const double R = spec.radius();
  return circular_eps(spec) ? R * std::sin(eps) : R * std::sinh(eps);
}

double GeodesicConstants::tau0(const SurfaceSpec& spec) const {
  return a(spec) * sigma;
}

GeodesicConic geodesic_from_constants(const SurfaceSpec& spec, double eps,
                                      double sigma) {
  check_eps(spec, eps);
  const double R = spec.radius();
  const double t = circular_eps(spec) ? std::tan(eps) : std::tanh(eps);
  GeodesicConic c{.spec = spec};
  c.quad = 1.0 / (R * R);
  c.const_term = spec.positive() ? -1.0 : 1.0;
  if (spec.lorentzian()) {
    c.lin_x = -2.0 * std::sinh(sigma) / (R * t);
    c.lin_y = 2.0 * std::cosh(sigma) / (R * t);
  } else {
    c.lin_x = 2.0 * std::sin(sigma) / (R * t);
    c.lin_y = -2.0 * std::cos(sigma) / (R * t);
  }
  return c;
}

GeodesicConic origin_line(const SurfaceSpec& spec, double sigma) {
  GeodesicConic c{.spec = spec};
  if (spec.lorentzian()) {
    c.lin_x = -std::sinh(sigma);
    c.lin_y = std::cosh(sigma);
  } else {
    c.lin_x = std::sin(sigma);
    c.lin_y = -std::cos(sigma);
  }
  return c;
}

IsoPoint geodesic_parametric(const SurfaceSpec& spec, double eps, double sigma,
                             double tau) {
  check_eps(spec, eps);
  const double R = spec.radius();
  const double s = tau - GeodesicConstants{eps, sigma}.tau0(spec);
  IsoPoint p;
  switch (spec.row()) {
    case 1: {
      // tanh rho = cos eps sin(s/R),  sin(phi - sigma) = tan eps sinh rho
      p.rho = std::atanh(std::cos(eps) * std::sin(s / R));
      const double v = std::clamp(std::tan(eps) * std::sinh(p.rho), -1.0, 1.0);
      const double branch = std::cos(s / R) < 0.0 ? -1.0 : 1.0;
      p.phi = sigma + std::atan2(v, branch * std::sqrt(1.0 - v * v));
      break;
    }
    case 2: {
      // coth rho = cosh eps cosh(s/R) (rho < 0 branch),
      // sin(phi - sigma) = tanh eps cosh rho
      const double coth = std::cosh(eps) * std::cosh(s / R);
      p.rho = -std::atanh(1.0 / coth);
      const double v = std::min(1.0, std::abs(std::tanh(eps) * std::cosh(p.rho)));
      p.phi = sigma + sgn(eps) * (kPi / 2 - sgn(s) * std::acos(v));
      break;
    }
    case 3: {
      // tanh rho = cosh eps sin(s/R),  sinh(sigma - phi) = tanh eps sinh rho
      const double t = std::cosh(eps) * std::sin(s / R);
      if (!(std::abs(t) < 1.0)) {
        throw Error(ErrorCode::OutOfChart,
                    "arc length outside the chart window of the geodesic");
      }
      p.rho = std::atanh(t);
      p.phi = sigma - std::asinh(std::tanh(eps) * std::sinh(p.rho));
      break;
    }
    case 4: {
      // coth rho = cos eps cosh(s/R) (rho < 0 branch),
      // sinh(sigma - phi) = tan eps cosh rho
      const double coth = std::cos(eps) * std::cosh(s / R);
      if (!(coth > 1.0)) {
        throw Error(ErrorCode::OutOfChart,
                    "arc length outside the chart window of the geodesic");
      }
      p.rho = -std::atanh(1.0 / coth);
      p.phi = sigma - std::asinh(std::tan(eps) * std::cosh(p.rho));
      break;
    }
  }
  return p;
}

IsoPoint geodesic_parametric_tangent(const SurfaceSpec& spec, double eps,
                                     double sigma, double tau, double step) {
  const IsoPoint c = geodesic_parametric(spec, eps, sigma, tau);
  const double offsets[4] = {-2.0, -1.0, 1.0, 2.0};
  const double weights[4] = {1.0, -8.0, 8.0, -1.0};
  IsoPoint d{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    const IsoPoint q =
        geodesic_parametric(spec, eps, sigma, tau + offsets[i] * step);
    double dphi = q.phi - c.phi;
    if (!spec.lorentzian()) dphi = wrap_angle(dphi);
    d.rho += weights[i] * (q.rho - c.rho);
    d.phi += weights[i] * dphi;
  }
  d.rho /= 12.0 * step;
  d.phi /= 12.0 * step;
  return d;
}

ConicCentre complete_square(const GeodesicConic& conic) {
  if (conic.quad == 0.0) {
    throw Error(ErrorCode::DegenerateEpsilon,
                "a straight line has no centre");
  }
  const double e = conic.spec.metric_sign();
  ConicCentre c;
  c.x0 = -conic.lin_x / (2.0 * conic.quad);
  c.y0 = -e * conic.lin_y / (2.0 * conic.quad);
  c.k = c.x0 * c.x0 + e * c.y0 * c.y0 - conic.const_term / conic.quad;
  return c;
}

HyperbolaParameters hyperbola_parameters(const SurfaceSpec& spec, double A,
                                         double B) {
  if (std::abs(A) < 1e-12 * spec.radius()) {
    throw Error(ErrorCode::DegenerateEpsilon,
                "A = 0 gives a straight line through the origin");
  }
  const GeodesicConstants k = GeodesicConstants::from_ab(spec, A, B);
  const ConicCentre c =
      complete_square(geodesic_from_constants(spec, k.eps, k.sigma));
  // Geodesic hyperbolas open along y: (y - y0)^2 - (x - x0)^2 = d^2.
  const double d2 = spec.lorentzian() ? -c.k : c.k;
  if (!(d2 > 0.0)) {
    throw Error(ErrorCode::DomainError, "conic has no real half diameter");
  }
  return {c.x0, c.y0, std::sqrt(d2)};
}

GeodesicConic limiting_curve(const SurfaceSpec& spec) {
  const double R = spec.radius();
  GeodesicConic c{.spec = spec};
  c.quad = 1.0;
  c.const_term = spec.positive() ? R * R : -R * R;
  return c;
}

namespace {

// Real roots of a u^2 + b u + c = 0; tolerates a = 0.
std::vector<double> real_roots(double a, double b, double c) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return {};
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  const double disc_tol = 1e-14 * (b * b + std::abs(4.0 * a * c));
  if (disc < -disc_tol) return {};
  if (disc <= disc_tol) return {-b / (2.0 * a)};
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> r{q / a, c / q};
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

std::vector<LimitingIntersection> real_limiting_intersections(
    const GeodesicConic& geo) {
  const SurfaceSpec& spec = geo.spec;
  const GeodesicConic lim = limiting_curve(spec);
  const double e = spec.metric_sign();
  // Radical line geo - quad * lim: a x + b y + k = 0, on x^2 + e y^2 = K.
  const double a = geo.lin_x;
  const double b = geo.lin_y;
  const double k = geo.const_term - geo.quad * lim.const_term;
  const double K = -lim.const_term;

  std::vector<Point2> pts;
  if (std::abs(b) >= std::abs(a)) {
    if (b == 0.0) return {};
    for (double x : real_roots(b * b + e * a * a, 2.0 * e * a * k,
                               e * k * k - K * b * b)) {
      pts.push_back({x, -(a * x + k) / b});
    }
  } else {
    for (double y : real_roots(b * b + e * a * a, 2.0 * b * k,
                               k * k - K * a * a)) {
      pts.push_back({-(b * y + k) / a, y});
    }
  }

  std::vector<LimitingIntersection> out;
  for (const Point2& p : pts) {
    const Point2 g1 = geo.gradient(p);
    const Point2 g2 = lim.gradient(p);
    LimitingIntersection li;
    li.point = p;
    li.pseudo_scalar_product = g1.x * g2.x + e * g1.y * g2.y;
    const double norm = std::hypot(g1.x, g1.y) * std::hypot(g2.x, g2.y);
    li.scaled_product = norm > 0.0 ? li.pseudo_scalar_product / norm : 0.0;
    out.push_back(li);
  }
  return out;
}

std::vector<LimitingIntersection> limiting_intersections(
    const GeodesicConic& geo) {
  auto out = real_limiting_intersections(geo);
  if (out.empty()) {
    throw Error(ErrorCode::NoRealIntersection,
                "geodesic does not meet the limiting curve");
  }
  return out;
}

std::vector<std::vector<Point2>> trace_conic_arcs(const GeodesicConic& conic,
                                                  const Point2& p1,
                                                  const Point2& p2,
                                                  int segments) {
  const int n = std::max(1, segments);
  auto sample = [&](auto&& point_at) {
    std::vector<Point2> line(n + 1);
    for (int i = 0; i <= n; ++i) line[i] = point_at(double(i) / n);
    line.front() = p1;
    line.back() = p2;
    return line;
  };

  if (conic.is_line()) {
    return {sample([&](double t) {
      return Point2{p1.x + t * (p2.x - p1.x), p1.y + t * (p2.y - p1.y)};
    })};
  }

  const ConicCentre c = complete_square(conic);
  if (!conic.spec.lorentzian()) {
    const double r = std::sqrt(std::max(0.0, c.k));
    const double a1 = std::atan2(p1.y - c.y0, p1.x - c.x0);
    const double a2 = std::atan2(p2.y - c.y0, p2.x - c.x0);
    const double ccw = std::fmod(a2 - a1 + 4.0 * kPi, 2.0 * kPi);
    auto arc = [&](double sweep) {
      return sample([&, sweep](double t) {
        const double a = a1 + t * sweep;
        return Point2{c.x0 + r * std::cos(a), c.y0 + r * std::sin(a)};
      });
    };
    return {arc(ccw), arc(ccw - 2.0 * kPi)};
  }

  const double scale = c.x0 * c.x0 + c.y0 * c.y0 + 1.0;
  if (std::abs(c.k) <= 1e-14 * scale) {
    throw Error(ErrorCode::NoGeodesic, "conic degenerates to null lines");
  }
  const double d = std::sqrt(std::abs(c.k));
  // k < 0: branches open along y; k > 0: along x.
  const bool along_y = c.k < 0.0;
  auto branch = [&](const Point2& p) {
    return along_y ? sgn(p.y - c.y0) : sgn(p.x - c.x0);
  };
  auto param = [&](const Point2& p) {
    return along_y ? std::asinh((p.x - c.x0) / d)
                   : std::asinh((p.y - c.y0) / d);
  };
  const double b1 = branch(p1);
  if (b1 == 0.0 || b1 != branch(p2)) {
    throw Error(ErrorCode::NoGeodesic,
                "points lie on different branches of the geodesic conic");
  }
  const double t1 = param(p1);
  const double t2 = param(p2);
  return {sample([&](double t) {
    const double u = t1 + t * (t2 - t1);
    if (along_y) return Point2{c.x0 + d * std::sinh(u), c.y0 + b1 * d * std::cosh(u)};
    return Point2{c.x0 + b1 * d * std::cosh(u), c.y0 + d * std::sinh(u)};
  })};
}

// ---------------------------------------------------------------- worldlines

WorldlinePoint Worldline::at(double s) const {
  return {t0 + std::sinh(accel * s) / accel, x0 + std::cosh(accel * s) / accel};
}

double Worldline::invariant_residual(double s) const {
  using Quad = __float128;
  const Quad g = accel;
  const Quad gs = g * Quad(s);
  const Quad dx = coshq(gs) / g;
  const Quad dt = sinhq(gs) / g;
  return double((dx - dt) * (dx + dt) - 1 / (g * g));
}

double Worldline::sample_residual(double s) const {
  const WorldlinePoint p = at(s);
  const double dx = p.x - x0;
  const double dt = p.t - t0;
  return (dx - dt) * (dx + dt) - 1.0 / (accel * accel);
}

double Worldline::sample_rounding_bound(double s) const {
  const WorldlinePoint p = at(s);
  const double u = std::numeric_limits<double>::epsilon();
  const double dx = std::abs(p.x - x0);
  const double dt = std::abs(p.t - t0);
  return 8.0 * u * ((std::abs(p.x) + dx) * dx + (std::abs(p.t) + dt) * dt) +
         4.0 * u / (accel * accel);
}

double Worldline::velocity(double s) const { return std::tanh(accel * s); }

WorldlinePoint worldline_hyperbolic(double t0, double x0, double g,
                                    double s) {
  if (!(g > 0.0)) {
    throw Error(ErrorCode::DomainError,
                "proper acceleration g must be positive");
  }
  return Worldline{t0, x0, g}.at(s);
}

Point2 circle_geodesic_parametric(double x0, double y0, double A, double K,
                                  double s) {
  const double ak = A * K;
  if (!std::isfinite(ak) || ak == 0.0) {
    throw Error(ErrorCode::DegenerateEpsilon,
                "circle radius 1/(A K) is undefined for A K = 0");
  }
  return {x0 + std::cos(ak * s) / ak, y0 + std::sin(ak * s) / ak};
}

}  // namespace lorentzcc
