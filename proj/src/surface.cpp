#include "lorentzcc/surface.hpp"

#include <cmath>
#include <numbers>

#include "lorentzcc/error.hpp"

namespace lorentzcc {

SurfaceSpec::SurfaceSpec(Signature signature, CurvatureSign curvature,
                         double radius)
    : signature_(signature), curvature_(curvature), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::DomainError, "surface radius must be positive");
  }
}

SurfaceSpec SurfaceSpec::from_row(int row, double radius) {
  switch (row) {
    case 1: return {Signature::definite, CurvatureSign::positive, radius};
    case 2: return {Signature::definite, CurvatureSign::negative, radius};
    case 3: return {Signature::lorentzian, CurvatureSign::positive, radius};
    case 4: return {Signature::lorentzian, CurvatureSign::negative, radius};
    default: break;
  }
  throw Error(ErrorCode::DomainError,
              "surface row must be 1..4, got " + std::to_string(row));
}

SurfaceSpec SurfaceSpec::from_name(std::string_view name, double radius) {
  if (name == "def-pos") return from_row(1, radius);
  if (name == "def-neg") return from_row(2, radius);
  if (name == "lorentz-pos") return from_row(3, radius);
  if (name == "lorentz-neg") return from_row(4, radius);
  throw Error(ErrorCode::DomainError,
              "unknown surface '" + std::string(name) + "'");
}

int SurfaceSpec::row() const {
  return (lorentzian() ? 3 : 1) + (positive() ? 0 : 1);
}

std::string SurfaceSpec::name() const {
  return std::string(lorentzian() ? "lorentz-" : "def-") +
         (positive() ? "pos" : "neg");
}

int causal_sign(double ds2) { return ds2 < 0.0 ? -1 : 1; }

CausalType classify(double ds2, double tol) {
  if (std::abs(ds2) <= tol) return CausalType::null;
  return ds2 > 0.0 ? CausalType::timelike : CausalType::spacelike;
}

double gauss_curvature_of_profile(const std::function<double(double)>& r,
                                  double u, double step) {
  if (!(step > 0.0)) {
    throw Error(ErrorCode::DomainError, "finite-difference step must be > 0");
  }
  const double r0 = r(u);
  if (std::abs(r0) < 1e-12) {
    throw Error(ErrorCode::ProfileZero, "profile r(u) vanishes at u");
  }
  const double second = (r(u + step) - 2.0 * r0 + r(u - step)) / (step * step);
  return -second / r0;
}

double rho_from_u(const SurfaceSpec& spec, double u) {
  const double R = spec.radius();
  if (spec.positive()) {
    if (!(u > 0.0 && u < std::numbers::pi * R)) {
      throw Error(ErrorCode::DomainError,
                  "positive curvature profile needs 0 < u < pi R");
    }
    return std::log(1.0 / std::tan(u / (2.0 * R)));
  }
  if (!(u > 0.0)) {
    throw Error(ErrorCode::DomainError,
                "negative curvature profile needs u > 0");
  }
  return std::log(std::tanh(u / (2.0 * R)));
}

double line_element_profile(const SurfaceSpec& spec, double u, double du,
                            double dv) {
  const double R = spec.radius();
  const double r = spec.positive() ? R * std::sin(u / R) : R * std::sinh(u / R);
  return du * du + spec.metric_sign() * r * r * dv * dv;
}

namespace {

double isometric_factor(const SurfaceSpec& spec, double rho) {
  const double R = spec.radius();
  if (spec.positive()) {
    const double c = std::cosh(rho);
    return R * R / (c * c);
  }
  if (std::abs(rho) < 1e-12) {
    throw Error(ErrorCode::SingularPoint,
                "isometric chart of a negative-curvature surface excludes "
                "rho = 0");
  }
  const double s = std::sinh(rho);
  return R * R / (s * s);
}

// R^2 + k (x^2 + e y^2): vanishes on the limiting curve.
double cartesian_base(const SurfaceSpec& spec, double x, double y) {
  const double R = spec.radius();
  return R * R + spec.curvature_unit() * (x * x + spec.metric_sign() * y * y);
}

double cartesian_factor(const SurfaceSpec& spec, double x, double y) {
  const double R = spec.radius();
  const double base = cartesian_base(spec, x, y);
  if (std::abs(base) < 1e-12 * R * R) {
    throw Error(ErrorCode::OnLimitingCurve,
                "point lies on the limiting curve of " + spec.name());
  }
  const double R2 = R * R;
  return 4.0 * R2 * R2 / (base * base);
}

}  // namespace

double line_element_isometric(const SurfaceSpec& spec, double rho,
                              double /*phi*/, double drho, double dphi) {
  const double f = isometric_factor(spec, rho);
  return f * (drho * drho + spec.metric_sign() * dphi * dphi);
}

double line_element_cartesian(const SurfaceSpec& spec, double x, double y,
                              double dx, double dy) {
  const double f = cartesian_factor(spec, x, y);
  return f * (dx * dx + spec.metric_sign() * dy * dy);
}

Point2 exp_map_to_cartesian(const SurfaceSpec& spec, double rho, double phi) {
  const double r = spec.radius() * std::exp(rho);
  if (spec.lorentzian()) return {r * std::cosh(phi), r * std::sinh(phi)};
  return {r * std::cos(phi), r * std::sin(phi)};
}

IsoPoint cartesian_to_isometric(const SurfaceSpec& spec, double x, double y) {
  const double R = spec.radius();
  if (spec.lorentzian()) {
    if (!(x > std::abs(y))) {
      throw Error(ErrorCode::OutOfChart,
                  "isometric chart covers only the right sector");
    }
    const double d = (x - y) * (x + y);
    return {0.5 * std::log(d / (R * R)), std::atanh(y / x)};
  }
  const double r = std::hypot(x, y);
  if (r == 0.0) {
    throw Error(ErrorCode::OutOfChart, "origin has no isometric coordinates");
  }
  return {std::log(r / R), std::atan2(y, x)};
}

double MetricField::conformal_factor(const Point2& p) const {
  double f = 1.0;
  switch (chart_) {
    case Chart::flat_xy:
      f = 1.0;
      break;
    case Chart::isometric_rho_phi:
      f = isometric_factor(spec_, p.x);
      break;
    case Chart::cartesian_xy:
      f = cartesian_factor(spec_, p.x, p.y);
      break;
  }
  if (perturbation_ != 0.0) f *= 1.0 + perturbation_ * p.x * p.x;
  return f;
}

Mat2 MetricField::metric_tensor(const Point2& p) const {
  const double f = conformal_factor(p);
  return {{{f, 0.0}, {0.0, spec_.metric_sign() * f}}};
}

double MetricField::line_element(const Point2& p, const Point2& d) const {
  return conformal_factor(p) * (d.x * d.x + spec_.metric_sign() * d.y * d.y);
}

double MetricField::boundary_distance(const Point2& p) const {
  switch (chart_) {
    case Chart::flat_xy:
      return std::numeric_limits<double>::infinity();
    case Chart::isometric_rho_phi:
      if (spec_.positive()) return std::numeric_limits<double>::infinity();
      return std::abs(p.x);
    case Chart::cartesian_xy: {
      if (spec_.positive() && !spec_.lorentzian()) {
        return std::numeric_limits<double>::infinity();
      }
      const double base = cartesian_base(spec_, p.x, p.y);
      const double gx = 2.0 * p.x;
      const double gy = 2.0 * spec_.metric_sign() * p.y;
      const double g = std::hypot(gx, gy);
      if (g == 0.0) return std::numeric_limits<double>::infinity();
      return std::abs(base) / g;
    }
  }
  return std::numeric_limits<double>::infinity();
}

Mat2 metric_tensor(const MetricField& field, const Point2& p) {
  return field.metric_tensor(p);
}

double curvature_from_conformal_factor(const MetricField& field,
                                       const Point2& p, double step) {
  auto log_f = [&](double x, double y) {
    return std::log(field.conformal_factor({x, y}));
  };
  const double h = step;
  const double c = log_f(p.x, p.y);
  const double dxx = (log_f(p.x + h, p.y) - 2.0 * c + log_f(p.x - h, p.y)) /
                     (h * h);
  const double dyy = (log_f(p.x, p.y + h) - 2.0 * c + log_f(p.x, p.y - h)) /
                     (h * h);
  const double e = field.spec().metric_sign();
  return -(dxx + e * dyy) / (2.0 * field.conformal_factor(p));
}

}  // namespace lorentzcc
