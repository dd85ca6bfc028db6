#include "cli.hpp"

#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "lorentzcc/error.hpp"
#include "lorentzcc/geodesic.hpp"
#include "lorentzcc/motion.hpp"
#include "lorentzcc/verify.hpp"

namespace lorentzcc::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

struct RunConfig {
  std::string surface = "def-pos";
  double R = 1.0;
  std::vector<std::string> points;
  std::optional<double> eps;
  double sigma = 0.0;
  std::optional<double> g;
  double t0 = 0.0;
  double x0 = 0.0;
  std::string s_range;
  int samples = 0;
  /// Empty means the command's default: csv for worldline, json otherwise.
  std::string format;
  std::string out;
  std::uint64_t seed = VerifyConfig{}.seed;
  double scale = 1.0;
  std::vector<std::string> tol;
  std::string apply_motion;
  double perturb_metric = 0.0;
};

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorCode::DomainError, what);
}

std::vector<double> parse_list(const std::string& text, std::size_t count,
                               const std::string& flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      bad_input(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (v.size() != count) {
    bad_input(fmt::format("{} expects {} comma-separated numbers, got '{}'",
                          flag, count, text));
  }
  return v;
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  auto logger = std::make_shared<spdlog::logger>("lorentzcc", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LORENTZCC_LOG")) {
    logger->set_level(spdlog::level::from_str(env));
  }
  return logger;
}

const char* conic_kind(const GeodesicConic& c) {
  if (c.is_line()) return "line";
  return c.spec.lorentzian() ? "hyperbola" : "circle";
}

json conic_json(const GeodesicConic& c) {
  return {{"quad", c.quad},
          {"lin_x", c.lin_x},
          {"lin_y", c.lin_y},
          {"const", c.const_term},
          {"kind", conic_kind(c)},
          {"equation", "quad*(x^2 + e*y^2) + lin_x*x + lin_y*y + const = 0"},
          {"e", c.spec.metric_sign()}};
}

// ------------------------------------------------------------------- output

struct Sample {
  double s;
  Point2 p;
};

std::string csv_polyline(const std::vector<Sample>& pts) {
  std::string s = "s,x,y\n";
  for (const Sample& q : pts) {
    s += fmt::format("{:.17g},{:.17g},{:.17g}\n", q.s, q.p.x, q.p.y);
  }
  return s;
}

std::string svg_path(const std::vector<Point2>& pts, double lim) {
  std::string d;
  bool pen = false;
  for (const Point2& p : pts) {
    if (!(std::abs(p.x) <= lim && std::abs(p.y) <= lim)) {
      pen = false;
      continue;
    }
    d += fmt::format("{}{:.6g},{:.6g} ", pen ? "L" : "M", p.x, p.y);
    pen = true;
  }
  return d;
}

std::string svg_document(const SurfaceSpec& spec,
                         const std::vector<Point2>& geodesic,
                         const std::vector<Point2>& marks) {
  const double R = spec.radius();
  const double lim = 2.0 * R;
  const double stroke = 0.01 * R;
  std::string body;
  auto path = [&](const std::vector<Point2>& pts, const char* colour,
                  double width, const char* dash) {
    const std::string d = svg_path(pts, lim);
    if (d.empty()) return;
    body += fmt::format(
        "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.6g}\"{}/>\n",
        d, colour, width,
        *dash ? fmt::format(" stroke-dasharray=\"{}\"", dash) : std::string());
  };
  // Limiting curve.
  const int n = 400;
  if (!spec.lorentzian() && !spec.positive()) {
    std::vector<Point2> circle;
    for (int i = 0; i <= n; ++i) {
      const double a = 2.0 * kPi * i / n;
      circle.push_back({R * std::cos(a), R * std::sin(a)});
    }
    path(circle, "#888", stroke, "");
  } else if (spec.lorentzian()) {
    for (double branch : {-1.0, 1.0}) {
      std::vector<Point2> h;
      for (int i = 0; i <= n; ++i) {
        const double t = -lim + 2.0 * lim * i / n;
        const double u = branch * std::sqrt(R * R + t * t);
        h.push_back(spec.positive() ? Point2{t, u} : Point2{u, t});
      }
      path(h, "#888", stroke, "");
    }
    path({{-lim, -lim}, {lim, lim}}, "#bbb", stroke, "0.04,0.04");
    path({{-lim, lim}, {lim, -lim}}, "#bbb", stroke, "0.04,0.04");
  }
  path(geodesic, "#c03", 1.5 * stroke, "");
  for (const Point2& p : marks) {
    body += fmt::format("  <circle cx=\"{:.6g}\" cy=\"{:.6g}\" r=\"{:.6g}\" fill=\"#027\"/>\n",
                        p.x, p.y, 3.0 * stroke);
  }
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{0:.6g} {0:.6g} {1:.6g} {1:.6g}\">\n"
      " <g transform=\"scale(1,-1)\">\n{2} </g>\n</svg>\n",
      -lim, 2.0 * lim, body);
}

// ----------------------------------------------------------------- commands

struct Output {
  std::string text;
  int code = ok;
};

template <class Number>
Number to_number(const std::vector<double>& v) {
  return Number(v[0], v[1]);
}

template <class Number>
Point2 to_point(const Number& z) {
  return {re(z), im(z)};
}

template <class Number>
std::pair<Number, Number> read_points(const RunConfig& cfg,
                                      const SurfaceSpec& spec,
                                      spdlog::logger& log) {
  if (cfg.points.size() != 2) bad_input("--points expects two points x1,y1 x2,y2");
  Number z1 = to_number<Number>(parse_list(cfg.points[0], 2, "--points"));
  Number z2 = to_number<Number>(parse_list(cfg.points[1], 2, "--points"));
  if (!cfg.apply_motion.empty()) {
    const auto c = parse_list(cfg.apply_motion, 4, "--apply-motion");
    const auto m = make_motion(spec, Number(c[0], c[1]), Number(c[2], c[3]));
    z1 = lorentzcc::apply(m, z1);
    z2 = lorentzcc::apply(m, z2);
    log.debug("moved points to ({}, {}) and ({}, {})", re(z1), im(z1), re(z2),
              im(z2));
  }
  return {z1, z2};
}

std::pair<double, double> default_s_range(const SurfaceSpec& spec, double eps) {
  const double R = spec.radius();
  switch (spec.row()) {
    case 1: return {-kPi * R, kPi * R};
    case 2: return {-2.0 * R, 2.0 * R};
    case 3: {
      const double h = 0.95 * R * std::asin(1.0 / std::cosh(eps));
      return {-h, h};
    }
    default: {
      const double s_min = R * std::acosh(1.0 / std::cos(eps));
      return {s_min + 0.05 * R, s_min + 3.0 * R};
    }
  }
}

std::pair<double, double> s_range(const RunConfig& cfg,
                                  std::pair<double, double> fallback) {
  if (cfg.s_range.empty()) return fallback;
  const auto v = parse_list(cfg.s_range, 2, "--s-range");
  if (!(v[0] < v[1])) bad_input("--s-range needs a < b");
  return {v[0], v[1]};
}

int sample_count(const RunConfig& cfg, int fallback) {
  const int n = cfg.samples > 0 ? cfg.samples : fallback;
  if (n < 2) bad_input("--samples must be at least 2");
  return n;
}

Output geodesic_from_eps(const RunConfig& cfg, const SurfaceSpec& spec) {
  const double eps = *cfg.eps;
  const double sigma = cfg.sigma;
  const GeodesicConic conic = geodesic_from_constants(spec, eps, sigma);
  const GeodesicConstants k{eps, sigma};
  const auto [lo, hi] = s_range(cfg, default_s_range(spec, eps));
  const int n = sample_count(cfg, 201);
  std::vector<Sample> pts;
  for (int i = 0; i < n; ++i) {
    const double s = lo + (hi - lo) * double(i) / double(n - 1);
    const IsoPoint p = geodesic_parametric(spec, eps, sigma, k.tau0(spec) + s);
    pts.push_back({s, exp_map_to_cartesian(spec, p.rho, p.phi)});
  }
  if (cfg.format == "csv") return {csv_polyline(pts)};
  if (cfg.format == "svg") {
    std::vector<Point2> line;
    for (const Sample& q : pts) line.push_back(q.p);
    return {svg_document(spec, line, {})};
  }
  json hits = json::array();
  for (const auto& h : real_limiting_intersections(conic)) {
    hits.push_back({{"point", {h.point.x, h.point.y}},
                    {"pseudo_scalar_product", h.pseudo_scalar_product}});
  }
  json j = {{"command", "geodesic"},
            {"surface", spec.name()},
            {"R", spec.radius()},
            {"eps", eps},
            {"sigma", sigma},
            {"A", k.a(spec)},
            {"B", k.b()},
            {"tau0", k.tau0(spec)},
            {"conic", conic_json(conic)},
            {"limiting_intersections", hits},
            {"s_range", {lo, hi}}};
  return {j.dump(2) + "\n"};
}

template <class Number>
Output geodesic_from_points(const RunConfig& cfg, const SurfaceSpec& spec,
                            spdlog::logger& log) {
  const auto [z1, z2] = read_points<Number>(cfg, spec, log);
  const TwoPointSolution<Number> sol = solve_two_point(spec, z1, z2);
  const GeodesicConic conic = geodesic_through(spec, z1, z2);
  const double delta = geodesic_distance(spec, z1, z2);
  const double R = spec.radius();
  log.debug("two-point solver: l = {}", sol.l);

  if (cfg.format == "csv" || cfg.format == "svg") {
    const int n = sample_count(cfg, 201);
    std::vector<Sample> pts;
    for (int i = 0; i < n; ++i) {
      const double p = sol.l * double(i) / double(n - 1);
      const Number z = apply_inverse(sol.motion, Number(R * p, 0.0));
      const double s = spec.positive() ? 2.0 * R * std::atan(p)
                                       : 2.0 * R * std::atanh(p);
      pts.push_back({s, to_point(z)});
    }
    pts.front().p = to_point(z1);
    pts.back().p = to_point(z2);
    if (cfg.format == "csv") return {csv_polyline(pts)};
    std::vector<Point2> line;
    for (const Sample& q : pts) line.push_back(q.p);
    return {svg_document(spec, line, {to_point(z1), to_point(z2)})};
  }
  json j = {{"command", "geodesic"},
            {"surface", spec.name()},
            {"R", R},
            {"points", {{re(z1), im(z1)}, {re(z2), im(z2)}}},
            {"conic", conic_json(conic)},
            {"l", sol.l},
            {"delta", delta},
            {"motion",
             {{"alpha", {re(sol.motion.alpha), im(sol.motion.alpha)}},
              {"beta", {re(sol.motion.beta), im(sol.motion.beta)}}}},
            {"theta_alpha", sol.theta_alpha},
            {"theta_beta", sol.theta_beta},
            {"rho_beta", sol.rho_beta}};
  return {j.dump(2) + "\n"};
}

Output cmd_geodesic(const RunConfig& cfg, spdlog::logger& log) {
  const SurfaceSpec spec = SurfaceSpec::from_name(cfg.surface, cfg.R);
  if (cfg.eps && !cfg.points.empty()) {
    bad_input("give either --eps/--sigma or --points, not both");
  }
  if (cfg.eps) return geodesic_from_eps(cfg, spec);
  if (cfg.points.empty()) bad_input("geodesic needs --eps/--sigma or --points");
  return spec.lorentzian()
             ? geodesic_from_points<HyperbolicNumber>(cfg, spec, log)
             : geodesic_from_points<ComplexNumber>(cfg, spec, log);
}

template <class Number>
double distance_of(const RunConfig& cfg, const SurfaceSpec& spec,
                   spdlog::logger& log) {
  const auto [z1, z2] = read_points<Number>(cfg, spec, log);
  return geodesic_distance(spec, z1, z2);
}

Output cmd_distance(const RunConfig& cfg, spdlog::logger& log) {
  const SurfaceSpec spec = SurfaceSpec::from_name(cfg.surface, cfg.R);
  const double d = spec.lorentzian()
                       ? distance_of<HyperbolicNumber>(cfg, spec, log)
                       : distance_of<ComplexNumber>(cfg, spec, log);
  return {fmt::format("{:.15g}\n", d)};
}

Output cmd_worldline(const RunConfig& cfg) {
  if (!cfg.g) bad_input("worldline needs --g");
  // Validates g > 0.
  (void)worldline_hyperbolic(cfg.t0, cfg.x0, *cfg.g, 0.0);
  const Worldline w{cfg.t0, cfg.x0, *cfg.g};
  const auto [lo, hi] = s_range(cfg, {-5.0, 5.0});
  const int n = sample_count(cfg, 101);
  if (cfg.format == "svg") bad_input("worldline supports csv and json output");
  std::string csv = "s,t,x,residual,velocity\n";
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    const double s = lo + (hi - lo) * double(i) / double(n - 1);
    const WorldlinePoint p = w.at(s);
    const double r = w.invariant_residual(s);
    const double v = w.velocity(s);
    csv += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s, p.t, p.x,
                       r, v);
    rows.push_back({{"s", s}, {"t", p.t}, {"x", p.x}, {"residual", r},
                    {"velocity", v}});
  }
  if (cfg.format == "json") {
    json j = {{"command", "worldline"},
              {"g", w.accel},
              {"t0", w.t0},
              {"x0", w.x0},
              {"samples", rows}};
    return {j.dump(2) + "\n"};
  }
  return {csv};
}

Output cmd_verify(const RunConfig& cfg, spdlog::logger& log) {
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.scale = cfg.scale;
  vc.metric_perturbation = cfg.perturb_metric;
  for (const std::string& t : cfg.tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) bad_input("--tol expects name=value, got '" + t + "'");
    vc.tolerances[t.substr(0, eq)] =
        parse_list(t.substr(eq + 1), 1, "--tol " + t.substr(0, eq))[0];
  }
  const VerifyReport report = run_verification(vc);
  json criteria = json::array();
  for (const CriterionResult& c : report.criteria) {
    log.info("{}", summary_line(c));
    json checks = json::array();
    for (const CheckResult& k : c.checks) {
      checks.push_back({{"name", k.name},
                        {"measured", k.measured},
                        {"tolerance", k.tolerance},
                        {"pass", k.pass},
                        {"detail", k.detail}});
    }
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"pass", c.pass()},
                        {"checks", checks}});
  }
  json j = {{"command", "verify"},
            {"seed", report.seed},
            {"scale", cfg.scale},
            {"pass", report.pass()},
            {"criteria", criteria}};
  return {j.dump(2) + "\n", report.pass() ? ok : verify_failed};
}

void add_surface_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--surface", cfg.surface, "Surface: def-pos, def-neg, lorentz-pos, lorentz-neg")
      ->check(CLI::IsMember({"def-pos", "def-neg", "lorentz-pos", "lorentz-neg"}));
  cmd->add_option("--R", cfg.R, "Radius R > 0")->capture_default_str();
}

void add_output_options(CLI::App* cmd, RunConfig& cfg,
                        std::vector<std::string> formats) {
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember(formats));
  cmd->add_option("--out", cfg.out, "Write output to this file instead of stdout");
}

void write_error(std::ostream& err, std::string_view code,
                 const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Geodesics, distances and motions on constant-curvature surfaces", "lorentzcc"};
  app.require_subcommand(1);

  CLI::App* geo = app.add_subcommand("geodesic", "Geodesic from (eps, sigma) or through two points");
  add_surface_options(geo, cfg);
  geo->add_option("--eps", cfg.eps, "Geodesic constant eps");
  geo->add_option("--sigma", cfg.sigma, "Geodesic constant sigma")->capture_default_str();
  geo->add_option("--points", cfg.points, "Two points x1,y1 x2,y2")->expected(2);
  geo->add_option("--s-range", cfg.s_range, "Arc-length window a,b relative to tau0");
  geo->add_option("--samples", cfg.samples, "Number of polyline samples");
  geo->add_option("--apply-motion", cfg.apply_motion,
                  "Move both points by the motion alpha_x,alpha_y,beta_x,beta_y first");
  add_output_options(geo, cfg, {"json", "csv", "svg"});

  CLI::App* dist = app.add_subcommand("distance", "Geodesic distance between two points");
  add_surface_options(dist, cfg);
  dist->add_option("--points", cfg.points, "Two points x1,y1 x2,y2")->expected(2)->required();
  dist->add_option("--apply-motion", cfg.apply_motion,
                   "Move both points by the motion alpha_x,alpha_y,beta_x,beta_y first");
  dist->add_option("--out", cfg.out, "Write output to this file instead of stdout");

  CLI::App* world = app.add_subcommand("worldline", "Constant proper acceleration worldline");
  world->add_option("--g", cfg.g, "Proper acceleration g > 0")->required();
  world->add_option("--t0", cfg.t0)->capture_default_str();
  world->add_option("--x0", cfg.x0)->capture_default_str();
  world->add_option("--s-range", cfg.s_range, "Proper time window a,b (default -5,5)");
  world->add_option("--samples", cfg.samples, "Number of samples (default 101)");
  add_output_options(world, cfg, {"csv", "json"});

  CLI::App* ver = app.add_subcommand("verify", "Run the acceptance suite");
  ver->add_option("--seed", cfg.seed, "Seed of the randomized checks")->capture_default_str();
  ver->add_option("--scale", cfg.scale, "Multiplier on the number of random draws")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ver->add_option("--tol", cfg.tol, "Tolerance override name=value (repeatable)");
  ver->add_option("--perturb-metric", cfg.perturb_metric)->group("");
  ver->add_option("--out", cfg.out, "Write the report to this file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    write_error(err, "InvalidArguments", e.what());
    return invalid_input;
  }
  if (cfg.format.empty()) cfg.format = world->parsed() ? "csv" : "json";

  auto log = make_logger(err);
  try {
    Output result;
    if (geo->parsed()) result = cmd_geodesic(cfg, *log);
    if (dist->parsed()) result = cmd_distance(cfg, *log);
    if (world->parsed()) result = cmd_worldline(cfg);
    if (ver->parsed()) result = cmd_verify(cfg, *log);
    if (cfg.out.empty()) {
      out << result.text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) {
        write_error(err, "IOError", "cannot open '" + cfg.out + "' for writing");
        return invalid_input;
      }
      file << result.text;
      log->debug("wrote {}", cfg.out);
    }
    return result.code;
  } catch (const Error& e) {
    write_error(err, e.name(), e.what());
    return invalid_input;
  }
}

}  // namespace lorentzcc::cli
