#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "lorentzcc/motion.hpp"

namespace lorentzcc::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

void expect_error(const Outcome& r, const std::string& code) {
  EXPECT_EQ(r.code, invalid_input);
  EXPECT_TRUE(r.out.empty());
  const json e = json::parse(r.err);
  EXPECT_EQ(e.at("error"), code);
  EXPECT_TRUE(e.at("message").is_string());
}

TEST(CliGeodesic, LorentzNegativePointsJson) {
  const Outcome r = run({"geodesic", "--surface", "lorentz-neg", "--R", "1", "--points", "0.1,0.05",
                     "0.4,-0.1", "--format", "json"});
  ASSERT_EQ(r.code, ok) << r.err;
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.contains("conic"));
  ASSERT_TRUE(j.contains("l"));
  ASSERT_TRUE(j.contains("delta"));
  // Golden values straight from the library.
  const SurfaceSpec spec = SurfaceSpec::from_row(4, 1.0);
  const HyperbolicNumber z1{0.1, 0.05}, z2{0.4, -0.1};
  const GeodesicConic c = geodesic_through(spec, z1, z2);
  EXPECT_EQ(j["conic"]["quad"].get<double>(), c.quad);
  EXPECT_EQ(j["conic"]["lin_x"].get<double>(), c.lin_x);
  EXPECT_EQ(j["conic"]["lin_y"].get<double>(), c.lin_y);
  EXPECT_EQ(j["conic"]["const"].get<double>(), c.const_term);
  EXPECT_EQ(j["conic"]["kind"], "hyperbola");
  EXPECT_EQ(j["l"].get<double>(), solve_two_point(spec, z1, z2).l);
  EXPECT_EQ(j["delta"].get<double>(), geodesic_distance(spec, z1, z2));
}

TEST(CliGeodesic, DegenerateEpsilonExitsTwo) {
  expect_error(run({"geodesic", "--surface", "lorentz-pos", "--eps", "0", "--sigma", "0.2"}),
               "DegenerateEpsilon");
}

TEST(CliGeodesic, DiskDistanceFromOrigin) {
  const Outcome r = run({"geodesic", "--surface", "def-neg", "--R", "1", "--points", "0,0", "0.5,0",
                     "--format", "json"});
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_NEAR(json::parse(r.out)["delta"].get<double>(), 2.0 * std::atanh(0.5), 1e-15);
}

TEST(CliGeodesic, NoGeodesicExitsTwo) {
  expect_error(run({"geodesic", "--surface", "lorentz-neg", "--points", "0.1,0.1", "0.2,0.2"}),
               "NoGeodesic");
  expect_error(run({"distance", "--surface", "def-neg", "--points", "0,0", "1.2,0"}),
               "OutOfDisk");
}

TEST(CliGeodesic, ConstantsModeCsvLiesOnConic) {
  const std::vector<std::string> args = {"geodesic", "--surface", "def-pos", "--R", "2",
                                         "--eps", "0.4", "--sigma", "0.3", "--format", "csv",
                                         "--samples", "50"};
  const Outcome r = run(args);
  ASSERT_EQ(r.code, ok) << r.err;
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  EXPECT_EQ(header, "s,x,y");
  ASSERT_EQ(rows.size(), 50u);
  const GeodesicConic c = geodesic_from_constants(SurfaceSpec::from_row(1, 2.0), 0.4, 0.3);
  for (const auto& row : rows) EXPECT_LT(std::abs(c.scaled_residual({row[1], row[2]})), 1e-9);
  EXPECT_EQ(run(args).out, r.out);
}

TEST(CliGeodesic, PointsModeCsvRunsBetweenThePoints) {
  const Outcome r = run({"geodesic", "--surface", "def-neg", "--points", "0.1,0.2", "-0.3,0.4",
                     "--format", "csv", "--samples", "11"});
  ASSERT_EQ(r.code, ok) << r.err;
  const auto rows = parse_csv(r.out, nullptr);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows.front()[1], 0.1);
  EXPECT_EQ(rows.front()[2], 0.2);
  EXPECT_EQ(rows.back()[1], -0.3);
  EXPECT_EQ(rows.back()[2], 0.4);
  EXPECT_EQ(rows.front()[0], 0.0);
  const double d = geodesic_distance(SurfaceSpec::from_row(2, 1.0), ComplexNumber(0.1, 0.2),
                                     ComplexNumber(-0.3, 0.4));
  EXPECT_NEAR(rows.back()[0], d, 1e-12);
}

TEST(CliGeodesic, SvgToFile) {
  const auto path = std::filesystem::temp_directory_path() / "lorentzcc_cli_test.svg";
  const Outcome r = run({"geodesic", "--surface", "lorentz-pos", "--R", "1.5", "--eps", "0.5",
                     "--sigma", "0", "--format", "svg", "--out", path.string()});
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const std::string svg((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("viewBox=\"-3 -3 6 6\""), std::string::npos);
  // Geodesic, two limiting-curve branches and two null lines.
  std::size_t paths = 0;
  for (std::size_t at = svg.find("<path"); at != std::string::npos; at = svg.find("<path", at + 1))
    ++paths;
  EXPECT_EQ(paths, 5u);
  std::filesystem::remove(path);
}

TEST(CliDistance, PlainDecimal) {
  const Outcome r = run({"distance", "--surface", "def-neg", "--points", "0,0", "0.5,0"});
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_EQ(r.out, "1.09861228866811\n");
  EXPECT_EQ(run({"distance", "--surface", "lorentz-pos", "--points", "0.3,0.1", "0.3,0.1"}).out,
            "0\n");
}

TEST(CliDistance, MotionInvariance) {
  const std::vector<std::string> base = {"distance", "--surface", "def-pos", "--R", "2",
                                         "--points", "0.3,-0.5", "1.1,0.7"};
  auto moved = base;
  moved.insert(moved.end(), {"--apply-motion", "0.7,0.2,-0.4,0.3"});
  const Outcome a = run(base), b = run(moved);
  ASSERT_EQ(a.code, ok) << a.err;
  ASSERT_EQ(b.code, ok) << b.err;
  EXPECT_NEAR(std::stod(a.out), std::stod(b.out), 1e-12);
  // The motion really moved the points.
  const auto m = make_motion(SurfaceSpec::from_row(1, 2.0), ComplexNumber(0.7, 0.2),
                             ComplexNumber(-0.4, 0.3));
  EXPECT_GT(std::abs(lorentzcc::apply(m, ComplexNumber(0.3, -0.5)) - ComplexNumber(0.3, -0.5)),
            0.1);
}

TEST(CliWorldline, ColumnsAndInvariants) {
  const double g = 2.0, t0 = 0.5, x0 = -1.0;
  const Outcome r = run({"worldline", "--g", "2", "--t0", "0.5", "--x0", "-1", "--s-range", "-3,3",
                     "--samples", "601"});
  ASSERT_EQ(r.code, ok) << r.err;
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  EXPECT_EQ(header, "s,t,x,residual,velocity");
  ASSERT_EQ(rows.size(), 601u);
  const auto& mid = rows[300];
  EXPECT_EQ(mid[0], 0.0);
  EXPECT_EQ(mid[1], t0);
  EXPECT_EQ(mid[2], x0 + 1.0 / g);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_LT(std::abs(rows[i][3]), 1e-12);
    EXPECT_LT(std::abs(rows[i][4]), 1.0);
    if (i == 0 || i + 1 == rows.size()) continue;
    // Central difference dx/dt over neighbouring rows at spacing 0.01.
    const double fd = (rows[i + 1][2] - rows[i - 1][2]) / (rows[i + 1][1] - rows[i - 1][1]);
    EXPECT_NEAR(fd, rows[i][4], 1e-4);
  }
}

TEST(CliWorldline, NonPositiveAccelerationExitsTwo) {
  expect_error(run({"worldline", "--g", "0", "--s-range", "-1,1"}), "DomainError");
  expect_error(run({"worldline", "--g", "-1", "--s-range", "-1,1"}), "DomainError");
}

TEST(CliArguments, ParseErrorsExitTwo) {
  expect_error(run({}), "InvalidArguments");
  expect_error(run({"geodesic", "--bogus"}), "InvalidArguments");
  expect_error(run({"geodesic", "--surface", "torus", "--eps", "1"}), "InvalidArguments");
  expect_error(run({"geodesic", "--eps", "0.3", "--format", "png"}), "InvalidArguments");
  expect_error(run({"geodesic", "--surface", "def-pos", "--points", "0.1", "0.2,0.3"}),
               "DomainError");
  expect_error(run({"geodesic", "--surface", "def-pos", "--R", "-1", "--eps", "0.3"}),
               "DomainError");
  expect_error(run({"verify", "--tol", "no_such_check=1"}), "DomainError");
  EXPECT_EQ(run({"--help"}).code, ok);
}

TEST(CliLogging, EnvironmentSelectsLevel) {
  ::setenv("LORENTZCC_LOG", "debug", 1);
  const Outcome r = run({"distance", "--surface", "lorentz-neg", "--points", "0.1,0.05", "0.4,-0.1",
                     "--apply-motion", "1,0.1,0.05,0"});
  ::unsetenv("LORENTZCC_LOG");
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_NE(r.err.find("[debug]"), std::string::npos);
  const Outcome quiet = run({"distance", "--surface", "lorentz-neg", "--points", "0.1,0.05",
                         "0.4,-0.1", "--apply-motion", "1,0.1,0.05,0"});
  EXPECT_TRUE(quiet.err.empty());
}

TEST(CliVerify, DeterministicPerSeed) {
  const Outcome a = run({"verify", "--seed", "42", "--scale", "0.25"});
  const Outcome b = run({"verify", "--seed", "42", "--scale", "0.25"});
  ASSERT_EQ(a.code, ok) << a.out;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["criteria"].size(), 10u);
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const auto& c : j["criteria"]) {
    for (const auto& k : c["checks"]) {
      EXPECT_TRUE(k.contains("measured"));
      EXPECT_TRUE(k.contains("tolerance"));
    }
  }
}

TEST(CliVerify, MetricPerturbationIsCaught) {
  const Outcome r = run({"verify", "--scale", "0.25", "--perturb-metric", "1e-3"});
  EXPECT_EQ(r.code, verify_failed);
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["pass"].get<bool>());
  bool oracle_failed = false;
  for (const auto& c : j["criteria"])
    if (c["id"] == 3) oracle_failed = !c["pass"].get<bool>();
  EXPECT_TRUE(oracle_failed);
}

}  // namespace
}  // namespace lorentzcc::cli
