#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace lorentzcc {

/// mt19937_64 with a fixed mapping to doubles so draws are identical on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// -1 or +1.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

struct VerifyConfig {
  std::uint64_t seed = 20240601;
  /// Multiplies the number of random draws; 1 gives the acceptance counts.
  double scale = 1.0;
  /// Overrides entries of default_tolerances() by name.
  std::map<std::string, double> tolerances;
  /// Mutation hook: perturbs the metric used by the geodesic integrator.
  double metric_perturbation = 0.0;
};

/// Named tolerances of the acceptance suite.
const std::map<std::string, double>& default_tolerances();

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool pass() const;
};

/// Runs acceptance criteria 1..10 concurrently; results are ordered by id.
/// Throws DomainError for an unknown tolerance name.
VerifyReport run_verification(const VerifyConfig& config);

/// One line per criterion: "PASS  3  Oracle equivalence  ...".
std::string summary_line(const CriterionResult& c);

}  // namespace lorentzcc
