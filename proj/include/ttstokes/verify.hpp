#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ttstokes {

struct SuiteResult {
  std::string suite;
  int n_plus_1 = 3;
  bool passed = false;
  double max_residual = 0.0;
  double threshold = 0.0;
  int samples = 0;
  std::string message;
};

struct VerifyOptions {
  int n_min = 3;
  int n_max = 10;
  int samples = 20;
  std::uint64_t seed = 1;
  std::optional<double> tol;  // replaces every suite threshold when set
  std::vector<std::string> suites;  // empty means all
};

std::vector<std::string> suite_names();
bool suite_applies(const std::string& suite, int n_plus_1);
SuiteResult run_suite(const std::string& suite, int n_plus_1, int samples, std::uint64_t seed,
                      std::optional<double> tol = std::nullopt);
// Sorted by suite name, then n+1.
std::vector<SuiteResult> run_suites(const VerifyOptions& opts);

}  // namespace ttstokes
