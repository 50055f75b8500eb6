#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ran/generator.hpp"

namespace ran {

struct VerifyOptions {
  std::vector<std::uint64_t> t_list{0, 1, 2, 5, 10, 100, 300, 1000};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  /// Monte Carlo trials for the statistical checks.
  std::uint64_t trials = 100000;
  std::uint64_t mc_seed = 20240607;
  /// Face sampler used by the generation checks; empty means uniform.
  /// Exposed so tests can confirm that a biased sampler is caught.
  FaceSampler sampler;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Names of every check, in the order run_verify reports them.
const std::vector<std::string>& verify_check_names();

VerifyReport run_verify(const VerifyOptions& options);

void print_verify_table(const VerifyReport& report, std::ostream& out);

}  // namespace ran
