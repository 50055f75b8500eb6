#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ran/generator.hpp"
#include "ran/tree_metrics.hpp"

namespace ran {

/// Nonnegative fraction kept in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational reduced(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// P(X > t) = 3 / (2t + 3); t = 0 gives 1.
Rational waiting_survival_exact(std::uint64_t t);

/// Waiting-time experiment. After two steps the first face has been split
/// into A, B, C and A split again, leaving five faces; X counts further
/// steps until B or C is chosen, censored at `cutoff`.
struct SurvivalCurve {
  std::uint64_t trials = 0;
  std::uint64_t cutoff = 0;
  /// survivors[t] = number of trials with X > t, for t = 0..cutoff.
  std::vector<std::uint64_t> survivors;
  /// Mean of min(X, cutoff).
  double censored_mean = 0.0;

  double empirical(std::uint64_t t) const {
    return static_cast<double>(survivors.at(t)) / static_cast<double>(trials);
  }
  Rational exact(std::uint64_t t) const { return waiting_survival_exact(t); }
};

SurvivalCurve waiting_time_trials(std::uint64_t trials, std::uint64_t cutoff, std::uint64_t seed);

/// a (a + 1) ... (a + k - 1); 1 when k = 0. Throws std::overflow_error.
std::uint64_t rising_factorial(std::uint64_t a, std::uint64_t k);

/// ((k + 2)! / 2) (2t / s)^(k / 2).
double moment_bound(std::uint64_t s, std::uint64_t t, std::uint64_t k);

struct MomentCheck {
  std::uint64_t s = 0;  // insertion step of the tracked vertex (label s + 3)
  std::uint64_t t = 0;
  std::uint64_t k = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;
  bool passed = false;  // estimate - 4 stderr <= bound
};

/// Monte Carlo estimate of E[d_t(s)^(k)] for the vertex inserted at step s.
/// Requires 1 <= s <= t and k >= 1.
MomentCheck moment_bound_check(std::uint64_t s, std::uint64_t t, std::uint64_t k, std::uint64_t trials,
                               std::uint64_t seed);

/// Graph-level observables compared between enumeration and simulation.
struct OutcomeSummary {
  std::vector<std::uint32_t> degree_multiset;  // descending
  DepthHistogram depths;
  std::uint32_t diameter = 0;
};

OutcomeSummary summarize(const Generator& generator);

struct EnumeratedOutcome {
  std::vector<std::uint32_t> choices;  // face index picked at each step
  double probability = 0.0;
  std::vector<std::uint32_t> degrees;  // indexed by label; slot 0 unused
  OutcomeSummary summary;
};

struct EnumerationTable {
  std::uint64_t t = 0;
  /// (2t - 1)!!; every outcome has probability 1 / outcome_count.
  std::uint64_t outcome_count = 1;
  std::vector<EnumeratedOutcome> outcomes;
};

inline constexpr std::uint64_t kMaxEnumerationSteps = 6;

/// Every face-choice sequence of length t. Throws std::invalid_argument for t > 6.
EnumerationTable enumerate_small(std::uint64_t t);

/// Exact E[d_t(s)^(k)] from an enumeration table (t = table.t).
double exact_rising_moment(const EnumerationTable& table, std::uint64_t s, std::uint64_t k);

template <typename Key>
using Distribution = std::map<Key, double>;

struct Marginals {
  Distribution<std::vector<std::uint32_t>> degree_multiset;
  Distribution<DepthHistogram> depths;
  Distribution<std::uint32_t> diameter;
};

Marginals exact_marginals(const EnumerationTable& table);
Marginals simulated_marginals(std::uint64_t t, std::uint64_t trials, std::uint64_t seed);

/// Per-depth sample mean and standard error of F_t(k) over independent runs.
struct DepthMoments {
  std::vector<double> mean;    // indexed by depth
  std::vector<double> stderr_;
  std::uint64_t trials = 0;
};

DepthMoments simulate_depth_counts(std::uint64_t t, std::uint64_t trials, std::uint64_t seed);

}  // namespace ran
