#include "ran/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ran {

Rational Rational::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Rational waiting_survival_exact(std::uint64_t t) { return Rational::reduced(3, 2 * t + 3); }

SurvivalCurve waiting_time_trials(std::uint64_t trials, std::uint64_t cutoff, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  SurvivalCurve curve;
  curve.trials = trials;
  curve.cutoff = cutoff;
  // hits[x] = trials with X = x for x <= cutoff; the rest are censored.
  std::vector<std::uint64_t> hits(cutoff + 1, 0);
  long double censored_total = 0.0L;

  Generator gen(GeneratorConfig{0, seed}, Tracking{false, false});
  for (std::uint64_t i = 0; i < trials; ++i) {
    gen.reset(derive_seed(seed, i));
    gen.step_at(0);
    const std::size_t a = gen.step().face_index;
    // Slots 0..2 hold A, B, C after the first step; B and C never move
    // until one of them is picked.
    std::uint64_t x = 0;
    bool hit = false;
    while (x < cutoff) {
      ++x;
      const std::size_t picked = gen.step().face_index;
      if (picked < 3 && picked != a) {
        hit = true;
        break;
      }
    }
    if (hit) {
      ++hits[x];
      censored_total += static_cast<long double>(x);
    } else {
      censored_total += static_cast<long double>(cutoff);
    }
  }

  curve.survivors.assign(cutoff + 1, 0);
  std::uint64_t remaining = trials;
  for (std::uint64_t t = 0; t <= cutoff; ++t) {
    remaining -= hits[t];
    curve.survivors[t] = remaining;
  }
  curve.censored_mean = static_cast<double>(censored_total / static_cast<long double>(trials));
  return curve;
}

std::uint64_t rising_factorial(std::uint64_t a, std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t factor = 0;
    if (__builtin_add_overflow(a, i, &factor) || __builtin_mul_overflow(out, factor, &out)) {
      throw std::overflow_error("rising factorial " + std::to_string(a) + "^(" + std::to_string(k) +
                                ") overflows 64 bits");
    }
  }
  return out;
}

double moment_bound(std::uint64_t s, std::uint64_t t, std::uint64_t k) {
  double factorial = 1.0;
  for (std::uint64_t i = 2; i <= k + 2; ++i) factorial *= static_cast<double>(i);
  return factorial / 2.0 * std::pow(2.0 * static_cast<double>(t) / static_cast<double>(s), 0.5 * static_cast<double>(k));
}

MomentCheck moment_bound_check(std::uint64_t s, std::uint64_t t, std::uint64_t k, std::uint64_t trials,
                               std::uint64_t seed) {
  if (s < 1 || s > t) throw std::invalid_argument("moment check needs 1 <= s <= t");
  if (k < 1) throw std::invalid_argument("moment order k must be >= 1");
  if (trials < 2) throw std::invalid_argument("moment check needs at least 2 trials");

  MomentCheck check{s, t, k, trials};
  check.bound = moment_bound(s, t, k);
  const auto label = static_cast<Vertex>(s + 3);
  Generator gen(GeneratorConfig{0, seed}, Tracking{false, false});
  gen.reserve(t);
  long double sum = 0.0L, sum_sq = 0.0L;
  for (std::uint64_t i = 0; i < trials; ++i) {
    gen.reset(derive_seed(seed, i));
    gen.run(t);
    const auto value = static_cast<long double>(rising_factorial(gen.degree(label), k));
    sum += value;
    sum_sq += value * value;
  }
  const long double count = static_cast<long double>(trials);
  const long double mean = sum / count;
  const long double var = std::max(0.0L, (sum_sq - count * mean * mean) / (count - 1));
  check.estimate = static_cast<double>(mean);
  check.stderr_ = static_cast<double>(std::sqrt(var / count));
  check.passed = check.estimate - 4.0 * check.stderr_ <= check.bound;
  return check;
}

// ---------------------------------------------------------------------------

namespace {

// Diameter of a graph on at most 16 vertices, from neighbor bitmasks.
std::uint32_t small_diameter(std::span<const Edge> edges, std::size_t n) {
  std::array<std::uint32_t, 17> adj{};
  for (const auto& [u, v] : edges) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  const std::uint32_t all = ((1u << (n + 1)) - 1) & ~1u;
  std::uint32_t diameter = 0;
  for (std::size_t s = 1; s <= n; ++s) {
    std::uint32_t seen = 1u << s, frontier = seen, ecc = 0;
    while (seen != all) {
      std::uint32_t next = 0;
      for (std::size_t v = 1; v <= n; ++v) {
        if (frontier & (1u << v)) next |= adj[v];
      }
      frontier = next & ~seen;
      if (frontier == 0) throw Error("disconnected graph in enumeration");
      seen |= frontier;
      ++ecc;
    }
    diameter = std::max(diameter, ecc);
  }
  return diameter;
}

}  // namespace

OutcomeSummary summarize(const Generator& generator) {
  OutcomeSummary out;
  const auto degrees = generator.degree_table();
  out.degree_multiset.assign(degrees.begin() + 1, degrees.end());
  std::sort(out.degree_multiset.begin(), out.degree_multiset.end(), std::greater<>());
  out.depths = face_depth_histogram(generator.faces());
  if (generator.n() <= 16) {
    out.diameter = small_diameter(generator.edges(), generator.n());
  } else {
    out.diameter = diameter_exact(generator.graph());
  }
  return out;
}

EnumerationTable enumerate_small(std::uint64_t t) {
  if (t > kMaxEnumerationSteps) {
    throw std::invalid_argument("enumeration is limited to t <= " + std::to_string(kMaxEnumerationSteps));
  }
  EnumerationTable table;
  table.t = t;
  for (std::uint64_t j = 1; j <= t; ++j) table.outcome_count *= 2 * j - 1;
  const double probability = 1.0 / static_cast<double>(table.outcome_count);
  table.outcomes.reserve(table.outcome_count);

  std::vector<std::uint32_t> choices;
  std::function<void(const Generator&)> descend = [&](const Generator& gen) {
    if (gen.t() == t) {
      EnumeratedOutcome outcome;
      outcome.choices = choices;
      outcome.probability = probability;
      outcome.degrees.assign(gen.degree_table().begin(), gen.degree_table().end());
      outcome.summary = summarize(gen);
      table.outcomes.push_back(std::move(outcome));
      return;
    }
    for (std::size_t i = 0; i < gen.faces().count(); ++i) {
      Generator child = gen;
      child.step_at(i);
      choices.push_back(static_cast<std::uint32_t>(i));
      descend(child);
      choices.pop_back();
    }
  };
  descend(Generator(GeneratorConfig{}, Tracking{true, false}));
  return table;
}

double exact_rising_moment(const EnumerationTable& table, std::uint64_t s, std::uint64_t k) {
  if (s < 1 || s > table.t) throw std::invalid_argument("need 1 <= s <= t");
  const auto label = static_cast<std::size_t>(s + 3);
  long double sum = 0.0L;
  for (const auto& o : table.outcomes) {
    sum += static_cast<long double>(o.probability) * static_cast<long double>(rising_factorial(o.degrees[label], k));
  }
  return static_cast<double>(sum);
}

Marginals exact_marginals(const EnumerationTable& table) {
  Marginals m;
  for (const auto& o : table.outcomes) {
    m.degree_multiset[o.summary.degree_multiset] += o.probability;
    m.depths[o.summary.depths] += o.probability;
    m.diameter[o.summary.diameter] += o.probability;
  }
  return m;
}

Marginals simulated_marginals(std::uint64_t t, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  std::map<std::vector<std::uint32_t>, std::uint64_t> degree_counts;
  std::map<DepthHistogram, std::uint64_t> depth_counts;
  std::map<std::uint32_t, std::uint64_t> diameter_counts;
  Generator gen(GeneratorConfig{0, seed}, Tracking{true, false});
  for (std::uint64_t i = 0; i < trials; ++i) {
    gen.reset(derive_seed(seed, i));
    gen.run(t);
    auto summary = summarize(gen);
    ++degree_counts[std::move(summary.degree_multiset)];
    ++depth_counts[std::move(summary.depths)];
    ++diameter_counts[summary.diameter];
  }
  const double n = static_cast<double>(trials);
  Marginals m;
  for (const auto& [k, c] : degree_counts) m.degree_multiset[k] = static_cast<double>(c) / n;
  for (const auto& [k, c] : depth_counts) m.depths[k] = static_cast<double>(c) / n;
  for (const auto& [k, c] : diameter_counts) m.diameter[k] = static_cast<double>(c) / n;
  return m;
}

}  // namespace ran

namespace ran {

DepthMoments simulate_depth_counts(std::uint64_t t, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("need at least 2 trials");
  std::vector<long double> sum(t + 2, 0.0L), sum_sq(t + 2, 0.0L);
  std::vector<std::uint64_t> counts(t + 2, 0);
  Generator gen(GeneratorConfig{0, seed}, Tracking{false, false});
  gen.reserve(t);
  for (std::uint64_t i = 0; i < trials; ++i) {
    gen.reset(derive_seed(seed, i));
    gen.run(t);
    std::fill(counts.begin(), counts.end(), 0);
    for (const auto& f : gen.faces().active()) ++counts[f.depth];
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const auto c = static_cast<long double>(counts[k]);
      sum[k] += c;
      sum_sq[k] += c * c;
    }
  }
  DepthMoments out;
  out.trials = trials;
  const auto n = static_cast<long double>(trials);
  std::size_t last = 0;
  for (std::size_t k = 0; k < sum.size(); ++k) {
    if (sum[k] > 0) last = k;
  }
  out.mean.resize(last + 1);
  out.stderr_.resize(last + 1);
  for (std::size_t k = 0; k <= last; ++k) {
    const long double mean = sum[k] / n;
    const long double var = std::max(0.0L, (sum_sq[k] - n * mean * mean) / (n - 1));
    out.mean[k] = static_cast<double>(mean);
    out.stderr_[k] = static_cast<double>(std::sqrt(var / n));
  }
  return out;
}

}  // namespace ran
