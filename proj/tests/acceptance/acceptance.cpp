// One PASS/FAIL line per acceptance criterion.
//
// Usage: acceptance [--expect-fail N[,N...]]
// Exit status is 0 when the set of failing criteria equals the expected set.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ran/generator.hpp"
#include "ran/spectra.hpp"
#include "ran/stochastics.hpp"
#include "ran/tree_metrics.hpp"

using namespace ran;

namespace {

constexpr double kSigmas = 4.0;
constexpr std::uint64_t kBaseSeed = 20240607;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << "FIRST FAILURE: " << what << "; ";
    passed = passed && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double peak_rss_mib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / 1024.0;  // ru_maxrss is KiB on Linux
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool within(double freq, double p, std::uint64_t trials) {
  return std::abs(freq - p) <= kSigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) + 1e-12;
}

template <typename Key>
std::size_t compare_cells(Outcome& o, const Distribution<Key>& exact, const Distribution<Key>& sim,
                          std::uint64_t trials, const std::string& what) {
  std::set<Key> keys;
  for (const auto& [k, p] : exact) keys.insert(k);
  for (const auto& [k, p] : sim) keys.insert(k);
  for (const auto& k : keys) {
    const double p = exact.count(k) ? exact.at(k) : 0.0;
    const double f = sim.count(k) ? sim.at(k) : 0.0;
    o.require(within(f, p, trials), what + " cell p=" + std::to_string(p) + " f=" + std::to_string(f));
  }
  return keys.size();
}

// Generation: counts for every (t, seed); time and peak memory at t = 10^6.
Outcome criterion1() {
  Outcome o;
  double worst_seconds = 0;
  for (std::uint64_t t : {0ULL, 1ULL, 10ULL, 1000ULL, 1000000ULL}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto start = std::chrono::steady_clock::now();
      const auto g = generate({t, seed});
      const double secs = seconds_since(start);
      if (t == 1000000) worst_seconds = std::max(worst_seconds, secs);
      o.require(g.graph.n() == t + 3 && g.graph.m() == 3 * t + 3 && g.faces.count() == 2 * t + 1,
                "counts t=" + std::to_string(t) + " seed=" + std::to_string(seed));
    }
  }
  const double rss = peak_rss_mib();
  o.require(worst_seconds <= 5.0, "generation time");
  o.require(rss <= 1024.0, "peak memory");
  o.detail << "25 instances; t=1e6 slowest " << worst_seconds << " s (limit 5), peak RSS " << rss
           << " MiB (limit 1024)";
  return o;
}

Outcome criterion2() {
  Outcome o;
  constexpr std::uint64_t trials = 1000000;
  std::size_t cells = 0;
  for (std::uint64_t t = 1; t <= 5; ++t) {
    const auto exact = exact_marginals(enumerate_small(t));
    const auto sim = simulated_marginals(t, trials, derive_seed(kBaseSeed, 2000 + t));
    const std::string tag = "t=" + std::to_string(t);
    cells += compare_cells(o, exact.degree_multiset, sim.degree_multiset, trials, tag + " degrees");
    cells += compare_cells(o, exact.depths, sim.depths, trials, tag + " depths");
    cells += compare_cells(o, exact.diameter, sim.diameter, trials, tag + " diameter");
  }
  const double e = exact_rising_moment(enumerate_small(3), 1, 1);
  o.require(std::abs(e - 4.8) < 1e-12, "E[d_3] of the first inserted vertex");
  o.detail << cells << " cells within 4 sigma at 1e6 trials, t=1..5; E[d_3(1)]=" << e;
  return o;
}

Outcome criterion3() {
  Outcome o;
  constexpr std::uint64_t trials = 1000000;
  const auto curve = waiting_time_trials(trials, 20, derive_seed(kBaseSeed, 3000));
  double worst = 0;
  for (std::uint64_t t = 1; t <= 20; ++t) {
    const double p = curve.exact(t).value();
    const double z = (curve.empirical(t) - p) / std::sqrt(p * (1 - p) / trials);
    worst = std::max(worst, std::abs(z));
    o.require(std::abs(z) <= kSigmas, "P(X>" + std::to_string(t) + ")");
  }
  std::vector<double> means;
  for (std::uint64_t cutoff : {100ULL, 1000ULL, 10000ULL}) {
    means.push_back(waiting_time_trials(trials, cutoff, derive_seed(kBaseSeed, 3000 + cutoff)).censored_mean);
  }
  o.require(means[0] < means[1] && means[1] < means[2], "censored mean growth");
  o.detail << "max |z| over t=1..20: " << worst << "; censored means " << means[0] << " < " << means[1] << " < "
           << means[2];
  return o;
}

Outcome criterion4() {
  Outcome o;
  constexpr std::uint64_t trials = 100000;
  double tightest = 0;
  std::size_t index = 0;
  for (std::uint64_t s : {1ULL, 5ULL, 10ULL}) {
    for (std::uint64_t t : {50ULL, 100ULL}) {
      for (std::uint64_t k : {1ULL, 2ULL, 3ULL}) {
        const auto m = moment_bound_check(s, t, k, trials, derive_seed(kBaseSeed, 4000 + index++));
        tightest = std::max(tightest, m.estimate / m.bound);
        o.require(m.passed, "s=" + std::to_string(s) + " t=" + std::to_string(t) + " k=" + std::to_string(k));
      }
    }
  }
  std::size_t exact_cells = 0;
  for (std::uint64_t t = 1; t <= 5; ++t) {
    const auto table = enumerate_small(t);
    for (std::uint64_t s = 1; s <= t; ++s) {
      for (std::uint64_t k = 1; k <= 3; ++k, ++exact_cells) {
        o.require(exact_rising_moment(table, s, k) <= moment_bound(s, t, k), "exact cell");
      }
    }
  }
  o.detail << "18 Monte Carlo cells at 1e5 trials (max estimate/bound " << tightest << "); " << exact_cells
           << " exact cells within the bound";
  return o;
}

Outcome criterion5() {
  Outcome o;
  constexpr std::uint64_t t = 10000;
  const double ln_t = std::log(static_cast<double>(t));
  const double gap = std::sqrt(static_cast<double>(t)) / ln_t;
  int inside = 0, gaps = 0;
  double lo = 1e9, hi = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto g = generate({t, derive_seed(kBaseSeed, 5000 + seed)});
    const auto top = top_k_degrees(g.graph, 3);
    o.require(top[0].degree >= top[1].degree && top[1].degree >= top[2].degree, "top-3 order");
    const double r = top[0].degree / std::sqrt(static_cast<double>(t));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    inside += r >= 1.0 / ln_t && r <= ln_t;
    gaps += top[0].degree >= top[1].degree + gap && top[1].degree >= top[2].degree + gap;
  }
  o.require(inside >= 95, "pass rate");
  o.detail << inside << "/100 seeds with Delta1/sqrt(t) in [1/ln t, ln t] = [" << 1.0 / ln_t << ", " << ln_t
           << "]; observed range [" << lo << ", " << hi << "]; gaps Delta_{i-1} - Delta_i >= sqrt(t)/ln t for i=2,3 in "
           << gaps << "/100 (reported only)";
  return o;
}

Outcome criterion6() {
  Outcome o;
  constexpr std::uint64_t t = 100000;
  std::vector<std::vector<double>> ratios(3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = generate({t, derive_seed(kBaseSeed, 6000 + seed)});
    const auto r = top_k_eigenvalues(g.graph, 3);
    const auto top = top_k_degrees(g.graph, 1);
    o.require(r.converged, "solver convergence");
    o.require(r.lambdas[0] >= std::sqrt(static_cast<double>(top[0].degree)), "lambda1 >= sqrt(Delta1)");
    for (int i = 0; i < 3; ++i) ratios[i].push_back(r.ratios[i]);
  }
  o.detail << "medians";
  for (int i = 0; i < 3; ++i) {
    const double m = median(ratios[i]);
    o.require(m >= 1.0 && m <= 1.2, "median ratio " + std::to_string(i + 1));
    o.detail << ' ' << m;
  }
  const auto k3 = top_k_eigenvalues(generate({0, 1}).graph, 1);
  const auto k4 = top_k_eigenvalues(generate({1, 1}).graph, 1);
  const double e3 = std::abs(k3.lambdas[0] - 2.0), e4 = std::abs(k4.lambdas[0] - 3.0);
  o.require(e3 <= 1e-8 && e4 <= 1e-8, "complete graphs");
  o.detail << " in [1.0, 1.2]; K3 error " << e3 << ", K4 error " << e4;
  return o;
}

Outcome criterion7() {
  Outcome o;
  constexpr std::uint64_t t = 50, trials = 100000;
  const auto dp = expected_depth_profile(t);
  const auto mc = simulate_depth_counts(t, trials, derive_seed(kBaseSeed, 7000));
  double worst_z = 0;
  for (std::size_t k = 1; k < std::max(dp.size(), mc.mean.size()); ++k) {
    const double e = k < dp.size() ? static_cast<double>(dp[k]) : 0.0;
    const double m = k < mc.mean.size() ? mc.mean[k] : 0.0;
    const double se = k < mc.stderr_.size() ? mc.stderr_[k] : 0.0;
    const double sigma = std::max(se, std::sqrt(e / trials));
    if (sigma > 0) worst_z = std::max(worst_z, std::abs(m - e) / sigma);
    o.require(std::abs(m - e) <= kSigmas * sigma + 1e-12, "depth " + std::to_string(k) + " Monte Carlo");
  }
  double worst_sum = 0;
  for (std::uint64_t n : {0ULL, 1ULL, 50ULL, 1000ULL, 100000ULL, 1000000ULL}) {
    long double total = 0;
    for (long double e : expected_depth_profile(n)) total += e;
    worst_sum = std::max(worst_sum, std::abs(static_cast<double>(total) - (2.0 * n + 1)));
  }
  o.require(worst_sum <= 1e-9, "sum of expectations");
  o.detail << "t=50 max |z| " << worst_z << "; max |sum - (2t+1)| " << worst_sum << "; ";

  // Per-depth bound (1/k!)(ln t / 2)^k, evaluated in log space. Reported
  // alongside: 3^(k-1) H^(k-2) / (k-2)!, H = sum_{j=1}^{t-1} 1/(2j+1), read
  // off the generating function x * 3x * prod_j (1 - p_j + 3x p_j).
  std::size_t violations = 0, checked = 0;
  double worst_log_ratio = 0;
  bool tripled_holds = true;
  for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
    const auto profile = expected_depth_profile(n);
    const long double half_ln = 0.5L * std::log(static_cast<long double>(n));
    long double h = 0;
    for (std::uint64_t j = 1; j < n; ++j) h += 1.0L / (2.0L * j + 1.0L);
    for (std::size_t k = 1; k < profile.size(); ++k) {
      if (profile[k] <= 0) continue;
      ++checked;
      const long double log_bound = k * std::log(half_ln) - std::lgamma(static_cast<long double>(k) + 1);
      const long double log_ratio = std::log(profile[k]) - log_bound;
      if (log_ratio > 0) ++violations;
      worst_log_ratio = std::max(worst_log_ratio, static_cast<double>(log_ratio));
      if (k >= 2) {
        const long double log_tripled = (k - 1) * std::log(3.0L) + (k - 2) * std::log(h) -
                                        std::lgamma(static_cast<long double>(k) - 1);
        tripled_holds = tripled_holds && std::log(profile[k]) <= log_tripled + 1e-9L;
      }
    }
  }
  o.require(violations == 0, "per-depth bound (1/k!)(ln t/2)^k");
  o.detail << "bound (1/k!)(ln t/2)^k violated at " << violations << "/" << checked
           << " (t,k) cells for t in {1e3..1e6}, worst DP/bound = e^" << worst_log_ratio
           << "; 3^(k-1)H^(k-2)/(k-2)! " << (tripled_holds ? "holds" : "fails") << " everywhere";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t instances = 0, exact_checks = 0;
  for (std::uint64_t t : {10ULL, 100ULL, 1000ULL}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto g = generate({t, derive_seed(kBaseSeed, 8000 + 100 * t + seed)});
      Engine rng(derive_seed(kBaseSeed, 8500 + seed));
      const auto est = diameter_estimate(g.graph, rng);
      const auto d = diameter_exact(g.graph);
      o.require(est.lower <= d && d <= est.upper, "bounds bracket exact");
      o.require(d <= 2 * tree_height(g.genealogy), "d <= 2 height");
      ++instances;
      ++exact_checks;
    }
  }
  o.detail << exact_checks << " bracket checks; d/ln t, height/ln t:";
  for (std::uint64_t t : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
    const double ln_t = std::log(static_cast<double>(t));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto g = generate({t, derive_seed(kBaseSeed, 8900 + seed)});
      Engine rng(derive_seed(kBaseSeed, 8950 + seed));
      const auto est = diameter_estimate(g.graph, rng);
      const auto height = tree_height(g.genealogy);
      o.require(est.upper <= 2 * height, "d <= 2 height");
      o.require(est.upper <= 3 * ln_t, "d <= 3 ln t at t=" + std::to_string(t));
      ++instances;
      if (seed == 1) {
        o.detail << " t=" << t << ": " << est.upper / ln_t << ", " << height / ln_t
                 << (est.lower == est.upper ? "" : " (upper bound)");
      }
    }
  }
  const auto c = solve_eta_rho();
  o.detail << "; eta/2=" << c.eta / 2 << " rho/2=" << c.rho / 2 << "; " << instances << " instances";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto c = solve_eta_rho();
  o.require(c.residual < 1e-12, "residual");
  o.require(c.eta > 3.2892 && c.eta < 3.2894, "range");
  o.require(std::abs(c.rho - 1.0 / c.eta) <= 1e-15, "rho = 1/eta");
  char buf[160];
  std::snprintf(buf, sizeof buf, "eta=%.12f rho=%.12f residual=%.2e", c.eta, c.rho, c.residual);
  o.detail << buf;
  return o;
}

Outcome criterion10() {
  Outcome o;
  constexpr std::uint64_t t = 100000;
  o.detail << "mean d/ln n:";
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto g = generate({t, derive_seed(kBaseSeed, 10000 + seed)});
    Engine rng(derive_seed(kBaseSeed, 10100 + seed));
    const auto td = typical_distance(g.graph, 1000, rng);
    o.require(td.mean_over_ln_n >= 0.40 && td.mean_over_ln_n <= 0.70, "window");
    o.detail << ' ' << td.mean_over_ln_n;
  }
  o.detail << " in [0.40, 0.70]; limit 6/11=" << TypicalDistance::kLimit;
  return o;
}

std::set<int> parse_expected(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") != 0) continue;
    std::stringstream list(argv[i + 1]);
    for (std::string item; std::getline(list, item, ',');) expected.insert(std::stoi(item));
  }
  return expected;
}

}  // namespace

int main(int argc, char** argv) {
  const std::set<int> expected = parse_expected(argc, argv);
  // Criterion 1 runs first so the peak-RSS reading reflects generation alone.
  Outcome (*const criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                   criterion6, criterion7, criterion8, criterion9, criterion10};
  std::set<int> failed;
  for (int i = 0; i < 10; ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = criteria[i]();
    if (!o.passed) failed.insert(i + 1);
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", seconds_since(start));
    std::cout << "AC" << (i + 1) << (i + 1 < 10 ? "  " : " ") << (o.passed ? "PASS" : "FAIL") << "  [" << timing
              << "]  " << o.detail.str() << std::endl;
  }
  std::cout << (10 - failed.size()) << "/10 criteria passed";
  if (!expected.empty()) {
    std::cout << "; expected failures:";
    for (int e : expected) std::cout << " AC" << e;
  }
  std::cout << std::endl;
  return failed == expected ? 0 : 1;
}
