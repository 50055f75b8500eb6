#include "ran/report.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

namespace ran {

using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kDiameterStream = 0xd1a3;
constexpr std::uint64_t kPairStream = 0x9a12;

double ln_or_zero(std::uint64_t t) { return t >= 2 ? std::log(static_cast<double>(t)) : 0.0; }

}  // namespace

StatsReport analyze(const Generated& generated, const AnalysisOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const RanGraph& graph = generated.graph;
  StatsReport r;
  r.t = graph.t();
  r.seed = graph.seed().value_or(0);
  r.counts = {graph.n(), graph.m(), generated.faces.count()};
  r.valid = r.counts.n == r.t + 3 && r.counts.m == 3 * r.t + 3 && r.counts.faces == 2 * r.t + 1;

  const std::size_t k = std::min<std::size_t>(options.k, graph.n());
  r.degrees.top_k = top_k_degrees(graph, k);
  r.degrees.histogram = degree_histogram(graph);
  try {
    r.degrees.alpha_hat = fit_power_law_exponent(r.degrees.histogram, options.d_min);
  } catch (const Error&) {
    r.degrees.alpha_hat.reset();
  }
  if (options.eigen) r.spectral = top_k_eigenvalues(graph, k, options.tol);

  r.depth = depth_profile(generated.genealogy, r.t);

  Engine diameter_rng(derive_seed(r.seed, kDiameterStream));
  r.diameter = diameter_estimate(graph, diameter_rng);
  if (graph.n() <= kExactDiameterLimit) {
    r.diameter.exact = diameter_exact(graph);
    r.diameter.method = "all_pairs";
  }
  r.diameter.tree_height = tree_height(generated.genealogy);

  if (r.t >= 2 && options.pairs > 0) {
    Engine pair_rng(derive_seed(r.seed, kPairStream));
    r.typical = typical_distance(graph, options.pairs, pair_rng);
  }
  r.constants = solve_eta_rho();
  r.timing.analyze_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return r;
}

ordered_json to_json(const SpectralReport& spectral, const std::vector<DegreeEntry>& top_k) {
  ordered_json j;
  ordered_json degrees = ordered_json::array();
  for (const auto& e : top_k) degrees.push_back(e.degree);
  j["top_k"] = degrees;
  j["lambdas"] = spectral.lambdas;
  j["ratios"] = spectral.ratios;
  j["residuals"] = spectral.residuals;
  j["iterations"] = spectral.iterations;
  j["solver_tol"] = spectral.solver_tol;
  j["converged"] = spectral.converged;
  return j;
}

ordered_json to_json(const DiameterResult& d) {
  ordered_json j;
  j["exact"] = d.exact ? ordered_json(*d.exact) : ordered_json(nullptr);
  j["lower"] = d.lower;
  j["upper"] = d.upper;
  j["method"] = d.method;
  j["tree_height"] = d.tree_height ? ordered_json(*d.tree_height) : ordered_json(nullptr);
  j["bfs_count"] = d.bfs_count;
  return j;
}

ordered_json to_json(const Constants& c) {
  ordered_json j;
  j["eta"] = c.eta;
  j["rho"] = c.rho;
  j["residual"] = c.residual;
  j["equation"] = "eta - 1 - ln(eta) = ln(3)";
  return j;
}

ordered_json to_json(const StatsReport& r) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["t"] = r.t;
  j["seed"] = r.seed;
  j["log_base"] = "ln";
  j["valid"] = r.valid;
  j["counts"] = {{"n", r.counts.n}, {"m", r.counts.m}, {"faces", r.counts.faces}};

  ordered_json top = ordered_json::array(), top_vertices = ordered_json::array();
  for (const auto& e : r.degrees.top_k) {
    top.push_back(e.degree);
    top_vertices.push_back(e.vertex);
  }
  j["top_k"] = top;
  j["top_k_vertices"] = top_vertices;
  if (r.spectral) {
    j["lambdas"] = r.spectral->lambdas;
    j["ratios"] = r.spectral->ratios;
    j["eigen"] = {{"residuals", r.spectral->residuals},
                  {"iterations", r.spectral->iterations},
                  {"solver_tol", r.spectral->solver_tol},
                  {"converged", r.spectral->converged}};
  } else {
    j["lambdas"] = ordered_json::array();
    j["ratios"] = ordered_json::array();
  }
  j["alpha_hat"] = r.degrees.alpha_hat ? ordered_json(*r.degrees.alpha_hat) : ordered_json(nullptr);

  ordered_json depth = ordered_json::array();
  const std::size_t max_depth = std::max<std::size_t>(r.depth.k_star, r.depth.expected.size() - 1);
  for (std::size_t k = 1; k <= max_depth; ++k) {
    const auto it = r.depth.empirical.find(static_cast<std::uint32_t>(k));
    const std::uint64_t empirical = it == r.depth.empirical.end() ? 0 : it->second;
    const double expected = k < r.depth.expected.size() ? static_cast<double>(r.depth.expected[k]) : 0.0;
    depth.push_back({{"depth", k}, {"empirical", empirical}, {"expected", expected}});
  }
  j["depth_profile"] = {{"k_star", r.depth.k_star}, {"rows", depth}};

  j["diameter"] = to_json(r.diameter);
  const double ln_t = ln_or_zero(r.t);
  ordered_json diag;
  if (ln_t > 0) {
    const std::uint32_t d = r.diameter.exact.value_or(r.diameter.upper);
    diag["diameter_over_ln_t"] = d / ln_t;
    diag["tree_height_over_ln_t"] = r.diameter.tree_height.value_or(0) / ln_t;
  }
  diag["eta_over_2"] = r.constants.eta / 2;
  diag["rho_over_2"] = r.constants.rho / 2;
  j["diagnostics"] = diag;

  if (r.typical) {
    j["typical_distance"] = {{"mean", r.typical->mean},
                             {"mean_over_ln_n", r.typical->mean_over_ln_n},
                             {"pairs", r.typical->pairs},
                             {"limit", TypicalDistance::kLimit}};
  } else {
    j["typical_distance"] = nullptr;
  }
  j["constants"] = to_json(r.constants);
  j["timing"] = {{"generate_ms", r.timing.generate_ms}, {"analyze_ms", r.timing.analyze_ms}};
  return j;
}

ordered_json to_json(const SurvivalCurve& curve) {
  ordered_json rows = ordered_json::array();
  for (std::uint64_t t = 0; t <= curve.cutoff; ++t) {
    const auto exact = curve.exact(t);
    rows.push_back({{"t", t}, {"exact_num", exact.num}, {"exact_den", exact.den}, {"empirical", curve.empirical(t)}});
  }
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["trials"] = curve.trials;
  j["cutoff"] = curve.cutoff;
  j["censored_mean"] = curve.censored_mean;
  j["survival"] = rows;
  return j;
}

ordered_json to_json(const EnumerationTable& table) {
  ordered_json outcomes = ordered_json::array();
  for (const auto& o : table.outcomes) {
    ordered_json depths = ordered_json::object();
    for (const auto& [depth, count] : o.summary.depths) depths[std::to_string(depth)] = count;
    outcomes.push_back({{"choices", o.choices},
                        {"probability", o.probability},
                        {"degrees", std::vector<std::uint32_t>(o.degrees.begin() + 1, o.degrees.end())},
                        {"degree_multiset", o.summary.degree_multiset},
                        {"depths", depths},
                        {"diameter", o.summary.diameter}});
  }
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["t"] = table.t;
  j["outcome_count"] = table.outcome_count;
  j["outcomes"] = outcomes;
  return j;
}

ordered_json graph_to_json(const RanGraph& graph) {
  ordered_json edges = ordered_json::array();
  for (const auto& [u, v] : graph.edges()) edges.push_back({u, v});
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["t"] = graph.t();
  j["seed"] = graph.seed() ? ordered_json(*graph.seed()) : ordered_json(nullptr);
  j["n"] = graph.n();
  j["m"] = graph.m();
  j["edges"] = edges;
  return j;
}

void write_histogram_csv(const DegreeHistogram& histogram, std::ostream& out) {
  out << "degree,count\n";
  for (const auto& [degree, count] : histogram) out << degree << ',' << count << '\n';
}

void write_depth_csv(const DepthProfile& profile, std::ostream& out) {
  out << "depth,empirical,expected\n";
  const std::size_t max_depth = std::max<std::size_t>(profile.k_star, profile.expected.size() - 1);
  const auto old_precision = out.precision(17);
  for (std::size_t k = 1; k <= max_depth; ++k) {
    const auto it = profile.empirical.find(static_cast<std::uint32_t>(k));
    const std::uint64_t empirical = it == profile.empirical.end() ? 0 : it->second;
    const double expected = k < profile.expected.size() ? static_cast<double>(profile.expected[k]) : 0.0;
    out << k << ',' << empirical << ',' << expected << '\n';
  }
  out.precision(old_precision);
}

void write_survival_csv(const SurvivalCurve& curve, std::ostream& out) {
  out << "t,exact_num,exact_den,empirical\n";
  const auto old_precision = out.precision(17);
  for (std::uint64_t t = 0; t <= curve.cutoff; ++t) {
    const auto exact = curve.exact(t);
    out << t << ',' << exact.num << ',' << exact.den << ',' << curve.empirical(t) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace ran
