#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ran/generator.hpp"
#include "ran/io.hpp"
#include "ran/report.hpp"
#include "ran/spectra.hpp"
#include "ran/stochastics.hpp"
#include "ran/tree_metrics.hpp"
#include "ran/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

constexpr std::uint64_t kEstimateStream = 0xd1a3;

struct Options {
  std::uint64_t t = 0;
  std::uint64_t seed = 0;
  std::size_t k = 3;
  std::uint64_t trials = 100000;
  std::uint64_t cutoff = 20;
  std::string format = "json";
  std::string output;
  double tol = ran::kDefaultEigenTol;
  std::size_t pairs = 1000;
  bool skip_eigen = false;
  std::vector<std::uint64_t> t_list;
  std::vector<std::uint64_t> seed_list;
};

// Writes to --output when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path, bool binary = false) {
    if (path.empty() || path == "-") return;
    file_.open(path, binary ? std::ios::out | std::ios::binary | std::ios::trunc : std::ios::out | std::ios::trunc);
    if (!file_) throw ran::Error("cannot open output file " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

ran::GeneratorConfig config_for(const Options& o) { return {o.t, o.seed, ran::memory_limit_from_env()}; }

void write_json(const nlohmann::ordered_json& j, const Options& o) {
  Sink sink(o.output);
  sink.stream() << j.dump(2) << '\n';
}

int cmd_generate(const Options& o) {
  const auto g = ran::generate(config_for(o));
  const bool binary = o.format == "binary";
  Sink sink(o.output, binary);
  auto& out = sink.stream();
  if (o.format == "edgelist") {
    ran::export_edges(g.graph, out);
  } else if (binary) {
    ran::write_snapshot(g.graph, out);
  } else if (o.format == "csv") {
    out << "u,v\n";
    for (const auto& [u, v] : g.graph.edges()) out << u << ',' << v << '\n';
  } else {
    out << ran::graph_to_json(g.graph).dump(2) << '\n';
  }
  out.flush();
  return kExitOk;
}

int cmd_stats(const Options& o) {
  const auto started = std::chrono::steady_clock::now();
  const auto g = ran::generate(config_for(o));
  const double generate_ms = elapsed_ms(started);
  ran::AnalysisOptions analysis;
  analysis.k = o.k;
  analysis.tol = o.tol;
  analysis.eigen = !o.skip_eigen;
  analysis.pairs = o.pairs;
  auto report = ran::analyze(g, analysis);
  report.timing.generate_ms = generate_ms;
  if (o.format == "csv") {
    Sink sink(o.output);
    ran::write_histogram_csv(report.degrees.histogram, sink.stream());
    return kExitOk;
  }
  write_json(ran::to_json(report), o);
  return kExitOk;
}

int cmd_eigen(const Options& o) {
  const auto g = ran::generate(config_for(o));
  const std::size_t k = std::min<std::size_t>(o.k, g.graph.n());
  const auto r = ran::eigen_ratio_report(g.graph, k, o.tol);
  const auto fields = ran::to_json(r.spectral, r.top_k);
  nlohmann::ordered_json out;
  out["schema"] = ran::kSchemaVersion;
  out["t"] = o.t;
  out["seed"] = o.seed;
  out["k"] = k;
  for (const auto& [key, value] : fields.items()) out[key] = value;
  const auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  out["lambda1_h"] = opt(r.lambda1_h);
  out["lambda1_h_over_t_quarter"] = opt(r.lambda1_h_over_t_quarter);
  out["lambda1_f"] = opt(r.lambda1_f);
  write_json(out, o);
  return kExitOk;
}

int cmd_diameter(const Options& o) {
  const auto g = ran::generate(config_for(o));
  ran::Engine rng(ran::derive_seed(o.seed, kEstimateStream));
  auto d = ran::diameter_estimate(g.graph, rng);
  if (g.graph.n() <= ran::kExactDiameterLimit) {
    d.exact = ran::diameter_exact(g.graph);
    d.method = "all_pairs";
  }
  d.tree_height = ran::tree_height(g.genealogy);
  nlohmann::ordered_json out;
  out["schema"] = ran::kSchemaVersion;
  out["t"] = o.t;
  out["seed"] = o.seed;
  const auto fields = ran::to_json(d);
  for (const auto& [key, value] : fields.items()) out[key] = value;
  if (o.t >= 2) {
    const double ln_t = std::log(static_cast<double>(o.t));
    out["upper_over_ln_t"] = d.upper / ln_t;
    out["tree_height_over_ln_t"] = *d.tree_height / ln_t;
  }
  write_json(out, o);
  return kExitOk;
}

int cmd_depth(const Options& o) {
  const auto g = ran::generate(config_for(o));
  const auto profile = ran::depth_profile(g.genealogy, o.t);
  if (o.format == "csv") {
    Sink sink(o.output);
    ran::write_depth_csv(profile, sink.stream());
    return kExitOk;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const std::size_t max_depth = std::max<std::size_t>(profile.k_star, profile.expected.size() - 1);
  for (std::size_t k = 1; k <= max_depth; ++k) {
    const auto it = profile.empirical.find(static_cast<std::uint32_t>(k));
    rows.push_back({{"depth", k},
                    {"empirical", it == profile.empirical.end() ? 0 : it->second},
                    {"expected", k < profile.expected.size() ? static_cast<double>(profile.expected[k]) : 0.0}});
  }
  nlohmann::ordered_json out;
  out["schema"] = ran::kSchemaVersion;
  out["t"] = o.t;
  out["seed"] = o.seed;
  out["k_star"] = profile.k_star;
  out["tree_height"] = ran::tree_height(g.genealogy);
  out["rows"] = rows;
  write_json(out, o);
  return kExitOk;
}

int cmd_waiting(const Options& o) {
  const auto curve = ran::waiting_time_trials(o.trials, o.cutoff, o.seed);
  if (o.format == "csv") {
    Sink sink(o.output);
    ran::write_survival_csv(curve, sink.stream());
    return kExitOk;
  }
  auto j = ran::to_json(curve);
  j["seed"] = o.seed;
  write_json(j, o);
  return kExitOk;
}

int cmd_constants(const Options& o) {
  nlohmann::ordered_json out;
  out["schema"] = ran::kSchemaVersion;
  const auto fields = ran::to_json(ran::solve_eta_rho());
  for (const auto& [key, value] : fields.items()) out[key] = value;
  out["typical_distance_limit"] = ran::TypicalDistance::kLimit;
  write_json(out, o);
  return kExitOk;
}

int cmd_verify(const Options& o) {
  ran::VerifyOptions v;
  if (!o.t_list.empty()) v.t_list = o.t_list;
  if (!o.seed_list.empty()) v.seeds = o.seed_list;
  v.trials = o.trials;
  const auto report = ran::run_verify(v);
  Sink sink(o.output);
  if (o.format == "json") {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    nlohmann::ordered_json out;
    out["schema"] = ran::kSchemaVersion;
    out["passed"] = report.passed();
    out["checks"] = checks;
    sink.stream() << out.dump(2) << '\n';
  } else {
    ran::print_verify_table(report, sink.stream());
  }
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Apollonian Network generator and analyzer", "ran"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> graph_formats{"edgelist", "json", "csv", "binary"};
  const std::vector<std::string> report_formats{"json", "csv"};

  const auto add_graph_flags = [&](CLI::App* sub) {
    sub->add_option("--t", o.t, "Number of insertion steps")->required();
    sub->add_option("--seed", o.seed, "RNG seed")->required();
  };
  const auto add_output = [&](CLI::App* sub) { sub->add_option("--output", o.output, "Output path (default stdout)"); };

  auto* generate = app.add_subcommand("generate", "Generate a graph");
  add_graph_flags(generate);
  generate->add_option("--format", o.format)->check(CLI::IsMember(graph_formats));
  add_output(generate);

  auto* stats = app.add_subcommand("stats", "Full statistics report");
  add_graph_flags(stats);
  stats->add_option("--k", o.k)->check(CLI::PositiveNumber);
  stats->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
  stats->add_option("--pairs", o.pairs);
  stats->add_flag("--skip-eigen", o.skip_eigen, "Do not run the eigensolver");
  stats->add_option("--format", o.format)->check(CLI::IsMember(report_formats));
  add_output(stats);

  auto* eigen = app.add_subcommand("eigen", "Top-k adjacency eigenvalues against top-k degrees");
  add_graph_flags(eigen);
  eigen->add_option("--k", o.k)->check(CLI::PositiveNumber);
  eigen->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
  eigen->add_option("--format", o.format)->check(CLI::IsMember({"json"}));
  add_output(eigen);

  auto* diameter = app.add_subcommand("diameter", "Diameter bounds and tree height");
  add_graph_flags(diameter);
  diameter->add_option("--format", o.format)->check(CLI::IsMember({"json"}));
  add_output(diameter);

  auto* depth = app.add_subcommand("depth", "Face-depth profile against its expectation");
  add_graph_flags(depth);
  depth->add_option("--format", o.format)->check(CLI::IsMember(report_formats));
  add_output(depth);

  auto* waiting = app.add_subcommand("waiting", "Waiting-time survival curve");
  waiting->add_option("--seed", o.seed, "RNG seed")->required();
  waiting->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  waiting->add_option("--cutoff", o.cutoff)->check(CLI::PositiveNumber);
  waiting->add_option("--format", o.format)->check(CLI::IsMember(report_formats));
  add_output(waiting);

  auto* constants = app.add_subcommand("constants", "Solve for eta and rho");
  constants->add_option("--format", o.format)->check(CLI::IsMember({"json"}));
  add_output(constants);

  auto* verify = app.add_subcommand("verify", "Run the invariant battery");
  verify->add_option("--t", o.t_list, "Step counts to generate")->delimiter(',');
  verify->add_option("--seed", o.seed_list, "Seeds per step count")->delimiter(',');
  verify->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::Range(100ULL, 100000000ULL));
  verify->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  add_output(verify);
  verify->callback([&] {
    if (verify->count("--format") == 0) o.format = "table";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(o);
    if (*stats) return cmd_stats(o);
    if (*eigen) return cmd_eigen(o);
    if (*diameter) return cmd_diameter(o);
    if (*depth) return cmd_depth(o);
    if (*waiting) return cmd_waiting(o);
    if (*constants) return cmd_constants(o);
    if (*verify) return cmd_verify(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "ran: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ran: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
