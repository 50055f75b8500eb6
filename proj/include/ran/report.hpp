#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "json.hpp"
#include "ran/generator.hpp"
#include "ran/spectra.hpp"
#include "ran/stochastics.hpp"
#include "ran/tree_metrics.hpp"

namespace ran {

inline constexpr int kSchemaVersion = 1;

struct Counts {
  std::uint64_t n = 0, m = 0, faces = 0;
};

struct Timing {
  double generate_ms = 0.0;
  double analyze_ms = 0.0;
};

/// Everything computed for one generated graph.
struct StatsReport {
  std::uint64_t t = 0;
  std::uint64_t seed = 0;
  Counts counts;
  bool valid = false;  // counts match n = t+3, m = 3t+3, faces = 2t+1
  DegreeReport degrees;
  std::optional<SpectralReport> spectral;
  DepthProfile depth;
  DiameterResult diameter;
  std::optional<TypicalDistance> typical;
  Constants constants;
  Timing timing;
};

struct AnalysisOptions {
  std::size_t k = 3;
  double tol = kDefaultEigenTol;
  bool eigen = true;
  std::size_t pairs = 1000;
  std::uint32_t d_min = 10;
};

/// Analyzes a generated graph. Randomized parts (diameter sweep start,
/// typical-distance pairs) draw from seeds derived from the graph seed.
StatsReport analyze(const Generated& generated, const AnalysisOptions& options);

nlohmann::ordered_json to_json(const StatsReport& report);
nlohmann::ordered_json to_json(const SpectralReport& spectral, const std::vector<DegreeEntry>& top_k);
nlohmann::ordered_json to_json(const DiameterResult& diameter);
nlohmann::ordered_json to_json(const Constants& constants);
nlohmann::ordered_json to_json(const SurvivalCurve& curve);
nlohmann::ordered_json to_json(const EnumerationTable& table);
nlohmann::ordered_json graph_to_json(const RanGraph& graph);

/// "degree,count"
void write_histogram_csv(const DegreeHistogram& histogram, std::ostream& out);
/// "depth,empirical,expected"
void write_depth_csv(const DepthProfile& profile, std::ostream& out);
/// "t,exact_num,exact_den,empirical"
void write_survival_csv(const SurvivalCurve& curve, std::ostream& out);

}  // namespace ran
