#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ran/generator.hpp"
#include "ran/io.hpp"
#include "ran/report.hpp"
#include "ran/spectra.hpp"
#include "ran/stochastics.hpp"
#include "ran/tree_metrics.hpp"
#include "ran/verify.hpp"

namespace py = pybind11;

namespace {

// A generated network together with its face store and genealogy.
struct Network {
  ran::Generated g;

  const ran::RanGraph& graph() const { return g.graph; }
};

std::vector<std::pair<ran::Vertex, ran::Vertex>> edge_list(const ran::RanGraph& graph) {
  return {graph.edges().begin(), graph.edges().end()};
}

py::dict top_k_dict(const std::vector<ran::DegreeEntry>& top) {
  std::vector<std::uint32_t> degrees, vertices;
  for (const auto& e : top) {
    degrees.push_back(e.degree);
    vertices.push_back(e.vertex);
  }
  py::dict d;
  d["degrees"] = degrees;
  d["vertices"] = vertices;
  return d;
}

py::object as_python(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_ran, m) {
  m.doc() = "Random Apollonian Network generation and analysis";

  // Translators run most-recent first, so the derived type is registered last.
  const auto& base = py::register_exception<ran::Error>(m, "RanError", PyExc_RuntimeError);
  py::register_exception<ran::ResourceError>(m, "ResourceError", base.ptr());

  py::class_<ran::RanGraph>(m, "Graph")
      .def_property_readonly("t", &ran::RanGraph::t)
      .def_property_readonly("seed", &ran::RanGraph::seed)
      .def_property_readonly("n", &ran::RanGraph::n)
      .def_property_readonly("m", &ran::RanGraph::m)
      .def("degree", &ran::RanGraph::degree, py::arg("v"))
      .def("neighbors",
           [](const ran::RanGraph& g, ran::Vertex v) {
             (void)g.degree(v);
             const auto span = g.neighbors(v);
             return std::vector<ran::Vertex>(span.begin(), span.end());
           },
           py::arg("v"))
      .def("edges", &edge_list, "Edges (u, v) with u < v, in creation order")
      .def("degrees", [](const ran::RanGraph& g) {
        auto d = g.degrees();
        return std::vector<std::uint32_t>(d.begin() + 1, d.end());
      }, "Degrees of vertices 1..n")
      .def("__repr__", [](const ran::RanGraph& g) {
        return "<ran.Graph t=" + std::to_string(g.t()) + " n=" + std::to_string(g.n()) +
               " m=" + std::to_string(g.m()) + ">";
      });

  py::class_<Network>(m, "Network")
      .def_property_readonly("graph", &Network::graph, py::return_value_policy::reference_internal)
      .def_property_readonly("face_count", [](const Network& n) { return n.g.faces.count(); })
      .def("depth_histogram", [](const Network& n) { return ran::face_depth_histogram(n.g.genealogy); })
      .def("tree_height", [](const Network& n) { return ran::tree_height(n.g.genealogy); })
      .def("stats",
           [](const Network& n, std::size_t k, double tol, bool eigen, std::size_t pairs) {
             ran::AnalysisOptions options;
             options.k = k;
             options.tol = tol;
             options.eigen = eigen;
             options.pairs = pairs;
             ran::StatsReport report;
             {
               py::gil_scoped_release release;
               report = ran::analyze(n.g, options);
             }
             return as_python(ran::to_json(report));
           },
           py::arg("k") = 3, py::arg("tol") = ran::kDefaultEigenTol, py::arg("eigen") = true,
           py::arg("pairs") = 1000, "Full statistics report as a dict");

  m.def("generate",
        [](std::uint64_t t, std::uint64_t seed) {
          py::gil_scoped_release release;
          return Network{ran::generate({t, seed, ran::memory_limit_from_env()})};
        },
        py::arg("t"), py::arg("seed"), "Grow a network for t steps from the initial triangle");

  m.def("top_k_degrees", [](const ran::RanGraph& g, std::size_t k) { return top_k_dict(ran::top_k_degrees(g, k)); },
        py::arg("graph"), py::arg("k") = 3);
  m.def("degree_histogram", &ran::degree_histogram, py::arg("graph"));
  m.def("fit_power_law_exponent", &ran::fit_power_law_exponent, py::arg("histogram"), py::arg("d_min") = 10);

  m.def("top_k_eigenvalues",
        [](const ran::RanGraph& g, std::size_t k, double tol) {
          ran::SpectralReport r;
          {
            py::gil_scoped_release release;
            r = ran::top_k_eigenvalues(g, k, tol);
          }
          return as_python(ran::to_json(r, ran::top_k_degrees(g, k)));
        },
        py::arg("graph"), py::arg("k") = 3, py::arg("tol") = ran::kDefaultEigenTol);

  m.def("diameter_exact", &ran::diameter_exact, py::arg("graph"));
  m.def("diameter_estimate",
        [](const ran::RanGraph& g, std::uint64_t seed) {
          ran::Engine rng(seed);
          return as_python(ran::to_json(ran::diameter_estimate(g, rng)));
        },
        py::arg("graph"), py::arg("seed"));
  m.def("typical_distance",
        [](const ran::RanGraph& g, std::size_t pairs, std::uint64_t seed) {
          ran::Engine rng(seed);
          const auto td = ran::typical_distance(g, pairs, rng);
          py::dict d;
          d["mean"] = td.mean;
          d["mean_over_ln_n"] = td.mean_over_ln_n;
          d["pairs"] = td.pairs;
          d["limit"] = ran::TypicalDistance::kLimit;
          return d;
        },
        py::arg("graph"), py::arg("pairs"), py::arg("seed"));

  m.def("expected_depth_profile",
        [](std::uint64_t t) {
          const auto p = ran::expected_depth_profile(t);
          return std::vector<double>(p.begin(), p.end());
        },
        py::arg("t"), "E[F_t(k)] indexed by depth k (entry 0 is 0)");

  m.def("constants", [] { return as_python(ran::to_json(ran::solve_eta_rho())); });

  m.def("waiting_survival_exact",
        [](std::uint64_t t) {
          const auto r = ran::waiting_survival_exact(t);
          return py::make_tuple(r.num, r.den);
        },
        py::arg("t"), "P(X > t) as (numerator, denominator)");
  m.def("waiting_time_trials",
        [](std::uint64_t trials, std::uint64_t cutoff, std::uint64_t seed) {
          ran::SurvivalCurve curve;
          {
            py::gil_scoped_release release;
            curve = ran::waiting_time_trials(trials, cutoff, seed);
          }
          return as_python(ran::to_json(curve));
        },
        py::arg("trials"), py::arg("cutoff"), py::arg("seed"));

  m.def("rising_factorial", &ran::rising_factorial, py::arg("a"), py::arg("k"));
  m.def("moment_bound", &ran::moment_bound, py::arg("s"), py::arg("t"), py::arg("k"));
  m.def("moment_bound_check",
        [](std::uint64_t s, std::uint64_t t, std::uint64_t k, std::uint64_t trials, std::uint64_t seed) {
          const auto c = ran::moment_bound_check(s, t, k, trials, seed);
          py::dict d;
          d["estimate"] = c.estimate;
          d["stderr"] = c.stderr_;
          d["bound"] = c.bound;
          d["passed"] = c.passed;
          return d;
        },
        py::arg("s"), py::arg("t"), py::arg("k"), py::arg("trials"), py::arg("seed"));
  m.def("enumerate_small", [](std::uint64_t t) { return as_python(ran::to_json(ran::enumerate_small(t))); },
        py::arg("t"));

  m.def("export_edges", [](const ran::RanGraph& g) {
    std::ostringstream os;
    ran::export_edges(g, os);
    return os.str();
  });
  m.def("import_edges", [](const std::string& text) {
    std::istringstream in(text);
    return ran::import_edges(in);
  });
  m.def("write_snapshot", [](const ran::RanGraph& g) {
    std::ostringstream os;
    ran::write_snapshot(g, os);
    return py::bytes(os.str());
  });
  m.def("read_snapshot", [](const py::bytes& data) {
    std::istringstream in{std::string(data)};
    return ran::read_snapshot(in);
  });

  m.def("verify",
        [](std::vector<std::uint64_t> t_list, std::vector<std::uint64_t> seeds, std::uint64_t trials) {
          ran::VerifyOptions options;
          if (!t_list.empty()) options.t_list = std::move(t_list);
          if (!seeds.empty()) options.seeds = std::move(seeds);
          options.trials = trials;
          ran::VerifyReport report;
          {
            py::gil_scoped_release release;
            report = ran::run_verify(options);
          }
          py::list checks;
          for (const auto& c : report.checks) {
            py::dict d;
            d["name"] = c.name;
            d["passed"] = c.passed;
            d["detail"] = c.detail;
            checks.append(d);
          }
          return py::make_tuple(report.passed(), checks);
        },
        py::arg("t_list") = std::vector<std::uint64_t>{}, py::arg("seeds") = std::vector<std::uint64_t>{},
        py::arg("trials") = 100000);
}
