#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fish/error.hpp"
#include "fish/eval.hpp"
#include "fish/exact.hpp"
#include "fish/fish.hpp"
#include "fish/geodata.hpp"
#include "fish/objectives.hpp"
#include "fish/pareto.hpp"
#include "fish/scan.hpp"
#include "fish/synth.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace fish;

namespace {

Candidate make_candidate(std::vector<int> ranks, double n, double f) {
  return Candidate{SubsetSelection{std::move(ranks)}, NFPoint{n, f}};
}

std::vector<Candidate> to_candidates(const std::vector<std::tuple<std::vector<int>, double, double>>& rows) {
  std::vector<Candidate> out;
  for (const auto& [ranks, n, f] : rows) out.push_back(make_candidate(ranks, n, f));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fair spatial hot spot selection (FiSH) core";

  static py::exception<Error> error(m, "FishError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::enum_<CoordMode>(m, "CoordMode")
      .value("planar", CoordMode::kPlanar)
      .value("geographic", CoordMode::kGeographic);
  py::enum_<SpacingMode>(m, "SpacingMode")
      .value("index", SpacingMode::kIndex)
      .value("arc_length", SpacingMode::kArcLength);

  py::class_<ProtectedAttributeSchema>(m, "ProtectedAttributeSchema")
      .def_readonly("name", &ProtectedAttributeSchema::name)
      .def_readonly("categories", &ProtectedAttributeSchema::categories);

  py::class_<IngestConfig>(m, "IngestConfig")
      .def(py::init<>())
      .def_readwrite("id_col", &IngestConfig::id_col)
      .def_readwrite("x_col", &IngestConfig::x_col)
      .def_readwrite("y_col", &IngestConfig::y_col)
      .def_readwrite("hot_col", &IngestConfig::hot_col)
      .def_readwrite("protected_cols", &IngestConfig::protected_cols)
      .def_readwrite("coord_mode", &IngestConfig::coord_mode)
      .def_readwrite("category_orders", &IngestConfig::category_orders);

  py::class_<Dataset>(m, "Dataset")
      .def("__len__", &Dataset::size)
      .def_property_readonly("schemas", &Dataset::schemas)
      .def_property_readonly("hot_count", &Dataset::hot_count)
      .def_property_readonly("ids", [](const Dataset& d) {
        std::vector<std::string> ids;
        for (const auto& o : d.objects()) ids.push_back(o.id);
        return ids;
      });

  m.def("load_csv", &load_csv, py::arg("path"), py::arg("config"));
  m.def("parse_csv", &parse_csv, py::arg("text"), py::arg("config"));
  m.def("format_csv", &format_csv, py::arg("dataset"), py::arg("config"));
  m.def(
      "distribution",
      [](const Dataset& d, const std::vector<std::string>& ids, std::size_t attribute) {
        return distribution(d, ids, attribute).probabilities;
      },
      py::arg("dataset"), py::arg("ids"), py::arg("attribute"));

  py::class_<HotSpot>(m, "HotSpot")
      .def_readonly("rank", &HotSpot::rank)
      .def_readonly("center_id", &HotSpot::center_id)
      .def_readonly("radius", &HotSpot::radius)
      .def_readonly("member_ids", &HotSpot::member_ids)
      .def_readonly("llr", &HotSpot::llr)
      .def_readonly("cases", &HotSpot::cases)
      .def_readonly("population", &HotSpot::population);
  py::class_<RankedHotSpotList>(m, "RankedHotSpotList")
      .def_readonly("hotspots", &RankedHotSpotList::hotspots)
      .def_readonly("short_list", &RankedHotSpotList::short_list)
      .def_property_readonly("m", &RankedHotSpotList::m)
      .def("top", &RankedHotSpotList::top);

  m.def("bernoulli_llr", &bernoulli_llr, py::arg("c"), py::arg("n"), py::arg("total_cases"),
        py::arg("total_pop"));
  m.def(
      "scan_circular",
      [](const Dataset& d, double max_fraction, std::size_t mm, unsigned threads) {
        return scan_circular(d, ScanOptions{max_fraction, mm, threads});
      },
      py::arg("dataset"), py::arg("max_fraction") = 0.5, py::arg("m") = 20,
      py::arg("threads") = 0);
  m.def("import_ranked_list", &import_ranked_list, py::arg("path"), py::arg("dataset"));
  m.def("parse_ranked_list", &parse_ranked_list, py::arg("text"), py::arg("dataset"));

  py::class_<NFPoint>(m, "NFPoint")
      .def(py::init<double, double>(), py::arg("n"), py::arg("f"))
      .def_readonly("n", &NFPoint::n)
      .def_readonly("f", &NFPoint::f)
      .def("__repr__", [](const NFPoint& p) {
        return "NFPoint(n=" + std::to_string(p.n) + ", f=" + std::to_string(p.f) + ")";
      });
  py::class_<Candidate>(m, "Candidate")
      .def(py::init(&make_candidate), py::arg("ranks"), py::arg("n"), py::arg("f"))
      .def_property_readonly("ranks", [](const Candidate& c) { return c.sel.ranks; })
      .def_property_readonly("n", [](const Candidate& c) { return c.point.n; })
      .def_property_readonly("f", [](const Candidate& c) { return c.point.f; })
      .def_readonly("point", &Candidate::point);

  m.def("noteworthiness", [](std::vector<int> ranks) {
    return noteworthiness(SubsetSelection::canonical(std::move(ranks)));
  });
  m.def("wasserstein_1d", [](const std::vector<double>& p, const std::vector<double>& q) {
    return wasserstein_1d(std::span<const double>(p), std::span<const double>(q));
  });
  m.def("fairness", [](std::vector<int> ranks, const RankedHotSpotList& s, const Dataset& d) {
    return fairness(SubsetSelection::canonical(std::move(ranks)), s, d);
  });
  m.def("nf_point", [](std::vector<int> ranks, const RankedHotSpotList& s, const Dataset& d) {
    return nf_point(SubsetSelection::canonical(std::move(ranks)), s, d);
  });

  m.def("dominates", &dominates);
  m.def("frontier", [](const std::vector<Candidate>& c) { return frontier(c).candidates; });
  m.def(
      "equally_spaced",
      [](const std::vector<Candidate>& fr, std::size_t t, SpacingMode mode) {
        auto s = equally_spaced(Frontier{fr}, t, mode);
        return py::make_tuple(s.chosen, s.shortfall);
      },
      py::arg("frontier"), py::arg("t"), py::arg("mode") = SpacingMode::kIndex);
  m.def("equally_spaced_indices", &equally_spaced_indices);

  py::class_<DpeResult>(m, "DpeResult")
      .def_readonly("chosen", &DpeResult::chosen)
      .def_readonly("shortfall", &DpeResult::shortfall)
      .def_readonly("runtime_seconds", &DpeResult::runtime_seconds)
      .def_property_readonly("method", [](const DpeResult& r) { return to_string(r.method); });

  m.def("binomial", &binomial);
  m.def(
      "enumerate_nf_space",
      [](const RankedHotSpotList& s, const Dataset& d, std::size_t k, std::uint64_t guard,
         unsigned threads) {
        return enumerate_nf_space(s, d, k, ExactOptions{guard, threads}).candidates;
      },
      py::arg("spots"), py::arg("dataset"), py::arg("k"),
      py::arg("guard") = kDefaultCandidateGuard, py::arg("threads") = 0);
  m.def(
      "exact_tau_dpe",
      [](const RankedHotSpotList& s, const Dataset& d, std::size_t k, std::size_t tau,
         std::uint64_t guard, unsigned threads) {
        return exact_tau_dpe(s, d, k, tau, ExactOptions{guard, threads});
      },
      py::arg("spots"), py::arg("dataset"), py::arg("k") = 5, py::arg("tau") = 5,
      py::arg("guard") = kDefaultCandidateGuard, py::arg("threads") = 0);
  m.def(
      "fish_search",
      [](const RankedHotSpotList& s, const Dataset& d, std::size_t k, std::size_t tau,
         std::size_t b, unsigned threads) {
        return fish_search(s, d, k, tau, b, FishOptions{threads});
      },
      py::arg("spots"), py::arg("dataset"), py::arg("k") = 5, py::arg("tau") = 5,
      py::arg("b") = 5, py::arg("threads") = 0);

  py::class_<BeamLevel>(m, "BeamLevel")
      .def_readonly("level", &BeamLevel::level)
      .def_readonly("candidates", &BeamLevel::candidates)
      .def_property_readonly("frontier", [](const BeamLevel& l) { return l.frontier.candidates; })
      .def_readonly("selected", &BeamLevel::selected)
      .def_readonly("shortfall", &BeamLevel::shortfall);
  m.def(
      "beam_trace",
      [](const RankedHotSpotList& s, const Dataset& d, std::size_t k, std::size_t tau,
         std::size_t b) { return beam_trace(s, d, k, tau, b); },
      py::arg("spots"), py::arg("dataset"), py::arg("k") = 5, py::arg("tau") = 5,
      py::arg("b") = 5);

  m.def("cov", [](const std::vector<std::tuple<std::vector<int>, double, double>>& result,
                  const std::vector<std::tuple<std::vector<int>, double, double>>& space) {
    NFSpace sp;
    sp.candidates = to_candidates(space);
    return cov(std::span<const Candidate>(to_candidates(result)), sp);
  });

  py::class_<MetricReport>(m, "MetricReport")
      .def_readonly("fish", &MetricReport::fish)
      .def_readonly("exact", &MetricReport::exact)
      .def_readonly("dc", &MetricReport::dc)
      .def_readonly("cov_fish", &MetricReport::cov_fish)
      .def_readonly("cov_exact", &MetricReport::cov_exact)
      .def_readonly("md_fish", &MetricReport::md_fish)
      .def_readonly("md_exact", &MetricReport::md_exact)
      .def_readonly("space_size", &MetricReport::space_size)
      .def_readonly("notes", &MetricReport::notes);
  m.def(
      "evaluate",
      [](const RankedHotSpotList& s, const Dataset& d, std::size_t k, std::size_t tau,
         std::size_t b) { return evaluate(s, d, k, tau, b); },
      py::arg("spots"), py::arg("dataset"), py::arg("k") = 5, py::arg("tau") = 5,
      py::arg("b") = 5);

  m.def(
      "generate_synthetic",
      [](std::uint64_t seed, std::size_t n_objects, std::size_t n_clusters) {
        return generate_synthetic(seed, n_objects, n_clusters, default_synth_spec());
      },
      py::arg("seed"), py::arg("n_objects") = 4000, py::arg("n_clusters") = 16);
  m.def("synthetic_ingest_config",
        []() { return synthetic_ingest_config(default_synth_spec()); });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
