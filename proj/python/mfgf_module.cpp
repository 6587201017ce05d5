// Python bindings. Events are passed as interval literals ("[0,2]", "(1,3),{4}")
// and measures by name ("identity", "meandev").

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mfgf/baselines.hpp"
#include "mfgf/core.hpp"
#include "mfgf/errors.hpp"
#include "mfgf/experiments.hpp"
#include "mfgf/imprecise.hpp"
#include "mfgf/precise.hpp"
#include "mfgf/random.hpp"
#include "mfgf/regions.hpp"
#include "mfgf/serialization.hpp"

namespace py = pybind11;
using namespace mfgf;

namespace {

using PyBounds = std::optional<std::pair<double, double>>;

FocalPartition partition_for(const std::vector<double>& data, const std::string& measure,
                             const PyBounds& bounds) {
  const Sample s(data);
  const auto m = measure_from_name(measure);
  if (bounds) return focal_partition(s, m, Bounds{bounds->first, bounds->second});
  return focal_partition(s, m);
}

std::vector<std::string> region_strings(const FocalPartition& p) {
  std::vector<std::string> out;
  for (const auto& r : p.regions()) out.push_back(r.to_string());
  return out;
}

}  // namespace

PYBIND11_MODULE(_mfgf, mod) {
  mod.doc() = "Conformal predictive belief functions and maximum-entropy predictive distributions";

  py::register_exception<InvalidInput>(mod, "InvalidInput", PyExc_ValueError);
  py::register_exception<AssumptionViolated>(mod, "AssumptionViolated", PyExc_ValueError);
  py::register_exception<TiePathology>(mod, "TiePathology", PyExc_RuntimeError);
  py::register_exception<TruncationRequired>(mod, "TruncationRequired", PyExc_RuntimeError);

  mod.def(
      "transducer",
      [](const std::vector<double>& data, double y, const std::string& measure) {
        return transducer(Sample(data), measure_from_name(measure), y);
      },
      py::arg("data"), py::arg("y"), py::arg("measure") = "identity");

  mod.def(
      "candidate_rank",
      [](const std::vector<double>& data, double y, const std::string& measure) {
        return candidate_rank(Sample(data), measure_from_name(measure), y);
      },
      py::arg("data"), py::arg("y"), py::arg("measure") = "identity");

  mod.def(
      "focal_regions",
      [](const std::vector<double>& data, const std::string& measure, const PyBounds& bounds) {
        return region_strings(partition_for(data, measure, bounds));
      },
      py::arg("data"), py::arg("measure") = "identity", py::arg("bounds") = py::none(),
      "Focal regions of rank 1..n+1 as interval literals.");

  mod.def(
      "prediction_set",
      [](const std::vector<double>& data, double alpha, const std::string& measure,
         const PyBounds& bounds) {
        const Sample s(data);
        const auto m = measure_from_name(measure);
        return prediction_set(s, m, alpha, partition_for(data, measure, bounds)).to_string();
      },
      py::arg("data"), py::arg("alpha"), py::arg("measure") = "identity",
      py::arg("bounds") = py::none());

  mod.def(
      "belief_plausibility",
      [](const std::vector<double>& data, const std::string& event, const std::string& measure,
         const PyBounds& bounds) {
        const auto v = evaluate_event(partition_for(data, measure, bounds), parse_event(event));
        return std::make_pair(v.belief, v.plausibility);
      },
      py::arg("data"), py::arg("event"), py::arg("measure") = "identity",
      py::arg("bounds") = py::none());

  mod.def(
      "med_probability",
      [](const std::vector<double>& data, const std::string& event, const std::string& measure,
         const PyBounds& bounds) {
        const auto med = med_from_partition(partition_for(data, measure, bounds));
        return med_probability(med, parse_event(event));
      },
      py::arg("data"), py::arg("event"), py::arg("measure") = "identity",
      py::arg("bounds") = py::none());

  mod.def(
      "sample",
      [](const std::vector<double>& data, std::size_t draws, const std::string& sampler,
         const std::string& measure, std::uint64_t seed, const PyBounds& bounds) {
        const auto part = partition_for(data, measure, bounds);
        auto rng = make_stream(seed, 0, 0);
        std::vector<double> out(draws);
        if (sampler == "med") {
          const auto med = med_from_partition(part);
          for (double& x : out) x = med_sample(med, rng);
        } else if (sampler == "inverse-cdf") {
          const auto med = med_from_partition(part);
          for (double& x : out) x = med_sample_inverse_cdf(med, rng);
        } else if (sampler == "cp") {
          const CpAnalogueSampler cp(part);
          for (double& x : out) x = cp(rng);
        } else {
          throw InvalidInput("unknown sampler '" + sampler + "'");
        }
        return out;
      },
      py::arg("data"), py::arg("draws"), py::arg("sampler") = "med",
      py::arg("measure") = "identity", py::arg("seed") = 20240101, py::arg("bounds") = py::none());

  mod.def(
      "med_json",
      [](const std::vector<double>& data, const std::string& measure, const PyBounds& bounds) {
        return to_json(med_from_partition(partition_for(data, measure, bounds))).dump();
      },
      py::arg("data"), py::arg("measure") = "identity", py::arg("bounds") = py::none());

  mod.def(
      "lomax_probability",
      [](const std::vector<double>& data, const std::string& event, double shape, double rate) {
        return lomax_probability(lomax_fit(Sample(data), shape, rate),
                                 parse_event(event));
      },
      py::arg("data"), py::arg("event"), py::arg("prior_shape") = 1.0,
      py::arg("prior_rate") = 1.0);

  mod.def(
      "binomial_gf_sample",
      [](std::int64_t y, std::int64_t m, int choice, std::size_t draws, std::uint64_t seed) {
        auto rng = make_stream(seed, 0, 0);
        std::vector<double> out(draws);
        for (double& x : out) x = binomial_gf_sample(y, m, choice, rng);
        return out;
      },
      py::arg("y"), py::arg("m"), py::arg("choice") = 4, py::arg("draws") = 1,
      py::arg("seed") = 20240101);

  mod.def("exact_type1_rate", &exact_type1_rate, py::arg("n"), py::arg("alpha"));
  mod.def("focal_exceedance_probability", &focal_exceedance_probability, py::arg("n"),
          py::arg("v"), py::arg("tau"), py::arg("epsilon"));
  mod.def("cdf_exceedance_bound", &cdf_exceedance_bound, py::arg("n"), py::arg("gamma"),
          py::arg("epsilon"), py::arg("f_at_y"));

  // Figures returns histogram and transducer-curve arrays instead of a report.
  mod.def(
      "run_experiment_json",
      [](const std::string& kind, const std::vector<std::size_t>& n, std::size_t replicates,
         const std::string& distribution, const std::string& measure, const std::string& event,
         std::uint64_t seed, std::size_t workers) {
        ExperimentConfig c;
        c.kind = experiment_kind_from_name(kind);
        c.n_grid = n;
        c.replicates = replicates;
        c.distribution = distribution;
        c.measure = measure;
        c.event = event;
        c.seed = seed;
        c.workers = workers;
        py::gil_scoped_release release;
        if (c.kind != ExperimentKind::Figures) return run_experiment(c).to_json().dump();
        const FigureData f = compute_figures(c);
        Json j;
        j["bounds"] = {f.bounds.kappa_min, f.bounds.kappa_max};
        j["bin_edges"] = f.bin_edges;
        j["data_counts"] = f.data_counts;
        j["med_counts"] = f.med_counts;
        j["cp_counts"] = f.cp_counts;
        j["generator_density"] = f.generator_density;
        j["curve_y"] = f.curve_y;
        j["curve_transducer"] = f.curve_transducer;
        return j.dump();
      },
      py::arg("kind"), py::arg("n") = std::vector<std::size_t>{}, py::arg("replicates") = 1000,
      py::arg("distribution") = "", py::arg("measure") = "", py::arg("event") = "",
      py::arg("seed") = 20240101, py::arg("workers") = 1);
}
