#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfgf/regions.hpp"
#include "mfgf/serialization.hpp"

namespace mfgf {

inline constexpr int kReportSchemaVersion = 1;

enum class ExperimentKind {
  Validity,
  ConcentrationCdf,
  ConcentrationFocal,
  Longitudinal,
  Survival,
  Figures,
};

ExperimentKind experiment_kind_from_name(const std::string& name);
std::string experiment_kind_name(ExperimentKind kind);

/// Empty n_grid, distribution and measure select per-experiment defaults:
///   validity            n {100},        gaussian(0,1),  identity
///   concentration-cdf   n {500, 2000},  gaussian(0,1),  identity
///   concentration-focal n {50},         gaussian(0,1),  identity
///   longitudinal        n {10..200},    lognormal(1,2), identity, event [0,2]
///   survival            n {10, 100},    lognormal(1,2), identity
///   figures             n {100},        gaussian(0,1),  meandev
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Validity;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 1000;
  std::vector<double> alpha_grid{0.05, 0.1, 0.2};
  std::string event;  // empty selects the experiment's default event
  std::string distribution;
  std::string measure;
  std::uint64_t seed = 20240101;
  double prior_shape = 1.0;
  double prior_rate = 1.0;
  std::string output_path;

  // concentration
  std::vector<double> gamma_grid{0.0, 0.25};
  std::vector<double> tau_grid{0.0};
  std::vector<std::size_t> v_grid{10};
  double epsilon = 0.1;
  std::optional<double> point;  // y for CDF cells; the generator's median by default

  // survival
  std::vector<double> t_grid;  // empty selects 0, 1, ..., 100

  // figures
  std::size_t draws = 10000;
  std::size_t bins = 60;
  std::size_t curve_points = 400;
  std::optional<Bounds> bounds;
  std::string window;  // optional event whose sampled mass is summarised

  // Replicates run on this many threads; results do not depend on it.
  std::size_t workers = 1;
};

/// Tabular result of one experiment. Rows are JSON objects keyed by column
/// name; absent cells are null in JSON and empty in CSV.
struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::Validity;
  std::string label;  // overrides the kind name in output when set
  Json meta = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;

  Json to_json() const;
  std::string to_csv() const;
  /// Writes CSV or JSON (by `format`) to `path`.
  void write(const std::string& path, const std::string& format) const;
  std::string render(const std::string& format) const;
  std::string name() const;
};

ExperimentReport run_validity(const ExperimentConfig& config);
ExperimentReport run_concentration(const ExperimentConfig& config);
ExperimentReport run_longitudinal(const ExperimentConfig& config);
ExperimentReport run_survival(const ExperimentConfig& config);

/// Raw ingredients of the sampler-comparison histograms.
struct FigureData {
  std::vector<double> data;
  std::vector<double> med_draws;
  std::vector<double> cp_draws;
  std::vector<double> bin_edges;
  std::vector<std::size_t> data_counts;
  std::vector<std::size_t> med_counts;
  std::vector<std::size_t> cp_counts;
  std::vector<double> generator_density;  // at bin centres
  std::vector<double> curve_y;
  std::vector<double> curve_transducer;
  Bounds bounds;
};

FigureData compute_figures(const ExperimentConfig& config);

/// Writes data.csv, samples.csv, histogram.csv and transducer.csv into the
/// directory config.output_path (created if missing) and returns a summary
/// report listing the files.
ExperimentReport emit_figures(const ExperimentConfig& config);

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Closed forms used as oracles by the concentration and validity cells.
double focal_exceedance_probability(std::size_t n, std::size_t v, double tau, double epsilon);
double cdf_exceedance_bound(std::size_t n, double gamma, double epsilon, double f_at_y);
/// floor(alpha (n+1)) / (n+1), computed with the same comparison as the
/// error event f_n <= alpha.
double exact_type1_rate(std::size_t n, double alpha);

}  // namespace mfgf
