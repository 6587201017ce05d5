// Command-line front end: experiment harness plus single-sample queries.
//
//   mfgf_cli validity      --n 100 --reps 10000 --alpha 0.05,0.1,0.2
//   mfgf_cli concentration --mode focal --n 50 --v 10 --tau 0 --eps 0.005
//   mfgf_cli longitudinal  --n 10,50,100,200 --reps 200
//   mfgf_cli survival      --n 10,100 --t 0,5,10
//   mfgf_cli figures       --dist "mixture(0.5:-6:1,0.5:6:1)" --out figs/
//   mfgf_cli transducer    --data 4,5 --measure meandev --y 3.5,4.5
//   mfgf_cli belief        --data 1,2,3,4 --event "[0,2.5]"
//   mfgf_cli sample        --data 4,5 --measure meandev --draws 1000
//   mfgf_cli binomial-demo --y 3 --m 10 --choice 4 --draws 50000
//
// Reports go to stdout, or to --out; --format selects csv (default) or json.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "mfgf/baselines.hpp"
#include "mfgf/core.hpp"
#include "mfgf/errors.hpp"
#include "mfgf/experiments.hpp"
#include "mfgf/imprecise.hpp"
#include "mfgf/precise.hpp"
#include "mfgf/random.hpp"
#include "mfgf/regions.hpp"

namespace {

using mfgf::ExperimentConfig;
using mfgf::ExperimentKind;
using mfgf::ExperimentReport;
using mfgf::Json;

struct Options {
  ExperimentConfig config;
  std::string out;
  std::string format = "csv";
  std::string mode = "focal";
  std::vector<double> data;
  std::vector<double> ys;
  std::vector<double> bounds;
  std::string sampler = "med";
  std::int64_t binom_y = 3;
  std::int64_t binom_m = 10;
  int choice = 4;
  bool draws_set = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.config.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", o.out, "output file (directory for figures); stdout if omitted");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_harness(CLI::App* cmd, Options& o) {
  add_common(cmd, o);
  cmd->add_option("--n", o.config.n_grid, "sample size(s), comma separated")->delimiter(',');
  cmd->add_option("--reps", o.config.replicates, "Monte-Carlo replicates")->capture_default_str();
  cmd->add_option("--dist", o.config.distribution,
                  "gaussian(mu,sigma) | cauchy(loc,scale) | lognormal(meanlog,sdlog) | "
                  "mixture(w:mu:sigma,...) | exponential(rate) | poisson(rate)");
  cmd->add_option("--measure", o.config.measure, "identity or meandev")
      ->check(CLI::IsMember({"identity", "meandev"}));
  cmd->add_option("--workers", o.config.workers, "threads for replicates")->capture_default_str();
}

void add_measure_data(CLI::App* cmd, Options& o) {
  add_common(cmd, o);
  cmd->add_option("--data", o.data, "observed sample, comma separated")
      ->delimiter(',')
      ->required();
  cmd->add_option("--measure", o.config.measure, "identity or meandev")
      ->check(CLI::IsMember({"identity", "meandev"}));
  cmd->add_option("--bounds", o.bounds, "truncation bounds kappa_min,kappa_max")
      ->delimiter(',')
      ->expected(2);
}

std::optional<mfgf::Bounds> bounds_from(const std::vector<double>& b) {
  if (b.empty()) return std::nullopt;
  return mfgf::Bounds{b.at(0), b.at(1)};
}

mfgf::NonconformityMeasure measure_of(const Options& o) {
  return mfgf::measure_from_name(o.config.measure.empty() ? "identity" : o.config.measure);
}

void emit(const ExperimentReport& report, const Options& o) {
  if (o.out.empty()) {
    std::cout << report.render(o.format);
  } else {
    report.write(o.out, o.format);
  }
}

ExperimentReport labelled(const std::string& label, const Options& o) {
  ExperimentReport r;
  r.label = label;
  r.meta["seed"] = o.config.seed;
  return r;
}

ExperimentReport run_transducer(const Options& o) {
  const mfgf::Sample sample(o.data);
  const auto measure = measure_of(o);
  const auto part = mfgf::focal_partition(sample, measure, bounds_from(o.bounds));
  ExperimentReport r = labelled("transducer", o);
  r.meta["measure"] = measure.name();
  r.meta["n"] = sample.size();
  r.meta["kappa"] = Json::array({part.kappa_min(), part.kappa_max()});

  std::vector<double> ys = o.ys;
  if (ys.empty()) {
    const std::size_t points = o.config.curve_points;
    const double step = (part.kappa_max() - part.kappa_min()) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) ys.push_back(part.kappa_min() + step * static_cast<double>(i));
  }
  r.columns = {"row_type", "y", "rank", "transducer", "alpha", "prediction_set", "seed"};
  for (double y : ys) {
    Json row;
    row["row_type"] = "point";
    row["y"] = y;
    row["rank"] = mfgf::candidate_rank(sample, measure, y);
    row["transducer"] = mfgf::transducer(sample, measure, y);
    row["seed"] = o.config.seed;
    r.rows.push_back(std::move(row));
  }
  for (double alpha : o.config.alpha_grid) {
    Json row;
    row["row_type"] = "prediction_set";
    row["alpha"] = alpha;
    row["rank"] = mfgf::prediction_rank(sample.size(), alpha);
    row["prediction_set"] = mfgf::prediction_set(sample, measure, alpha, part).to_string();
    row["seed"] = o.config.seed;
    r.rows.push_back(std::move(row));
  }
  for (std::size_t v = 1; v <= part.region_count(); ++v) {
    Json row;
    row["row_type"] = "region";
    row["rank"] = v;
    row["prediction_set"] = part.region(v).to_string();
    row["seed"] = o.config.seed;
    r.rows.push_back(std::move(row));
  }
  return r;
}

ExperimentReport run_belief(const Options& o) {
  const mfgf::Sample sample(o.data);
  const auto measure = measure_of(o);
  const auto part = mfgf::focal_partition(sample, measure, bounds_from(o.bounds));
  const auto event = mfgf::parse_event(o.config.event);
  const auto iv = mfgf::evaluate_event(part, event);
  ExperimentReport r = labelled("belief", o);
  r.meta["measure"] = measure.name();
  r.meta["n"] = sample.size();
  r.columns = {"event", "belief", "plausibility", "med_probability", "empty_regions_ignored", "seed"};
  Json row;
  row["event"] = event.to_string();
  row["belief"] = iv.belief;
  row["plausibility"] = iv.plausibility;
  try {
    row["med_probability"] = mfgf::med_probability(mfgf::med_from_partition(part), event);
  } catch (const mfgf::TiePathology&) {
    row["med_probability"] = nullptr;  // no MED when a region is empty
  }
  row["empty_regions_ignored"] = iv.empty_regions_ignored;
  row["seed"] = o.config.seed;
  r.rows.push_back(std::move(row));
  return r;
}

ExperimentReport run_sample(const Options& o) {
  const mfgf::Sample sample(o.data);
  const auto measure = measure_of(o);
  const auto part = mfgf::focal_partition(sample, measure, bounds_from(o.bounds));
  auto rng = mfgf::make_stream(o.config.seed, 0x5a, 0);
  const std::size_t draws = o.draws_set ? o.config.draws : 1000;
  ExperimentReport r = labelled("sample", o);
  r.meta["sampler"] = o.sampler;
  r.meta["measure"] = measure.name();
  r.columns = {"draw", "value", "seed"};
  std::vector<double> xs;
  if (o.sampler == "cp") {
    const mfgf::CpAnalogueSampler cp(part);
    for (std::size_t i = 0; i < draws; ++i) xs.push_back(cp(rng));
  } else {
    const auto med = mfgf::med_from_partition(part);
    for (std::size_t i = 0; i < draws; ++i) {
      xs.push_back(o.sampler == "inverse-cdf" ? mfgf::med_sample_inverse_cdf(med, rng)
                                              : mfgf::med_sample(med, rng));
    }
    r.meta["distribution"] = mfgf::to_json(med);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Json row;
    row["draw"] = i;
    row["value"] = xs[i];
    row["seed"] = o.config.seed;
    r.rows.push_back(std::move(row));
  }
  return r;
}

ExperimentReport run_binomial(const Options& o) {
  auto rng = mfgf::make_stream(o.config.seed, 0xb1, 0);
  const std::size_t draws = o.draws_set ? o.config.draws : 50000;
  std::vector<double> xs(draws);
  for (double& x : xs) x = mfgf::binomial_gf_sample(o.binom_y, o.binom_m, o.choice, rng);
  std::sort(xs.begin(), xs.end());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(draws);

  // Kolmogorov-Smirnov distance to beta(y+1, m-y+1).
  const double a = static_cast<double>(o.binom_y + 1);
  const double b = static_cast<double>(o.binom_m - o.binom_y + 1);
  double ks = 0.0;
  const double dn = static_cast<double>(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    const double f = boost::math::ibeta(a, b, std::clamp(xs[i], 0.0, 1.0));
    ks = std::max({ks, static_cast<double>(i + 1) / dn - f, f - static_cast<double>(i) / dn});
  }

  ExperimentReport r = labelled("binomial-demo", o);
  r.meta["y"] = o.binom_y;
  r.meta["m"] = o.binom_m;
  r.meta["choice"] = o.choice;
  r.columns = {"quantity", "value", "seed"};
  auto add = [&](const std::string& q, Json v) {
    Json row;
    row["quantity"] = q;
    row["value"] = std::move(v);
    row["seed"] = o.config.seed;
    r.rows.push_back(std::move(row));
  };
  add("draws", draws);
  add("mean", mean);
  add("beta_mean", a / (a + b));
  add("ks_vs_beta", ks);
  add("min", xs.front());
  add("max", xs.back());
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal belief functions and maximum-entropy prediction: experiments and queries"};
  app.require_subcommand(1);
  Options o;

  auto* validity = app.add_subcommand("validity", "type-1 validity of the prediction sets");
  add_harness(validity, o);
  validity->add_option("--alpha", o.config.alpha_grid, "miscoverage level(s)")->delimiter(',');

  auto* conc = app.add_subcommand("concentration", "concentration of the MED around F");
  add_harness(conc, o);
  conc->add_option("--mode", o.mode, "focal or cdf")
      ->check(CLI::IsMember({"focal", "cdf"}))
      ->capture_default_str();
  conc->add_option("--gamma", o.config.gamma_grid, "rate exponent(s) for cdf cells")->delimiter(',');
  conc->add_option("--tau", o.config.tau_grid, "rate exponent(s) for focal cells")->delimiter(',');
  conc->add_option("--v", o.config.v_grid, "focal index(es)")->delimiter(',');
  conc->add_option("--eps", o.config.epsilon, "deviation threshold")->capture_default_str();
  conc->add_option("--y", o.config.point, "point for cdf cells (default: generator median)");

  auto* longi = app.add_subcommand("longitudinal", "event probability across sample sizes");
  add_harness(longi, o);
  longi->add_option("--event", o.config.event, "interval list, default [0,2]");
  longi->add_option("--prior-shape", o.config.prior_shape)->capture_default_str();
  longi->add_option("--prior-rate", o.config.prior_rate)->capture_default_str();

  auto* surv = app.add_subcommand("survival", "survival curves");
  add_harness(surv, o);
  surv->add_option("--t", o.config.t_grid, "time grid, default 0..100")->delimiter(',');
  surv->add_option("--prior-shape", o.config.prior_shape)->capture_default_str();
  surv->add_option("--prior-rate", o.config.prior_rate)->capture_default_str();

  auto* figs = app.add_subcommand("figures", "sampler histograms and transducer curve");
  add_harness(figs, o);
  figs->add_option("--draws", o.config.draws)->capture_default_str();
  figs->add_option("--bins", o.config.bins)->capture_default_str();
  figs->add_option("--bounds", o.bounds, "truncation bounds kappa_min,kappa_max")
      ->delimiter(',')
      ->expected(2);
  figs->add_option("--window", o.config.window, "event whose sampled mass is summarised");

  auto* trans = app.add_subcommand("transducer", "ranks, transducer values and prediction sets");
  add_measure_data(trans, o);
  trans->add_option("--y", o.ys, "candidate value(s); a grid over the bounds if omitted")
      ->delimiter(',');
  trans->add_option("--alpha", o.config.alpha_grid, "miscoverage level(s)")->delimiter(',');

  auto* bel = app.add_subcommand("belief", "belief, plausibility and MED probability of an event");
  add_measure_data(bel, o);
  bel->add_option("--event", o.config.event, "interval list")->required();

  auto* samp = app.add_subcommand("sample", "draw from the MED or the CP analogue");
  add_measure_data(samp, o);
  samp->add_option("--sampler", o.sampler, "med, inverse-cdf or cp")
      ->check(CLI::IsMember({"med", "inverse-cdf", "cp"}))
      ->capture_default_str();
  samp->add_option("--draws", o.config.draws, "number of draws (default 1000)");

  auto* binom = app.add_subcommand("binomial-demo", "fiducial draws for a binomial proportion");
  add_common(binom, o);
  binom->add_option("--y", o.binom_y, "successes")->capture_default_str();
  binom->add_option("--m", o.binom_m, "trials")->capture_default_str();
  binom->add_option("--choice", o.choice, "D choice 1..5")->capture_default_str();
  binom->add_option("--draws", o.config.draws, "number of draws (default 50000)");

  CLI11_PARSE(app, argc, argv);

  try {
    o.draws_set = (samp->parsed() && samp->count("--draws") > 0) ||
                  (binom->parsed() && binom->count("--draws") > 0);
    o.config.bounds = bounds_from(o.bounds);
    ExperimentReport report;
    if (validity->parsed()) {
      o.config.kind = ExperimentKind::Validity;
      report = mfgf::run_experiment(o.config);
    } else if (conc->parsed()) {
      o.config.kind = o.mode == "cdf" ? ExperimentKind::ConcentrationCdf
                                      : ExperimentKind::ConcentrationFocal;
      report = mfgf::run_experiment(o.config);
    } else if (longi->parsed()) {
      o.config.kind = ExperimentKind::Longitudinal;
      report = mfgf::run_experiment(o.config);
    } else if (surv->parsed()) {
      o.config.kind = ExperimentKind::Survival;
      report = mfgf::run_experiment(o.config);
    } else if (figs->parsed()) {
      o.config.kind = ExperimentKind::Figures;
      o.config.output_path = o.out;
      report = mfgf::run_experiment(o.config);
      // Figure files already went to the directory; the summary goes to stdout.
      std::cout << report.render(o.format);
      return 0;
    } else if (trans->parsed()) {
      report = run_transducer(o);
    } else if (bel->parsed()) {
      report = run_belief(o);
    } else if (samp->parsed()) {
      report = run_sample(o);
    } else {
      report = run_binomial(o);
    }
    emit(report, o);
  } catch (const mfgf::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const mfgf::AssumptionViolated& e) {
    std::cerr << "assumption violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
