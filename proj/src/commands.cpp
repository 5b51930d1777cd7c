#include "ilt/commands.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "ilt/estimator.hpp"
#include "ilt/io.hpp"
#include "ilt/matrix_bounds.hpp"
#include "ilt/model.hpp"
#include "ilt/oracle.hpp"

namespace ilt::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json condition_json(const ConditionReport& r) {
  ordered_json j;
  j["condition_value"] = r.condition_value;
  j["exists"] = r.exists;
  j["beta"] = r.beta;
  j["kappa1"] = r.kappa1;
  j["radial_exponent"] = r.radial_exponent;
  return j;
}

ordered_json artifact(const RunConfig& cfg) {
  ordered_json j;
  j["config"] = cfg.to_json();
  return j;
}

void write_json(const RunConfig& cfg, const std::string& name, const ordered_json& j) {
  io::write_file(fs::path(cfg.out_dir) / name, j.dump(2) + "\n");
}

void write_csv(const RunConfig& cfg, const std::string& name, const io::Csv& csv) {
  io::write_file(fs::path(cfg.out_dir) / name, csv.str());
}

std::string config_comment(const RunConfig& cfg) {
  return "config " + cfg.to_json().dump();
}

ExperimentParams mc_params(const RunConfig& cfg) {
  try {
    return cfg.params();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

estimator::McOptions mc_options(const RunConfig& cfg) {
  return estimator::McOptions{cfg.sampler_kind(), cfg.workers};
}

CommandResult cmd_check_condition(const RunConfig& cfg) {
  const ConditionReport report =
      evaluate_condition(HurstPair(cfg.h1, cfg.h2), MultiIndex(cfg.k));
  ordered_json j = artifact(cfg);
  j.update(condition_json(report));
  write_json(cfg, "condition.json", j);

  std::ostringstream s;
  s << "exists=" << (report.exists ? "true" : "false")
    << " value=" << io::format_double(report.condition_value)
    << " beta=" << io::format_double(report.beta)
    << " kappa1=" << io::format_double(report.kappa1)
    << " radial_exponent=" << io::format_double(report.radial_exponent);
  return {0, s.str()};
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  const ExperimentParams params = mc_params(cfg);
  const TimeGrid grid(params.horizon, params.grid_size);
  const FgnSampler samplers[2] = {FgnSampler(cfg.sampler_kind(), params.hurst.h1, grid),
                                  FgnSampler(cfg.sampler_kind(), params.hurst.h2, grid)};
  const double hursts[2] = {params.hurst.h1, params.hurst.h2};

  io::Csv csv({"replicate", "process", "coord", "time_index", "time", "value"});
  csv.comment(config_comment(cfg));
  for (int r = 0; r < params.replicates; ++r) {
    for (int process = 0; process < 2; ++process) {
      const FbmPath path =
          sample_path(samplers[process], hursts[process], cfg.d,
                      PathStreams{params.seed, static_cast<std::uint64_t>(r),
                                  static_cast<std::uint32_t>(process)});
      for (int c = 0; c < path.dim; ++c)
        for (int i = 0; i < path.grid.steps; ++i)
          csv.row({std::to_string(r), std::to_string(process + 1), std::to_string(c),
                   std::to_string(i + 1), csv.cell(path.grid.time(i)),
                   csv.cell(path.at(i, c))});
    }
  }
  write_csv(cfg, "paths.csv", csv);

  std::ostringstream s;
  s << "wrote " << params.replicates << " path pairs (M=" << params.grid_size
    << ", d=" << cfg.d << ", sampler=" << cfg.sampler << ") to " << cfg.out_dir << "/paths.csv";
  return {0, s.str()};
}

CommandResult cmd_estimate(const RunConfig& cfg) {
  const ExperimentParams params = mc_params(cfg);
  const estimator::EstimateRecord rec = estimator::mc_estimate(params, mc_options(cfg));

  ordered_json j = artifact(cfg);
  j["mean"] = rec.mean;
  j["variance"] = rec.variance;
  j["std_error"] = rec.std_error;
  j["std_error_valid"] = rec.std_error_valid;
  j["replicates_used"] = rec.replicates_used;
  write_json(cfg, "estimate.json", j);

  std::ostringstream s;
  s << "mean=" << io::format_double(rec.mean) << " std_error=" << io::format_double(rec.std_error)
    << (rec.std_error_valid ? "" : " (std_error unusable: N=1)") << " N=" << rec.replicates_used;
  return {0, s.str()};
}

CommandResult cmd_sweep_eps(const RunConfig& cfg) {
  const ExperimentParams params = mc_params(cfg);
  const estimator::SweepResult sweep =
      estimator::eps_cauchy_sweep(params, cfg.halvings, mc_options(cfg));

  io::Csv csv({"epsilon", "mean", "std_error", "cauchy_gap", "gap_std_error"});
  csv.comment(config_comment(cfg));
  for (std::size_t j = 0; j < sweep.epsilons.size(); ++j) {
    const bool has_gap = j < sweep.cauchy_gaps.size();
    csv.row({csv.cell(sweep.epsilons[j]), csv.cell(sweep.means[j]),
             csv.cell(sweep.mean_std_errors[j]),
             has_gap ? csv.cell(sweep.cauchy_gaps[j]) : "",
             has_gap ? csv.cell(sweep.gap_std_errors[j]) : ""});
  }
  write_csv(cfg, "sweep.csv", csv);

  ordered_json j = artifact(cfg);
  j["condition"] = condition_json(evaluate_condition(params.hurst, params.k));
  j["epsilons"] = sweep.epsilons;
  j["means"] = sweep.means;
  j["mean_std_errors"] = sweep.mean_std_errors;
  j["cauchy_gaps"] = sweep.cauchy_gaps;
  j["gap_std_errors"] = sweep.gap_std_errors;
  j["slopes"] = ordered_json::object();
  j["slopes"]["mean"] = sweep.mean_slope ? ordered_json(*sweep.mean_slope) : ordered_json();
  j["slopes"]["cauchy_gap"] = sweep.gap_slope ? ordered_json(*sweep.gap_slope) : ordered_json();
  write_json(cfg, "sweep.json", j);

  std::ostringstream s;
  s << "levels=" << sweep.epsilons.size() << " gaps=[";
  for (std::size_t g = 0; g < sweep.cauchy_gaps.size(); ++g)
    s << (g ? " " : "") << io::format_double(sweep.cauchy_gaps[g]);
  s << "]";
  if (sweep.mean_slope) s << " mean_slope=" << io::format_double(*sweep.mean_slope);
  return {0, s.str()};
}

CommandResult cmd_moments(const RunConfig& cfg) {
  const ExperimentParams params = mc_params(cfg);
  const double eps[1] = {params.epsilon};
  const auto values = estimator::mc_samples(params, eps, mc_options(cfg));

  io::Csv csv({"order", "value", "std_error"});
  csv.comment(config_comment(cfg));
  ordered_json j = artifact(cfg);
  j["moments"] = ordered_json::array();
  for (int n : cfg.moment_orders) {
    const auto est = estimator::moment_from_samples(values[0], n);
    csv.row({std::to_string(est.order), csv.cell(est.value), csv.cell(est.std_error)});
    ordered_json row;
    row["order"] = est.order;
    row["value"] = est.value;
    row["std_error"] = est.std_error;
    j["moments"].push_back(row);
  }
  j["condition"] = condition_json(evaluate_condition(params.hurst, params.k));
  write_csv(cfg, "moments.csv", csv);
  write_json(cfg, "moments.json", j);

  std::ostringstream s;
  s << "orders=" << cfg.moment_orders.size() << " N=" << params.replicates << " written to "
    << cfg.out_dir << "/moments.{csv,json}";
  return {0, s.str()};
}

CommandResult cmd_oracle(const RunConfig& cfg) {
  const HurstPair hurst(cfg.h1, cfg.h2);
  const MultiIndex k(cfg.k);
  const auto res = oracle::first_moment_mollified(hurst, k, cfg.horizon, cfg.epsilon);

  ordered_json j = artifact(cfg);
  j["divergent"] = !res.converged;
  if (res.converged) j["value"] = res.value;
  j["trace"] = res.refinement_trace;
  j["tolerance"] = res.rel_tol;
  j["evaluations"] = res.evaluations;
  write_json(cfg, "oracle.json", j);

  std::ostringstream s;
  if (res.converged)
    s << "value=" << io::format_double(res.value) << " evaluations=" << res.evaluations;
  else
    s << "divergent=true trace_size=" << res.refinement_trace.size()
      << " last=" << io::format_double(res.refinement_trace.back());
  return {0, s.str()};
}

CommandResult cmd_verify_bounds(const RunConfig& cfg) {
  const auto report = bounds::run_fuzz_campaign(cfg.seed, cfg.fuzz_cases);

  io::Csv csv({"case_id", "H", "n", "ratio_kind", "ratio_value"});
  csv.comment(config_comment(cfg));
  for (const auto& rec : report.records)
    csv.row({std::to_string(rec.case_id), csv.cell(rec.h), std::to_string(rec.n),
             rec.ratio_kind, csv.cell(rec.ratio_value)});
  write_csv(cfg, "bounds.csv", csv);

  ordered_json j = artifact(cfg);
  j["cases"] = report.summary.cases;
  j["violations"] = report.summary.violations;
  j["min_eigen_interp_margin"] = report.summary.min_eigen_interp_margin;
  j["min_det_interp_margin"] = report.summary.min_det_interp_margin;
  j["min_lambda_min"] = report.summary.min_lambda_min;
  j["min_det_product_ratio"] = report.summary.min_det_product_ratio;
  j["min_lnd_ratio"] = report.summary.min_lnd_ratio;
  write_json(cfg, "bounds_summary.json", j);

  std::ostringstream s;
  s << "cases=" << report.summary.cases << " violations=" << report.summary.violations
    << " min_lnd_ratio=" << io::format_double(report.summary.min_lnd_ratio);
  return {report.summary.violations > 0 ? 1 : 0, s.str()};
}

CommandResult cmd_tail_check(const RunConfig& cfg) {
  const ExperimentParams params = mc_params(cfg);
  if (params.replicates < 10'000)
    throw ConfigError("config: tail-check needs N >= 10000 samples");
  const double eps[1] = {params.epsilon};
  const auto values = estimator::mc_samples(params, eps, mc_options(cfg));
  const auto fit = estimator::tail_exponent_fit(values[0], params.seed);
  const double beta = beta_exponent(params.hurst, cfg.d);

  ordered_json j = artifact(cfg);
  j["exponent"] = fit.exponent;
  j["ci_low"] = fit.ci_low;
  j["ci_high"] = fit.ci_high;
  j["samples_used"] = fit.samples_used;
  j["beta_reference"] = beta;
  write_json(cfg, "tail.json", j);

  std::ostringstream s;
  s << "b=" << io::format_double(fit.exponent) << " ci=[" << io::format_double(fit.ci_low)
    << "," << io::format_double(fit.ci_high) << "] beta_reference=" << io::format_double(beta);
  return {0, s.str()};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"check-condition", "simulate",
                                                 "estimate",        "sweep-eps",
                                                 "moments",         "oracle",
                                                 "verify-bounds",   "tail-check"};
  return names;
}

CommandResult run_command(const std::string& command, const RunConfig& cfg) {
  if (command == "check-condition") return cmd_check_condition(cfg);
  if (command == "simulate") return cmd_simulate(cfg);
  if (command == "estimate") return cmd_estimate(cfg);
  if (command == "sweep-eps") return cmd_sweep_eps(cfg);
  if (command == "moments") return cmd_moments(cfg);
  if (command == "oracle") return cmd_oracle(cfg);
  if (command == "verify-bounds") return cmd_verify_bounds(cfg);
  if (command == "tail-check") return cmd_tail_check(cfg);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace ilt::cli
