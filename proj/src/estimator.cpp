#include "ilt/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ilt/rng.hpp"
#include "ilt/stats.hpp"

namespace ilt::estimator {

double riemann_functional(const FbmPath& path_a, const FbmPath& path_b, const KernelSpec& spec) {
  if (!(path_a.grid == path_b.grid))
    throw std::invalid_argument("riemann_functional: paths must share the grid");
  const int d = spec.dim();
  if (path_a.dim != d || path_b.dim != d)
    throw std::invalid_argument("riemann_functional: path dimension does not match the index");

  const KernelEvaluator kernel(spec);
  const int m = path_a.grid.steps;
  const double cell = path_a.grid.dt() * path_a.grid.dt();

  std::vector<double> diff(static_cast<std::size_t>(d));
  stats::KahanSum sum;
  for (int a = 0; a < m; ++a) {
    const double* row_a = &path_a.values[static_cast<std::size_t>(a) * d];
    for (int b = 0; b < m; ++b) {
      const double* row_b = &path_b.values[static_cast<std::size_t>(b) * d];
      for (int c = 0; c < d; ++c) diff[static_cast<std::size_t>(c)] = row_a[c] - row_b[c];
      sum.add(kernel(diff.data()));
    }
  }
  return cell * sum.value();
}

std::vector<std::vector<double>> mc_samples(const ExperimentParams& params,
                                            std::span<const double> epsilons,
                                            const McOptions& options) {
  if (epsilons.empty()) throw std::invalid_argument("mc_samples: need at least one epsilon");
  std::vector<KernelSpec> specs;
  specs.reserve(epsilons.size());
  for (double eps : epsilons) specs.emplace_back(eps, params.k);

  const TimeGrid grid(params.horizon, params.grid_size);
  const FgnSampler sampler_a(options.sampler, params.hurst.h1, grid);
  const FgnSampler sampler_b(options.sampler, params.hurst.h2, grid);
  const int d = params.k.dim();
  const std::size_t n = static_cast<std::size_t>(params.replicates);

  std::vector<std::vector<double>> values(epsilons.size(), std::vector<double>(n));
  stats::parallel_for(n, stats::resolve_workers(options.workers), [&](std::size_t r) {
    const FbmPath a =
        sample_path(sampler_a, params.hurst.h1, d, PathStreams{params.seed, r, 0});
    const FbmPath b =
        sample_path(sampler_b, params.hurst.h2, d, PathStreams{params.seed, r, 1});
    for (std::size_t level = 0; level < specs.size(); ++level)
      values[level][r] = riemann_functional(a, b, specs[level]);
  });
  return values;
}

EstimateRecord mc_estimate(const ExperimentParams& params, const McOptions& options) {
  const double eps[1] = {params.epsilon};
  const auto values = mc_samples(params, eps, options);
  const auto& samples = values[0];

  EstimateRecord rec(params);
  rec.replicates_used = params.replicates;
  rec.mean = stats::mean(samples);
  rec.variance = stats::sample_variance(samples);
  rec.std_error = std::sqrt(rec.variance / static_cast<double>(samples.size()));
  rec.std_error_valid = samples.size() >= 2;
  return rec;
}

namespace {

/// Slope of log|y| against log x, declared unresolvable (nullopt) when any
/// level is statistically indistinguishable from zero.
std::optional<double> guarded_loglog_slope(std::span<const double> x,
                                           std::span<const double> y,
                                           std::span<const double> y_se) {
  std::vector<double> mag(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    mag[i] = std::abs(y[i]);
    if (!(mag[i] > 3.0 * y_se[i]) || mag[i] == 0.0) return std::nullopt;
  }
  return stats::loglog_slope(x, mag);
}

}  // namespace

SweepResult eps_cauchy_sweep(const ExperimentParams& params, int halvings,
                             const McOptions& options) {
  if (halvings < 2) throw std::invalid_argument("eps_cauchy_sweep: need halvings >= 2");

  std::vector<double> epsilons(static_cast<std::size_t>(halvings) + 1);
  epsilons[0] = params.epsilon;
  for (int j = 1; j <= halvings; ++j)
    epsilons[static_cast<std::size_t>(j)] = 0.5 * epsilons[static_cast<std::size_t>(j - 1)];

  const auto values = mc_samples(params, epsilons, options);
  const std::size_t n = values[0].size();

  SweepResult sweep(params);
  sweep.epsilons = epsilons;
  sweep.replicates_used = params.replicates;
  for (const auto& level : values) {
    sweep.means.push_back(stats::mean(level));
    sweep.mean_std_errors.push_back(stats::jackknife_se_of_mean(level));
  }

  std::vector<double> sq(n);
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      const double diff = values[j][r] - values[j + 1][r];
      sq[r] = diff * diff;
    }
    sweep.cauchy_gaps.push_back(stats::mean(sq));
    sweep.gap_std_errors.push_back(stats::jackknife_se_of_mean(sq));
  }

  sweep.mean_slope = guarded_loglog_slope(epsilons, sweep.means, sweep.mean_std_errors);
  const std::span<const double> gap_eps(epsilons.data(), sweep.cauchy_gaps.size());
  sweep.gap_slope = guarded_loglog_slope(gap_eps, sweep.cauchy_gaps, sweep.gap_std_errors);
  return sweep;
}

MomentEstimate moment_from_samples(std::span<const double> samples, int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("empirical_moment: order must be in [1, 6]");
  if (samples.empty()) throw std::invalid_argument("empirical_moment: empty sample");
  std::vector<double> powered(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    powered[i] = std::pow(std::abs(samples[i]), n);
  MomentEstimate est;
  est.order = n;
  est.value = stats::mean(powered);
  est.std_error = stats::jackknife_se_of_mean(powered);
  return est;
}

MomentEstimate empirical_moment(const ExperimentParams& params, int n,
                                const McOptions& options) {
  const double eps[1] = {params.epsilon};
  const auto values = mc_samples(params, eps, options);
  return moment_from_samples(values[0], n);
}

namespace {

double fit_tail_slope(const std::vector<double>& sorted_abs) {
  const std::size_t n = sorted_abs.size();
  const std::size_t start = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(n)));
  std::vector<double> lx, ly;
  lx.reserve(n - start);
  ly.reserve(n - start);
  for (std::size_t i = start; i < n; ++i) {
    if (!(sorted_abs[i] > 0.0)) continue;
    const double tail = static_cast<double>(n - i) / static_cast<double>(n);
    lx.push_back(std::log(sorted_abs[i]));
    ly.push_back(std::log(-std::log(tail)));
  }
  if (lx.size() < 8)
    throw std::invalid_argument("tail_exponent_fit: too few usable tail points");
  return stats::fit_line(lx, ly).slope;
}

}  // namespace

TailFit tail_exponent_fit(std::span<const double> samples, std::uint64_t seed) {
  if (samples.size() < 10'000)
    throw std::invalid_argument("tail_exponent_fit: need at least 10^4 samples");
  const std::size_t n = samples.size();

  std::vector<double> sorted_abs(n);
  for (std::size_t i = 0; i < n; ++i) sorted_abs[i] = std::abs(samples[i]);
  std::sort(sorted_abs.begin(), sorted_abs.end());

  TailFit fit;
  fit.samples_used = static_cast<int>(n);
  fit.exponent = fit_tail_slope(sorted_abs);

  constexpr int kBootstrap = 200;
  std::vector<double> boot(kBootstrap);
  std::vector<double> resample(n);
  for (int b = 0; b < kBootstrap; ++b) {
    rng::Stream stream =
        rng::make_stream(seed, rng::Domain::Bootstrap, static_cast<std::uint64_t>(b));
    for (std::size_t i = 0; i < n; ++i)
      resample[i] = sorted_abs[stream.next_below(n)];
    std::sort(resample.begin(), resample.end());
    boot[static_cast<std::size_t>(b)] = fit_tail_slope(resample);
  }
  std::sort(boot.begin(), boot.end());
  fit.ci_low = boot[static_cast<std::size_t>(std::floor(0.025 * (kBootstrap - 1)))];
  fit.ci_high = boot[static_cast<std::size_t>(std::ceil(0.975 * (kBootstrap - 1)))];
  return fit;
}

}  // namespace ilt::estimator
