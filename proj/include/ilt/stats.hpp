#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ilt::stats {

/// Neumaier-compensated accumulator. All reductions that feed reported
/// numbers go through this in a fixed order, so results do not depend on
/// the worker count.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double sum(std::span<const double> xs);
double mean(std::span<const double> xs);
/// Unbiased sample variance (two-pass, compensated). Returns 0 for n < 2.
double sample_variance(std::span<const double> xs);
/// Standard error of the mean. Identical to the leave-one-out jackknife
/// error of the mean, which is how the uncertainty of all Monte Carlo
/// averages here is defined.
double jackknife_se_of_mean(std::span<const double> xs);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope*x + intercept. Requires >= 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x); inputs must be positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Runs fn(i) for i in [0, count) on up to `workers` threads. fn must be
/// pure up to writes into its own slot i. Rethrows the first exception.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

/// Worker-count resolution: explicit request, else ILT_LAB_WORKERS, else
/// hardware concurrency (at least 1).
unsigned resolve_workers(unsigned requested);

}  // namespace ilt::stats
