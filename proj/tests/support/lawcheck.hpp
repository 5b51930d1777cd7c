// Distribution checks shared by the sampler unit tests and the acceptance
// suite.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ilt/fbm.hpp"

namespace testsupport {

/// Multiple-comparison budget for a batch of 3-sigma element-wise checks.
/// The z-scores of overlapping covariance entries are strongly correlated,
/// so exceedance counts cluster: under the true law the observed fraction
/// beyond 3 sigma stays within ~2% (null-calibrated across seeds, expected
/// 0.27% if independent) while a genuinely wrong law pushes far more
/// entries out. The 4.5-sigma hard cap catches localized biases.
struct ZBatch {
  int count = 0;
  int beyond3 = 0;
  double max_abs = 0.0;

  void add(double z) {
    ++count;
    const double a = std::abs(z);
    if (a > 3.0) ++beyond3;
    max_abs = std::max(max_abs, a);
  }
  bool pass() const { return beyond3 <= std::max(10, count / 50) && max_abs < 4.5; }
};

struct MomentAccumulator {
  std::vector<double> sum1;
  std::vector<double> sum2;
  int n = 0;

  explicit MomentAccumulator(std::size_t entries) : sum1(entries, 0.0), sum2(entries, 0.0) {}

  void add(std::size_t idx, double v) {
    sum1[idx] += v;
    sum2[idx] += v * v;
  }
  double mean(std::size_t idx) const { return sum1[idx] / n; }
  double se(std::size_t idx) const {
    const double m = mean(idx);
    const double var = sum2[idx] / n - m * m;
    return std::sqrt(std::max(var, 0.0) / n);
  }
};

/// Mean and covariance z-scores of sampled paths against the exact fBm law.
inline ZBatch law_check(ilt::SamplerKind kind, double h, int m, int reps, std::uint64_t seed) {
  using namespace ilt;
  const TimeGrid grid(1.0, m);
  const FgnSampler sampler(kind, h, grid);
  const std::size_t pairs = static_cast<std::size_t>(m) * (m + 1) / 2;

  MomentAccumulator means(static_cast<std::size_t>(m));
  MomentAccumulator covs(pairs);
  for (int r = 0; r < reps; ++r) {
    const FbmPath path =
        sample_path(sampler, h, 1, PathStreams{seed, static_cast<std::uint64_t>(r), 0});
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i) {
      means.add(static_cast<std::size_t>(i), path.at(i, 0));
      for (int j = i; j < m; ++j) covs.add(idx++, path.at(i, 0) * path.at(j, 0));
    }
  }
  means.n = covs.n = reps;

  ZBatch batch;
  for (int i = 0; i < m; ++i)
    batch.add(means.mean(static_cast<std::size_t>(i)) / means.se(static_cast<std::size_t>(i)));
  std::size_t idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const double exact = fbm_covariance(h, grid.time(i), grid.time(j));
      batch.add((covs.mean(idx) - exact) / covs.se(idx));
      ++idx;
    }
  return batch;
}

/// Two-sample mean/covariance comparison of the two exact samplers.
inline ZBatch sampler_agreement_check(double h, int m, int reps, std::uint64_t seed) {
  using namespace ilt;
  const TimeGrid grid(1.0, m);
  const FgnSampler chol(SamplerKind::Cholesky, h, grid);
  const FgnSampler circ(SamplerKind::Circulant, h, grid);
  const std::size_t pairs = static_cast<std::size_t>(m) * (m + 1) / 2;

  MomentAccumulator mean_a(static_cast<std::size_t>(m)), mean_b(static_cast<std::size_t>(m));
  MomentAccumulator cov_a(pairs), cov_b(pairs);
  for (int r = 0; r < reps; ++r) {
    const FbmPath pa =
        sample_path(chol, h, 1, PathStreams{seed, static_cast<std::uint64_t>(r), 0});
    const FbmPath pb =
        sample_path(circ, h, 1, PathStreams{seed + 1, static_cast<std::uint64_t>(r), 1});
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i) {
      mean_a.add(static_cast<std::size_t>(i), pa.at(i, 0));
      mean_b.add(static_cast<std::size_t>(i), pb.at(i, 0));
      for (int j = i; j < m; ++j) {
        cov_a.add(idx, pa.at(i, 0) * pa.at(j, 0));
        cov_b.add(idx, pb.at(i, 0) * pb.at(j, 0));
        ++idx;
      }
    }
  }
  mean_a.n = mean_b.n = cov_a.n = cov_b.n = reps;

  ZBatch batch;
  for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i)
    batch.add((mean_a.mean(i) - mean_b.mean(i)) / std::hypot(mean_a.se(i), mean_b.se(i)));
  for (std::size_t idx = 0; idx < pairs; ++idx)
    batch.add((cov_a.mean(idx) - cov_b.mean(idx)) / std::hypot(cov_a.se(idx), cov_b.se(idx)));
  return batch;
}

}  // namespace testsupport
