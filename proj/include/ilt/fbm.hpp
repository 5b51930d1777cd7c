#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ilt/model.hpp"
#include "ilt/rng.hpp"

namespace ilt {

/// Uniform grid t_i = i*T/M for i = 1..M. The origin is not stored: every
/// path starts at 0 at time 0, and storing it would put a zero-variance
/// row into the factorizations.
struct TimeGrid {
  double horizon;  // T
  int steps;       // M

  TimeGrid(double horizon_, int steps_);
  double dt() const { return horizon / steps; }
  /// Time of storage row i (0-based): (i+1) * T / M.
  double time(int i) const { return horizon * (i + 1) / steps; }
  bool operator==(const TimeGrid&) const = default;
};

/// One d-dimensional fractional Brownian motion path sampled on a grid.
/// values is row-major M x d; coordinates are independent.
struct FbmPath {
  double hurst;
  TimeGrid grid;
  int dim;
  std::vector<double> values;

  double at(int i, int c) const { return values[static_cast<std::size_t>(i) * dim + c]; }
};

/// Covariance  E[B_s B_t] = (s^{2H} + t^{2H} - |s-t|^{2H}) / 2  of one
/// fBm coordinate.
double fbm_covariance(double h, double s, double t);

/// Autocovariance of the stationary increment sequence on a grid of
/// spacing dt: gamma(j) = dt^{2H} (|j+1|^{2H} + |j-1|^{2H} - 2|j|^{2H}) / 2.
double fgn_autocovariance(double h, int lag, double dt);

/// Identifies the substreams used for one path: Gaussian draws for
/// coordinate c come from (seed, Paths domain, replicate, process, c).
struct PathStreams {
  std::uint64_t seed;
  std::uint64_t replicate;
  std::uint32_t process;

  rng::Stream coord_stream(int c) const {
    return rng::make_stream(seed, rng::Domain::Paths, replicate, process,
                            static_cast<std::uint32_t>(c));
  }
};

/// Exact-in-distribution fractional Gaussian noise sampler backed by a
/// dense Cholesky factor of the increment covariance. M is capped at 4096.
class CholeskyFgnSampler {
 public:
  CholeskyFgnSampler(double h, const TimeGrid& grid);
  void sample_increments(rng::Stream& stream, std::vector<double>& out) const;
  const TimeGrid& grid() const { return grid_; }
  double hurst() const { return h_; }

 private:
  double h_;
  TimeGrid grid_;
  std::vector<double> chol_;  // lower triangle, row-major M x M
};

/// Exact-in-distribution sampler via circulant embedding of the increment
/// covariance, diagonalized by an FFT of length = first power of two
/// >= 2M. Negative embedding eigenvalues are clamped to zero only when
/// their magnitude is <= 1e-10 times the largest eigenvalue; anything
/// larger is an error, never an approximation.
class CirculantFgnSampler {
 public:
  CirculantFgnSampler(double h, const TimeGrid& grid);
  void sample_increments(rng::Stream& stream, std::vector<double>& out) const;
  const TimeGrid& grid() const { return grid_; }
  double hurst() const { return h_; }

  /// Embedding spectrum (FFT of the padded autocovariance), for tests.
  const std::vector<double>& spectrum() const { return spectrum_; }

 private:
  double h_;
  TimeGrid grid_;
  std::vector<double> spectrum_;
  std::vector<double> sqrt_spectrum_;
};

enum class SamplerKind { Cholesky, Circulant };

/// Shared interface used by the estimator loops: one sampler per process,
/// constructed once and reused across replicates (const and thread-safe).
class FgnSampler {
 public:
  FgnSampler(SamplerKind kind, double h, const TimeGrid& grid);
  void sample_increments(rng::Stream& stream, std::vector<double>& out) const;
  const TimeGrid& grid() const;

 private:
  std::shared_ptr<const CholeskyFgnSampler> cholesky_;
  std::shared_ptr<const CirculantFgnSampler> circulant_;
};

/// d-dimensional path assembled from independent per-coordinate increment
/// samples, cumulatively summed.
FbmPath sample_path(const FgnSampler& sampler, double h, int d, const PathStreams& streams);

FbmPath sample_path_cholesky(double h, const TimeGrid& grid, int d, const PathStreams& streams);
FbmPath sample_path_circulant(double h, const TimeGrid& grid, int d, const PathStreams& streams);

/// The pair (B^{H1}, B~^{H2}) on the shared grid for one replicate.
/// Substreams are disjoint across (replicate, process, coordinate), so
/// replicates can be generated concurrently in any order.
std::pair<FbmPath, FbmPath> sample_pair(const ExperimentParams& params, std::uint64_t replicate,
                                        SamplerKind kind = SamplerKind::Circulant);

}  // namespace ilt
