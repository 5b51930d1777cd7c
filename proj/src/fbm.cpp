#include "ilt/fbm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "ilt/fft.hpp"

namespace ilt {

namespace {
constexpr int kMaxCholeskySteps = 4096;
constexpr double kNegativeEigenTol = 1e-10;
}  // namespace

TimeGrid::TimeGrid(double horizon_, int steps_) : horizon(horizon_), steps(steps_) {
  if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be > 0");
  if (steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
}

double fbm_covariance(double h, double s, double t) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("fbm_covariance: H outside (0,1)");
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("fbm_covariance: negative time");
  const double two_h = 2.0 * h;
  return 0.5 * (std::pow(s, two_h) + std::pow(t, two_h) - std::pow(std::abs(s - t), two_h));
}

double fgn_autocovariance(double h, int lag, double dt) {
  if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("fgn_autocovariance: H outside (0,1)");
  if (lag < 0 || !(dt > 0.0)) throw std::invalid_argument("fgn_autocovariance: bad arguments");
  const double two_h = 2.0 * h;
  const double j = lag;
  return 0.5 * std::pow(dt, two_h) *
         (std::pow(j + 1.0, two_h) + (lag == 0 ? 1.0 : std::pow(j - 1.0, two_h)) -
          2.0 * std::pow(j, two_h));
}

CholeskyFgnSampler::CholeskyFgnSampler(double h, const TimeGrid& grid) : h_(h), grid_(grid) {
  const int m = grid.steps;
  if (m > kMaxCholeskySteps)
    throw std::invalid_argument("CholeskyFgnSampler: grid too large for a dense factorization");

  Eigen::MatrixXd cov(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) cov(i, j) = fgn_autocovariance(h, std::abs(i - j), grid.dt());

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("CholeskyFgnSampler: increment covariance not positive definite");

  const Eigen::MatrixXd lower = llt.matrixL();
  chol_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) chol_[static_cast<std::size_t>(i) * m + j] = lower(i, j);
}

void CholeskyFgnSampler::sample_increments(rng::Stream& stream, std::vector<double>& out) const {
  const int m = grid_.steps;
  std::vector<double> z(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) z[static_cast<std::size_t>(i)] = stream.next_gaussian();
  out.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    const double* row = &chol_[static_cast<std::size_t>(i) * m];
    for (int j = 0; j <= i; ++j) acc += row[j] * z[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
}

CirculantFgnSampler::CirculantFgnSampler(double h, const TimeGrid& grid) : h_(h), grid_(grid) {
  const std::size_t m = static_cast<std::size_t>(grid.steps);
  const std::size_t n = fft::next_pow2(2 * m);

  std::vector<std::complex<double>> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lag = std::min(j, n - j);
    c[j] = fgn_autocovariance(h, static_cast<int>(lag), grid.dt());
  }
  fft::forward(c);

  spectrum_.resize(n);
  double max_eig = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    spectrum_[j] = c[j].real();
    max_eig = std::max(max_eig, spectrum_[j]);
  }
  sqrt_spectrum_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lambda = spectrum_[j];
    if (lambda < 0.0) {
      if (lambda < -kNegativeEigenTol * max_eig) {
        std::ostringstream msg;
        msg << "CirculantFgnSampler: embedding eigenvalue " << lambda << " at H=" << h
            << ", M=" << grid.steps << " is too negative to clamp";
        throw std::runtime_error(msg.str());
      }
      lambda = 0.0;
    }
    sqrt_spectrum_[j] = std::sqrt(lambda);
  }
}

void CirculantFgnSampler::sample_increments(rng::Stream& stream, std::vector<double>& out) const {
  const std::size_t n = sqrt_spectrum_.size();
  std::vector<std::complex<double>> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = stream.next_gaussian();
    const double b = stream.next_gaussian();
    z[j] = sqrt_spectrum_[j] * std::complex<double>(a, b);
  }
  fft::forward(z);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const std::size_t m = static_cast<std::size_t>(grid_.steps);
  out.resize(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = z[i].real() * scale;
}

FgnSampler::FgnSampler(SamplerKind kind, double h, const TimeGrid& grid) {
  if (kind == SamplerKind::Cholesky)
    cholesky_ = std::make_shared<const CholeskyFgnSampler>(h, grid);
  else
    circulant_ = std::make_shared<const CirculantFgnSampler>(h, grid);
}

void FgnSampler::sample_increments(rng::Stream& stream, std::vector<double>& out) const {
  if (cholesky_)
    cholesky_->sample_increments(stream, out);
  else
    circulant_->sample_increments(stream, out);
}

const TimeGrid& FgnSampler::grid() const {
  return cholesky_ ? cholesky_->grid() : circulant_->grid();
}

FbmPath sample_path(const FgnSampler& sampler, double h, int d, const PathStreams& streams) {
  if (d < 1) throw std::invalid_argument("sample_path: dimension must be >= 1");
  const TimeGrid& grid = sampler.grid();
  const int m = grid.steps;

  FbmPath path{h, grid, d, std::vector<double>(static_cast<std::size_t>(m) * d)};
  std::vector<double> increments;
  for (int c = 0; c < d; ++c) {
    rng::Stream stream = streams.coord_stream(c);
    sampler.sample_increments(stream, increments);
    double level = 0.0;
    for (int i = 0; i < m; ++i) {
      level += increments[static_cast<std::size_t>(i)];
      path.values[static_cast<std::size_t>(i) * d + c] = level;
    }
  }
  return path;
}

FbmPath sample_path_cholesky(double h, const TimeGrid& grid, int d, const PathStreams& streams) {
  return sample_path(FgnSampler(SamplerKind::Cholesky, h, grid), h, d, streams);
}

FbmPath sample_path_circulant(double h, const TimeGrid& grid, int d, const PathStreams& streams) {
  return sample_path(FgnSampler(SamplerKind::Circulant, h, grid), h, d, streams);
}

std::pair<FbmPath, FbmPath> sample_pair(const ExperimentParams& params, std::uint64_t replicate,
                                        SamplerKind kind) {
  if (replicate >= static_cast<std::uint64_t>(params.replicates))
    throw std::invalid_argument("sample_pair: replicate out of range");
  const TimeGrid grid(params.horizon, params.grid_size);
  const int d = params.k.dim();

  const FgnSampler first(kind, params.hurst.h1, grid);
  const FgnSampler second(kind, params.hurst.h2, grid);
  FbmPath a = sample_path(first, params.hurst.h1, d, PathStreams{params.seed, replicate, 0});
  FbmPath b = sample_path(second, params.hurst.h2, d, PathStreams{params.seed, replicate, 1});
  return {std::move(a), std::move(b)};
}

}  // namespace ilt
