#include "ilt/matrix_bounds.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ilt/fbm.hpp"
#include "ilt/rng.hpp"

namespace ilt::bounds {

namespace {

constexpr int kMaxGramSize = 64;
constexpr int kMaxRatioSize = 10;
constexpr double kInterpSlack = 1e-12;

Eigen::MatrixXd to_eigen(const SymMatrix& m) {
  Eigen::MatrixXd e(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) e(i, j) = m.at(i, j);
  return e;
}

void require_symmetric(const SymMatrix& m, const char* who) {
  double max_abs = 0.0, max_asym = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      max_abs = std::max(max_abs, std::abs(m.at(i, j)));
      max_asym = std::max(max_asym, std::abs(m.at(i, j) - m.at(j, i)));
    }
  if (max_asym > 1e-12 * std::max(1.0, max_abs))
    throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
}

void require_times(std::span<const double> times, int cap, const char* who) {
  if (times.empty() || static_cast<int>(times.size()) > cap)
    throw std::invalid_argument(std::string(who) + ": need 1 <= n <= " + std::to_string(cap));
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev)) throw std::invalid_argument(std::string(who) +
                                                 ": times must be positive and increasing");
    prev = t;
  }
}

double spd_lambda_min(const SymMatrix& m, const char* who) {
  require_symmetric(m, who);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(m),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error(std::string(who) + ": eigensolver failed");
  return solver.eigenvalues()(0);
}

}  // namespace

SymMatrix SymMatrix::zero(int n) {
  if (n < 1) throw std::invalid_argument("SymMatrix: n must be >= 1");
  return SymMatrix{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  if (n != other.n) throw std::invalid_argument("SymMatrix: size mismatch");
  SymMatrix r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += other.a[i];
  return r;
}

SymMatrix build_gram(double h, std::span<const double> times) {
  require_times(times, kMaxGramSize, "build_gram");
  const int n = static_cast<int>(times.size());
  SymMatrix q = SymMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      q.at(i, j) = fbm_covariance(h, times[static_cast<std::size_t>(i)],
                                  times[static_cast<std::size_t>(j)]);
  return q;
}

GramPair build_gram_pair(double h1, std::span<const double> times_s, double h2,
                         std::span<const double> times_t) {
  if (times_s.size() != times_t.size())
    throw std::invalid_argument("build_gram_pair: time vectors must have equal length");
  GramPair pair;
  pair.times_s.assign(times_s.begin(), times_s.end());
  pair.times_t.assign(times_t.begin(), times_t.end());
  pair.q1 = build_gram(h1, times_s);
  pair.q2 = build_gram(h2, times_t);
  return pair;
}

double lambda_min(const SymMatrix& m) { return spd_lambda_min(m, "lambda_min"); }

double logdet_spd(const SymMatrix& m) {
  require_symmetric(m, "logdet_spd");
  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(m));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("logdet_spd: matrix not positive definite");
  const Eigen::MatrixXd lower = llt.matrixL();
  double logdet = 0.0;
  for (int i = 0; i < m.n; ++i) logdet += std::log(lower(i, i));
  return 2.0 * logdet;
}

double eigen_interpolation_margin(const SymMatrix& a, const SymMatrix& b,
                                  std::span<const double> rho_grid) {
  const double la = spd_lambda_min(a, "eigen_interpolation");
  const double lb = spd_lambda_min(b, "eigen_interpolation");
  if (!(la > 0.0) || !(lb > 0.0))
    throw std::invalid_argument("eigen_interpolation: inputs must be positive definite");
  const double lab = spd_lambda_min(a + b, "eigen_interpolation");
  double margin = std::numeric_limits<double>::infinity();
  for (double rho : rho_grid) {
    if (rho < 0.0 || rho > 1.0)
      throw std::invalid_argument("eigen_interpolation: rho outside [0,1]");
    margin = std::min(margin, lab - std::pow(la, rho) * std::pow(lb, 1.0 - rho));
  }
  return margin;
}

bool check_eigen_interpolation(const SymMatrix& a, const SymMatrix& b,
                               std::span<const double> rho_grid) {
  const double lab = spd_lambda_min(a + b, "eigen_interpolation");
  return eigen_interpolation_margin(a, b, rho_grid) >= -kInterpSlack * std::max(1.0, lab);
}

double det_interpolation_margin(const SymMatrix& a, const SymMatrix& b,
                                std::span<const double> gamma_grid) {
  const double lda = logdet_spd(a);
  const double ldb = logdet_spd(b);
  const double ldab = logdet_spd(a + b);
  double margin = std::numeric_limits<double>::infinity();
  for (double gamma : gamma_grid) {
    if (gamma < 0.0 || gamma > 1.0)
      throw std::invalid_argument("det_interpolation: gamma outside [0,1]");
    margin = std::min(margin, ldab - (gamma * lda + (1.0 - gamma) * ldb));
  }
  return margin;
}

bool check_det_interpolation(const SymMatrix& a, const SymMatrix& b,
                             std::span<const double> gamma_grid) {
  const double ldab = logdet_spd(a + b);
  return det_interpolation_margin(a, b, gamma_grid) >=
         -kInterpSlack * std::max(1.0, std::abs(ldab));
}

double check_det_product_bound(double h, std::span<const double> times) {
  require_times(times, kMaxRatioSize, "check_det_product_bound");
  const SymMatrix q = build_gram(h, times);
  double log_increments = 0.0;
  double prev = 0.0;
  for (double t : times) {
    log_increments += 2.0 * h * std::log(t - prev);
    prev = t;
  }
  return std::exp(logdet_spd(q) - log_increments);
}

double check_lnd_eigen_bound(double h, std::span<const double> times) {
  require_times(times, kMaxRatioSize, "check_lnd_eigen_bound");
  const SymMatrix q = build_gram(h, times);
  double min_inc = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (double t : times) {
    min_inc = std::min(min_inc, t - prev);
    prev = t;
  }
  const int n = static_cast<int>(times.size());
  return lambda_min(q) / (g_matrix_min_eig(n) * std::pow(min_inc, 2.0 * h));
}

double g_matrix_min_eig(int n) {
  if (n < 1 || n > kMaxGramSize)
    throw std::invalid_argument("g_matrix_min_eig: n must be in [1, 64]");
  // G^T G for the upper-triangular all-ones G is the min(i,j) matrix.
  SymMatrix m = SymMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<double>(std::min(i, j) + 1);
  return lambda_min(m);
}

namespace {

/// Strictly increasing times in (0, T] with gaps >= min_gap, built from
/// uniform draws so the construction is deterministic per stream.
std::vector<double> draw_times(rng::Stream& stream, int n, double horizon, double min_gap) {
  std::vector<double> gaps(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& gap : gaps) {
    gap = stream.next_double();
    sum += gap;
  }
  const double free_mass = horizon - n * min_gap;
  std::vector<double> times(static_cast<std::size_t>(n));
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    t += min_gap + gaps[static_cast<std::size_t>(i)] / sum * free_mass;
    times[static_cast<std::size_t>(i)] = t;
  }
  return times;
}

}  // namespace

FuzzReport run_fuzz_campaign(std::uint64_t seed, int cases) {
  if (cases < 1) throw std::invalid_argument("run_fuzz_campaign: cases must be >= 1");
  constexpr double kHorizon = 1.0;
  constexpr double kMinGap = 1e-3 * kHorizon;
  // Keep H away from the extremes: near 0 or 1 the Gram matrices are too
  // ill-conditioned for a double-precision verifier to say anything.
  constexpr double kHurstLo = 0.05;
  constexpr double kHurstHi = 0.95;

  std::vector<double> rho_grid(11);
  for (int i = 0; i <= 10; ++i) rho_grid[static_cast<std::size_t>(i)] = i / 10.0;

  FuzzReport report;
  auto& s = report.summary;
  s.cases = cases;
  s.min_eigen_interp_margin = std::numeric_limits<double>::infinity();
  s.min_det_interp_margin = std::numeric_limits<double>::infinity();
  s.min_lambda_min = std::numeric_limits<double>::infinity();
  s.min_det_product_ratio = std::numeric_limits<double>::infinity();
  s.min_lnd_ratio = std::numeric_limits<double>::infinity();

  for (int id = 0; id < cases; ++id) {
    rng::Stream stream =
        rng::make_stream(seed, rng::Domain::MatrixFuzz, static_cast<std::uint64_t>(id));
    const double h1 = kHurstLo + (kHurstHi - kHurstLo) * stream.next_double();
    const double h2 = kHurstLo + (kHurstHi - kHurstLo) * stream.next_double();

    // Pair inequalities on n <= 6.
    const int n_pair = 2 + static_cast<int>(stream.next_below(5));
    const auto times_s = draw_times(stream, n_pair, kHorizon, kMinGap);
    const auto times_t = draw_times(stream, n_pair, kHorizon, kMinGap);
    const GramPair pair = build_gram_pair(h1, times_s, h2, times_t);

    const double l1 = lambda_min(pair.q1);
    const double l2 = lambda_min(pair.q2);
    const double eig_margin = eigen_interpolation_margin(pair.q1, pair.q2, rho_grid);
    const double det_margin = det_interpolation_margin(pair.q1, pair.q2, rho_grid);

    if (l1 <= 0.0 || l2 <= 0.0) ++s.violations;
    if (!check_eigen_interpolation(pair.q1, pair.q2, rho_grid)) ++s.violations;
    if (!check_det_interpolation(pair.q1, pair.q2, rho_grid)) ++s.violations;

    // Single-matrix ratios on n <= 10.
    const int n_ratio = 1 + static_cast<int>(stream.next_below(10));
    const auto times_r = draw_times(stream, n_ratio, kHorizon, kMinGap);
    const double det_ratio = check_det_product_bound(h1, times_r);
    const double lnd_ratio = check_lnd_eigen_bound(h1, times_r);
    if (!(det_ratio > 0.0) || !(lnd_ratio > 0.0)) ++s.violations;

    s.min_eigen_interp_margin = std::min(s.min_eigen_interp_margin, eig_margin);
    s.min_det_interp_margin = std::min(s.min_det_interp_margin, det_margin);
    s.min_lambda_min = std::min({s.min_lambda_min, l1, l2});
    s.min_det_product_ratio = std::min(s.min_det_product_ratio, det_ratio);
    s.min_lnd_ratio = std::min(s.min_lnd_ratio, lnd_ratio);

    report.records.push_back({id, h1, n_pair, "eigen_interp_margin", eig_margin});
    report.records.push_back({id, h1, n_pair, "det_interp_margin", det_margin});
    report.records.push_back({id, h1, n_ratio, "det_product", det_ratio});
    report.records.push_back({id, h1, n_ratio, "lnd_eigen", lnd_ratio});
  }
  return report;
}

}  // namespace ilt::bounds
