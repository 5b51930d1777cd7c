#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ilt::bounds {

/// Dense symmetric matrix, row-major n x n. Small by construction: the
/// verifiers cap n at 64.
struct SymMatrix {
  int n = 0;
  std::vector<double> a;

  static SymMatrix zero(int n);
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  SymMatrix operator+(const SymMatrix& other) const;
};

/// Covariance (Gram) matrix Q[i][j] = fbm_covariance(h, t_i, t_j) of fBm
/// values at strictly increasing positive times; n <= 64.
SymMatrix build_gram(double h, std::span<const double> times);

/// Two Gram matrices of equal size built from independent time vectors,
/// as they appear added together inside the Gaussian moment bound.
struct GramPair {
  std::vector<double> times_s;
  std::vector<double> times_t;
  SymMatrix q1;
  SymMatrix q2;
};

GramPair build_gram_pair(double h1, std::span<const double> times_s, double h2,
                         std::span<const double> times_t);

/// Smallest eigenvalue of a symmetric matrix (1e-10 relative accuracy for
/// n <= 64; residual-checked in tests). Rejects non-symmetric input.
double lambda_min(const SymMatrix& m);

double logdet_spd(const SymMatrix& m);

/// lambda_min(A+B) >= lambda_min(A)^rho * lambda_min(B)^(1-rho) for every
/// rho in the grid, up to slack 1e-12 * max(1, lambda_min(A+B)). Returns
/// the worst margin (lhs - rhs); the boolean check is margin >= -slack.
double eigen_interpolation_margin(const SymMatrix& a, const SymMatrix& b,
                                  std::span<const double> rho_grid);
bool check_eigen_interpolation(const SymMatrix& a, const SymMatrix& b,
                               std::span<const double> rho_grid);

/// log det(A+B) >= gamma log det(A) + (1-gamma) log det(B), slack
/// 1e-12 * max(1, |log det(A+B)|). Margin/check pair as above.
double det_interpolation_margin(const SymMatrix& a, const SymMatrix& b,
                                std::span<const double> gamma_grid);
bool check_det_interpolation(const SymMatrix& a, const SymMatrix& b,
                             std::span<const double> gamma_grid);

/// det(Q) / prod_j (t_j - t_{j-1})^{2H}  (t_0 = 0); equals 1 exactly for
/// H = 1/2. n <= 10.
double check_det_product_bound(double h, std::span<const double> times);

/// lambda_min(Q) / (g_matrix_min_eig(n) * min_j (t_j - t_{j-1})^{2H});
/// >= 1 for H = 1/2 via the increment factorization. n <= 10.
double check_lnd_eigen_bound(double h, std::span<const double> times);

/// Smallest eigenvalue of G^T G where G is the upper-triangular all-ones
/// matrix (equivalently the min(i,j) matrix). Non-increasing in n and
/// bounded below by 1/4; 1 <= n <= 64.
double g_matrix_min_eig(int n);

/// One row of the fuzz-campaign report.
struct FuzzRecord {
  int case_id;
  double h;
  int n;
  std::string ratio_kind;
  double ratio_value;
};

/// Aggregate over the campaign: violations plus the empirical minima that
/// stand in for the constants the bounds leave unspecified.
struct FuzzSummary {
  int cases = 0;
  int violations = 0;
  double min_eigen_interp_margin = 0.0;
  double min_det_interp_margin = 0.0;
  double min_lambda_min = 0.0;
  double min_det_product_ratio = 0.0;
  double min_lnd_ratio = 0.0;
};

struct FuzzReport {
  std::vector<FuzzRecord> records;
  FuzzSummary summary;
};

/// Random Gram pairs (H in [0.05, 0.95], n <= 6 for the pair inequalities
/// and n <= 10 for the single-matrix ratios, times with a minimum gap of
/// 1e-3 * T) pushed through every verifier. The inequalities are theorems;
/// any violation indicates a numerics bug.
FuzzReport run_fuzz_campaign(std::uint64_t seed, int cases);

}  // namespace ilt::bounds
