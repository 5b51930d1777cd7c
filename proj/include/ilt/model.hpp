#pragma once

#include <cstdint>
#include <vector>

namespace ilt {

/// Hurst parameters of the two independent fractional Brownian motions.
/// Both must lie strictly inside (0,1); H = 0.5 is allowed and recovers
/// standard Brownian motion.
struct HurstPair {
  double h1;
  double h2;

  HurstPair(double h1_, double h2_);
};

/// Per-coordinate derivative orders k = (k_1, ..., k_d), all >= 0.
/// The spatial dimension d is the length of the vector and |k| its sum.
struct MultiIndex {
  std::vector<int> orders;

  explicit MultiIndex(std::vector<int> orders_);
  /// d-dimensional index of all zeros (the plain intersection local time).
  static MultiIndex zeros(int d);

  int dim() const { return static_cast<int>(orders.size()); }
  int total() const;

  /// True when k has the shape (0,...,k_i,...,0) with k_i even (possibly 0).
  /// The first-moment oracle and the necessity direction of the existence
  /// condition are only available for this shape.
  bool single_even_axis() const;
};

/// Full parameterization of one experiment.
struct ExperimentParams {
  HurstPair hurst;
  MultiIndex k;
  double horizon;     // T > 0
  double epsilon;     // mollifier variance, > 0
  int grid_size;      // M, time steps per axis
  int replicates;     // N, Monte Carlo sample size
  std::uint64_t seed;

  ExperimentParams(HurstPair hurst_, MultiIndex k_, double horizon_, double epsilon_,
                   int grid_size_, int replicates_, std::uint64_t seed_);
};

/// Scalar diagnostics of the parameter point (H1, H2, d, k).
///
/// `exists` reports the strict sufficient condition condition_value < 1;
/// the boundary condition_value == 1 is reported as false. For k with more
/// than one nonzero entry, or an odd entry, the necessity direction is not
/// covered by the theory this checks against; the value is still the right
/// scalar to compare to 1.
struct ConditionReport {
  double condition_value;  // H1*H2*(|k|+d)/(H1+H2)
  bool exists;             // condition_value < 1
  double beta;             // (H1+H2)/(2*d*H1*H2)
  double kappa1;           // 1 - d*H1*H2/(H1+H2)
  double radial_exponent;  // -(|k|+d)*Hmax + Hmax/Hmin
};

/// H1*H2*(|k|+d)/(H1+H2); the k-th derivative intersection local time
/// exists in L^2 iff this is < 1. Strictly increasing in |k|, d and in
/// each Hurst parameter.
double existence_condition_value(const HurstPair& hurst, const MultiIndex& k);

/// Exponential-integrability exponent (H1+H2)/(2*d*H1*H2).
double beta_exponent(const HurstPair& hurst, int d);

/// Moment-growth exponent 1 - d*H1*H2/(H1+H2); positive iff the k = 0
/// existence condition holds.
double kappa1(const HurstPair& hurst, int d);

/// Exponent e of the radial integral r^e dr controlling the first moment
/// near the time origin, with the Hurst pair ordered so Hmin <= Hmax:
/// e = -(|k|+d)*Hmax + Hmax/Hmin. Finite first moment iff e > -1, which is
/// algebraically equivalent to existence_condition_value < 1.
double radial_exponent(const HurstPair& hurst, const MultiIndex& k);

ConditionReport evaluate_condition(const HurstPair& hurst, const MultiIndex& k);

}  // namespace ilt
