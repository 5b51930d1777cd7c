#pragma once

#include <span>
#include <vector>

#include "ilt/model.hpp"

namespace ilt::oracle {

/// Outcome of the first-moment quadrature. When `converged` the value is
/// good to `rel_tol`; otherwise the refinement trace is the evidence of
/// divergence (strictly increasing partial sums of the singular corner).
/// Divergence is never reported as a large float.
struct MomentOracleResult {
  double value = 0.0;  // meaningful only when converged
  bool converged = false;
  std::vector<double> refinement_trace;
  double rel_tol = 1e-6;
  long long evaluations = 0;
};

/// The constant in E[a^(k)(0)] = c_{k,d} * Int (t^{2H1}+s^{2H2})^{-(|k|+d)/2},
/// made explicit for indices of the shape (0,..,k_i,..,0) with k_i even:
/// c = (2 pi)^{-d/2} (k_i - 1)!!  (with (-1)!! = 1).
double c_kd_constant(const MultiIndex& k);

/// E[a^(k)_eps(0)] magnitude via adaptive 2D quadrature of
///   c_{k,d} * Int_0^T Int_0^T (eps + t^{2H1} + s^{2H2})^{-(|k|+d)/2} dt ds
/// with dyadic corner refinement toward the origin. eps = 0 is allowed:
/// the result converges when radial_exponent > -1 and otherwise returns a
/// divergence trace. Note the signed Monte Carlo mean carries an extra
/// factor (-1)^{|k|/2} relative to this magnitude.
MomentOracleResult first_moment_mollified(const HurstPair& hurst, const MultiIndex& k, double T,
                                          double epsilon, double rel_tol = 1e-6,
                                          long long max_evals = 10'000'000);

/// Small-eps growth rate a in E[a^(k)_eps(0)] ~ const * eps^{-a}:
/// a = (|k|+d)/2 - (H1+H2)/(2 H1 H2). Only defined in the divergent
/// regime a > 0; calling it elsewhere is an error.
double blowup_rate(const HurstPair& hurst, const MultiIndex& k);

/// Exact Dirichlet integral over the ordered simplex 0 < t_1 < ... < t_n < T:
///   Int prod_j (t_j - t_{j-1})^{a_j} dt = T^{n+A} prod_j Gamma(a_j+1) / Gamma(n+A+1)
/// with A = sum a_j. Every a_j must be > -1.
double dirichlet_simplex_integral(std::span<const double> exponents, double T);

/// One side-by-side evaluation of the simplex-integral bound behind the
/// moment estimates: lhs is the exact integral with one coordinate
/// carrying the extra |k| exponent, rhs is the Gamma-form bound with the
/// constant fitted at n = 1 (where the two sides coincide).
struct GammaBoundCheck {
  double lhs;
  double rhs;
  double fitted_c;
};

GammaBoundCheck gamma_bound_check(const HurstPair& hurst, const MultiIndex& k, double T, int n);

}  // namespace ilt::oracle
