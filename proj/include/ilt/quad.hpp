#pragma once

#include <functional>
#include <stdexcept>

namespace ilt::quad {

/// Thrown when an integration run cannot reach its tolerance within the
/// evaluation budget. Carries the best estimate and the error bound at the
/// point of giving up.
struct BudgetExhausted : std::runtime_error {
  double estimate;
  double error_bound;
  BudgetExhausted(double est, double err)
      : std::runtime_error("quadrature: evaluation budget exhausted"),
        estimate(est),
        error_bound(err) {}
};

/// Shared integrand-evaluation budget for a multi-part computation.
struct EvalBudget {
  long long used = 0;
  long long limit = 10'000'000;

  void charge(long long n) { used += n; }
  bool exhausted() const { return used >= limit; }
};

/// Globally adaptive Gauss-Legendre integration of f over [a, b].
///
/// Panels are split worst-error-first (error estimated from a GL7/GL15
/// pair) until the summed error estimate drops below
/// max(rel_tol * |integral|, abs_tol). Deterministic: ties in the panel
/// queue are broken by interval position. Throws BudgetExhausted when the
/// budget runs out first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, EvalBudget& budget);

/// Convenience wrapper with a private budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol = 0.0, long long max_evals = 10'000'000);

}  // namespace ilt::quad
