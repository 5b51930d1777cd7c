#include "ilt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ilt/quad.hpp"
#include "ilt/stats.hpp"

namespace ilt::oracle {

namespace {

int single_even_order(const MultiIndex& k) {
  if (!k.single_even_axis())
    throw std::invalid_argument(
        "oracle: index must have a single even nonzero entry (or be zero)");
  return k.total();
}

/// The substituted integrand of the first-moment integral. With the Hurst
/// pair ordered hl <= hh and t = u^{hh/hl}, both time coordinates carry
/// the same power 2*hh and the origin singularity becomes radially
/// homogeneous of degree radial_exponent:
///   g(u,s) = (eps + u^{2 hh} + s^{2 hh})^{-q} * (hh/hl) * u^{hh/hl - 1}.
struct SubstitutedIntegrand {
  double eps;
  double q;
  double two_hh;
  double beta;       // hh/hl >= 1
  double jacobian;   // hh/hl

  double operator()(double u, double s) const {
    const double base = eps + std::pow(u, two_hh) + std::pow(s, two_hh);
    const double edge = beta == 1.0 ? 1.0 : std::pow(u, beta - 1.0);
    return jacobian * edge * std::pow(base, -q);
  }
};

/// Integral of g over an axis-aligned rectangle by nested adaptive
/// quadrature (outer in s, inner in u).
double rect_integral(const SubstitutedIntegrand& g, double u0, double u1, double s0, double s1,
                     double rel_tol, double abs_tol, quad::EvalBudget& budget) {
  if (u0 >= u1 || s0 >= s1) return 0.0;
  auto outer = [&](double s) {
    auto inner = [&](double u) { return g(u, s); };
    return quad::integrate(inner, u0, u1, rel_tol, abs_tol / (s1 - s0), budget);
  };
  return quad::integrate(outer, s0, s1, rel_tol, abs_tol, budget);
}

}  // namespace

double c_kd_constant(const MultiIndex& k) {
  const int order = single_even_order(k);
  double double_factorial = 1.0;
  for (int m = order - 1; m >= 2; m -= 2) double_factorial *= m;
  return std::pow(2.0 * std::numbers::pi, -0.5 * k.dim()) * double_factorial;
}

MomentOracleResult first_moment_mollified(const HurstPair& hurst, const MultiIndex& k, double T,
                                          double epsilon, double rel_tol, long long max_evals) {
  if (!(T > 0.0)) throw std::invalid_argument("first_moment_mollified: T must be > 0");
  if (epsilon < 0.0) throw std::invalid_argument("first_moment_mollified: epsilon must be >= 0");
  const double c = c_kd_constant(k);

  const double hl = std::min(hurst.h1, hurst.h2);
  const double hh = std::max(hurst.h1, hurst.h2);
  const double q = 0.5 * (k.total() + k.dim());
  const SubstitutedIntegrand g{epsilon, q, 2.0 * hh, hh / hl, hh / hl};

  const double u_max = std::pow(T, hl / hh);
  const double s_max = T;
  const double corner = std::min(u_max, s_max);

  const double e = radial_exponent(hurst, k);
  const bool expect_divergent = (epsilon == 0.0 && e <= -1.0);

  quad::EvalBudget budget;
  budget.limit = max_evals;
  MomentOracleResult result;
  result.rel_tol = rel_tol;

  try {
    stats::KahanSum total;
    // Region outside the corner box [0, corner]^2 (empty when the domain
    // is square, i.e. u_max == s_max).
    const double rough = rect_integral(g, 0.5 * corner, corner, 0.0, corner, 0.25 * rel_tol,
                                       0.0, budget);
    const double abs_scale = std::max(rough, 1e-300);
    if (u_max > corner)
      total.add(rect_integral(g, corner, u_max, 0.0, s_max, 0.25 * rel_tol,
                              0.25 * rel_tol * abs_scale, budget));
    if (s_max > corner)
      total.add(rect_integral(g, 0.0, u_max, corner, s_max, 0.25 * rel_tol,
                              0.25 * rel_tol * abs_scale, budget));

    // Dyadic shells closing in on the origin. Shell L lives between the
    // boxes of side delta and delta/2; its two rectangles avoid the
    // singular corner entirely.
    const int max_shells = expect_divergent ? 40 : 2000;
    double delta = corner;
    for (int shell = 0; shell < max_shells; ++shell) {
      if (!expect_divergent && budget.exhausted())
        throw quad::BudgetExhausted(total.value(), -1.0);
      const double half = 0.5 * delta;
      const double shell_tol = 0.25 * rel_tol;
      const double shell_abs = 0.125 * rel_tol * std::max(total.value(), abs_scale) /
                               (shell + 1.0);
      double inc = rect_integral(g, half, delta, 0.0, delta, shell_tol, shell_abs, budget);
      inc += rect_integral(g, 0.0, half, half, delta, shell_tol, shell_abs, budget);
      total.add(inc);
      result.refinement_trace.push_back(total.value());
      delta = half;

      // The trace is the divergence evidence; stop before it can overflow.
      if (expect_divergent) {
        if (total.value() > 1e18) break;
        continue;
      }

      // Remaining mass in the closed corner box [0, delta]^2.
      double tail_bound;
      if (epsilon > 0.0) {
        tail_bound = g.jacobian * std::pow(epsilon, -q) * std::pow(delta, g.beta) / g.beta * delta;
      } else {
        tail_bound = g.jacobian * 0.5 * std::numbers::pi *
                     std::pow(std::numbers::sqrt2 * delta, e + 1.0) / (e + 1.0);
      }
      if (tail_bound < 0.5 * rel_tol * total.value() && inc < 0.5 * rel_tol * total.value()) {
        total.add(0.5 * tail_bound);  // midpoint of [0, bound]
        result.converged = true;
        break;
      }
    }
    result.evaluations = budget.used;
    if (result.converged) {
      result.value = c * total.value();
      for (double& t : result.refinement_trace) t *= c;
    } else if (expect_divergent) {
      for (double& t : result.refinement_trace) t *= c;
    } else {
      throw quad::BudgetExhausted(c * total.value(), -1.0);
    }
  } catch (const quad::BudgetExhausted&) {
    std::ostringstream msg;
    msg << "first_moment_mollified: quadrature budget (" << max_evals
        << " evaluations) exhausted before reaching rel_tol " << rel_tol
        << " (H1=" << hurst.h1 << ", H2=" << hurst.h2 << ", |k|=" << k.total()
        << ", d=" << k.dim() << ", eps=" << epsilon << ")";
    throw std::runtime_error(msg.str());
  }
  return result;
}

double blowup_rate(const HurstPair& hurst, const MultiIndex& k) {
  const double a =
      0.5 * (k.total() + k.dim()) - (hurst.h1 + hurst.h2) / (2.0 * hurst.h1 * hurst.h2);
  if (!(a > 0.0))
    throw std::invalid_argument("blowup_rate: parameters are in the convergent regime");
  return a;
}

double dirichlet_simplex_integral(std::span<const double> exponents, double T) {
  if (exponents.empty()) throw std::invalid_argument("dirichlet_simplex_integral: empty exponents");
  if (!(T > 0.0)) throw std::invalid_argument("dirichlet_simplex_integral: T must be > 0");
  double a_sum = 0.0;
  double log_num = 0.0;
  for (double a : exponents) {
    if (!(a > -1.0))
      throw std::invalid_argument("dirichlet_simplex_integral: exponent <= -1 diverges");
    a_sum += a;
    log_num += std::lgamma(a + 1.0);
  }
  const double n = static_cast<double>(exponents.size());
  return std::exp((n + a_sum) * std::log(T) + log_num - std::lgamma(n + a_sum + 1.0));
}

GammaBoundCheck gamma_bound_check(const HurstPair& hurst, const MultiIndex& k, double T, int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("gamma_bound_check: n must be in [1, 8]");
  const double tau = hurst.h1 * hurst.h2 / (hurst.h1 + hurst.h2);
  const double shared = -tau * k.dim();
  const double loaded = shared - tau * k.total();
  if (!(loaded > -1.0))
    throw std::invalid_argument("gamma_bound_check: existence condition fails, integral diverges");

  std::vector<double> exponents(static_cast<std::size_t>(n), shared);
  exponents[0] = loaded;  // which coordinate carries |k| does not matter
  const double lhs = dirichlet_simplex_integral(exponents, T);

  const double kap = kappa1(hurst, k.dim());
  const double tail = tau * k.total();
  // Fit the constant at n = 1, where lhs and rhs coincide by construction.
  const double fitted_c = std::tgamma(1.0 + loaded);
  const double rhs = std::pow(fitted_c, n) * std::pow(T, kap * n - tail) /
                     std::tgamma(n * kap - tail + 1.0);
  return GammaBoundCheck{lhs, rhs, fitted_c};
}

}  // namespace ilt::oracle
