#include "ilt/quad.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace ilt::quad {

namespace {

/// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
/// iteration on P_n. Machine-precision accurate; avoids transcribed tables.
template <int N>
struct GaussRule {
  std::array<double, N> x{};
  std::array<double, N> w{};

  GaussRule() {
    for (int i = 0; i < N; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

const GaussRule<7>& rule7() {
  static const GaussRule<7> r;
  return r;
}
const GaussRule<15>& rule15() {
  static const GaussRule<15> r;
  return r;
}

template <int N>
double apply(const GaussRule<N>& r, const std::function<double(double)>& f, double a,
             double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

struct Panel {
  double a, b;
  double value;
  double err;
};

struct PanelWorse {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.a > q.a;  // deterministic tiebreak
  }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b,
                 EvalBudget& budget) {
  budget.charge(22);
  const double coarse = apply(rule7(), f, a, b);
  const double fine = apply(rule15(), f, a, b);
  return Panel{a, b, fine, std::abs(fine - coarse)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, EvalBudget& budget) {
  if (a == b) return 0.0;
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  heap.push(make_panel(f, a, b, budget));
  double total = heap.top().value;
  double total_err = heap.top().err;

  while (total_err > std::max(rel_tol * std::abs(total), abs_tol)) {
    if (heap.top().err == 0.0) break;  // nothing left to refine
    if (budget.exhausted()) throw BudgetExhausted(total, total_err);
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(f, worst.a, mid, budget);
    const Panel right = make_panel(f, mid, worst.b, budget);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }
  return total;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, long long max_evals) {
  EvalBudget budget;
  budget.limit = max_evals;
  return integrate(f, a, b, rel_tol, abs_tol, budget);
}

}  // namespace ilt::quad
