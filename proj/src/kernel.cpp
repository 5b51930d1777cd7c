#include "ilt/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ilt/quad.hpp"

namespace ilt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxHermiteOrder = 20;
}  // namespace

KernelSpec::KernelSpec(double epsilon_, MultiIndex k_) : epsilon(epsilon_), k(std::move(k_)) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("KernelSpec: epsilon must be > 0");
  for (int m : k.orders)
    if (m > kMaxHermiteOrder)
      throw std::invalid_argument("KernelSpec: derivative order beyond supported cap");
}

double hermite(int m, double x) {
  if (m < 0 || m > kMaxHermiteOrder)
    throw std::invalid_argument("hermite: order must be in [0, 20]");
  double p0 = 1.0;
  if (m == 0) return p0;
  double p1 = x;
  for (int j = 1; j < m; ++j) {
    const double p2 = x * p1 - j * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

KernelEvaluator::KernelEvaluator(const KernelSpec& spec)
    : dim_(spec.dim()), orders_(spec.k.orders) {
  const double eps = spec.epsilon;
  norm_ = std::pow(kTwoPi * eps, -0.5 * dim_);
  for (int c = 0; c < dim_; ++c) {
    const int m = orders_[static_cast<std::size_t>(c)];
    if (m > 0) {
      active_.push_back(c);
      norm_ *= ((m % 2 == 0) ? 1.0 : -1.0) * std::pow(eps, -0.5 * m);
    }
  }
  inv_two_eps_ = 0.5 / eps;
  inv_sqrt_eps_ = 1.0 / std::sqrt(eps);
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.dim())
    throw std::invalid_argument("kernel_eval: point dimension does not match index");
  const KernelEvaluator eval(spec);
  return eval(x.data());
}

namespace {

/// One coordinate factor of the Fourier form, as a real integral over p >= 0:
///   k even: (-1)^{k/2}   (1/pi) int p^k cos(p x) exp(-eps p^2/2) dp
///   k odd : (-1)^{(k+1)/2}(1/pi) int p^k sin(p x) exp(-eps p^2/2) dp
double fourier_factor(int k, double eps, double x, quad::EvalBudget& budget) {
  const double cutoff = std::sqrt(2.0 * 80.0 / eps);  // exp(-80) tail
  // Envelope of the factor magnitude, used to set absolute tolerances.
  const double scale = std::pow(2.0, 0.5 * (k - 1)) * std::pow(eps, -0.5 * (k + 1)) *
                       std::tgamma(0.5 * (k + 1)) / std::numbers::pi;

  const bool even = (k % 2 == 0);
  auto integrand = [&](double p) {
    const double osc = even ? std::cos(p * x) : std::sin(p * x);
    return std::pow(p, k) * osc * std::exp(-0.5 * eps * p * p);
  };

  // Pre-split at the oscillation scale so no panel spans many periods.
  const int segments =
      std::max(8, static_cast<int>(std::ceil(cutoff * (std::abs(x) + 1.0) / std::numbers::pi)));
  const double h = cutoff / segments;
  double total = 0.0;
  for (int s = 0; s < segments; ++s)
    total += quad::integrate(integrand, s * h, (s + 1) * h, 1e-13, 1e-13 * scale, budget);

  const int half = even ? k / 2 : (k + 1) / 2;
  const double sign = (half % 2 == 0) ? 1.0 : -1.0;
  return sign * total / std::numbers::pi;
}

}  // namespace

double kernel_eval_fourier(const KernelSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.dim())
    throw std::invalid_argument("kernel_eval_fourier: point dimension does not match index");
  if (spec.dim() > 2) throw std::invalid_argument("kernel_eval_fourier: cross-check is d <= 2 only");
  for (int m : spec.k.orders)
    if (m > 4) throw std::invalid_argument("kernel_eval_fourier: cross-check is k_i <= 4 only");

  quad::EvalBudget budget;
  double v = 1.0;
  for (int c = 0; c < spec.dim(); ++c)
    v *= fourier_factor(spec.k.orders[static_cast<std::size_t>(c)], spec.epsilon,
                        x[static_cast<std::size_t>(c)], budget);
  return v;
}

}  // namespace ilt
