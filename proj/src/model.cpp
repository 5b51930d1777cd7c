#include "ilt/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilt {

HurstPair::HurstPair(double h1_, double h2_) : h1(h1_), h2(h2_) {
  if (!(h1 > 0.0 && h1 < 1.0) || !(h2 > 0.0 && h2 < 1.0))
    throw std::invalid_argument("HurstPair: parameters must lie strictly in (0,1)");
}

MultiIndex::MultiIndex(std::vector<int> orders_) : orders(std::move(orders_)) {
  if (orders.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
  for (int v : orders)
    if (v < 0) throw std::invalid_argument("MultiIndex: entries must be nonnegative");
}

MultiIndex MultiIndex::zeros(int d) {
  if (d < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0));
}

int MultiIndex::total() const {
  int s = 0;
  for (int v : orders) s += v;
  return s;
}

bool MultiIndex::single_even_axis() const {
  int nonzero = 0;
  for (int v : orders) {
    if (v == 0) continue;
    if (v % 2 != 0) return false;
    ++nonzero;
  }
  return nonzero <= 1;
}

ExperimentParams::ExperimentParams(HurstPair hurst_, MultiIndex k_, double horizon_,
                                   double epsilon_, int grid_size_, int replicates_,
                                   std::uint64_t seed_)
    : hurst(hurst_),
      k(std::move(k_)),
      horizon(horizon_),
      epsilon(epsilon_),
      grid_size(grid_size_),
      replicates(replicates_),
      seed(seed_) {
  if (!(horizon > 0.0)) throw std::invalid_argument("ExperimentParams: T must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ExperimentParams: epsilon must be > 0");
  if (grid_size < 1) throw std::invalid_argument("ExperimentParams: M must be >= 1");
  if (replicates < 1) throw std::invalid_argument("ExperimentParams: N must be >= 1");
}

double existence_condition_value(const HurstPair& hurst, const MultiIndex& k) {
  return hurst.h1 * hurst.h2 * (k.total() + k.dim()) / (hurst.h1 + hurst.h2);
}

double beta_exponent(const HurstPair& hurst, int d) {
  if (d < 1) throw std::invalid_argument("beta_exponent: d must be >= 1");
  // Grouping (h1*h2) keeps the value bit-identical under swapping the pair.
  return (hurst.h1 + hurst.h2) / (2.0 * d * (hurst.h1 * hurst.h2));
}

double kappa1(const HurstPair& hurst, int d) {
  if (d < 1) throw std::invalid_argument("kappa1: d must be >= 1");
  return 1.0 - d * (hurst.h1 * hurst.h2) / (hurst.h1 + hurst.h2);
}

double radial_exponent(const HurstPair& hurst, const MultiIndex& k) {
  const double lo = std::min(hurst.h1, hurst.h2);
  const double hi = std::max(hurst.h1, hurst.h2);
  return -(k.total() + k.dim()) * hi + hi / lo;
}

ConditionReport evaluate_condition(const HurstPair& hurst, const MultiIndex& k) {
  ConditionReport r;
  r.condition_value = existence_condition_value(hurst, k);
  r.exists = r.condition_value < 1.0;
  r.beta = beta_exponent(hurst, k.dim());
  r.kappa1 = kappa1(hurst, k.dim());
  r.radial_exponent = radial_exponent(hurst, k);
  return r;
}

}  // namespace ilt
