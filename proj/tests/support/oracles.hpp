// Test-side reference implementations, kept independent of the library
// code paths they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "ilt/rng.hpp"

namespace testsupport {

/// Plain Gaussian bump of variance eps in d dimensions (no derivatives).
inline double gaussian_bump(double eps, std::span<const double> x) {
  double q = 0.0;
  for (double v : x) q += v * v;
  return std::pow(2.0 * std::numbers::pi * eps, -0.5 * static_cast<double>(x.size())) *
         std::exp(-0.5 * q / eps);
}

/// Mixed partial derivative of f at x by nested central differences with
/// Richardson extrapolation per coordinate, one coordinate at a time.
/// orders[i] is the derivative order in coordinate i.
class FiniteDifference {
 public:
  FiniteDifference(std::function<double(std::span<const double>)> f, double step,
                   int richardson_levels = 4)
      : f_(std::move(f)), h0_(step), levels_(richardson_levels) {}

  double operator()(std::span<const int> orders, std::span<const double> x) const {
    std::vector<double> point(x.begin(), x.end());
    return differentiate(orders, point, 0);
  }

 private:
  double differentiate(std::span<const int> orders, std::vector<double>& point,
                       std::size_t coord) const {
    if (coord == orders.size()) return f_(point);
    const int m = orders[coord];
    if (m == 0) return differentiate(orders, point, coord + 1);

    // Richardson table over step halvings of the m-fold central difference.
    std::vector<double> row(static_cast<std::size_t>(levels_));
    for (int level = 0; level < levels_; ++level) {
      const double h = h0_ / static_cast<double>(1 << level);
      row[static_cast<std::size_t>(level)] = central(orders, point, coord, m, h);
    }
    double factor = 4.0;
    for (int round = 1; round < levels_; ++round) {
      for (int i = levels_ - 1; i >= round; --i)
        row[static_cast<std::size_t>(i)] =
            (factor * row[static_cast<std::size_t>(i)] - row[static_cast<std::size_t>(i - 1)]) /
            (factor - 1.0);
      factor *= 4.0;
    }
    return row.back();
  }

  double central(std::span<const int> orders, std::vector<double>& point, std::size_t coord,
                 int m, double h) const {
    if (m == 0) return differentiate(orders, point, coord + 1);
    const double saved = point[coord];
    point[coord] = saved + h;
    const double plus = central(orders, point, coord, m - 1, h);
    point[coord] = saved - h;
    const double minus = central(orders, point, coord, m - 1, h);
    point[coord] = saved;
    return (plus - minus) / (2.0 * h);
  }

  std::function<double(std::span<const double>)> f_;
  double h0_;
  int levels_;
};

/// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Monte Carlo value of the ordered-simplex integral
///   int_{0<t_1<...<t_n<T} prod_j (t_j - t_{j-1})^{a_j} dt
/// from sorted uniform points: E[f] * T^n / n!.
inline double mc_simplex_integral(std::span<const double> exponents, double T,
                                  std::int64_t points, std::uint64_t seed) {
  const std::size_t n = exponents.size();
  ilt::rng::Stream stream = ilt::rng::make_stream(seed, ilt::rng::Domain::SimplexMc, 0);
  std::vector<double> t(n);
  long double acc = 0.0L;
  for (std::int64_t p = 0; p < points; ++p) {
    for (auto& v : t) v = T * stream.next_double();
    std::sort(t.begin(), t.end());
    double prev = 0.0, prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      prod *= std::pow(t[j] - prev, exponents[j]);
      prev = t[j];
    }
    acc += prod;
  }
  double volume_factor = 1.0;
  for (std::size_t j = 2; j <= n; ++j) volume_factor *= static_cast<double>(j);
  return static_cast<double>(acc / points) * std::pow(T, static_cast<double>(n)) / volume_factor;
}

}  // namespace testsupport
