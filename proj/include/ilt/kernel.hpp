#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ilt/model.hpp"

namespace ilt {

/// The Gaussian mollifier of variance epsilon together with the mixed
/// partial derivative order applied to it. Evaluation uses the closed
/// Hermite-polynomial form
///
///   f^(k)(x) = (2*pi*eps)^(-d/2) exp(-|x|^2/(2 eps))
///              * prod_i (-1)^{k_i} eps^{-k_i/2} He_{k_i}(x_i / sqrt(eps))
///
/// with He_m the probabilists' Hermite polynomials.
struct KernelSpec {
  double epsilon;
  MultiIndex k;

  KernelSpec(double epsilon_, MultiIndex k_);
  int dim() const { return k.dim(); }
};

/// Probabilists' Hermite polynomial He_m(x) by forward recurrence
/// He_{m+1} = x He_m - m He_{m-1}. m is capped at 20.
double hermite(int m, double x);

/// Derivative of the unit-variance Gaussian density applied |k| times,
/// evaluated at x (dimension of x must equal the index length).
double kernel_eval(const KernelSpec& spec, std::span<const double> x);

/// Precomputed form of kernel_eval for hot loops: the normalization and
/// per-coordinate scalings are folded once at construction.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const KernelSpec& spec);

  double operator()(const double* x) const {
    double q = 0.0;
    for (int c = 0; c < dim_; ++c) q += x[c] * x[c];
    double v = norm_ * std::exp(-q * inv_two_eps_);
    for (int c : active_) v *= hermite_fast(orders_[static_cast<std::size_t>(c)],
                                            x[c] * inv_sqrt_eps_);
    return v;
  }

  int dim() const { return dim_; }

 private:
  static double hermite_fast(int m, double x) {
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

  int dim_;
  std::vector<int> orders_;
  std::vector<int> active_;  // coordinates with k_i > 0
  double norm_;
  double inv_two_eps_;
  double inv_sqrt_eps_;
};

/// Slow cross-check of kernel_eval that evaluates the defining oscillatory
/// Fourier integral coordinate by coordinate with adaptive quadrature.
/// Restricted to d <= 2 and k_i <= 4; agrees with kernel_eval to 1e-8.
double kernel_eval_fourier(const KernelSpec& spec, std::span<const double> x);

}  // namespace ilt
