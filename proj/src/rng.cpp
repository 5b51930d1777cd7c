#include "ilt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ilt::rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox_round(std::array<std::uint32_t, 4> c,
                                                 std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::operator()(std::array<std::uint32_t, 4> ctr) const {
  std::uint32_t a = k0, b = k1;
  for (int round = 0; round < 10; ++round) {
    ctr = philox_round(ctr, a, b);
    a += kPhiloxW0;
    b += kPhiloxW1;
  }
  return ctr;
}

Stream::Stream(std::uint64_t seed, Domain domain, std::uint64_t replicate,
               std::uint32_t process, std::uint32_t coord)
    : gen_(seed) {
  if (process > 0xFFu || coord > 0xFFFFFFu)
    throw std::invalid_argument("rng: process/coord out of range");
  base_ = {0u,
           static_cast<std::uint32_t>(replicate),
           (process << 24) | coord,
           (static_cast<std::uint32_t>(domain) << 8) |
               static_cast<std::uint32_t>(replicate >> 32 & 0xFFu)};
}

void Stream::refill() {
  auto ctr = base_;
  ctr[0] = block_++;
  buf_ = gen_(ctr);
  pos_ = 0;
}

std::uint64_t Stream::next_u64() {
  if (pos_ > 2) refill();
  const std::uint64_t hi = buf_[pos_];
  const std::uint64_t lo = buf_[pos_ + 1];
  pos_ += 2;
  return (hi << 32) | lo;
}

double Stream::next_double() {
  // 53 significant bits, centered away from 0 and 1.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double Stream::next_gaussian() { return normal_quantile(next_double()); }

std::uint64_t Stream::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("rng: next_below(0)");
  return next_u64() % n;
}

namespace {

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

inline double normal_pdf(double x) {
  return 0.39894228040143267794 * std::exp(-0.5 * x * x);
}

}  // namespace

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("normal_quantile: u outside (0,1)");
  const bool upper = u > 0.5;
  const double p = upper ? 1.0 - u : u;

  // A&S 26.2.23, |error| < 4.5e-4.
  const double t = std::sqrt(-2.0 * std::log(p));
  double x = -(t - (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t)));

  // Halley iterations on F(x) = Phi(x) - p.
  for (int i = 0; i < 3; ++i) {
    const double err = normal_cdf(x) - p;
    const double r = err / normal_pdf(x);
    x -= r / (1.0 + 0.5 * x * r);
  }
  return upper ? -x : x;
}

}  // namespace ilt::rng
