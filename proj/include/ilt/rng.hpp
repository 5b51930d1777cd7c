#pragma once

#include <cstdint>
#include <array>

namespace ilt::rng {

/// Counter-based random streams (Philox4x32-10).
///
/// Every random draw in this project is a pure function of
/// (seed, domain, replicate, process, coord, position-in-stream), so any
/// replicate/coordinate can be generated on any thread, in any order, and
/// the numbers are identical. Gaussian variates are produced by inverting
/// the normal CDF (see normal_quantile below); the draw count per variate
/// is fixed at one uniform.

/// Stream identity. `domain` separates independent uses of the same seed
/// (path sampling, fuzz campaigns, bootstrap, ...) so they never share a
/// counter prefix.
enum class Domain : std::uint32_t {
  Paths = 0,
  MatrixFuzz = 1,
  SimplexMc = 2,
  Bootstrap = 3,
  Synthetic = 4,
};

struct Philox4x32 {
  std::uint32_t k0, k1;

  explicit Philox4x32(std::uint64_t seed)
      : k0(static_cast<std::uint32_t>(seed)),
        k1(static_cast<std::uint32_t>(seed >> 32)) {}

  /// One 10-round Philox block: 4 counter words -> 4 output words.
  std::array<std::uint32_t, 4> operator()(std::array<std::uint32_t, 4> ctr) const;
};

/// Sequential view of one substream. Cheap to construct; hold by value.
class Stream {
 public:
  Stream(std::uint64_t seed, Domain domain, std::uint64_t replicate,
         std::uint32_t process, std::uint32_t coord);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double next_double();
  /// Standard normal variate via inverse-CDF.
  double next_gaussian();
  /// Uniform integer in [0, n); n > 0. Uses rejection-free modulo of a
  /// 64-bit draw (bias < 2^-32 for the n used here).
  std::uint64_t next_below(std::uint64_t n);

 private:
  void refill();

  Philox4x32 gen_;
  std::array<std::uint32_t, 4> base_;  // words 1..3 fixed, word 0 = block index
  std::array<std::uint32_t, 4> buf_{};
  std::uint32_t block_ = 0;
  int pos_ = 4;  // consumed words in buf_
};

/// Substream for (replicate, process, coord) under a domain tag.
inline Stream make_stream(std::uint64_t seed, Domain domain, std::uint64_t replicate,
                          std::uint32_t process = 0, std::uint32_t coord = 0) {
  return Stream(seed, domain, replicate, process, coord);
}

/// Inverse of the standard normal CDF on (0,1).
/// Abramowitz & Stegun 26.2.23 initial guess polished by Halley steps on
/// erfc; accurate to ~2 ulp over the full range reachable from next_double.
double normal_quantile(double u);

}  // namespace ilt::rng
