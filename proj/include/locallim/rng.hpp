#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace locallim {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure: the same (counter, key) always gives the same
/// block.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based generator addressed by (seed, stream).
///
/// The seed is the Philox key; the stream occupies the upper half of the
/// counter and the lower half counts blocks. Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform integer in [0, bound) without modulo bias. bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1).
  double uniform();

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

// Stream layout: replicate i uses stream i; root draws for replicate i use
// kRootStreamBase + i; reference computations use kReferenceStreamBase + j.
inline constexpr std::uint64_t kRootStreamBase = std::uint64_t{1} << 62;
inline constexpr std::uint64_t kReferenceStreamBase = std::uint64_t{1} << 63;

inline Rng derive_seed(std::uint64_t master, std::uint64_t stream_index) {
  return Rng(master, stream_index);
}

}  // namespace locallim
