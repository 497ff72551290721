#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string_view>

namespace nonlocal {

/// Caller-owned random stream. Every sampler in the library draws from one of
/// these and nothing else, so a run is a pure function of the stream's seed.
///
/// Satisfies UniformRandomBitGenerator, so it can also drive <random>
/// distributions directly.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t next_word() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p; p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform() < p; }

  /// One fair bit, served from a buffered 64-bit word.
  std::uint8_t fair_bit() {
    if (bits_left_ == 0) {
      buffer_ = engine_();
      bits_left_ = 64;
    }
    const auto bit = static_cast<std::uint8_t>(buffer_ & 1U);
    buffer_ >>= 1;
    --bits_left_;
    return bit;
  }

  void fill_words(std::span<std::uint64_t> out) {
    for (auto& w : out) w = engine_();
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  int bits_left_ = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based seed derivation: the stream for trial `index` of the
/// sub-experiment `key` under `master_seed`. Distinct (key, index) pairs give
/// unrelated seeds, and the result does not depend on which worker asks.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t key, std::uint64_t index);

inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t key,
                                  std::uint64_t index) {
  return RandomStream(derive_seed(master_seed, key, index));
}

/// Stable 64-bit key for a named sub-experiment (FNV-1a over the name, then a
/// numeric discriminator such as the level count mixed in).
std::uint64_t stream_key(std::string_view name, std::uint64_t discriminator = 0);

}  // namespace nonlocal
