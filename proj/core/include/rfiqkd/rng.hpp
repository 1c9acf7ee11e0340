#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace rfiqkd {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
///
/// Small state makes it cheap to seed one generator per pulse from
/// (seed, window, pulse) coordinates, so any partition of a window into
/// sub-ranges reproduces the single-pass stream exactly.
class Rng {
public:
  using result_type = std::uint64_t;

  constexpr explicit Rng(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  friend constexpr bool operator==(const Rng&, const Rng&) = default;

private:
  std::uint64_t state_;
};

/// Independent streams drawn from one scenario seed.
enum class Stream : std::uint64_t {
  drift = 1,
  pulses = 2,
  test = 0xffff,
};

/// Mixes a root seed with a stream tag and coordinates (window, pulse, ...)
/// into a well-separated 64-bit seed. Pure function of its inputs.
std::uint64_t derive_seed(std::uint64_t root, Stream stream,
                          std::initializer_list<std::uint64_t> coords = {}) noexcept;

inline Rng make_rng(std::uint64_t root, Stream stream,
                    std::initializer_list<std::uint64_t> coords = {}) noexcept {
  return Rng{derive_seed(root, stream, coords)};
}

}  // namespace rfiqkd
