#include "rfiqkd/rng.hpp"

namespace rfiqkd {

namespace {

constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, Stream stream,
                          std::initializer_list<std::uint64_t> coords) noexcept {
  std::uint64_t h = mix(root + 0x9e3779b97f4a7c15ULL);
  h = mix(h ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
  for (const std::uint64_t c : coords) {
    h = mix(h + 0x9e3779b97f4a7c15ULL + c);
  }
  return h;
}

}  // namespace rfiqkd
