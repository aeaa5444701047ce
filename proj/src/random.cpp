#include "secadv/random.hpp"

namespace secadv {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

RngStream::Engine seeded_engine(std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    0x5ec0adu};
  return RngStream::Engine(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : RngStream(FromKey{}, mix64(seed)) {}

RngStream::RngStream(FromKey, std::uint64_t key) : key_(key), engine_(seeded_engine(key)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(FromKey{}, mix64(key_ ^ mix64(index ^ 0x243f6a8885a308d3ULL)));
}

}  // namespace secadv
