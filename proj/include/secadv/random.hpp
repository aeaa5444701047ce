#pragma once

#include <cstdint>
#include <random>

namespace secadv {

// A seeded random stream with cheap, order-independent child derivation.
//
// substream(i) depends only on the parent's key and i, never on how many
// numbers the parent has already produced. Work split into indexed chunks
// therefore draws the same numbers no matter which thread runs which chunk.
class RngStream {
 public:
  using Engine = std::mt19937_64;

  explicit RngStream(std::uint64_t seed);

  RngStream substream(std::uint64_t index) const;

  Engine& engine() noexcept { return engine_; }
  std::uint64_t key() const noexcept { return key_; }

  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

 private:
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key);

  std::uint64_t key_;
  Engine engine_;
};

// SplitMix64 finalizer, used for key derivation only.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace secadv
