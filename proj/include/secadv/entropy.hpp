#pragma once

#include <array>
#include <cstdint>

#include "secadv/estimation.hpp"

namespace secadv {

// Counts of (X*, Y*) outcomes.
struct BinaryJoint2 {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};

  std::uint64_t total() const noexcept {
    return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
  }
};

// Counts of (X*, Y*, Z*) outcomes.
struct BinaryJoint3 {
  std::array<std::array<std::array<std::uint64_t, 2>, 2>, 2> counts{};

  std::uint64_t total() const noexcept;
  void add(int x, int y, int z, std::uint64_t n = 1) { counts[x][y][z] += n; }
  BinaryJoint3& operator+=(const BinaryJoint3& other) noexcept;

  BinaryJoint2 xy() const noexcept;
  BinaryJoint2 xz() const noexcept;
  BinaryJoint3 swap_yz() const noexcept;
};

struct SecrecyAdvantageReport {
  double p_xy = 0.0;
  double p_xz = 0.0;
  double h_x_given_y = 0.0;
  double h_x_given_z = 0.0;
  double ck_advantage = 0.0;
  bool wyner_applicable = false;
  OrderVerdict ordering_verdict = OrderVerdict::indeterminate;
};

inline constexpr double kEntropyTieTolerance = 1e-9;

// h(p) in bits.
double binary_entropy(double p);

// P(X* != Y*).
double crossover(const BinaryJoint2& joint);

// Plug-in H(X* | Y*) in bits.
double conditional_entropy(const BinaryJoint2& joint);

SecrecyAdvantageReport wyner_check(const BinaryJoint3& joint);

// H(X*|Z*) - H(X*|Y*) for the given joint.
double ck_advantage(const BinaryJoint3& joint);

}  // namespace secadv
