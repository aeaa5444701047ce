#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "secadv/entropy.hpp"
#include "secadv/random.hpp"

using namespace secadv;

namespace {

BinaryJoint2 joint2(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  BinaryJoint2 j;
  j.counts = {{{a, b}, {c, d}}};
  return j;
}

// X* uniform, Y* = X* xor B(a/m), Z* = X* xor B(b/m) with independent flips.
// total = 2 m^2 keeps every cell an integer.
BinaryJoint3 symmetric_joint(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  BinaryJoint3 j;
  for (int x = 0; x < 2; ++x)
    for (int fy = 0; fy < 2; ++fy)
      for (int fz = 0; fz < 2; ++fz) {
        const std::uint64_t wy = fy ? a : m - a;
        const std::uint64_t wz = fz ? b : m - b;
        j.add(x, x ^ fy, x ^ fz, wy * wz);
      }
  return j;
}

}  // namespace

TEST(BinaryEntropy, Examples) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_NEAR(binary_entropy(0.11), oracle::kH011, 1e-15);
  EXPECT_NEAR(binary_entropy(0.1), oracle::kH01, 1e-15);
  EXPECT_NEAR(binary_entropy(0.3), oracle::kH03, 1e-15);
  EXPECT_THROW(binary_entropy(-0.01), std::invalid_argument);
  EXPECT_THROW(binary_entropy(1.01), std::invalid_argument);
}

TEST(BinaryEntropy, StrictlyIncreasingBelowOneHalf) {
  double prev = binary_entropy(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double h = binary_entropy(0.5 * i / 1000.0);
    EXPECT_LT(prev, h);
    prev = h;
  }
}

TEST(Crossover, Examples) {
  EXPECT_EQ(crossover(joint2(10, 0, 0, 7)), 0.0);
  EXPECT_EQ(crossover(joint2(0, 3, 4, 0)), 1.0);
  EXPECT_DOUBLE_EQ(crossover(joint2(45, 5, 5, 45)), 0.1);
  EXPECT_THROW(crossover(joint2(0, 0, 0, 0)), std::invalid_argument);
}

TEST(ConditionalEntropy, Examples) {
  EXPECT_EQ(conditional_entropy(joint2(40, 0, 0, 60)), 0.0);
  EXPECT_DOUBLE_EQ(conditional_entropy(joint2(25, 25, 25, 25)), 1.0);
  EXPECT_NEAR(conditional_entropy(joint2(45, 5, 5, 45)), oracle::kH01, 1e-12);
  EXPECT_THROW(conditional_entropy(joint2(0, 0, 0, 0)), std::invalid_argument);
}

TEST(ConditionalEntropy, SymmetricJointsReduceToBinaryEntropy) {
  RngStream s(1);
  std::uniform_int_distribution<std::uint64_t> cell(0, 1000);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t m = 1000, a = cell(s.engine());
    // counts for X* uniform, flip probability a/m
    const auto j = joint2(m - a, a, a, m - a);
    EXPECT_NEAR(conditional_entropy(j), binary_entropy(crossover(j)), 1e-9);
  }
}

TEST(ConditionalEntropy, BoundedAndEqualToMarginalWhenIndependent) {
  RngStream s(2);
  std::uniform_int_distribution<std::uint64_t> cell(0, 500);
  for (int i = 0; i < 1000; ++i) {
    auto j = joint2(cell(s.engine()), cell(s.engine()), cell(s.engine()), cell(s.engine()));
    if (j.total() == 0) continue;
    const double h = conditional_entropy(j);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, 1.0 + 1e-12);
  }
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t px0 = cell(s.engine()) + 1, px1 = cell(s.engine()) + 1;
    const std::uint64_t py0 = cell(s.engine()) + 1, py1 = cell(s.engine()) + 1;
    const auto j = joint2(px0 * py0, px0 * py1, px1 * py0, px1 * py1);
    const double p = static_cast<double>(px1) / static_cast<double>(px0 + px1);
    EXPECT_NEAR(conditional_entropy(j), oracle::binary_entropy(p), 1e-9);
  }
}

TEST(WynerCheck, Examples) {
  BinaryJoint3 same;
  same.add(0, 0, 0, 30);
  same.add(1, 1, 1, 70);
  const auto r0 = wyner_check(same);
  EXPECT_EQ(r0.p_xy, 0.0);
  EXPECT_EQ(r0.p_xz, 0.0);
  EXPECT_EQ(r0.ck_advantage, 0.0);
  EXPECT_EQ(r0.ordering_verdict, OrderVerdict::agree);

  const auto r = wyner_check(symmetric_joint(1, 3, 10));
  EXPECT_DOUBLE_EQ(r.p_xy, 0.1);
  EXPECT_DOUBLE_EQ(r.p_xz, 0.3);
  EXPECT_NEAR(r.h_x_given_y, oracle::kH01, 1e-12);
  EXPECT_NEAR(r.h_x_given_z, oracle::kH03, 1e-12);
  EXPECT_TRUE(r.wyner_applicable);
  EXPECT_EQ(r.ordering_verdict, OrderVerdict::agree);
  EXPECT_NEAR(r.ck_advantage, r.h_x_given_z - r.h_x_given_y, 1e-12);

  const auto high = wyner_check(symmetric_joint(6, 3, 10));
  EXPECT_FALSE(high.wyner_applicable);
  EXPECT_EQ(high.ordering_verdict, OrderVerdict::indeterminate);
}

TEST(CkAdvantage, Examples) {
  const auto j = symmetric_joint(1, 3, 10);
  EXPECT_NEAR(ck_advantage(j), oracle::kH03MinusH01, 1e-12);
  EXPECT_NEAR(ck_advantage(j.swap_yz()), -ck_advantage(j), 1e-15);

  // X* independent of both Y* and Z*.
  const auto indep = symmetric_joint(5, 5, 10);
  EXPECT_NEAR(ck_advantage(indep), 0.0, 1e-15);
}

TEST(WynerCheck, SymmetricJointsNeverDisagree) {
  RngStream s(3);
  const std::uint64_t m = 1000;
  std::uniform_int_distribution<std::uint64_t> flips(0, m / 2 - 1);
  for (int i = 0; i < 10000; ++i) {
    const auto r = wyner_check(symmetric_joint(flips(s.engine()), flips(s.engine()), m));
    ASSERT_TRUE(r.wyner_applicable);
    EXPECT_NE(r.ordering_verdict, OrderVerdict::disagree);
  }
}

TEST(WynerCheck, ArbitraryJointsAreLoggedNotAsserted) {
  RngStream s(4);
  std::uniform_int_distribution<std::uint64_t> cell(0, 100);
  int applicable = 0, disagree = 0;
  for (int i = 0; i < 10000; ++i) {
    BinaryJoint3 j;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) j.add(x, y, z, cell(s.engine()));
    if (j.total() == 0) continue;
    const auto r = wyner_check(j);
    if (!r.wyner_applicable || r.p_xz >= 0.5) continue;
    ++applicable;
    if (r.ordering_verdict == OrderVerdict::disagree) ++disagree;
  }
  RecordProperty("asymmetric_disagree", disagree);
  std::cout << "asymmetric joints with both crossovers < 1/2: " << applicable << ", disagree: " << disagree
            << "\n";
  EXPECT_GT(applicable, 0);
}
