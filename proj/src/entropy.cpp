#include "secadv/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace secadv {

std::uint64_t BinaryJoint3::total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& a : counts)
    for (const auto& b : a)
      for (auto c : b) t += c;
  return t;
}

BinaryJoint3& BinaryJoint3::operator+=(const BinaryJoint3& other) noexcept {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) counts[x][y][z] += other.counts[x][y][z];
  return *this;
}

BinaryJoint2 BinaryJoint3::xy() const noexcept {
  BinaryJoint2 j;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) j.counts[x][y] = counts[x][y][0] + counts[x][y][1];
  return j;
}

BinaryJoint2 BinaryJoint3::xz() const noexcept {
  BinaryJoint2 j;
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z) j.counts[x][z] = counts[x][0][z] + counts[x][1][z];
  return j;
}

BinaryJoint3 BinaryJoint3::swap_yz() const noexcept {
  BinaryJoint3 j;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) j.counts[x][z][y] = counts[x][y][z];
  return j;
}

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

void require_nonempty(std::uint64_t total) {
  if (total < 1) throw std::invalid_argument("joint must hold at least one observation");
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy needs p in [0, 1]");
  return -plogp(p) - plogp(1.0 - p);
}

double crossover(const BinaryJoint2& joint) {
  const auto total = joint.total();
  require_nonempty(total);
  return static_cast<double>(joint.counts[0][1] + joint.counts[1][0]) / static_cast<double>(total);
}

double conditional_entropy(const BinaryJoint2& joint) {
  const auto total = joint.total();
  require_nonempty(total);
  const double n = static_cast<double>(total);
  double h_joint = 0.0;
  double h_cond = 0.0;
  for (int y = 0; y < 2; ++y) {
    const double py = static_cast<double>(joint.counts[0][y] + joint.counts[1][y]) / n;
    h_cond -= plogp(py);
    for (int x = 0; x < 2; ++x) h_joint -= plogp(static_cast<double>(joint.counts[x][y]) / n);
  }
  // Guard the [0, 1] range against rounding when the joint is degenerate.
  return std::max(0.0, h_joint - h_cond);
}

double ck_advantage(const BinaryJoint3& joint) {
  return conditional_entropy(joint.xz()) - conditional_entropy(joint.xy());
}

SecrecyAdvantageReport wyner_check(const BinaryJoint3& joint) {
  require_nonempty(joint.total());
  SecrecyAdvantageReport r;
  r.p_xy = crossover(joint.xy());
  r.p_xz = crossover(joint.xz());
  r.h_x_given_y = conditional_entropy(joint.xy());
  r.h_x_given_z = conditional_entropy(joint.xz());
  r.ck_advantage = r.h_x_given_z - r.h_x_given_y;
  r.wyner_applicable = r.p_xy < 0.5;
  if (!r.wyner_applicable) {
    r.ordering_verdict = OrderVerdict::indeterminate;
    return r;
  }
  auto sign = [](double v) { return v > kEntropyTieTolerance ? 1 : (v < -kEntropyTieTolerance ? -1 : 0); };
  r.ordering_verdict =
      sign(r.p_xz - r.p_xy) == sign(r.ck_advantage) ? OrderVerdict::agree : OrderVerdict::disagree;
  return r;
}

}  // namespace secadv
