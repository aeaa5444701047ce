#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Core>

#include "secadv/geometry.hpp"

namespace secadv {

enum class Bit : std::uint8_t { zero = 0, one = 1 };

constexpr Bit operator^(Bit a, Bit b) noexcept {
  return static_cast<Bit>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr int to_int(Bit b) noexcept { return static_cast<int>(b); }

// Offset v in [0, 1) for the one-dimensional binarizer.
class UnitOffset {
 public:
  explicit UnitOffset(double v) : v_(v) {
    if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("unit offset must lie in [0, 1)");
  }
  double value() const noexcept { return v_; }

 private:
  double v_;
};

// floor(x) mod 2, canonicalized to {0, 1}. Integers take the right-continuous floor.
template <typename Scalar>
Bit gamma_bit(Scalar x) {
  const Scalar r = std::fmod(std::floor(x), Scalar(2));
  return (r == Scalar(0)) ? Bit::zero : Bit::one;
}

inline void check_half_interval(double x) {
  if (!(x >= -0.5 && x < 0.5)) throw std::invalid_argument("1D input must lie in [-1/2, 1/2)");
}

inline Bit binarize_1d(double x, UnitOffset v) {
  check_half_interval(x);
  return gamma_bit(x - v.value());
}

// Measure of { v in [0,1) : gamma_bit(x - v) != gamma_bit(y - v) }.
//
// As v sweeps [0, 1), gamma_bit(x - v) keeps the value gamma_bit(x) up to
// v = frac(x) and flips once after it. The XOR is therefore constant off the interval
// between the two flip points and toggles across it.
inline double exact_xor_expectation_1d(double x, double y) {
  check_half_interval(x);
  check_half_interval(y);
  const double fx = x - std::floor(x);
  const double fy = y - std::floor(y);
  const double between = std::abs(fx - fy);
  const double measure = (gamma_bit(x) == gamma_bit(y)) ? between : 1.0 - between;
  if (std::abs(measure - std::abs(x - y)) > 1e-12) {
    throw std::logic_error("1D XOR measure disagrees with |x - y|");
  }
  return measure;
}

// XOR over coordinates of gamma_bit(coordinate): the colour of the unit cell.
template <typename Derived>
Bit checkerboard_parity(const Eigen::MatrixBase<Derived>& v) {
  Bit acc = Bit::zero;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc = acc ^ gamma_bit(v(i));
  return acc;
}

template <typename Scalar>
Bit f_bit(const SpherePoint<Scalar>& x, const RotationPlan<Scalar>& plan) {
  if (plan.dimension() != x.dimension()) throw std::invalid_argument("f_bit dimension mismatch");
  return checkerboard_parity(apply_rotation(plan, x.vector()));
}

template <typename Scalar>
Bit f_bit(const SpherePoint<Scalar>& x, const AngleTuple<Scalar>& theta) {
  if (theta.dimension() != x.dimension()) throw std::invalid_argument("f_bit dimension mismatch");
  return f_bit(x, plan_from_angles(theta));
}

template <typename Scalar>
Bit f_bit(const SpherePoint<Scalar>& x, const HaarRotation<Scalar>& rotation) {
  return checkerboard_parity(rotation.apply(x.vector()));
}

}  // namespace secadv
