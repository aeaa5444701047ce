#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Jacobi>

namespace secadv {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
inline constexpr Scalar kTwoPi = Scalar(2) * std::numbers::pi_v<Scalar>;

template <typename Derived>
typename Derived::RealScalar quad_norm(const Eigen::MatrixBase<Derived>& v) {
  return v.norm();
}

template <typename Derived>
void check_vector(const Eigen::MatrixBase<Derived>& v) {
  if (v.size() < 1) throw std::invalid_argument("vector must have at least one coordinate");
  if (!v.allFinite()) throw std::invalid_argument("vector coordinates must be finite");
}

// A point on the sphere of radius epsilon, epsilon in (0, 1).
template <typename Scalar>
class SpherePoint {
 public:
  SpherePoint(Vector<Scalar> v, Scalar radius) : vector_(std::move(v)), radius_(radius) {
    check_vector(vector_);
    if (!(radius_ > Scalar(0) && radius_ < Scalar(1))) {
      throw std::invalid_argument("sphere radius epsilon must lie in (0, 1)");
    }
    const Scalar tol = Scalar(1e-9) * std::max(Scalar(1), radius_);
    if (std::abs(vector_.norm() - radius_) > tol) {
      throw std::invalid_argument("point does not lie on the sphere of radius epsilon");
    }
  }

  const Vector<Scalar>& vector() const noexcept { return vector_; }
  Scalar radius() const noexcept { return radius_; }
  Eigen::Index dimension() const noexcept { return vector_.size(); }

 private:
  Vector<Scalar> vector_;
  Scalar radius_;
};

// n - 1 angles in [0, 2 pi) for a rotation of R^n.
template <typename Scalar>
class AngleTuple {
 public:
  explicit AngleTuple(std::vector<Scalar> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw std::invalid_argument("angle tuple needs at least one angle");
    for (Scalar a : angles_) {
      if (!(a >= Scalar(0) && a < kTwoPi<Scalar>)) {
        throw std::invalid_argument("angles must lie in [0, 2 pi)");
      }
    }
  }

  const std::vector<Scalar>& angles() const noexcept { return angles_; }
  Scalar operator[](std::size_t i) const { return angles_[i]; }
  std::size_t size() const noexcept { return angles_.size(); }
  Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(angles_.size()) + 1; }

 private:
  std::vector<Scalar> angles_;
};

// Givens rotation on coordinates (plane, plane + 1), 1-based plane index.
//   [ cos  sin ]
//   [-sin  cos ]
template <typename Scalar>
struct PlaneRotation {
  Eigen::Index plane;
  Scalar angle;
  Eigen::JacobiRotation<Scalar> givens;
};

// U(Theta) = U_1(theta_1) U_2(theta_2) ... U_{n-1}(theta_{n-1}).
//
// Factors are stored in product order (plane 1 first). Application runs
// from the rightmost factor, so plane n-1 touches the vector first; with
// this order U(Theta) e_n is the spherical-coordinate vector
//   ( prod sin, ..., cos theta_{j-1} prod_{p>=j} sin theta_p, ..., cos theta_{n-1} ).
template <typename Scalar>
class RotationPlan {
 public:
  RotationPlan(Eigen::Index dimension, std::vector<PlaneRotation<Scalar>> factors)
      : dimension_(dimension), factors_(std::move(factors)) {
    if (dimension_ < 2) throw std::invalid_argument("rotation plan needs dimension >= 2");
    if (static_cast<Eigen::Index>(factors_.size()) != dimension_ - 1) {
      throw std::invalid_argument("rotation plan needs exactly n - 1 plane rotations");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].plane != static_cast<Eigen::Index>(i) + 1) {
        throw std::invalid_argument("plane indices must be 1..n-1 in ascending order");
      }
    }
  }

  Eigen::Index dimension() const noexcept { return dimension_; }
  const std::vector<PlaneRotation<Scalar>>& factors() const noexcept { return factors_; }

  template <typename Derived>
  void apply_in_place(Eigen::MatrixBase<Derived>& v) const {
    if (v.size() != dimension_) throw std::invalid_argument("rotation plan dimension mismatch");
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
      v.applyOnTheLeft(it->plane - 1, it->plane, it->givens);
    }
  }

 private:
  Eigen::Index dimension_;
  std::vector<PlaneRotation<Scalar>> factors_;
};

template <typename Scalar>
RotationPlan<Scalar> plan_from_angles(const AngleTuple<Scalar>& theta) {
  std::vector<PlaneRotation<Scalar>> factors;
  factors.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const Scalar a = theta[i];
    factors.push_back({static_cast<Eigen::Index>(i) + 1, a,
                       Eigen::JacobiRotation<Scalar>(std::cos(a), std::sin(a))});
  }
  return RotationPlan<Scalar>(theta.dimension(), std::move(factors));
}

template <typename Scalar, typename Derived>
Vector<Scalar> apply_rotation(const RotationPlan<Scalar>& plan, const Eigen::MatrixBase<Derived>& v) {
  Vector<Scalar> out = v;
  plan.apply_in_place(out);
  return out;
}

template <typename Scalar, typename Urbg>
Scalar uniform_angle(Urbg& gen) {
  std::uniform_real_distribution<Scalar> dist(Scalar(0), kTwoPi<Scalar>);
  Scalar a = dist(gen);
  while (!(a < kTwoPi<Scalar>)) a = dist(gen);  // libstdc++ may return the upper bound
  return a;
}

template <typename Scalar = double, typename Urbg>
AngleTuple<Scalar> sample_angles(Eigen::Index n, Urbg& gen) {
  if (n < 2) throw std::invalid_argument("sample_angles needs dimension >= 2");
  std::vector<Scalar> angles(static_cast<std::size_t>(n - 1));
  for (auto& a : angles) a = uniform_angle<Scalar>(gen);
  return AngleTuple<Scalar>(std::move(angles));
}

// Rotation drawn from the Haar measure on SO(n).
template <typename Scalar>
class HaarRotation {
 public:
  explicit HaarRotation(Matrix<Scalar> q) : q_(std::move(q)) {}

  const Matrix<Scalar>& matrix() const noexcept { return q_; }
  Eigen::Index dimension() const noexcept { return q_.rows(); }

  template <typename Derived>
  Vector<Scalar> apply(const Eigen::MatrixBase<Derived>& v) const {
    if (v.size() != q_.cols()) throw std::invalid_argument("haar rotation dimension mismatch");
    return q_ * v;
  }

 private:
  Matrix<Scalar> q_;
};

// QR of a standard-normal matrix, R's diagonal made positive, then one
// column flipped if needed to land in SO(n).
template <typename Scalar = double, typename Urbg>
HaarRotation<Scalar> sample_haar_rotation(Eigen::Index n, Urbg& gen) {
  if (n < 2) throw std::invalid_argument("sample_haar_rotation needs dimension >= 2");
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Matrix<Scalar> g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(gen);

  Eigen::HouseholderQR<Matrix<Scalar>> qr(g);
  Matrix<Scalar> q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < Scalar(0)) q.col(j) = -q.col(j);
  }
  if (q.determinant() < Scalar(0)) q.col(0) = -q.col(0);
  return HaarRotation<Scalar>(std::move(q));
}

inline void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
}

template <typename Scalar = double, typename Urbg>
Vector<Scalar> sample_unit_vector(Eigen::Index n, Urbg& gen) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Vector<Scalar> g(n);
  Scalar norm = 0;
  do {
    for (Eigen::Index i = 0; i < n; ++i) g(i) = normal(gen);
    norm = g.norm();
  } while (!(norm > Scalar(0)));
  return g / norm;
}

// Uniform on the sphere of radius epsilon.
template <typename Scalar = double, typename Urbg>
SpherePoint<Scalar> sample_sphere_point(Eigen::Index n, Scalar epsilon, Urbg& gen) {
  if (n < 2) throw std::invalid_argument("sample_sphere_point needs dimension >= 2");
  check_epsilon(static_cast<double>(epsilon));
  return SpherePoint<Scalar>(epsilon * sample_unit_vector<Scalar>(n, gen), epsilon);
}

// A point on the same sphere at chord distance d from x, in a uniformly
// random direction around x.
template <typename Scalar, typename Urbg>
SpherePoint<Scalar> point_at_distance(const SpherePoint<Scalar>& x, Scalar d, Urbg& gen) {
  const Scalar eps = x.radius();
  if (!(d >= Scalar(0) && d <= Scalar(2) * eps)) {
    throw std::invalid_argument("distance must lie in [0, 2 epsilon]");
  }
  if (d == Scalar(0)) return x;

  const Eigen::Index n = x.dimension();
  const Vector<Scalar> u = x.vector() / x.vector().norm();
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Vector<Scalar> t(n);
  Scalar tnorm = 0;
  do {
    for (Eigen::Index i = 0; i < n; ++i) t(i) = normal(gen);
    t -= t.dot(u) * u;
    tnorm = t.norm();
  } while (!(tnorm > Scalar(1e-8)));
  t /= tnorm;

  const Scalar alpha = Scalar(2) * std::asin(std::min(Scalar(1), d / (Scalar(2) * eps)));
  Vector<Scalar> y = eps * (std::cos(alpha) * u + std::sin(alpha) * t);
  return SpherePoint<Scalar>(std::move(y), eps);
}

template <typename Scalar = double, typename Urbg>
std::pair<SpherePoint<Scalar>, SpherePoint<Scalar>> pair_at_distance(Eigen::Index n, Scalar epsilon,
                                                                     Scalar d, Urbg& gen) {
  check_epsilon(static_cast<double>(epsilon));
  if (!(d >= Scalar(0) && d <= Scalar(2) * epsilon)) {
    throw std::invalid_argument("distance must lie in [0, 2 epsilon]");
  }
  SpherePoint<Scalar> x = sample_sphere_point<Scalar>(n, epsilon, gen);
  SpherePoint<Scalar> y = point_at_distance(x, d, gen);
  return {std::move(x), std::move(y)};
}

using VectorXd = Vector<double>;
using SpherePointd = SpherePoint<double>;
using AngleTupled = AngleTuple<double>;
using RotationPland = RotationPlan<double>;
using HaarRotationd = HaarRotation<double>;

}  // namespace secadv
