#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "secadv/geometry.hpp"
#include "secadv/parallel.hpp"
#include "secadv/random.hpp"

namespace secadv {

// How the public randomizer is drawn for each bit.
//   angle_product: Theta uniform on [0, 2 pi)^{n-1}, applied as U(Theta).
//   haar: a Haar-distributed rotation of SO(n), used as a control.
enum class SamplingMode { angle_product, haar };

std::string_view to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(std::string_view name);

enum class OrderVerdict { agree, disagree, indeterminate };
std::string_view to_string(OrderVerdict verdict);

enum class IsotropyVerdict { consistent, inconsistent };
std::string_view to_string(IsotropyVerdict verdict);

inline constexpr double kDefaultZThreshold = 4.0;
inline constexpr std::uint64_t kDefaultSamples = 1'000'000;

struct EstimatorOptions {
  std::uint64_t samples = kDefaultSamples;
  SamplingMode mode = SamplingMode::angle_product;
  unsigned workers = 1;
};

// Monte Carlo estimate of phi(d) = E[f(X,.) xor f(Y,.)].
struct PhiEstimate {
  double distance = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  SamplingMode mode = SamplingMode::angle_product;
};

struct PhiCurve {
  double epsilon = 0.0;
  Eigen::Index dimension = 0;
  std::vector<PhiEstimate> points;
};

struct IsotropyReport {
  double distance = 0.0;
  std::vector<PhiEstimate> estimates;
  double max_pairwise_z = 0.0;
  double z_threshold = kDefaultZThreshold;
  IsotropyVerdict verdict = IsotropyVerdict::consistent;
};

struct Lemma1Result {
  double d_xy = 0.0;
  double d_xz = 0.0;
  PhiEstimate phi_xy;
  PhiEstimate phi_xz;
  OrderVerdict verdict = OrderVerdict::indeterminate;
};

// Number of disagreeing bits between x and y over the samples in
// [begin, end), drawing randomizers from `stream`.
std::uint64_t count_xor_ones(const SpherePointd& x, const SpherePointd& y, std::size_t begin,
                             std::size_t end, SamplingMode mode, RngStream& stream);

PhiEstimate estimate_phi(const SpherePointd& x, const SpherePointd& y, const EstimatorOptions& opts,
                         const RngStream& stream);

// Ground truth for n = 2: midpoint quadrature over `grid` rotation angles
// of a fixed pair at chord distance d.
double phi_oracle_2d(double epsilon, double d, std::size_t grid = std::size_t{1} << 21);

PhiCurve phi_curve(Eigen::Index n, double epsilon, const std::vector<double>& distances,
                   const EstimatorOptions& opts, const RngStream& stream);

// Pooled two-proportion z statistic; 0 when both proportions are 0 or 1.
double two_proportion_z(const PhiEstimate& a, const PhiEstimate& b);

IsotropyReport isotropy_test(Eigen::Index n, double epsilon, double d, std::size_t num_pairs,
                             const EstimatorOptions& opts, const RngStream& stream,
                             double z_threshold = kDefaultZThreshold);

// CI-aware comparison of the distance order and the phi order.
Lemma1Result lemma1_order_check(const SpherePointd& x, const SpherePointd& y, const SpherePointd& z,
                                const EstimatorOptions& opts, const RngStream& stream,
                                double z_threshold = kDefaultZThreshold);

}  // namespace secadv
