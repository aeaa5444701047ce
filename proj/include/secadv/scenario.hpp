#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "secadv/entropy.hpp"
#include "secadv/estimation.hpp"
#include "secadv/geometry.hpp"
#include "secadv/random.hpp"

namespace secadv {

// A (legitimate, eavesdropper) channel pair acting on X uniform on the
// epsilon-sphere. Each receiver sees X plus isotropic Gaussian noise of
// scale sigma, projected back onto the sphere.
struct ChannelConfig {
  Eigen::Index dimension = 3;
  double epsilon = 0.1;
  double sigma_b = 0.01;
  double sigma_e = 0.05;
  std::uint64_t trials = 10'000;
  std::uint64_t thetas_per_trial = 100;
  SamplingMode mode = SamplingMode::angle_product;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void validate() const;
};

struct Triple {
  SpherePointd x;
  SpherePointd y;
  SpherePointd z;
};

// epsilon * normalize(x + sigma * G); returns x itself when sigma == 0.
SpherePointd noisy_projection(const SpherePointd& x, double sigma, RngStream& stream);

Triple generate_triple(const ChannelConfig& cfg, RngStream& stream);

struct ScenarioReport {
  double mean_sq_dist_xy = 0.0;
  double mean_sq_dist_xz = 0.0;
  // Standard error of mean_sq_dist_xz - mean_sq_dist_xy over trials.
  double sq_dist_diff_se = 0.0;
  BinaryJoint3 joint;
  SecrecyAdvantageReport advantage;
  // Trial-clustered delta-method standard errors.
  double p_xy_se = 0.0;
  double p_xz_se = 0.0;
  double ck_advantage_se = 0.0;
  int distance_sign = 0;
  int entropy_sign = 0;
  OrderVerdict chain_verdict = OrderVerdict::indeterminate;
  std::vector<std::string> warnings;
};

// Sign of `value` with a dead band of `z_threshold * se` around zero.
int banded_sign(double value, double se, double z_threshold = kDefaultZThreshold);

// Implication rule: agree when the banded signs match (including a double
// tie), disagree when they are opposite and nonzero, else indeterminate.
OrderVerdict chain_rule(int distance_sign, int entropy_sign);

ScenarioReport run_scenario(const ChannelConfig& cfg, double z_threshold = kDefaultZThreshold);

struct PosteriorOptions {
  std::uint64_t samples = 20'000;
  // Minimum effective sample size as a fraction of `samples`.
  double min_ess_fraction = 0.01;
  unsigned workers = 1;
};

struct PosteriorMean {
  VectorXd mean;
  double effective_sample_size = 0.0;
  std::uint64_t samples = 0;
};

// Raised when the importance sampler has too few effective samples.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Log-likelihood of the raw observation j given prior point x, up to a
// constant shared by all x on the sphere.
double observation_log_likelihood(const VectorXd& j, const VectorXd& x, double sigma);

// Self-normalized importance sampling of E[X | J] where J = X + sigma_e G and
// X is uniform on the epsilon-sphere. Prior draws for sample i come from
// chunk substream i / kChunkSize, so growing `samples` keeps earlier draws.
PosteriorMean conditional_mean_estimator(const VectorXd& observation, const ChannelConfig& cfg,
                                         const PosteriorOptions& opts, const RngStream& stream);

// The prior draws and their log-weights, as used by conditional_mean_estimator.
struct ImportanceSample {
  std::vector<VectorXd> points;
  std::vector<double> log_weights;
};
ImportanceSample importance_sample(const VectorXd& observation, const ChannelConfig& cfg,
                                   std::uint64_t samples, const RngStream& stream);

struct OpponentStrategy {
  std::string name;
  std::function<VectorXd(const VectorXd& observation, RngStream& stream)> estimate;
};

inline constexpr const char* kConditionalMeanStrategy = "conditional-mean";

// raw-observation, sphere-projected, conditional-mean, zero-vector.
std::vector<OpponentStrategy> builtin_strategies(const ChannelConfig& cfg, const PosteriorOptions& posterior);

struct StrategyScore {
  std::string name;
  double mean_sq_error = 0.0;
  double std_error = 0.0;
  // Paired difference (this strategy) - (conditional mean), with its SE.
  double excess_over_reference = 0.0;
  double excess_se = 0.0;
};

struct InequalityReport {
  std::uint64_t trials = 0;
  std::vector<StrategyScore> scores;
  std::string argmin;
  // No strategy beats the conditional mean by more than z_threshold SEs.
  bool holds = true;
};

InequalityReport inequality_I_check(const ChannelConfig& cfg, const std::vector<OpponentStrategy>& strategies,
                                    std::uint64_t trials, const RngStream& stream,
                                    double z_threshold = kDefaultZThreshold);

}  // namespace secadv
