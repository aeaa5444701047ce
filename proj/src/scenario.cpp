#include "secadv/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "secadv/binarizer.hpp"
#include "secadv/parallel.hpp"

namespace secadv {

void ChannelConfig::validate() const {
  if (dimension < 2) throw std::invalid_argument("dimension must be >= 2");
  check_epsilon(epsilon);
  if (!(sigma_b >= 0.0 && std::isfinite(sigma_b))) throw std::invalid_argument("sigma_b must be a finite value >= 0");
  if (!(sigma_e >= 0.0 && std::isfinite(sigma_e))) throw std::invalid_argument("sigma_e must be a finite value >= 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (thetas_per_trial < 1) throw std::invalid_argument("thetas_per_trial must be >= 1");
}

SpherePointd noisy_projection(const SpherePointd& x, double sigma, RngStream& stream) {
  if (sigma == 0.0) return x;
  constexpr int kMaxRetries = 64;
  const Eigen::Index n = x.dimension();
  VectorXd w(n);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    for (Eigen::Index i = 0; i < n; ++i) w(i) = x.vector()(i) + sigma * stream.normal();
    const double norm = w.norm();
    if (norm > 0.0 && std::isfinite(norm)) return SpherePointd(x.radius() * w / norm, x.radius());
  }
  throw std::runtime_error("noisy projection kept hitting the zero vector");
}

Triple generate_triple(const ChannelConfig& cfg, RngStream& stream) {
  SpherePointd x = sample_sphere_point(cfg.dimension, cfg.epsilon, stream.engine());
  SpherePointd y = noisy_projection(x, cfg.sigma_b, stream);
  SpherePointd z = noisy_projection(x, cfg.sigma_e, stream);
  return {std::move(x), std::move(y), std::move(z)};
}

int banded_sign(double value, double se, double z_threshold) {
  if (std::abs(value) <= z_threshold * se) return 0;
  return value > 0.0 ? 1 : -1;
}

OrderVerdict chain_rule(int distance_sign, int entropy_sign) {
  if (distance_sign == entropy_sign) return OrderVerdict::agree;
  if (distance_sign != 0 && entropy_sign != 0) return OrderVerdict::disagree;
  return OrderVerdict::indeterminate;
}

namespace {

struct TrialRecord {
  double sq_xy = 0.0;
  double sq_xz = 0.0;
  BinaryJoint3 counts;
};

TrialRecord run_trial(const ChannelConfig& cfg, RngStream& stream) {
  TrialRecord rec;
  const Triple t = generate_triple(cfg, stream);
  rec.sq_xy = (t.x.vector() - t.y.vector()).squaredNorm();
  rec.sq_xz = (t.x.vector() - t.z.vector()).squaredNorm();

  const Eigen::Index n = cfg.dimension;
  VectorXd rx(n), ry(n), rz(n);
  for (std::uint64_t k = 0; k < cfg.thetas_per_trial; ++k) {
    if (cfg.mode == SamplingMode::angle_product) {
      const auto plan = plan_from_angles(sample_angles(n, stream.engine()));
      rx = t.x.vector();
      ry = t.y.vector();
      rz = t.z.vector();
      plan.apply_in_place(rx);
      plan.apply_in_place(ry);
      plan.apply_in_place(rz);
    } else {
      const auto rot = sample_haar_rotation(n, stream.engine());
      rx.noalias() = rot.matrix() * t.x.vector();
      ry.noalias() = rot.matrix() * t.y.vector();
      rz.noalias() = rot.matrix() * t.z.vector();
    }
    rec.counts.add(to_int(checkerboard_parity(rx)), to_int(checkerboard_parity(ry)),
                   to_int(checkerboard_parity(rz)));
  }
  return rec;
}

// Sample standard error of the mean of `values`.
double standard_error(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

// Per-cell influence of H(X|Z) - H(X|Y) for the plug-in estimator, in bits.
std::array<double, 8> advantage_influence(const BinaryJoint3& joint, double advantage) {
  const BinaryJoint2 xy = joint.xy();
  const BinaryJoint2 xz = joint.xz();
  auto cond = [](const BinaryJoint2& j, int a, int b) {
    const double col = static_cast<double>(j.counts[0][b] + j.counts[1][b]);
    return static_cast<double>(j.counts[a][b]) / col;
  };
  std::array<double, 8> out{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        if (joint.counts[x][y][z] == 0) continue;
        out[x * 4 + y * 2 + z] = -std::log2(cond(xz, x, z)) + std::log2(cond(xy, x, y)) - advantage;
      }
  return out;
}

}  // namespace

ScenarioReport run_scenario(const ChannelConfig& cfg, double z_threshold) {
  cfg.validate();
  const RngStream root(cfg.seed);

  const auto chunks = map_chunks<std::vector<TrialRecord>>(
      cfg.trials, cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<TrialRecord> out;
        out.reserve(end - begin);
        for (std::size_t t = begin; t < end; ++t) {
          RngStream trial_stream = root.substream(t);
          out.push_back(run_trial(cfg, trial_stream));
        }
        return out;
      });

  ScenarioReport report;
  std::vector<double> sq_diff, frac_xy, frac_xz;
  sq_diff.reserve(cfg.trials);
  frac_xy.reserve(cfg.trials);
  frac_xz.reserve(cfg.trials);
  const double per_trial = static_cast<double>(cfg.thetas_per_trial);
  for (const auto& chunk : chunks) {
    for (const auto& rec : chunk) {
      report.mean_sq_dist_xy += rec.sq_xy;
      report.mean_sq_dist_xz += rec.sq_xz;
      sq_diff.push_back(rec.sq_xz - rec.sq_xy);
      report.joint += rec.counts;
      const auto xy = rec.counts.xy();
      const auto xz = rec.counts.xz();
      frac_xy.push_back(static_cast<double>(xy.counts[0][1] + xy.counts[1][0]) / per_trial);
      frac_xz.push_back(static_cast<double>(xz.counts[0][1] + xz.counts[1][0]) / per_trial);
    }
  }
  const double trials = static_cast<double>(cfg.trials);
  report.mean_sq_dist_xy /= trials;
  report.mean_sq_dist_xz /= trials;
  report.sq_dist_diff_se = standard_error(sq_diff);
  report.p_xy_se = standard_error(frac_xy);
  report.p_xz_se = standard_error(frac_xz);
  report.advantage = wyner_check(report.joint);

  const auto influence = advantage_influence(report.joint, report.advantage.ck_advantage);
  std::vector<double> trial_influence;
  trial_influence.reserve(cfg.trials);
  for (const auto& chunk : chunks) {
    for (const auto& rec : chunk) {
      double u = 0.0;
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          for (int z = 0; z < 2; ++z)
            u += static_cast<double>(rec.counts.counts[x][y][z]) * influence[x * 4 + y * 2 + z];
      trial_influence.push_back(u / per_trial);
    }
  }
  report.ck_advantage_se = standard_error(trial_influence);

  report.distance_sign =
      banded_sign(report.mean_sq_dist_xz - report.mean_sq_dist_xy, report.sq_dist_diff_se, z_threshold);
  report.entropy_sign = banded_sign(report.advantage.ck_advantage, report.ck_advantage_se, z_threshold);
  report.chain_verdict = chain_rule(report.distance_sign, report.entropy_sign);

  const double eps = cfg.epsilon;
  if (std::sqrt(report.mean_sq_dist_xy) > eps || std::sqrt(report.mean_sq_dist_xz) > eps) {
    report.warnings.emplace_back(
        "typical distance exceeds epsilon; outside the locally increasing regime of phi");
  }
  return report;
}

double observation_log_likelihood(const VectorXd& j, const VectorXd& x, double sigma) {
  // -|j - x|^2 / (2 sigma^2) with |x| fixed on the sphere.
  return j.dot(x) / (sigma * sigma);
}

namespace {

struct WeightedSums {
  double max_log = -std::numeric_limits<double>::infinity();
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  VectorXd sum_wx;
};

template <class Visit>
void draw_prior_chunk(const ChannelConfig& cfg, std::size_t chunk, std::size_t begin, std::size_t end,
                      const RngStream& stream, Visit&& visit) {
  RngStream s = stream.substream(chunk);
  for (std::size_t i = begin; i < end; ++i) {
    visit(sample_sphere_point(cfg.dimension, cfg.epsilon, s.engine()).vector());
  }
}

}  // namespace

ImportanceSample importance_sample(const VectorXd& observation, const ChannelConfig& cfg,
                                   std::uint64_t samples, const RngStream& stream) {
  cfg.validate();
  if (observation.size() != cfg.dimension) throw std::invalid_argument("observation dimension mismatch");
  if (!(cfg.sigma_e > 0.0)) throw std::invalid_argument("importance sampling needs sigma_e > 0");
  ImportanceSample out;
  out.points.reserve(samples);
  out.log_weights.reserve(samples);
  const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  for (std::size_t k = 0; k < chunks; ++k) {
    const std::size_t begin = k * kChunkSize;
    const std::size_t end = std::min<std::size_t>(samples, begin + kChunkSize);
    draw_prior_chunk(cfg, k, begin, end, stream, [&](const VectorXd& x) {
      out.points.push_back(x);
      out.log_weights.push_back(observation_log_likelihood(observation, x, cfg.sigma_e));
    });
  }
  return out;
}

PosteriorMean conditional_mean_estimator(const VectorXd& observation, const ChannelConfig& cfg,
                                         const PosteriorOptions& opts, const RngStream& stream) {
  cfg.validate();
  if (observation.size() != cfg.dimension) throw std::invalid_argument("observation dimension mismatch");
  if (opts.samples < 1) throw std::invalid_argument("posterior samples must be >= 1");

  PosteriorMean result;
  result.samples = opts.samples;
  if (cfg.sigma_e == 0.0) {
    // Noiseless channel: the observation is X itself.
    result.mean = observation;
    result.effective_sample_size = static_cast<double>(opts.samples);
    return result;
  }

  const auto partial = map_chunks<WeightedSums>(
      opts.samples, opts.workers, [&](std::size_t k, std::size_t begin, std::size_t end) {
        std::vector<VectorXd> pts;
        std::vector<double> logs;
        pts.reserve(end - begin);
        logs.reserve(end - begin);
        draw_prior_chunk(cfg, k, begin, end, stream, [&](const VectorXd& x) {
          pts.push_back(x);
          logs.push_back(observation_log_likelihood(observation, x, cfg.sigma_e));
        });
        WeightedSums acc;
        acc.sum_wx = VectorXd::Zero(cfg.dimension);
        acc.max_log = *std::max_element(logs.begin(), logs.end());
        for (std::size_t i = 0; i < pts.size(); ++i) {
          const double w = std::exp(logs[i] - acc.max_log);
          acc.sum_w += w;
          acc.sum_w2 += w * w;
          acc.sum_wx += w * pts[i];
        }
        return acc;
      });

  double global_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : partial) global_max = std::max(global_max, p.max_log);
  double sum_w = 0.0, sum_w2 = 0.0;
  VectorXd sum_wx = VectorXd::Zero(cfg.dimension);
  for (const auto& p : partial) {
    const double scale = std::exp(p.max_log - global_max);
    sum_w += scale * p.sum_w;
    sum_w2 += scale * scale * p.sum_w2;
    sum_wx += scale * p.sum_wx;
  }

  result.mean = sum_wx / sum_w;
  result.effective_sample_size = sum_w * sum_w / sum_w2;
  const double min_ess = opts.min_ess_fraction * static_cast<double>(opts.samples);
  if (result.effective_sample_size < min_ess) {
    std::ostringstream msg;
    msg << "effective sample size " << result.effective_sample_size << " is below the guard " << min_ess
        << "; increase the number of posterior samples";
    throw EstimationError(msg.str());
  }
  return result;
}

std::vector<OpponentStrategy> builtin_strategies(const ChannelConfig& cfg, const PosteriorOptions& posterior) {
  std::vector<OpponentStrategy> out;
  out.push_back({"raw-observation", [](const VectorXd& j, RngStream&) { return j; }});
  out.push_back({"sphere-projected", [eps = cfg.epsilon](const VectorXd& j, RngStream&) -> VectorXd {
                   const double norm = j.norm();
                   if (!(norm > 0.0)) return VectorXd::Zero(j.size());
                   return eps * j / norm;
                 }});
  out.push_back({kConditionalMeanStrategy, [cfg, posterior](const VectorXd& j, RngStream& s) {
                   return conditional_mean_estimator(j, cfg, posterior, s).mean;
                 }});
  out.push_back({"zero-vector", [](const VectorXd& j, RngStream&) -> VectorXd { return VectorXd::Zero(j.size()); }});
  return out;
}

InequalityReport inequality_I_check(const ChannelConfig& cfg, const std::vector<OpponentStrategy>& strategies,
                                    std::uint64_t trials, const RngStream& stream, double z_threshold) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("inequality check needs at least one trial");
  const auto ref_it = std::find_if(strategies.begin(), strategies.end(),
                                   [](const auto& s) { return s.name == kConditionalMeanStrategy; });
  if (ref_it == strategies.end()) throw std::invalid_argument("strategy list must include conditional-mean");
  const std::size_t ref = static_cast<std::size_t>(ref_it - strategies.begin());
  const std::size_t count = strategies.size();

  // One row of squared errors per trial.
  const auto chunks = map_chunks<std::vector<double>>(
      trials, cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<double> errors;
        errors.reserve((end - begin) * count);
        for (std::size_t t = begin; t < end; ++t) {
          RngStream trial = stream.substream(t);
          RngStream channel = trial.substream(0);
          const SpherePointd x = sample_sphere_point(cfg.dimension, cfg.epsilon, channel.engine());
          VectorXd j(cfg.dimension);
          for (Eigen::Index i = 0; i < cfg.dimension; ++i) j(i) = x.vector()(i) + cfg.sigma_e * channel.normal();
          for (std::size_t s = 0; s < count; ++s) {
            RngStream strategy_stream = trial.substream(1 + s);
            const VectorXd guess = strategies[s].estimate(j, strategy_stream);
            if (guess.size() != cfg.dimension) throw std::invalid_argument("strategy returned wrong dimension");
            errors.push_back((x.vector() - guess).squaredNorm());
          }
        }
        return errors;
      });

  std::vector<std::vector<double>> per_strategy(count), excess(count);
  for (const auto& chunk : chunks) {
    for (std::size_t row = 0; row * count < chunk.size(); ++row) {
      const double* e = chunk.data() + row * count;
      for (std::size_t s = 0; s < count; ++s) {
        per_strategy[s].push_back(e[s]);
        excess[s].push_back(e[s] - e[ref]);
      }
    }
  }

  InequalityReport report;
  report.trials = trials;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < count; ++s) {
    StrategyScore score;
    score.name = strategies[s].name;
    double sum = 0.0, sum_ex = 0.0;
    for (double v : per_strategy[s]) sum += v;
    for (double v : excess[s]) sum_ex += v;
    score.mean_sq_error = sum / static_cast<double>(trials);
    score.std_error = standard_error(per_strategy[s]);
    score.excess_over_reference = sum_ex / static_cast<double>(trials);
    score.excess_se = standard_error(excess[s]);
    if (score.mean_sq_error < best) {
      best = score.mean_sq_error;
      report.argmin = score.name;
    }
    if (-score.excess_over_reference > z_threshold * score.excess_se && s != ref) report.holds = false;
    report.scores.push_back(std::move(score));
  }
  return report;
}

}  // namespace secadv
