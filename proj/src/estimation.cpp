#include "secadv/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "secadv/binarizer.hpp"

namespace secadv {

std::string_view to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::angle_product: return "angle-product";
    case SamplingMode::haar: return "haar";
  }
  return "unknown";
}

SamplingMode parse_sampling_mode(std::string_view name) {
  if (name == "angle-product") return SamplingMode::angle_product;
  if (name == "haar") return SamplingMode::haar;
  throw std::invalid_argument("unknown sampling mode '" + std::string(name) +
                              "' (expected angle-product or haar)");
}

std::string_view to_string(OrderVerdict verdict) {
  switch (verdict) {
    case OrderVerdict::agree: return "agree";
    case OrderVerdict::disagree: return "disagree";
    case OrderVerdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

std::string_view to_string(IsotropyVerdict verdict) {
  return verdict == IsotropyVerdict::consistent ? "consistent" : "inconsistent";
}

namespace {

void check_same_sphere(const SpherePointd& a, const SpherePointd& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("points differ in dimension");
  if (std::abs(a.radius() - b.radius()) > 1e-12) {
    throw std::invalid_argument("points lie on spheres of different radius");
  }
}

PhiEstimate make_estimate(double distance, std::uint64_t ones, std::uint64_t samples,
                          SamplingMode mode) {
  PhiEstimate e;
  e.distance = distance;
  e.samples = samples;
  e.mode = mode;
  e.mean = static_cast<double>(ones) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(samples));
  return e;
}

}  // namespace

std::uint64_t count_xor_ones(const SpherePointd& x, const SpherePointd& y, std::size_t begin,
                             std::size_t end, SamplingMode mode, RngStream& stream) {
  const Eigen::Index n = x.dimension();
  std::uint64_t ones = 0;
  VectorXd rx(n), ry(n);
  for (std::size_t i = begin; i < end; ++i) {
    if (mode == SamplingMode::angle_product) {
      const auto plan = plan_from_angles(sample_angles(n, stream.engine()));
      rx = x.vector();
      ry = y.vector();
      plan.apply_in_place(rx);
      plan.apply_in_place(ry);
    } else {
      const auto rot = sample_haar_rotation(n, stream.engine());
      rx.noalias() = rot.matrix() * x.vector();
      ry.noalias() = rot.matrix() * y.vector();
    }
    ones += static_cast<std::uint64_t>(to_int(checkerboard_parity(rx) ^ checkerboard_parity(ry)));
  }
  return ones;
}

PhiEstimate estimate_phi(const SpherePointd& x, const SpherePointd& y, const EstimatorOptions& opts,
                         const RngStream& stream) {
  check_same_sphere(x, y);
  if (opts.samples < 1) throw std::invalid_argument("samples must be >= 1");

  const auto partial = map_chunks<std::uint64_t>(
      opts.samples, opts.workers, [&](std::size_t k, std::size_t begin, std::size_t end) {
        RngStream chunk = stream.substream(k);
        return count_xor_ones(x, y, begin, end, opts.mode, chunk);
      });
  std::uint64_t ones = 0;
  for (auto c : partial) ones += c;
  return make_estimate((x.vector() - y.vector()).norm(), ones, opts.samples, opts.mode);
}

double phi_oracle_2d(double epsilon, double d, std::size_t grid) {
  check_epsilon(epsilon);
  if (!(d >= 0.0 && d <= 2.0 * epsilon)) throw std::invalid_argument("distance must lie in [0, 2 epsilon]");
  if (grid < 1) throw std::invalid_argument("oracle grid must be non-empty");

  // Fixed pair: x at angle 0, y at angular separation alpha.
  const double alpha = 2.0 * std::asin(std::min(1.0, d / (2.0 * epsilon)));
  const double x0 = epsilon, x1 = 0.0;
  const double y0 = epsilon * std::cos(alpha), y1 = epsilon * std::sin(alpha);

  // Every coordinate stays in (-1, 1), so the cell colour is the parity of
  // the number of negative coordinates.
  auto colour = [](double a, double b) { return (a < 0.0) != (b < 0.0); };

  std::size_t differ = 0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = (static_cast<double>(i) + 0.5) * step;
    const double c = std::cos(t), s = std::sin(t);
    const bool bx = colour(c * x0 + s * x1, -s * x0 + c * x1);
    const bool by = colour(c * y0 + s * y1, -s * y0 + c * y1);
    differ += (bx != by) ? 1 : 0;
  }
  return static_cast<double>(differ) / static_cast<double>(grid);
}

PhiCurve phi_curve(Eigen::Index n, double epsilon, const std::vector<double>& distances,
                   const EstimatorOptions& opts, const RngStream& stream) {
  check_epsilon(epsilon);
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = distances[i];
    if (!(d >= 0.0 && d <= 2.0 * epsilon)) throw std::invalid_argument("distances must lie in [0, 2 epsilon]");
    if (i > 0 && !(d > distances[i - 1])) throw std::invalid_argument("distances must be strictly increasing");
  }

  PhiCurve curve;
  curve.epsilon = epsilon;
  curve.dimension = n;
  curve.points.reserve(distances.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    RngStream point_stream = stream.substream(i);
    RngStream pair_stream = point_stream.substream(0);
    auto [x, y] = pair_at_distance(n, epsilon, distances[i], pair_stream.engine());
    PhiEstimate e = estimate_phi(x, y, opts, point_stream.substream(1));
    e.distance = distances[i];
    curve.points.push_back(e);
  }
  return curve;
}

double two_proportion_z(const PhiEstimate& a, const PhiEstimate& b) {
  const double na = static_cast<double>(a.samples);
  const double nb = static_cast<double>(b.samples);
  const double pooled = (a.mean * na + b.mean * nb) / (na + nb);
  const double var = pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb);
  if (!(var > 0.0)) return 0.0;
  return std::abs(a.mean - b.mean) / std::sqrt(var);
}

IsotropyReport isotropy_test(Eigen::Index n, double epsilon, double d, std::size_t num_pairs,
                             const EstimatorOptions& opts, const RngStream& stream,
                             double z_threshold) {
  if (num_pairs < 2) throw std::invalid_argument("isotropy test needs at least 2 pairs");
  check_epsilon(epsilon);

  IsotropyReport report;
  report.distance = d;
  report.z_threshold = z_threshold;
  report.estimates.reserve(num_pairs);
  for (std::size_t i = 0; i < num_pairs; ++i) {
    RngStream pair_stream = stream.substream(i);
    RngStream geometry_stream = pair_stream.substream(0);
    auto [x, y] = pair_at_distance(n, epsilon, d, geometry_stream.engine());
    PhiEstimate e = estimate_phi(x, y, opts, pair_stream.substream(1));
    e.distance = d;
    report.estimates.push_back(e);
  }
  for (std::size_t i = 0; i < num_pairs; ++i)
    for (std::size_t j = i + 1; j < num_pairs; ++j)
      report.max_pairwise_z =
          std::max(report.max_pairwise_z, two_proportion_z(report.estimates[i], report.estimates[j]));
  report.verdict = report.max_pairwise_z <= z_threshold ? IsotropyVerdict::consistent
                                                        : IsotropyVerdict::inconsistent;
  return report;
}

Lemma1Result lemma1_order_check(const SpherePointd& x, const SpherePointd& y, const SpherePointd& z,
                                const EstimatorOptions& opts, const RngStream& stream,
                                double z_threshold) {
  check_same_sphere(x, y);
  check_same_sphere(x, z);
  const double eps = x.radius();
  Lemma1Result r;
  r.d_xy = (x.vector() - y.vector()).norm();
  r.d_xz = (x.vector() - z.vector()).norm();
  const double slack = 1e-12;
  if (r.d_xy > eps + slack || r.d_xz > eps + slack) {
    throw std::invalid_argument("order check needs both distances within [0, epsilon]");
  }
  r.phi_xy = estimate_phi(x, y, opts, stream.substream(0));
  r.phi_xz = estimate_phi(x, z, opts, stream.substream(1));

  const double se = std::hypot(r.phi_xy.std_error, r.phi_xz.std_error);
  const double dphi = r.phi_xz.mean - r.phi_xy.mean;
  const double ddist = r.d_xz - r.d_xy;
  const bool phi_tied = std::abs(dphi) <= z_threshold * se;
  const bool dist_tied = std::abs(ddist) <= 1e-12;

  if (dist_tied) {
    r.verdict = phi_tied ? OrderVerdict::agree : OrderVerdict::disagree;
  } else if (phi_tied) {
    r.verdict = OrderVerdict::indeterminate;
  } else {
    r.verdict = ((ddist > 0) == (dphi > 0)) ? OrderVerdict::agree : OrderVerdict::disagree;
  }
  return r;
}

}  // namespace secadv
