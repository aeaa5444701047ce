#include "secadv/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "secadv/estimation.hpp"
#include "secadv/scenario.hpp"

namespace secadv::cli {

using Json = nlohmann::ordered_json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommonArgs {
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string format = "csv";
  unsigned workers = default_workers();
};

struct EstimationArgs {
  long dim = 3;
  double epsilon = 0.1;
  std::uint64_t samples = kDefaultSamples;
  std::string mode = "angle-product";
  double z_threshold = kDefaultZThreshold;
};

struct PhiCurveArgs {
  EstimationArgs est;
  std::string distances;
};

struct IsotropyArgs {
  EstimationArgs est;
  double distance = 0.05;
  std::size_t pairs = 8;
};

struct Lemma1Args {
  EstimationArgs est;
  std::size_t triples = 100;
};

struct ScenarioArgs {
  long dim = 3;
  double epsilon = 0.1;
  double sigma_b = 0.01;
  double sigma_e = 0.05;
  std::uint64_t trials = 10'000;
  std::uint64_t thetas_per_trial = 100;
  std::string mode = "angle-product";
  double z_threshold = kDefaultZThreshold;
  bool check_inequality = false;
  std::uint64_t posterior_samples = 20'000;
  std::uint64_t inequality_trials = 2'000;
  double min_ess_fraction = 0.01;
};

struct OracleArgs {
  double epsilon = 0.1;
  std::string distances;
  std::size_t grid = std::size_t{1} << 21;
};

// ---- output helpers -------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) { row(std::vector<std::string>(header)); }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += csv_field(fields[i]);
    }
    text_ += '\n';
  }

  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

Json estimate_json(const PhiEstimate& e) {
  return Json{{"d", e.distance},
              {"mean", e.mean},
              {"std_error", e.std_error},
              {"samples", e.samples},
              {"mode", std::string(to_string(e.mode))}};
}

Json document(Json config, Json results, Json verdicts) {
  Json doc;
  doc["config"] = std::move(config);
  doc["results"] = std::move(results);
  doc["verdicts"] = std::move(verdicts);
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

// ---- validation -----------------------------------------------------------

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void validate_common(const CommonArgs& c) {
  require(c.format == "csv" || c.format == "json", "--format must be csv or json");
  require(c.workers >= 1, "--workers must be >= 1");
}

void validate_epsilon(double eps) {
  require(eps > 0.0 && eps < 1.0, "--epsilon: ε must lie in (0,1), got " + format_number(eps));
}

SamplingMode validate_mode(const std::string& mode) {
  try {
    return parse_sampling_mode(mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--mode: ") + e.what());
  }
}

void validate_estimation(const EstimationArgs& a) {
  require(a.dim >= 2, "--dim must be >= 2");
  validate_epsilon(a.epsilon);
  require(a.samples >= 1, "--samples must be >= 1");
  validate_mode(a.mode);
  require(a.z_threshold > 0.0 && std::isfinite(a.z_threshold), "--z-threshold must be positive");
}

std::vector<double> validated_distances(const std::string& spec, double epsilon) {
  std::vector<double> d;
  try {
    d = parse_distance_list(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--distances: ") + e.what());
  }
  require(!d.empty(), "--distances must not be empty");
  for (std::size_t i = 0; i < d.size(); ++i) {
    require(d[i] >= 0.0 && d[i] <= 2.0 * epsilon, "--distances must lie in [0, 2ε]");
    if (i) require(d[i] > d[i - 1], "--distances must be strictly increasing");
  }
  return d;
}

Json estimation_config(const char* command, const EstimationArgs& a, const CommonArgs& c) {
  return Json{{"command", command},   {"dim", a.dim},           {"epsilon", a.epsilon},
              {"samples", a.samples}, {"mode", a.mode},         {"z_threshold", a.z_threshold},
              {"seed", c.seed},       {"format", c.format},     {"out", c.out}};
}

EstimatorOptions estimator_options(const EstimationArgs& a, const CommonArgs& c) {
  EstimatorOptions o;
  o.samples = a.samples;
  o.mode = parse_sampling_mode(a.mode);
  o.workers = c.workers;
  return o;
}

// ---- subcommands ----------------------------------------------------------

std::string cmd_phi_curve(const PhiCurveArgs& a, const CommonArgs& c) {
  validate_estimation(a.est);
  const auto distances = validated_distances(a.distances, a.est.epsilon);
  const PhiCurve curve = phi_curve(a.est.dim, a.est.epsilon, distances, estimator_options(a.est, c),
                                   RngStream(c.seed));

  // Adjacent-point monotonicity, reported only inside [0, epsilon].
  std::size_t decreases = 0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i - 1];
    const auto& q = curve.points[i];
    if (q.distance > a.est.epsilon) break;
    const double band = a.est.z_threshold * std::hypot(p.std_error, q.std_error);
    if (q.mean < p.mean - band) ++decreases;
  }

  if (c.format == "csv") {
    Csv csv{"d", "mean", "std_error", "samples", "mode"};
    for (const auto& p : curve.points)
      csv.row({num(p.distance), num(p.mean), num(p.std_error), num(p.samples), std::string(to_string(p.mode))});
    return csv.str();
  }
  Json config = estimation_config("phi-curve", a.est, c);
  config["distances"] = distances;
  Json results = Json::array();
  for (const auto& p : curve.points) results.push_back(estimate_json(p));
  Json verdicts{{"significant_decreases_within_epsilon", decreases},
                {"locally_nondecreasing", decreases == 0}};
  return dump(document(std::move(config), std::move(results), std::move(verdicts)));
}

std::string cmd_isotropy(const IsotropyArgs& a, const CommonArgs& c) {
  validate_estimation(a.est);
  require(a.pairs >= 2, "--pairs must be >= 2");
  require(a.distance >= 0.0 && a.distance <= 2.0 * a.est.epsilon, "--distance must lie in [0, 2ε]");
  const IsotropyReport r = isotropy_test(a.est.dim, a.est.epsilon, a.distance, a.pairs,
                                         estimator_options(a.est, c), RngStream(c.seed), a.est.z_threshold);
  const std::string verdict(to_string(r.verdict));
  if (c.format == "csv") {
    Csv csv{"pair", "d", "mean", "std_error", "samples", "mode", "max_pairwise_z", "verdict"};
    for (std::size_t i = 0; i < r.estimates.size(); ++i) {
      const auto& e = r.estimates[i];
      csv.row({num(std::uint64_t{i}), num(e.distance), num(e.mean), num(e.std_error), num(e.samples),
               std::string(to_string(e.mode)), num(r.max_pairwise_z), verdict});
    }
    return csv.str();
  }
  Json config = estimation_config("isotropy", a.est, c);
  config["distance"] = a.distance;
  config["pairs"] = a.pairs;
  Json results = Json::array();
  for (const auto& e : r.estimates) results.push_back(estimate_json(e));
  Json verdicts{{"max_pairwise_z", r.max_pairwise_z}, {"z_threshold", r.z_threshold}, {"verdict", verdict}};
  return dump(document(std::move(config), std::move(results), std::move(verdicts)));
}

std::string cmd_lemma1(const Lemma1Args& a, const CommonArgs& c, std::ostream& err) {
  validate_estimation(a.est);
  require(a.triples >= 1, "--triples must be >= 1");
  const auto opts = estimator_options(a.est, c);
  const RngStream root(c.seed);
  const double eps = a.est.epsilon;

  std::vector<Lemma1Result> rows;
  std::map<std::string, std::size_t> summary{{"agree", 0}, {"disagree", 0}, {"indeterminate", 0}};
  for (std::size_t t = 0; t < a.triples; ++t) {
    RngStream triple = root.substream(t);
    RngStream geom = triple.substream(0);
    auto& gen = geom.engine();
    const SpherePointd x = sample_sphere_point(a.est.dim, eps, gen);
    std::uniform_real_distribution<double> dist(0.0, eps);
    const double d_xy = dist(gen);
    const double d_xz = dist(gen);
    const SpherePointd y = point_at_distance(x, d_xy, gen);
    const SpherePointd z = point_at_distance(x, d_xz, gen);
    rows.push_back(lemma1_order_check(x, y, z, opts, triple.substream(1), a.est.z_threshold));
    ++summary[std::string(to_string(rows.back().verdict))];
  }

  if (c.format == "csv") {
    Csv csv{"triple", "d_xy", "d_xz", "phi_xy", "phi_xy_se", "phi_xz", "phi_xz_se", "verdict"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      csv.row({num(std::uint64_t{i}), num(r.d_xy), num(r.d_xz), num(r.phi_xy.mean), num(r.phi_xy.std_error),
               num(r.phi_xz.mean), num(r.phi_xz.std_error), std::string(to_string(r.verdict))});
    }
    err << "lemma1: agree=" << summary["agree"] << " disagree=" << summary["disagree"]
        << " indeterminate=" << summary["indeterminate"] << "\n";
    return csv.str();
  }
  Json config = estimation_config("lemma1", a.est, c);
  config["triples"] = a.triples;
  Json results = Json::array();
  for (const auto& r : rows) {
    results.push_back(Json{{"d_xy", r.d_xy},
                           {"d_xz", r.d_xz},
                           {"phi_xy", estimate_json(r.phi_xy)},
                           {"phi_xz", estimate_json(r.phi_xz)},
                           {"verdict", std::string(to_string(r.verdict))}});
  }
  Json verdicts{{"agree", summary["agree"]},
                {"disagree", summary["disagree"]},
                {"indeterminate", summary["indeterminate"]}};
  return dump(document(std::move(config), std::move(results), std::move(verdicts)));
}

std::string cmd_scenario(const ScenarioArgs& a, const CommonArgs& c) {
  require(a.dim >= 2, "--dim must be >= 2");
  validate_epsilon(a.epsilon);
  require(a.sigma_b >= 0.0 && std::isfinite(a.sigma_b), "--sigma-b must be >= 0");
  require(a.sigma_e >= 0.0 && std::isfinite(a.sigma_e), "--sigma-e must be >= 0");
  require(a.trials >= 1, "--trials must be >= 1");
  require(a.thetas_per_trial >= 1, "--thetas-per-trial must be >= 1");
  require(a.z_threshold > 0.0 && std::isfinite(a.z_threshold), "--z-threshold must be positive");
  require(a.posterior_samples >= 1, "--posterior-samples must be >= 1");
  require(a.inequality_trials >= 1, "--inequality-trials must be >= 1");
  require(a.min_ess_fraction >= 0.0 && a.min_ess_fraction <= 1.0, "--min-ess-fraction must lie in [0, 1]");

  ChannelConfig cfg;
  cfg.dimension = a.dim;
  cfg.epsilon = a.epsilon;
  cfg.sigma_b = a.sigma_b;
  cfg.sigma_e = a.sigma_e;
  cfg.trials = a.trials;
  cfg.thetas_per_trial = a.thetas_per_trial;
  cfg.mode = validate_mode(a.mode);
  cfg.seed = c.seed;
  cfg.workers = c.workers;

  const ScenarioReport r = run_scenario(cfg, a.z_threshold);

  std::optional<InequalityReport> ineq;
  if (a.check_inequality) {
    PosteriorOptions post;
    post.samples = a.posterior_samples;
    post.min_ess_fraction = a.min_ess_fraction;
    post.workers = 1;
    // Inequality trials draw from a stream disjoint from the scenario trials.
    ineq = inequality_I_check(cfg, builtin_strategies(cfg, post), a.inequality_trials,
                              RngStream(c.seed).substream(std::numeric_limits<std::uint64_t>::max()),
                              a.z_threshold);
  }

  const auto& adv = r.advantage;
  if (c.format == "csv") {
    Csv csv{"metric", "value"};
    auto put = [&](const std::string& k, const std::string& v) { csv.row({k, v}); };
    put("mean_sq_dist_xy", num(r.mean_sq_dist_xy));
    put("mean_sq_dist_xz", num(r.mean_sq_dist_xz));
    put("sq_dist_diff_se", num(r.sq_dist_diff_se));
    put("p_xy", num(adv.p_xy));
    put("p_xy_se", num(r.p_xy_se));
    put("p_xz", num(adv.p_xz));
    put("p_xz_se", num(r.p_xz_se));
    put("h_x_given_y", num(adv.h_x_given_y));
    put("h_x_given_z", num(adv.h_x_given_z));
    put("ck_advantage", num(adv.ck_advantage));
    put("ck_advantage_se", num(r.ck_advantage_se));
    put("wyner_applicable", adv.wyner_applicable ? "true" : "false");
    put("ordering_verdict", std::string(to_string(adv.ordering_verdict)));
    put("chain_verdict", std::string(to_string(r.chain_verdict)));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
          put("count_" + std::to_string(x) + std::to_string(y) + std::to_string(z), num(r.joint.counts[x][y][z]));
    if (ineq) {
      for (const auto& s : ineq->scores) {
        put("strategy." + s.name + ".mean_sq_error", num(s.mean_sq_error));
        put("strategy." + s.name + ".std_error", num(s.std_error));
        put("strategy." + s.name + ".excess_over_conditional_mean", num(s.excess_over_reference));
        put("strategy." + s.name + ".excess_se", num(s.excess_se));
      }
      put("inequality_argmin", ineq->argmin);
      put("inequality_holds", ineq->holds ? "true" : "false");
    }
    return csv.str();
  }

  Json config{{"command", "scenario"},
              {"dim", a.dim},
              {"epsilon", a.epsilon},
              {"sigma_b", a.sigma_b},
              {"sigma_e", a.sigma_e},
              {"trials", a.trials},
              {"thetas_per_trial", a.thetas_per_trial},
              {"mode", a.mode},
              {"z_threshold", a.z_threshold},
              {"check_inequality_I", a.check_inequality},
              {"posterior_samples", a.posterior_samples},
              {"inequality_trials", a.inequality_trials},
              {"min_ess_fraction", a.min_ess_fraction},
              {"seed", c.seed},
              {"format", c.format},
              {"out", c.out}};
  Json counts = Json::array();
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        counts.push_back(Json{{"x", x}, {"y", y}, {"z", z}, {"count", r.joint.counts[x][y][z]}});
  Json results{{"mean_sq_dist_xy", r.mean_sq_dist_xy},
               {"mean_sq_dist_xz", r.mean_sq_dist_xz},
               {"sq_dist_diff_se", r.sq_dist_diff_se},
               {"joint", counts},
               {"advantage",
                Json{{"p_xy", adv.p_xy},
                     {"p_xy_se", r.p_xy_se},
                     {"p_xz", adv.p_xz},
                     {"p_xz_se", r.p_xz_se},
                     {"h_x_given_y", adv.h_x_given_y},
                     {"h_x_given_z", adv.h_x_given_z},
                     {"ck_advantage", adv.ck_advantage},
                     {"ck_advantage_se", r.ck_advantage_se},
                     {"wyner_applicable", adv.wyner_applicable}}},
               {"warnings", r.warnings}};
  Json verdicts{{"ordering_verdict", std::string(to_string(adv.ordering_verdict))},
                {"distance_sign", r.distance_sign},
                {"entropy_sign", r.entropy_sign},
                {"chain_verdict", std::string(to_string(r.chain_verdict))}};
  if (ineq) {
    Json table = Json::array();
    for (const auto& s : ineq->scores) {
      table.push_back(Json{{"strategy", s.name},
                           {"mean_sq_error", s.mean_sq_error},
                           {"std_error", s.std_error},
                           {"excess_over_conditional_mean", s.excess_over_reference},
                           {"excess_se", s.excess_se}});
    }
    results["inequality_I"] = Json{{"trials", ineq->trials}, {"strategies", table}};
    verdicts["inequality_I_argmin"] = ineq->argmin;
    verdicts["inequality_I_holds"] = ineq->holds;
  }
  return dump(document(std::move(config), std::move(results), std::move(verdicts)));
}

std::string cmd_oracle_2d(const OracleArgs& a, const CommonArgs& c) {
  validate_epsilon(a.epsilon);
  require(a.grid >= 1, "--grid must be >= 1");
  const auto distances = validated_distances(a.distances, a.epsilon);
  std::vector<double> phi;
  phi.reserve(distances.size());
  for (double d : distances) phi.push_back(phi_oracle_2d(a.epsilon, d, a.grid));

  if (c.format == "csv") {
    Csv csv{"d", "phi"};
    for (std::size_t i = 0; i < distances.size(); ++i) csv.row({num(distances[i]), num(phi[i])});
    return csv.str();
  }
  Json config{{"command", "oracle-2d"}, {"epsilon", a.epsilon}, {"distances", distances},
              {"grid", a.grid},         {"seed", c.seed},       {"format", c.format},
              {"out", c.out}};
  Json results = Json::array();
  for (std::size_t i = 0; i < distances.size(); ++i) results.push_back(Json{{"d", distances[i]}, {"phi", phi[i]}});
  return dump(document(std::move(config), std::move(results), Json::object()));
}

void write_output(const std::string& text, const CommonArgs& c, std::ostream& out) {
  if (c.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file " + c.out);
  f << text;
  if (!f) throw std::runtime_error("failed writing output file " + c.out);
}

void add_common(CLI::App* sub, CommonArgs& c) {
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--out", c.out, "output path, '-' for stdout")->capture_default_str();
  sub->add_option("--format", c.format, "csv or json")->capture_default_str();
  sub->add_option("--workers", c.workers, "worker threads (output does not depend on it)");
}

void add_estimation(CLI::App* sub, EstimationArgs& e) {
  sub->add_option("--dim", e.dim, "dimension n")->capture_default_str();
  sub->add_option("--epsilon", e.epsilon, "sphere radius, in (0,1)")->capture_default_str();
  sub->add_option("--samples", e.samples, "randomizer draws per estimate")->capture_default_str();
  sub->add_option("--mode", e.mode, "angle-product or haar")->capture_default_str();
  sub->add_option("--z-threshold", e.z_threshold, "verdict threshold in standard errors")->capture_default_str();
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_distance_list(const std::string& spec) {
  auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
  };

  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw std::invalid_argument("range must be min:max:steps");
    const double lo = to_double(parts[0]);
    const double hi = to_double(parts[1]);
    const double steps_d = to_double(parts[2]);
    if (!(steps_d >= 1.0) || steps_d != std::floor(steps_d)) throw std::invalid_argument("steps must be a positive integer");
    const auto steps = static_cast<std::size_t>(steps_d);
    if (steps == 1) return {lo};
    if (!(hi > lo)) throw std::invalid_argument("range needs max > min");
    for (std::size_t i = 0; i < steps; ++i) {
      out.push_back(i + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    return out;
  }
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-to-entropy advantage experiments"};
  app.require_subcommand(1);

  CommonArgs common;
  PhiCurveArgs phi;
  IsotropyArgs iso;
  Lemma1Args lemma;
  ScenarioArgs scen;
  OracleArgs oracle;

  auto* s_phi = app.add_subcommand("phi-curve", "estimate phi over a grid of distances");
  add_common(s_phi, common);
  add_estimation(s_phi, phi.est);
  s_phi->add_option("--distances", phi.distances, "min:max:steps or d1,d2,...")->required();

  auto* s_iso = app.add_subcommand("isotropy", "compare phi across random pairs at one distance");
  add_common(s_iso, common);
  add_estimation(s_iso, iso.est);
  s_iso->add_option("--distance", iso.distance, "pair distance")->capture_default_str();
  s_iso->add_option("--pairs", iso.pairs, "number of random pairs (>= 2)")->capture_default_str();

  auto* s_lemma = app.add_subcommand("lemma1", "check the distance order against the phi order");
  add_common(s_lemma, common);
  add_estimation(s_lemma, lemma.est);
  s_lemma->add_option("--triples", lemma.triples, "number of random triples")->capture_default_str();

  auto* s_scen = app.add_subcommand("scenario", "end-to-end wiretap simulation");
  add_common(s_scen, common);
  s_scen->add_option("--dim", scen.dim)->capture_default_str();
  s_scen->add_option("--epsilon", scen.epsilon)->capture_default_str();
  s_scen->add_option("--sigma-b", scen.sigma_b, "legitimate channel noise")->capture_default_str();
  s_scen->add_option("--sigma-e", scen.sigma_e, "eavesdropper channel noise")->capture_default_str();
  s_scen->add_option("--trials", scen.trials)->capture_default_str();
  s_scen->add_option("--thetas-per-trial", scen.thetas_per_trial)->capture_default_str();
  s_scen->add_option("--mode", scen.mode)->capture_default_str();
  s_scen->add_option("--z-threshold", scen.z_threshold)->capture_default_str();
  s_scen->add_flag("--check-inequality-I", scen.check_inequality, "append the opponent strategy table");
  s_scen->add_option("--posterior-samples", scen.posterior_samples)->capture_default_str();
  s_scen->add_option("--inequality-trials", scen.inequality_trials)->capture_default_str();
  s_scen->add_option("--min-ess-fraction", scen.min_ess_fraction)->capture_default_str();

  auto* s_oracle = app.add_subcommand("oracle-2d", "quadrature values of phi for n = 2");
  add_common(s_oracle, common);
  s_oracle->add_option("--epsilon", oracle.epsilon)->capture_default_str();
  s_oracle->add_option("--distances", oracle.distances, "min:max:steps or d1,d2,...")->required();
  s_oracle->add_option("--grid", oracle.grid, "quadrature points")->capture_default_str();

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    validate_common(common);
    std::string text;
    if (*s_phi) text = cmd_phi_curve(phi, common);
    else if (*s_iso) text = cmd_isotropy(iso, common);
    else if (*s_lemma) text = cmd_lemma1(lemma, common, err);
    else if (*s_scen) text = cmd_scenario(scen, common);
    else text = cmd_oracle_2d(oracle, common);
    write_output(text, common, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EstimationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace secadv::cli
