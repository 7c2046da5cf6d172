#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigpast/bigpast.hpp"
#include "bigpast/priors.hpp"
#include "bigpast/skewt.hpp"

namespace bigpast {

// ------------------------------------------------------------------ types --

struct LabeledSubject {
  double value = 0.0;
  bool positive = false;  // true when the ground truth is abnormal
};

// How abnormal (positive) subjects are produced in mixture experiments.
enum class AltSource { TailUniform, ShiftedNull };

struct MixtureSpec {
  SkewTParams truth;
  double c_ratio = 1.0;  // fraction of subjects from the control distribution
  AltSource alternative_source = AltSource::TailUniform;
  double shift_offset = 0.0;  // used by ShiftedNull
  double beta = 0.05;
};

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  void add(bool reject, bool positive);
  std::size_t total() const { return tp + fp + tn + fn; }
  double fpr() const;  // fp / (fp + tn)
  double tpr() const;  // tp / (tp + fn)
  double acc() const;  // (tp + tn) / total
  double fdr() const;  // fp / (tp + fp)
};

// --------------------------------------------------- quantile acceleration --

// Piecewise-linear inverse CDF of a fixed skew t, anchored on exact
// quantiles at the knot probabilities so that interpolated values never
// cross a knot boundary. Probabilities outside the table fall back to the
// exact quantile.
class QuantileMap {
 public:
  explicit QuantileMap(const SkewTParams& p,
                       std::vector<double> knots = {},
                       std::size_t cells_per_segment = 64);

  double operator()(double u) const;
  const SkewTParams& params() const { return params_; }

 private:
  SkewTParams params_;
  std::vector<double> us_;
  std::vector<double> xs_;
};

// ------------------------------------------------------ subject generation --

// S1/S2 tail scheme: k1 negatives uniform on the in-between bands
// (q_{beta/2}, q_beta] and [q_{1-beta}, q_{1-beta/2}), and k2 positives on
// the rejection tails beyond q_{beta/2} and q_{1-beta/2}, drawn uniform in
// probability and mapped through the quantile function. Negatives first,
// then positives.
std::vector<LabeledSubject> gen_subjects_tail_uniform(
    const SkewTParams& truth, std::size_t k1, std::size_t k2,
    std::uint64_t seed, double beta = 0.05, const QuantileMap* qmap = nullptr);

// c:d mixture: c-fraction negatives drawn from the truth itself, d-fraction
// positives from the truth's rejection region at beta (probability-uniform
// over the tail mass, clipped at the 0.001 quantile) or from a shifted
// copy of the truth when the spec selects ShiftedNull.
std::vector<LabeledSubject> gen_subjects_ratio(
    const SkewTParams& truth, std::size_t c, std::size_t d, Alternative alt,
    std::uint64_t seed, double beta = 0.05,
    AltSource source = AltSource::TailUniform, double shift_offset = 0.0,
    const QuantileMap* qmap = nullptr);

// Band scheme: negatives uniform on the retention band of the truth,
// positives uniform on the rejection tails clipped at the 0.001 and 0.999
// quantiles (two-sided tails weighted by length).
std::vector<LabeledSubject> gen_subjects_central_band(
    const SkewTParams& truth, std::size_t c, std::size_t d, Alternative alt,
    std::uint64_t seed, double beta = 0.05);

// ----------------------------------------------------- distances & checks --

// Moment-matched normal (mu, sigma^2); requires nu > 2.
std::pair<double, double> matched_normal(const SkewTParams& p);

using Density = std::function<double(double)>;

// Total variation 0.5 * integral |f - g| and symmetrized KL divergence,
// both over the real line by adaptive quadrature (absolute tolerance 1e-4).
double tv_distance(const Density& f, const Density& g);
double kl_symmetric(const Density& f, const Density& g);

struct SigmaNuCheck {
  double nu = 0.0;
  double sigma = 0.0;       // published polynomial value
  double tv = 0.0;          // TV between exact and approximate densities
  double approx_mass = 0.0; // integral of the approximation, should be 1
};

// Validates the published sigma_nu polynomial: TV between
// t(z|nu) T(z|nu)^{-1/2} (1-T(z|nu))^{-1/2} / pi and t(z/sigma|nu)/sigma.
std::vector<SigmaNuCheck> sigma_nu_validation(const std::vector<double>& nu_grid);

// TV at an arbitrary trial scale, used to compare the published value
// against other candidate scales.
double sigma_nu_trial_tv(double nu, double sigma);

// -------------------------------------------------------- experiment sweep --

enum class Scheme { RatioTruthTail, RatioCentralBand, TailUniform };

struct ExperimentConfig {
  SkewTParams truth;
  std::vector<Method> methods;
  std::vector<std::size_t> n_values = {100};

  Scheme scheme = Scheme::RatioTruthTail;
  double c_ratio = 1.0;               // ratio schemes
  std::size_t subjects_per_rep = 100; // ratio schemes
  std::size_t k1 = 1000, k2 = 1000;   // tail-uniform scheme
  AltSource alternative_source = AltSource::TailUniform;
  double shift_offset = 0.0;

  Alternative alt = Alternative::TwoSided;
  double beta = 0.05;
  std::size_t replications = 100;

  int mh_m0 = 5000;
  double mh_burn_in = 0.4;
  double mh_step = 0.5;
  std::size_t mh_s = 100;
  PriorKind prior = PriorKind::jeffreys(1.0);
  std::size_t cg_draws = 10000;

  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct MethodRow {
  Method method = Method::MH;
  std::size_t n = 0;
  Confusion totals;          // counts summed over replications
  double fpr = 0.0, tpr = 0.0, acc = 0.0, fdr = 0.0;  // per-rep means
  std::size_t reps_used = 0;
};

struct ExperimentReport {
  std::vector<MethodRow> rows;
  std::size_t replications = 0;
  std::size_t failures = 0;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
};

// Runs the replication sweep: per replication, draw a control sample and a
// subject panel, compute each method's decision interval once, and tally
// decisions by interval membership. Fails only when more than 1% of
// replications throw.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// --------------------------------------------------- estimator comparison --

enum class EstimatorKind {
  MLE,
  MapJeffreysC0,
  MapJeffreysC1,
  MapBranco,
  MapDette,
  MapUniform,
};

struct EstimatorStudyConfig {
  SkewTParams truth;
  std::size_t n = 500;
  std::size_t replications = 100;
  std::vector<EstimatorKind> estimators;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct EstimatorStudyRow {
  EstimatorKind estimator = EstimatorKind::MLE;
  double mad_alpha = 0.0, mad_nu = 0.0, mad_xi = 0.0, mad_omega = 0.0;
  std::size_t reps_used = 0;
  std::size_t failures = 0;
};

// Mean absolute deviation of each estimator's parameter estimates from the
// truth over replicated samples.
std::vector<EstimatorStudyRow> run_estimator_study(
    const EstimatorStudyConfig& cfg);

// ------------------------------------------------------------------ output --

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);
const char* estimator_name(EstimatorKind k);

void report_csv(const ExperimentReport& report, std::ostream& out);
void report_csv(const ExperimentReport& report, const std::string& path);
void report_json(const ExperimentReport& report, const ExperimentConfig& cfg,
                 std::ostream& out);
void report_json(const ExperimentReport& report, const ExperimentConfig& cfg,
                 const std::string& path);

// Loads an ExperimentConfig from a JSON file (the cli `simulate` input).
ExperimentConfig experiment_config_from_json_file(const std::string& path);

}  // namespace bigpast
