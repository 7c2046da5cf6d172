#include "bigpast/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "json.hpp"

#include "bigpast/baselines.hpp"
#include "bigpast/errors.hpp"
#include "bigpast/rng.hpp"
#include "bigpast/special_fn.hpp"

namespace bigpast {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double ratio_or_nan(std::size_t num, std::size_t den) {
  return den == 0 ? kNan : static_cast<double>(num) / static_cast<double>(den);
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  const std::size_t w = std::min(workers, count);
  threads.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        body(i);
      }
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

// ------------------------------------------------------------- confusion --

void Confusion::add(bool reject, bool positive) {
  if (reject)
    positive ? ++tp : ++fp;
  else
    positive ? ++fn : ++tn;
}

double Confusion::fpr() const { return ratio_or_nan(fp, fp + tn); }
double Confusion::tpr() const { return ratio_or_nan(tp, tp + fn); }
double Confusion::acc() const { return ratio_or_nan(tp + tn, total()); }
double Confusion::fdr() const { return ratio_or_nan(fp, tp + fp); }

// ---------------------------------------------------------- quantile map --

QuantileMap::QuantileMap(const SkewTParams& p, std::vector<double> knots,
                         std::size_t cells_per_segment)
    : params_(p) {
  p.validate();
  std::vector<double> ks = {1e-4, 1e-3, 0.025, 0.05,  0.5,
                            0.95, 0.975, 0.999, 1.0 - 1e-4};
  ks.insert(ks.end(), knots.begin(), knots.end());
  for (const double k : ks)
    if (!(k > 0.0 && k < 1.0))
      throw std::domain_error("QuantileMap: knots must lie in (0, 1)");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<double> anchor_x(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    anchor_x[i] = quantile(ks[i], params_);

  const std::size_t cells = std::max<std::size_t>(2, cells_per_segment);
  us_.push_back(ks.front());
  xs_.push_back(anchor_x.front());
  for (std::size_t seg = 0; seg + 1 < ks.size(); ++seg) {
    const double xa = anchor_x[seg], xb = anchor_x[seg + 1];
    for (std::size_t j = 1; j < cells; ++j) {
      const double x = xa + (xb - xa) * static_cast<double>(j) /
                                static_cast<double>(cells);
      double u = cdf(x, params_);
      // Guard against quadrature jitter breaking monotonicity.
      u = std::min(std::max(u, us_.back()), ks[seg + 1]);
      us_.push_back(u);
      xs_.push_back(x);
    }
    us_.push_back(ks[seg + 1]);
    xs_.push_back(xb);
  }
}

double QuantileMap::operator()(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("QuantileMap: u must lie in (0, 1)");
  if (u < us_.front() || u > us_.back()) return quantile(u, params_);
  const auto it = std::upper_bound(us_.begin(), us_.end(), u);
  const std::size_t hi = std::min<std::size_t>(
      static_cast<std::size_t>(it - us_.begin()), us_.size() - 1);
  const std::size_t lo = hi - 1;
  const double du = us_[hi] - us_[lo];
  if (du <= 0.0) return xs_[hi];
  const double t = (u - us_[lo]) / du;
  return xs_[lo] + t * (xs_[hi] - xs_[lo]);
}

// ------------------------------------------------------------ generators --

std::vector<LabeledSubject> gen_subjects_tail_uniform(
    const SkewTParams& truth, std::size_t k1, std::size_t k2,
    std::uint64_t seed, double beta, const QuantileMap* qmap) {
  if (!(beta > 0.0 && beta < 0.5))
    throw std::domain_error("gen_subjects_tail_uniform: beta out of range");
  std::unique_ptr<QuantileMap> local;
  if (!qmap) {
    local = std::make_unique<QuantileMap>(
        truth, std::vector<double>{0.5 * beta, beta, 1.0 - beta,
                                   1.0 - 0.5 * beta});
    qmap = local.get();
  }
  const QuantileMap& q = *qmap;
  const double a1 = q(0.5 * beta), b1 = q(beta);
  const double a2 = q(1.0 - beta), b2 = q(1.0 - 0.5 * beta);
  const double len1 = b1 - a1, len2 = b2 - a2;

  Rng rng(seed);
  std::vector<LabeledSubject> out;
  out.reserve(k1 + k2);
  for (std::size_t i = 0; i < k1; ++i) {
    const bool left = rng.uniform() < len1 / (len1 + len2);
    const double x = left ? a1 + rng.uniform() * len1
                          : a2 + rng.uniform() * len2;
    out.push_back({x, false});
  }
  for (std::size_t i = 0; i < k2; ++i) {
    const bool left = rng.uniform() < 0.5;
    const double u = left ? 0.5 * beta * rng.uniform()
                          : 1.0 - 0.5 * beta * rng.uniform();
    out.push_back({q(u), true});
  }
  return out;
}

std::vector<LabeledSubject> gen_subjects_ratio(
    const SkewTParams& truth, std::size_t c, std::size_t d, Alternative alt,
    std::uint64_t seed, double beta, AltSource source, double shift_offset,
    const QuantileMap* qmap) {
  if (!(beta > 0.0 && beta < 0.5))
    throw std::domain_error("gen_subjects_ratio: beta out of range");
  std::unique_ptr<QuantileMap> local;
  if (d > 0 && source == AltSource::TailUniform && !qmap) {
    local = std::make_unique<QuantileMap>(
        truth, std::vector<double>{0.5 * beta, beta, 1.0 - beta,
                                   1.0 - 0.5 * beta});
    qmap = local.get();
  }

  Rng rng(seed);
  std::vector<LabeledSubject> out;
  out.reserve(c + d);
  for (std::size_t i = 0; i < c; ++i)
    out.push_back({sample_one(truth, rng), false});
  for (std::size_t i = 0; i < d; ++i) {
    double x;
    if (source == AltSource::ShiftedNull) {
      x = sample_one(truth, rng) + shift_offset;
    } else {
      double u;
      switch (alt) {
        case Alternative::Less:
          u = 1e-3 + (beta - 1e-3) * rng.uniform();
          break;
        case Alternative::Greater:
          u = 1.0 - beta + (beta - 1e-3) * rng.uniform();
          break;
        case Alternative::TwoSided:
        default:
          if (rng.uniform() < 0.5)
            u = 1e-3 + (0.5 * beta - 1e-3) * rng.uniform();
          else
            u = 1.0 - 0.5 * beta + (0.5 * beta - 1e-3) * rng.uniform();
          break;
      }
      x = (*qmap)(u);
    }
    out.push_back({x, true});
  }
  return out;
}

std::vector<LabeledSubject> gen_subjects_central_band(
    const SkewTParams& truth, std::size_t c, std::size_t d, Alternative alt,
    std::uint64_t seed, double beta) {
  if (!(beta > 0.0 && beta < 0.5))
    throw std::domain_error("gen_subjects_central_band: beta out of range");
  const double q_min = quantile(1e-3, truth);
  const double q_max = quantile(1.0 - 1e-3, truth);

  double band_lo, band_hi;
  double tail_left_lo = 0.0, tail_left_hi = 0.0;
  double tail_right_lo = 0.0, tail_right_hi = 0.0;
  switch (alt) {
    case Alternative::TwoSided:
      band_lo = quantile(0.5 * beta, truth);
      band_hi = quantile(1.0 - 0.5 * beta, truth);
      tail_left_lo = q_min;
      tail_left_hi = band_lo;
      tail_right_lo = band_hi;
      tail_right_hi = q_max;
      break;
    case Alternative::Less:
      band_lo = quantile(beta, truth);
      band_hi = q_max;
      tail_left_lo = q_min;
      tail_left_hi = band_lo;
      break;
    case Alternative::Greater:
    default:
      band_lo = q_min;
      band_hi = quantile(1.0 - beta, truth);
      tail_right_lo = band_hi;
      tail_right_hi = q_max;
      break;
  }
  const double len_left = tail_left_hi - tail_left_lo;
  const double len_right = tail_right_hi - tail_right_lo;

  Rng rng(seed);
  std::vector<LabeledSubject> out;
  out.reserve(c + d);
  for (std::size_t i = 0; i < c; ++i)
    out.push_back({band_lo + rng.uniform() * (band_hi - band_lo), false});
  for (std::size_t i = 0; i < d; ++i) {
    const bool left =
        rng.uniform() < len_left / std::max(len_left + len_right, 1e-300);
    const double x = left
                         ? tail_left_lo + rng.uniform() * len_left
                         : tail_right_lo + rng.uniform() * len_right;
    out.push_back({x, true});
  }
  return out;
}

// --------------------------------------------------- distances & checks --

std::pair<double, double> matched_normal(const SkewTParams& p) {
  const Moments m = moments(p);
  return {m.mean, m.variance};
}

double tv_distance(const Density& f, const Density& g) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto diff = [&](double x) { return std::abs(f(x) - g(x)); };
  double err = 0.0;
  const double val =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          diff, -inf, inf, 15, 1e-6, &err);
  if (err > 1e-4) throw NumericError("tv_distance: quadrature failed");
  return 0.5 * val;
}

double kl_symmetric(const Density& f, const Density& g) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto one_sided = [](const Density& p, const Density& q) {
    return [&p, &q](double x) {
      const double pv = p(x);
      if (pv <= 0.0) return 0.0;
      const double qv = std::max(q(x), 1e-300);
      return pv * (std::log(pv) - std::log(qv));
    };
  };
  double err1 = 0.0, err2 = 0.0;
  const double kl_fg =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          one_sided(f, g), -inf, inf, 15, 1e-6, &err1);
  const double kl_gf =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          one_sided(g, f), -inf, inf, 15, 1e-6, &err2);
  if (err1 > 1e-4 || err2 > 1e-4)
    throw NumericError("kl_symmetric: quadrature failed");
  return kl_fg + kl_gf;
}

double sigma_nu_trial_tv(double nu, double sigma) {
  // Substituting u = T(z|nu) turns the exact density into the arcsine
  // density 1/(pi sqrt(u(1-u))); the approximation becomes a density
  // ratio against t(z|nu) at z = T^{ -1}(u). The ratio tends to sigma^nu
  // in both tails, so it is evaluated in log space to survive the
  // double-exponential endpoint clustering.
  thread_local boost::math::quadrature::tanh_sinh<double> quad(10);
  const double tail_ratio = std::pow(sigma, nu);
  auto integrand = [&](double u) {
    const double exact = 1.0 / (M_PI * std::sqrt(u * (1.0 - u)));
    const double z = student_t_quantile(u, nu);
    double ratio = tail_ratio;
    if (std::isfinite(z)) {
      const double log_ratio = student_t_log_pdf(z / sigma, nu) -
                               std::log(sigma) - student_t_log_pdf(z, nu);
      if (std::isfinite(log_ratio)) ratio = std::exp(log_ratio);
    }
    return std::abs(exact - ratio);
  };
  const double val = quad.integrate(integrand, 0.0, 1.0, 1e-8);
  return 0.5 * val;
}

std::vector<SigmaNuCheck> sigma_nu_validation(
    const std::vector<double>& nu_grid) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<SigmaNuCheck> out;
  out.reserve(nu_grid.size());
  for (const double nu : nu_grid) {
    SigmaNuCheck row;
    row.nu = nu;
    row.sigma = sigma_nu(nu);
    row.tv = sigma_nu_trial_tv(nu, row.sigma);
    auto approx = [&](double z) {
      return student_t_pdf(z / row.sigma, nu) / row.sigma;
    };
    double err = 0.0;
    row.approx_mass =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            approx, -inf, inf, 15, 1e-10, &err);
    out.push_back(row);
  }
  return out;
}

// -------------------------------------------------------------- sweeps --

namespace {

CredibleInterval method_interval(Method m, const Sample& data,
                                 const ExperimentConfig& cfg,
                                 std::uint64_t mseed) {
  switch (m) {
    case Method::MH: {
      MhConfig mc;
      mc.m0 = cfg.mh_m0;
      mc.burn_in = cfg.mh_burn_in;
      mc.step = cfg.mh_step;
      mc.seed = mseed;
      mc.prior = cfg.prior;
      return mh_interval(data, cfg.beta, cfg.alt, mc, cfg.mh_s).interval;
    }
    case Method::MAP:
      return map_interval(data, cfg.beta, cfg.alt, cfg.prior);
    case Method::MLE:
      return mle_interval(data, cfg.beta, cfg.alt);
    case Method::NP:
      return np_interval(data, cfg.beta, cfg.alt);
    case Method::Z:
      return z_score(data.front(), GaussianSummary::from(data), cfg.beta,
                     cfg.alt)
          .interval;
    case Method::T:
      return crawford_t(data.front(), GaussianSummary::from(data), cfg.beta,
                        cfg.alt)
          .interval;
    case Method::CG:
      return crawford_garthwaite(data.front(), data, cfg.beta, cfg.alt,
                                 cfg.cg_draws, mseed)
          .interval;
    case Method::CGHA:
      return arcsinh_wrap(
                 [&](double subj, const Sample& transformed) {
                   return crawford_garthwaite(subj, transformed, cfg.beta,
                                              cfg.alt, cfg.cg_draws, mseed);
                 },
                 data.front(), data)
          .interval;
    case Method::AD:
      return anderson_darling_subject(data.front(), data, cfg.beta, cfg.alt)
          .interval;
  }
  throw std::logic_error("method_interval: unknown method");
}

std::vector<LabeledSubject> generate_subjects(const ExperimentConfig& cfg,
                                              std::uint64_t seed,
                                              const QuantileMap* qmap) {
  switch (cfg.scheme) {
    case Scheme::TailUniform:
      return gen_subjects_tail_uniform(cfg.truth, cfg.k1, cfg.k2, seed,
                                       cfg.beta, qmap);
    case Scheme::RatioCentralBand: {
      const auto c = static_cast<std::size_t>(
          std::llround(cfg.c_ratio * static_cast<double>(cfg.subjects_per_rep)));
      return gen_subjects_central_band(cfg.truth, c, cfg.subjects_per_rep - c,
                                       cfg.alt, seed, cfg.beta);
    }
    case Scheme::RatioTruthTail:
    default: {
      const auto c = static_cast<std::size_t>(
          std::llround(cfg.c_ratio * static_cast<double>(cfg.subjects_per_rep)));
      return gen_subjects_ratio(cfg.truth, c, cfg.subjects_per_rep - c,
                                cfg.alt, seed, cfg.beta,
                                cfg.alternative_source, cfg.shift_offset,
                                qmap);
    }
  }
}

struct MetricAccum {
  double sum = 0.0;
  std::size_t count = 0;

  void add(double v) {
    if (!std::isnan(v)) {
      sum += v;
      ++count;
    }
  }
  double mean() const { return count == 0 ? kNan : sum / count; }
};

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.seed = cfg.seed;
  report.replications = cfg.replications;
  if (cfg.methods.empty() || cfg.replications == 0 || cfg.n_values.empty()) {
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
  }
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
    throw std::domain_error("run_experiment: beta must lie in (0, 1)");

  const bool needs_qmap =
      cfg.scheme == Scheme::TailUniform ||
      (cfg.scheme == Scheme::RatioTruthTail &&
       cfg.alternative_source == AltSource::TailUniform &&
       cfg.c_ratio < 1.0);
  std::unique_ptr<QuantileMap> qmap;
  if (needs_qmap)
    qmap = std::make_unique<QuantileMap>(
        cfg.truth, std::vector<double>{0.5 * cfg.beta, cfg.beta,
                                       1.0 - cfg.beta, 1.0 - 0.5 * cfg.beta});

  const std::size_t cells = cfg.methods.size() * cfg.n_values.size();
  struct RepOutcome {
    std::vector<Confusion> cells;
    bool failed = false;
  };
  std::vector<RepOutcome> outcomes(cfg.replications);

  parallel_for(cfg.replications, cfg.workers, [&](std::size_t rep) {
    RepOutcome& out = outcomes[rep];
    out.cells.assign(cells, Confusion{});
    const std::uint64_t rep_seed = mix_seed(cfg.seed, rep);
    try {
      for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const std::size_t n = cfg.n_values[ni];
        const Sample data =
            sample(cfg.truth, n, mix_seed(rep_seed, 0xD0000000ULL + n));
        const auto subjects = generate_subjects(
            cfg, mix_seed(rep_seed, 0x5B000000ULL + n), qmap.get());
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
          const CredibleInterval ci = method_interval(
              cfg.methods[mi], data, cfg,
              mix_seed(rep_seed, 0xAB000000ULL + n * 16 + mi));
          Confusion& conf = out.cells[mi * cfg.n_values.size() + ni];
          for (const LabeledSubject& s : subjects)
            conf.add(!ci.contains(s.value), s.positive);
        }
      }
    } catch (const std::exception&) {
      out.failed = true;
    }
  });

  std::size_t failures = 0;
  for (const auto& o : outcomes)
    if (o.failed) ++failures;
  const std::size_t budget =
      std::max<std::size_t>(1, cfg.replications / 100);
  if (failures > budget)
    throw NumericError("run_experiment: replication failures exceed budget");

  report.failures = failures;
  report.rows.reserve(cells);
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
      MethodRow row;
      row.method = cfg.methods[mi];
      row.n = cfg.n_values[ni];
      MetricAccum fpr, tpr, acc, fdr;
      for (const auto& o : outcomes) {
        if (o.failed) continue;
        const Confusion& c = o.cells[mi * cfg.n_values.size() + ni];
        row.totals.tp += c.tp;
        row.totals.fp += c.fp;
        row.totals.tn += c.tn;
        row.totals.fn += c.fn;
        fpr.add(c.fpr());
        tpr.add(c.tpr());
        acc.add(c.acc());
        fdr.add(c.fdr());
        ++row.reps_used;
      }
      row.fpr = fpr.mean();
      row.tpr = tpr.mean();
      row.acc = acc.mean();
      row.fdr = fdr.mean();
      report.rows.push_back(row);
    }
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

namespace {

SkewTParams run_estimator(EstimatorKind k, const Sample& data) {
  switch (k) {
    case EstimatorKind::MLE:
      return fit_mle(data).params;
    case EstimatorKind::MapJeffreysC0:
      return fit_map(data, PriorKind::jeffreys(0.0));
    case EstimatorKind::MapJeffreysC1:
      return fit_map(data, PriorKind::jeffreys(1.0));
    case EstimatorKind::MapBranco:
      return fit_map(data, PriorKind::branco());
    case EstimatorKind::MapDette:
      return fit_map(data, PriorKind::dette());
    case EstimatorKind::MapUniform:
      return fit_map(data, PriorKind::uniform());
  }
  throw std::logic_error("run_estimator: unknown estimator");
}

}  // namespace

std::vector<EstimatorStudyRow> run_estimator_study(
    const EstimatorStudyConfig& cfg) {
  struct RepFit {
    std::vector<SkewTParams> fits;   // per estimator
    std::vector<bool> ok;
  };
  std::vector<RepFit> reps(cfg.replications);

  parallel_for(cfg.replications, cfg.workers, [&](std::size_t rep) {
    RepFit& rf = reps[rep];
    rf.fits.resize(cfg.estimators.size());
    rf.ok.assign(cfg.estimators.size(), false);
    const Sample data =
        sample(cfg.truth, cfg.n, mix_seed(cfg.seed, 0xE5000000ULL + rep));
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      try {
        rf.fits[e] = run_estimator(cfg.estimators[e], data);
        rf.ok[e] = true;
      } catch (const std::exception&) {
        rf.ok[e] = false;
      }
    }
  });

  std::vector<EstimatorStudyRow> rows;
  rows.reserve(cfg.estimators.size());
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
    EstimatorStudyRow row;
    row.estimator = cfg.estimators[e];
    double sa = 0.0, sn = 0.0, sx = 0.0, so = 0.0;
    for (const RepFit& rf : reps) {
      if (!rf.ok[e]) {
        ++row.failures;
        continue;
      }
      const SkewTParams& f = rf.fits[e];
      sa += std::abs(f.alpha - cfg.truth.alpha);
      sn += std::abs(f.nu - cfg.truth.nu);
      sx += std::abs(f.xi - cfg.truth.xi);
      so += std::abs(f.omega - cfg.truth.omega);
      ++row.reps_used;
    }
    if (row.reps_used > 0) {
      const double r = static_cast<double>(row.reps_used);
      row.mad_alpha = sa / r;
      row.mad_nu = sn / r;
      row.mad_xi = sx / r;
      row.mad_omega = so / r;
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- output --

const char* method_name(Method m) {
  switch (m) {
    case Method::MH:
      return "mh";
    case Method::MAP:
      return "map";
    case Method::MLE:
      return "mle";
    case Method::NP:
      return "np";
    case Method::Z:
      return "z";
    case Method::T:
      return "t";
    case Method::CG:
      return "cg";
    case Method::CGHA:
      return "cgha";
    case Method::AD:
      return "ad";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  static const std::pair<const char*, Method> table[] = {
      {"mh", Method::MH},     {"map", Method::MAP}, {"mle", Method::MLE},
      {"np", Method::NP},     {"z", Method::Z},     {"t", Method::T},
      {"cg", Method::CG},     {"cgha", Method::CGHA},
      {"ad", Method::AD},
  };
  for (const auto& [n, m] : table)
    if (name == n) return m;
  return std::nullopt;
}

const char* estimator_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::MLE:
      return "mle";
    case EstimatorKind::MapJeffreysC0:
      return "map-jeffreys-c0";
    case EstimatorKind::MapJeffreysC1:
      return "map-jeffreys-c1";
    case EstimatorKind::MapBranco:
      return "map-branco";
    case EstimatorKind::MapDette:
      return "map-dette";
    case EstimatorKind::MapUniform:
      return "map-uniform";
  }
  return "?";
}

namespace {

const char* alternative_name(Alternative a) {
  switch (a) {
    case Alternative::TwoSided:
      return "two-sided";
    case Alternative::Less:
      return "less";
    case Alternative::Greater:
      return "greater";
  }
  return "?";
}

Alternative alternative_from_name(const std::string& name) {
  if (name == "two-sided") return Alternative::TwoSided;
  if (name == "less") return Alternative::Less;
  if (name == "greater") return Alternative::Greater;
  throw std::invalid_argument("unknown alternative: " + name);
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::RatioTruthTail:
      return "ratio-truth-tail";
    case Scheme::RatioCentralBand:
      return "ratio-central-band";
    case Scheme::TailUniform:
      return "tail-uniform";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "ratio-truth-tail") return Scheme::RatioTruthTail;
  if (name == "ratio-central-band") return Scheme::RatioCentralBand;
  if (name == "tail-uniform") return Scheme::TailUniform;
  throw std::invalid_argument("unknown scheme: " + name);
}

const char* prior_name(const PriorKind& k) {
  switch (k.family) {
    case PriorFamily::JeffreysJ:
      return "jeffreys";
    case PriorFamily::BrancoB:
      return "branco";
    case PriorFamily::DetteD:
      return "dette";
    case PriorFamily::Uniform:
      return "uniform";
  }
  return "?";
}

PriorKind prior_from_json(const nlohmann::json& j) {
  const std::string family = j.value("family", std::string("jeffreys"));
  if (family == "jeffreys")
    return PriorKind::jeffreys(j.value("c_nu", 1.0));
  if (family == "branco") return PriorKind::branco();
  if (family == "dette") return PriorKind::dette();
  if (family == "uniform") return PriorKind::uniform();
  throw std::invalid_argument("unknown prior family: " + family);
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["truth"] = {{"alpha", cfg.truth.alpha},
                {"nu", cfg.truth.nu},
                {"xi", cfg.truth.xi},
                {"omega", cfg.truth.omega}};
  nlohmann::json methods = nlohmann::json::array();
  for (const Method m : cfg.methods) methods.push_back(method_name(m));
  j["methods"] = methods;
  j["n_values"] = cfg.n_values;
  j["scheme"] = scheme_name(cfg.scheme);
  j["c_ratio"] = cfg.c_ratio;
  j["subjects_per_rep"] = cfg.subjects_per_rep;
  j["k1"] = cfg.k1;
  j["k2"] = cfg.k2;
  j["alternative_source"] = cfg.alternative_source == AltSource::TailUniform
                                ? "tail-uniform"
                                : "shifted-null";
  j["shift_offset"] = cfg.shift_offset;
  j["alternative"] = alternative_name(cfg.alt);
  j["beta"] = cfg.beta;
  j["replications"] = cfg.replications;
  j["mh"] = {{"m0", cfg.mh_m0},
             {"burn_in", cfg.mh_burn_in},
             {"step", cfg.mh_step},
             {"s", cfg.mh_s}};
  j["prior"] = {{"family", prior_name(cfg.prior)}, {"c_nu", cfg.prior.c_nu}};
  j["cg_draws"] = cfg.cg_draws;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  return j;
}

}  // namespace

void report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "method,n,metric,value\n";
  const auto emit = [&](const MethodRow& r, const char* metric, double v) {
    out << method_name(r.method) << ',' << r.n << ',' << metric << ',';
    if (!std::isnan(v)) out << v;
    out << '\n';
  };
  for (const MethodRow& r : report.rows) {
    emit(r, "fpr", r.fpr);
    emit(r, "tpr", r.tpr);
    emit(r, "acc", r.acc);
    emit(r, "fdr", r.fdr);
    emit(r, "tp", static_cast<double>(r.totals.tp));
    emit(r, "fp", static_cast<double>(r.totals.fp));
    emit(r, "tn", static_cast<double>(r.totals.tn));
    emit(r, "fn", static_cast<double>(r.totals.fn));
    emit(r, "reps_used", static_cast<double>(r.reps_used));
  }
}

void report_csv(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report_csv: cannot open " + path);
  report_csv(report, out);
}

void report_json(const ExperimentReport& report, const ExperimentConfig& cfg,
                 std::ostream& out) {
  nlohmann::json j;
  j["config"] = config_to_json(cfg);
  nlohmann::json rows = nlohmann::json::array();
  const auto num_or_null = [](double v) {
    return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
  };
  for (const MethodRow& r : report.rows) {
    rows.push_back({{"method", method_name(r.method)},
                    {"n", r.n},
                    {"fpr", num_or_null(r.fpr)},
                    {"tpr", num_or_null(r.tpr)},
                    {"acc", num_or_null(r.acc)},
                    {"fdr", num_or_null(r.fdr)},
                    {"counts",
                     {{"tp", r.totals.tp},
                      {"fp", r.totals.fp},
                      {"tn", r.totals.tn},
                      {"fn", r.totals.fn}}},
                    {"reps_used", r.reps_used}});
  }
  j["rows"] = rows;
  j["replications"] = report.replications;
  j["failures"] = report.failures;
  j["seed"] = report.seed;
  j["runtime_seconds"] = report.runtime_seconds;
  out << j.dump(2) << '\n';
}

void report_json(const ExperimentReport& report, const ExperimentConfig& cfg,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report_json: cannot open " + path);
  report_json(report, cfg, out);
}

ExperimentConfig experiment_config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("experiment config: cannot open " + path);
  nlohmann::json j;
  in >> j;

  ExperimentConfig cfg;
  if (j.contains("truth")) {
    const auto& t = j["truth"];
    cfg.truth.alpha = t.value("alpha", 0.0);
    cfg.truth.nu = t.value("nu", 1.0);
    cfg.truth.xi = t.value("xi", 0.0);
    cfg.truth.omega = t.value("omega", 1.0);
  }
  if (j.contains("methods")) {
    for (const auto& m : j["methods"]) {
      const auto parsed = method_from_name(m.get<std::string>());
      if (!parsed)
        throw std::invalid_argument("unknown method: " +
                                    m.get<std::string>());
      cfg.methods.push_back(*parsed);
    }
  }
  if (j.contains("n_values"))
    cfg.n_values = j["n_values"].get<std::vector<std::size_t>>();
  cfg.scheme = scheme_from_name(
      j.value("scheme", std::string("ratio-truth-tail")));
  cfg.c_ratio = j.value("c_ratio", cfg.c_ratio);
  cfg.subjects_per_rep = j.value("subjects_per_rep", cfg.subjects_per_rep);
  cfg.k1 = j.value("k1", cfg.k1);
  cfg.k2 = j.value("k2", cfg.k2);
  const std::string src =
      j.value("alternative_source", std::string("tail-uniform"));
  if (src == "tail-uniform")
    cfg.alternative_source = AltSource::TailUniform;
  else if (src == "shifted-null")
    cfg.alternative_source = AltSource::ShiftedNull;
  else
    throw std::invalid_argument("unknown alternative_source: " + src);
  cfg.shift_offset = j.value("shift_offset", cfg.shift_offset);
  cfg.alt =
      alternative_from_name(j.value("alternative", std::string("two-sided")));
  cfg.beta = j.value("beta", cfg.beta);
  cfg.replications = j.value("replications", cfg.replications);
  if (j.contains("mh")) {
    const auto& m = j["mh"];
    cfg.mh_m0 = m.value("m0", cfg.mh_m0);
    cfg.mh_burn_in = m.value("burn_in", cfg.mh_burn_in);
    cfg.mh_step = m.value("step", cfg.mh_step);
    cfg.mh_s = m.value("s", cfg.mh_s);
  }
  if (j.contains("prior")) cfg.prior = prior_from_json(j["prior"]);
  cfg.cg_draws = j.value("cg_draws", cfg.cg_draws);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.workers = j.value("workers", cfg.workers);
  return cfg;
}

}  // namespace bigpast
