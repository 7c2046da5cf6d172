#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bigpast/baselines.hpp"
#include "bigpast/bigpast.hpp"
#include "bigpast/gof.hpp"
#include "bigpast/priors.hpp"
#include "bigpast/simlab.hpp"
#include "bigpast/skewt.hpp"
#include "bigpast/special_fn.hpp"

namespace {

using nlohmann::json;
using namespace bigpast;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_number(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  try {
    std::size_t pos = 0;
    out = std::stod(tok, &pos);
    return pos == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

Sample read_csv_column(const std::string& path,
                       const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);

  Sample data;
  std::string line;
  std::size_t line_no = 0;
  std::size_t col_index = 0;
  bool header_resolved = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto tokens = split_csv_line(line);
    if (!header_resolved) {
      header_resolved = true;
      if (column) {
        auto it = std::find(tokens.begin(), tokens.end(), *column);
        if (it == tokens.end())
          throw std::runtime_error(path + ": column '" + *column +
                                   "' not found in header");
        col_index = static_cast<std::size_t>(it - tokens.begin());
        continue;  // header line consumed
      }
      if (tokens.size() > 1)
        throw std::runtime_error(
            path + ": file has " + std::to_string(tokens.size()) +
            " columns; select one with --column");
      double v = 0.0;
      if (parse_number(tokens[0], v))
        data.push_back(v);  // no header, first line is data
      continue;
    }
    if (col_index >= tokens.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected at least " +
                               std::to_string(col_index + 1) + " columns");
    double v = 0.0;
    if (!parse_number(tokens[col_index], v))
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": cannot parse '" + tokens[col_index] +
                               "' as a number");
    data.push_back(v);
  }
  if (data.empty())
    throw std::runtime_error(path + ": no numeric data found");
  return data;
}

json number_or_null(double v) {
  return std::isfinite(v) ? json(v) : json();
}

Alternative parse_alternative(const std::string& name) {
  if (name == "two-sided") return Alternative::TwoSided;
  if (name == "less") return Alternative::Less;
  if (name == "greater") return Alternative::Greater;
  throw std::invalid_argument("unknown alternative: " + name);
}

const char* alternative_label(Alternative a) {
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

PriorKind parse_prior(const std::string& family, double c_nu) {
  if (family == "jeffreys") return PriorKind::jeffreys(c_nu);
  if (family == "branco") return PriorKind::branco();
  if (family == "dette") return PriorKind::dette();
  if (family == "uniform") return PriorKind::uniform();
  throw std::invalid_argument("unknown prior family: " + family);
}

json interval_json(const CredibleInterval& ci) {
  return {{"lo", number_or_null(ci.lo)},
          {"hi", number_or_null(ci.hi)},
          {"beta", ci.beta},
          {"alternative", alternative_label(ci.alternative)}};
}

json test_result_json(const TestResult& r) {
  json j = {{"method", method_name(r.method)},
            {"reject", r.reject},
            {"subject", r.subject},
            {"interval", interval_json(r.interval)}};
  if (r.chain_acceptance) {
    j["acceptance_rate"] = *r.chain_acceptance;
    j["degenerate_half_t"] = r.degenerate_half_t;
  }
  return j;
}

json params_json(const SkewTParams& p) {
  return {{"alpha", p.alpha}, {"nu", p.nu}, {"xi", p.xi}, {"omega", p.omega}};
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

// ------------------------------------------------------------------ test --

struct TestOpts {
  std::string control_path;
  std::optional<std::string> column;
  std::optional<double> subject;
  std::string subject_file;
  std::vector<std::string> methods{"mh"};
  double beta = 0.05;
  std::string alt = "two-sided";
  std::uint64_t seed = 0;
  int m0 = 10000;
  double burn_in = 0.4;
  double step = 0.5;
  std::size_t s = 100;
  std::string prior_family = "jeffreys";
  double c_nu = 1.0;
  std::size_t cg_draws = 10000;
  bool require_gof = false;
  std::string out_path;
};

double gof_level(double beta) {
  for (const double level : {0.10, 0.05, 0.025, 0.01})
    if (beta == level) return beta;
  return 0.05;
}

TestResult run_method(const std::string& name, double subject,
                      const Sample& data, const TestOpts& opt,
                      Alternative alt, const PriorKind& prior) {
  if (name == "mh") {
    MhConfig cfg;
    cfg.m0 = opt.m0;
    cfg.burn_in = opt.burn_in;
    cfg.step = opt.step;
    cfg.seed = opt.seed;
    cfg.prior = prior;
    return test_mh(subject, data, opt.beta, alt, cfg, opt.s);
  }
  if (name == "map") return test_map(subject, data, opt.beta, alt, prior);
  if (name == "mle") return test_mle(subject, data, opt.beta, alt);
  if (name == "np") return test_np(subject, data, opt.beta, alt);
  if (name == "z")
    return z_score(subject, GaussianSummary::from(data), opt.beta, alt);
  if (name == "t")
    return crawford_t(subject, GaussianSummary::from(data), opt.beta, alt);
  if (name == "cg")
    return crawford_garthwaite(subject, data, opt.beta, alt, opt.cg_draws,
                               opt.seed);
  if (name == "cg-ha" || name == "cgha") {
    return arcsinh_wrap(
        [&](double subj, const Sample& transformed) {
          return crawford_garthwaite(subj, transformed, opt.beta, alt,
                                     opt.cg_draws, opt.seed);
        },
        subject, data);
  }
  if (name == "ad")
    return anderson_darling_subject(subject, data, opt.beta, alt);
  throw std::invalid_argument("unknown method: " + name);
}

int cmd_test(const TestOpts& opt) {
  const Sample data = read_csv_column(opt.control_path, opt.column);
  double subject = 0.0;
  if (opt.subject) {
    subject = *opt.subject;
  } else if (!opt.subject_file.empty()) {
    const Sample s = read_csv_column(opt.subject_file, std::nullopt);
    if (s.size() != 1)
      throw std::runtime_error(opt.subject_file +
                               ": expected exactly one subject value");
    subject = s[0];
  } else {
    throw std::runtime_error("provide --subject or --subject-file");
  }
  const Alternative alt = parse_alternative(opt.alt);
  const PriorKind prior = parse_prior(opt.prior_family, opt.c_nu);

  json j;
  j["n"] = data.size();
  j["subject"] = subject;
  j["beta"] = opt.beta;
  j["alternative"] = opt.alt;
  j["seed"] = opt.seed;

  if (data.size() >= 20) {
    try {
      const GofResult g = gof_skewt(data, gof_level(opt.beta));
      j["gof"] = {{"a_squared", g.a_squared},
                  {"a_star", g.a_star},
                  {"reject", g.reject},
                  {"clamped", g.clamped}};
      if (g.reject) {
        std::cerr << "warning: goodness-of-fit test rejects the skew-t "
                     "assumption (A* = "
                  << g.a_star << ")\n";
        if (opt.require_gof) {
          std::cerr << "error: --require-gof set, aborting\n";
          return 1;
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "warning: goodness-of-fit precheck failed: " << e.what()
                << "\n";
      if (opt.require_gof) return 1;
    }
  } else {
    std::cerr << "warning: goodness-of-fit precheck skipped (n < 20)\n";
    if (opt.require_gof) return 1;
  }

  json results = json::array();
  bool any_reject = false;
  for (const std::string& name : opt.methods) {
    const TestResult r = run_method(name, subject, data, opt, alt, prior);
    any_reject = any_reject || r.reject;
    results.push_back(test_result_json(r));
  }
  j["results"] = results;
  write_text(j.dump(2) + "\n", opt.out_path);
  if (opt.methods.size() > 1) return 0;
  return any_reject ? 2 : 0;
}

// ------------------------------------------------------------------- fit --

struct FitOpts {
  std::string data_path;
  std::optional<std::string> column;
  std::string estimator = "mle";
  std::string prior_family = "jeffreys";
  double c_nu = 1.0;
  std::string out_path;
};

int cmd_fit(const FitOpts& opt) {
  const Sample data = read_csv_column(opt.data_path, opt.column);
  json j;
  j["n"] = data.size();
  j["estimator"] = opt.estimator;
  FitResult r;
  if (opt.estimator == "mle") {
    r = fit_mle(data);
    j["log_likelihood"] = r.objective;
  } else if (opt.estimator == "map") {
    const PriorKind prior = parse_prior(opt.prior_family, opt.c_nu);
    r = fit_objective(initial_guess(data), [&](const SkewTParams& p) {
      return log_posterior(data, p, prior);
    });
    j["prior"] = {{"family", opt.prior_family}, {"c_nu", opt.c_nu}};
    j["log_posterior"] = r.objective;
  } else {
    throw std::invalid_argument("unknown estimator: " + opt.estimator);
  }
  j["params"] = params_json(r.params);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  write_text(j.dump(2) + "\n", opt.out_path);
  return 0;
}

// ------------------------------------------------------------------- gof --

struct GofOpts {
  std::string data_path;
  std::optional<std::string> column;
  double beta = 0.05;
  std::string out_path;
};

int cmd_gof(const GofOpts& opt) {
  const Sample data = read_csv_column(opt.data_path, opt.column);
  const GofResult g = gof_skewt(data, opt.beta);
  json j = {{"n", data.size()},
            {"beta", opt.beta},
            {"a_squared", g.a_squared},
            {"a_star", g.a_star},
            {"reject", g.reject},
            {"clamped", g.clamped},
            {"fitted", params_json(g.fitted)}};
  write_text(j.dump(2) + "\n", opt.out_path);
  return g.reject ? 2 : 0;
}

// ----------------------------------------------------------------- prior --

struct PriorOpts {
  double alpha = 0.0;
  double nu = 1.0;
  double xi = 0.0;
  double omega = 1.0;
  std::string family = "jeffreys";
  double c_nu = 1.0;
  std::string out_path;
};

int cmd_prior(const PriorOpts& opt) {
  const PriorKind kind = parse_prior(opt.family, opt.c_nu);
  const SkewTParams p{opt.alpha, opt.nu, opt.xi, opt.omega};
  p.validate();
  json j = {{"alpha", opt.alpha},
            {"nu", opt.nu},
            {"xi", opt.xi},
            {"omega", opt.omega},
            {"family", opt.family},
            {"c_nu", opt.c_nu},
            {"sigma_nu", sigma_nu(opt.nu)},
            {"fonseca_pi_nu", fonseca_pi_nu(opt.nu)},
            {"log_prior", number_or_null(log_prior(p, kind))}};
  if (kind.family == PriorFamily::JeffreysJ) {
    const FisherBlock f = fisher_block(opt.alpha, opt.nu, opt.c_nu);
    j["fisher"] = {{"i_alpha_alpha", f.i_aa},
                   {"i_nu_nu", f.i_nn},
                   {"i_alpha_nu", f.i_an},
                   {"det", f.det()}};
  }
  write_text(j.dump(2) + "\n", opt.out_path);
  return 0;
}

// -------------------------------------------------------------- simulate --

struct SimulateOpts {
  std::string preset;
  std::string config_path;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string csv_out;
  std::string json_out;
  std::optional<double> alpha, nu, xi, omega;
  std::optional<int> m0;
};

const char* kPresets =
    "table1, table2, table3, table5, table8-neg80, table8-neg20, "
    "tv-distances, sigma-nu-check";

std::size_t scaled_reps(std::size_t base, double scale) {
  const auto r = static_cast<std::size_t>(
      std::llround(static_cast<double>(base) * scale));
  return std::max<std::size_t>(1, r);
}

void apply_truth_overrides(const SimulateOpts& opt, SkewTParams& truth) {
  if (opt.alpha) truth.alpha = *opt.alpha;
  if (opt.nu) truth.nu = *opt.nu;
  if (opt.xi) truth.xi = *opt.xi;
  if (opt.omega) truth.omega = *opt.omega;
}

int emit_experiment(const ExperimentConfig& cfg, const SimulateOpts& opt) {
  const ExperimentReport report = run_experiment(cfg);
  std::cerr << "seed: " << cfg.seed << "\n";
  if (!opt.csv_out.empty()) report_csv(report, opt.csv_out);
  if (!opt.json_out.empty()) report_json(report, cfg, opt.json_out);
  if (opt.csv_out.empty() && opt.json_out.empty())
    report_csv(report, std::cout);
  return 0;
}

int run_table1(const SimulateOpts& opt) {
  EstimatorStudyConfig cfg;
  cfg.truth = {-50.0, 50.0, -2.0, std::sqrt(2.0)};
  apply_truth_overrides(opt, cfg.truth);
  cfg.n = 500;
  cfg.replications = scaled_reps(100, opt.scale);
  cfg.estimators = {EstimatorKind::MapJeffreysC0, EstimatorKind::MapJeffreysC1,
                    EstimatorKind::MapBranco, EstimatorKind::MapDette,
                    EstimatorKind::MapUniform};
  cfg.seed = opt.seed;
  cfg.workers = opt.workers;
  const auto rows = run_estimator_study(cfg);
  std::cerr << "seed: " << cfg.seed << "\n";

  std::ostringstream csv;
  csv << "estimator,metric,value\n";
  for (const auto& r : rows) {
    csv << estimator_name(r.estimator) << ",mad_alpha," << r.mad_alpha << "\n"
        << estimator_name(r.estimator) << ",mad_nu," << r.mad_nu << "\n"
        << estimator_name(r.estimator) << ",mad_xi," << r.mad_xi << "\n"
        << estimator_name(r.estimator) << ",mad_omega," << r.mad_omega << "\n"
        << estimator_name(r.estimator) << ",reps_used," << r.reps_used << "\n"
        << estimator_name(r.estimator) << ",failures," << r.failures << "\n";
  }
  if (!opt.csv_out.empty()) write_text(csv.str(), opt.csv_out);
  if (!opt.json_out.empty()) {
    json j;
    j["config"] = {{"truth", params_json(cfg.truth)},
                   {"n", cfg.n},
                   {"replications", cfg.replications},
                   {"seed", cfg.seed}};
    json jrows = json::array();
    for (const auto& r : rows)
      jrows.push_back({{"estimator", estimator_name(r.estimator)},
                       {"mad_alpha", number_or_null(r.mad_alpha)},
                       {"mad_nu", number_or_null(r.mad_nu)},
                       {"mad_xi", number_or_null(r.mad_xi)},
                       {"mad_omega", number_or_null(r.mad_omega)},
                       {"reps_used", r.reps_used},
                       {"failures", r.failures}});
    j["rows"] = jrows;
    write_text(j.dump(2) + "\n", opt.json_out);
  }
  if (opt.csv_out.empty() && opt.json_out.empty()) std::cout << csv.str();
  return 0;
}

ExperimentConfig preset_table2() {
  ExperimentConfig cfg;
  cfg.truth = {-3.23, 7.0, 0.0, 1.0};
  cfg.methods = {Method::Z,  Method::T,  Method::CGHA,
                 Method::CG, Method::AD, Method::MH};
  cfg.n_values = {50};
  cfg.scheme = Scheme::RatioTruthTail;
  cfg.c_ratio = 1.0;
  cfg.subjects_per_rep = 100;
  cfg.alt = Alternative::Less;
  cfg.replications = 10000;
  cfg.mh_m0 = 2000;
  return cfg;
}

ExperimentConfig preset_table3() {
  ExperimentConfig cfg;
  cfg.truth = {-3.23, 7.0, 0.0, 1.0};
  cfg.methods = {Method::Z,  Method::T,  Method::CGHA,
                 Method::CG, Method::AD, Method::MH};
  cfg.n_values = {200};
  cfg.scheme = Scheme::RatioCentralBand;
  cfg.c_ratio = 0.5;
  cfg.subjects_per_rep = 100;
  cfg.alt = Alternative::TwoSided;
  cfg.replications = 10000;
  cfg.mh_m0 = 2000;
  return cfg;
}

ExperimentConfig preset_table5() {
  ExperimentConfig cfg;
  cfg.truth = {10.0, 10.0, -2.0, 2.0};
  cfg.methods = {Method::MH, Method::MAP, Method::NP, Method::MLE};
  cfg.n_values = {100};
  cfg.scheme = Scheme::TailUniform;
  cfg.k1 = 500;
  cfg.k2 = 500;
  cfg.alt = Alternative::TwoSided;
  cfg.replications = 50;
  cfg.mh_m0 = 5000;
  cfg.mh_s = 100;
  cfg.prior = PriorKind::jeffreys(1.0);
  return cfg;
}

ExperimentConfig preset_table8(bool neg80) {
  ExperimentConfig cfg = preset_table3();
  cfg.c_ratio = neg80 ? 0.8 : 0.2;
  return cfg;
}

int run_tv_distances(const SimulateOpts& opt) {
  const std::vector<std::pair<double, double>> settings = {
      {1.0, 10.0}, {1.0, 5.0}, {2.0, 5.0}, {3.0, 5.0}};
  std::ostringstream csv;
  csv << "alpha,nu,metric,value\n";
  json jrows = json::array();
  for (const auto& [a, v] : settings) {
    const SkewTParams p{a, v, 0.0, 1.0};
    const auto [mu, var] = matched_normal(p);
    const double sd = std::sqrt(var);
    const double tv = tv_distance(
        [&](double x) { return pdf(x, p); },
        [&](double x) { return normal_pdf((x - mu) / sd) / sd; });
    csv << a << ',' << v << ",tv," << tv << "\n";
    jrows.push_back({{"alpha", a}, {"nu", v}, {"tv", tv}});
  }
  if (!opt.csv_out.empty()) write_text(csv.str(), opt.csv_out);
  if (!opt.json_out.empty())
    write_text(json{{"rows", jrows}}.dump(2) + "\n", opt.json_out);
  if (opt.csv_out.empty() && opt.json_out.empty()) std::cout << csv.str();
  return 0;
}

int run_sigma_nu_check(const SimulateOpts& opt) {
  const std::vector<double> grid = {1.0,  2.0,  3.0,  5.0,
                                    10.0, 20.0, 50.0, 100.0};
  const auto rows = sigma_nu_validation(grid);
  std::ostringstream csv;
  csv << "nu,sigma,tv,approx_mass\n";
  json jrows = json::array();
  for (const auto& r : rows) {
    csv << r.nu << ',' << r.sigma << ',' << r.tv << ',' << r.approx_mass
        << "\n";
    jrows.push_back({{"nu", r.nu},
                     {"sigma", r.sigma},
                     {"tv", r.tv},
                     {"approx_mass", r.approx_mass}});
  }
  if (!opt.csv_out.empty()) write_text(csv.str(), opt.csv_out);
  if (!opt.json_out.empty())
    write_text(json{{"rows", jrows}}.dump(2) + "\n", opt.json_out);
  if (opt.csv_out.empty() && opt.json_out.empty()) std::cout << csv.str();
  return 0;
}

int cmd_simulate(const SimulateOpts& opt) {
  if (!(opt.scale > 0.0))
    throw std::invalid_argument("--scale must be positive");

  if (!opt.config_path.empty()) {
    ExperimentConfig cfg = experiment_config_from_json_file(opt.config_path);
    cfg.workers = std::max(cfg.workers, opt.workers);
    SimulateOpts out_opt = opt;
    // The config file may carry its own output paths.
    std::ifstream in(opt.config_path);
    json j;
    in >> j;
    if (out_opt.csv_out.empty())
      out_opt.csv_out = j.value("csv_out", std::string());
    if (out_opt.json_out.empty())
      out_opt.json_out = j.value("json_out", std::string());
    return emit_experiment(cfg, out_opt);
  }

  if (opt.preset == "table1") return run_table1(opt);
  if (opt.preset == "tv-distances") return run_tv_distances(opt);
  if (opt.preset == "sigma-nu-check") return run_sigma_nu_check(opt);

  ExperimentConfig cfg;
  if (opt.preset == "table2")
    cfg = preset_table2();
  else if (opt.preset == "table3")
    cfg = preset_table3();
  else if (opt.preset == "table5")
    cfg = preset_table5();
  else if (opt.preset == "table8-neg80")
    cfg = preset_table8(true);
  else if (opt.preset == "table8-neg20")
    cfg = preset_table8(false);
  else {
    std::cerr << "error: unknown preset '" << opt.preset
              << "'; available presets: " << kPresets << "\n";
    return 1;
  }
  apply_truth_overrides(opt, cfg.truth);
  if (opt.m0) cfg.mh_m0 = *opt.m0;
  cfg.replications = scaled_reps(cfg.replications, opt.scale);
  cfg.seed = opt.seed;
  cfg.workers = opt.workers;
  return emit_experiment(cfg, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian single-subject testing against a control group "
               "under the skewed Student t distribution"};
  app.require_subcommand(1);

  TestOpts test_opts;
  std::string test_column;
  auto* test_cmd =
      app.add_subcommand("test", "Test a single subject against a control "
                                 "group");
  test_cmd->add_option("--control", test_opts.control_path,
                       "Control-group CSV file")
      ->required();
  test_cmd->add_option("--column", test_column,
                       "Column name for multi-column CSV input");
  double subject_value = 0.0;
  auto* subject_opt =
      test_cmd->add_option("--subject", subject_value, "Subject value");
  test_cmd->add_option("--subject-file", test_opts.subject_file,
                       "File holding one subject value");
  test_cmd
      ->add_option("--method", test_opts.methods,
                   "Methods: mh, map, mle, np, z, t, cg, cg-ha, ad")
      ->delimiter(',');
  test_cmd->add_option("--beta", test_opts.beta, "Significance level")
      ->check(CLI::Range(1e-6, 0.999999));
  test_cmd->add_option("--alt", test_opts.alt, "Alternative hypothesis")
      ->check(CLI::IsMember({"two-sided", "less", "greater"}));
  test_cmd->add_option("--seed", test_opts.seed, "RNG seed")
      ->envname("BIGPAST_SEED");
  test_cmd->add_option("--m0", test_opts.m0, "MH chain length");
  test_cmd->add_option("--burn-in", test_opts.burn_in, "MH burn-in fraction");
  test_cmd->add_option("--step", test_opts.step, "MH proposal step size");
  test_cmd->add_option("--s", test_opts.s,
                       "Predictive draws per posterior sample");
  test_cmd->add_option("--prior", test_opts.prior_family,
                       "Prior family: jeffreys, branco, dette, uniform");
  test_cmd->add_option("--c-nu", test_opts.c_nu, "Jeffreys c_nu constant");
  test_cmd->add_option("--cg-draws", test_opts.cg_draws,
                       "Crawford-Garthwaite Monte Carlo draws");
  test_cmd->add_flag("--require-gof", test_opts.require_gof,
                     "Fail when the goodness-of-fit precheck rejects");
  test_cmd->add_option("--out", test_opts.out_path, "Output JSON path");

  FitOpts fit_opts;
  std::string fit_column;
  auto* fit_cmd = app.add_subcommand("fit", "Fit skew-t parameters");
  fit_cmd->add_option("--data", fit_opts.data_path, "Data CSV file")
      ->required();
  fit_cmd->add_option("--column", fit_column, "Column name");
  fit_cmd->add_option("--estimator", fit_opts.estimator, "mle or map")
      ->check(CLI::IsMember({"mle", "map"}));
  fit_cmd->add_option("--prior", fit_opts.prior_family, "Prior family");
  fit_cmd->add_option("--c-nu", fit_opts.c_nu, "Jeffreys c_nu constant");
  fit_cmd->add_option("--out", fit_opts.out_path, "Output JSON path");

  GofOpts gof_opts;
  std::string gof_column;
  auto* gof_cmd =
      app.add_subcommand("gof", "Goodness-of-fit test for the skew-t "
                                "assumption");
  gof_cmd->add_option("--data", gof_opts.data_path, "Data CSV file")
      ->required();
  gof_cmd->add_option("--column", gof_column, "Column name");
  gof_cmd->add_option("--beta", gof_opts.beta,
                      "Level: 0.10, 0.05, 0.025, or 0.01");
  gof_cmd->add_option("--out", gof_opts.out_path, "Output JSON path");

  PriorOpts prior_opts;
  auto* prior_cmd =
      app.add_subcommand("prior", "Evaluate prior densities and Fisher "
                                  "information");
  prior_cmd->add_option("--alpha", prior_opts.alpha, "Skewness")->required();
  prior_cmd->add_option("--nu", prior_opts.nu, "Degrees of freedom")
      ->required();
  prior_cmd->add_option("--xi", prior_opts.xi, "Location");
  prior_cmd->add_option("--omega", prior_opts.omega, "Scale");
  prior_cmd->add_option("--family", prior_opts.family, "Prior family");
  prior_cmd->add_option("--c-nu", prior_opts.c_nu, "Jeffreys c_nu constant");
  prior_cmd->add_option("--out", prior_opts.out_path, "Output JSON path");

  SimulateOpts sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "Run simulation presets or "
                                                 "a JSON experiment config");
  sim_cmd->add_option("--preset", sim_opts.preset, kPresets);
  sim_cmd->add_option("--config", sim_opts.config_path,
                      "Experiment config JSON file");
  sim_cmd->add_option("--scale", sim_opts.scale,
                      "Replication count multiplier");
  sim_cmd->add_option("--seed", sim_opts.seed, "RNG seed")
      ->envname("BIGPAST_SEED");
  sim_cmd->add_option("--workers", sim_opts.workers, "Worker threads");
  sim_cmd->add_option("--csv-out", sim_opts.csv_out, "CSV output path");
  sim_cmd->add_option("--json-out", sim_opts.json_out, "JSON output path");
  double ov_alpha = 0.0, ov_nu = 0.0, ov_xi = 0.0, ov_omega = 0.0;
  auto* oa = sim_cmd->add_option("--alpha", ov_alpha, "Override truth alpha");
  auto* on = sim_cmd->add_option("--nu", ov_nu, "Override truth nu");
  auto* ox = sim_cmd->add_option("--xi", ov_xi, "Override truth xi");
  auto* oo = sim_cmd->add_option("--omega", ov_omega, "Override truth omega");
  int ov_m0 = 0;
  auto* om = sim_cmd->add_option("--m0", ov_m0, "Override MH chain length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (!test_column.empty()) test_opts.column = test_column;
  if (!fit_column.empty()) fit_opts.column = fit_column;
  if (!gof_column.empty()) gof_opts.column = gof_column;
  if (subject_opt->count() > 0) test_opts.subject = subject_value;
  if (oa->count() > 0) sim_opts.alpha = ov_alpha;
  if (on->count() > 0) sim_opts.nu = ov_nu;
  if (ox->count() > 0) sim_opts.xi = ov_xi;
  if (oo->count() > 0) sim_opts.omega = ov_omega;
  if (om->count() > 0) sim_opts.m0 = ov_m0;

  try {
    if (app.got_subcommand(test_cmd)) return cmd_test(test_opts);
    if (app.got_subcommand(fit_cmd)) return cmd_fit(fit_opts);
    if (app.got_subcommand(gof_cmd)) return cmd_gof(gof_opts);
    if (app.got_subcommand(prior_cmd)) return cmd_prior(prior_opts);
    if (app.got_subcommand(sim_cmd)) {
      if (sim_opts.preset.empty() && sim_opts.config_path.empty()) {
        std::cerr << "error: provide --preset or --config; available "
                     "presets: "
                  << kPresets << "\n";
        return 1;
      }
      return cmd_simulate(sim_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
