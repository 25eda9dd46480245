// Command-line front end: every library capability as a subcommand emitting
// plot-ready CSV/JSON. Exit codes: 0 success, 1 numerical failure, 2 usage
// error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "indprior/distributions.hpp"
#include "indprior/eta_moments.hpp"
#include "indprior/genfunc.hpp"
#include "indprior/induced.hpp"
#include "indprior/inference.hpp"
#include "indprior/io.hpp"
#include "indprior/occupancy.hpp"
#include "indprior/prior_builder.hpp"
#include "indprior/sim_harness.hpp"
#include "indprior/special.hpp"

namespace {

using namespace indprior;

/// Flag/argument problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + tok + "'");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_doubles(csv)) out.push_back(static_cast<int>(v));
  return out;
}

/// Density described as family:param,param. Families: uniform, normal
/// (mean,variance), logistic (mu,s), beta (alpha,beta).
DensityFn parse_density(const std::string& text) {
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) args = parse_doubles(text.substr(colon + 1));
  if (family == "uniform") {
    return {[](double t) { return (t > 0.0 && t < 1.0) ? 1.0 : 0.0; }, 0.0, 1.0};
  }
  if (family == "normal") {
    if (args.size() != 2) throw UsageError("normal prior needs mean,variance");
    const NormalParams p{args[0], args[1]};
    p.validate();
    return {[p](double x) { return normal_pdf(x, p); }, -1e300, 1e300};
  }
  if (family == "logistic") {
    if (args.size() != 2) throw UsageError("logistic prior needs mu,s");
    const LogisticParams p{args[0], args[1]};
    p.validate();
    return {[p](double x) { return logistic_pdf(x, p); }, -1e300, 1e300};
  }
  if (family == "beta") {
    if (args.size() != 2) throw UsageError("beta prior needs alpha,beta");
    const BetaShape p{args[0], args[1]};
    p.validate();
    return {[p](double t) { return beta_pdf(t, p); }, 0.0, 1.0};
  }
  throw UsageError("unknown prior family '" + family +
                   "'; known families: uniform, normal:mean,variance, "
                   "logistic:mu,s, beta:alpha,beta");
}

std::string density_csv(const std::string& provenance,
                        const std::vector<double>& grid,
                        const std::vector<double>& density) {
  std::ostringstream os;
  os << provenance << "\n" << "grid,density\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << format_double(grid[i]) << "," << format_double(density[i]) << "\n";
  }
  return os.str();
}

std::string histogram_csv(const std::string& provenance, const Histogram& h) {
  return density_csv(provenance, h.centers, h.density);
}

/// Builds a PriorSpec from the shared build-prior style flags.
struct PriorFlags {
  std::string kind = "logistic";
  int p = 0;
  double mean = -1.0, cv = -1.0, alpha = -1.0, beta = -1.0;
  double k = -1.0;
  double sd = 1000.0;
  std::string json_path;

  void attach(CLI::App* cmd, const std::string& prefix = "") {
    const std::string dash = prefix.empty() ? "--" : "--" + prefix + "-";
    cmd->add_option(dash + "kind", kind,
                    "Prior kind: vague, logistic, beta_matched, weighted");
    cmd->add_option(dash + "p", p, "Number of covariates");
    cmd->add_option(dash + "mean", mean, "Target E[theta]");
    cmd->add_option(dash + "cv", cv, "Target CV[theta]");
    cmd->add_option(dash + "alpha", alpha, "Target Beta alpha");
    cmd->add_option(dash + "beta", beta, "Target Beta beta");
    cmd->add_option(dash + "k", k, "Weighted-prior intercept fraction in (0,1)");
    cmd->add_option(dash + "sd", sd, "Vague prior standard deviation");
    cmd->add_option(dash + "json", json_path, "Read the prior from a JSON file");
  }

  std::optional<BetaShape> target() const {
    if (alpha > 0.0 || beta > 0.0) {
      if (!(alpha > 0.0 && beta > 0.0)) throw UsageError("need both --alpha and --beta");
      return BetaShape{alpha, beta};
    }
    if (mean > 0.0 || cv > 0.0) {
      if (!(mean > 0.0 && cv > 0.0)) throw UsageError("need both --mean and --cv");
      return beta_shapes_from_mean_cv(mean, cv);
    }
    return std::nullopt;
  }

  PriorSpec build() const {
    if (!json_path.empty()) return prior_spec_from_json(read_text_file(json_path));
    const PriorKind pk = prior_kind_from_string(kind);
    switch (pk) {
      case PriorKind::vague: return vague_priors(p, sd);
      case PriorKind::logistic: return logistic_matched_priors(p);
      case PriorKind::beta_matched: {
        const auto t = target();
        if (!t) throw UsageError("beta_matched needs --mean/--cv or --alpha/--beta");
        return beta_matched_priors(p, *t);
      }
      case PriorKind::weighted: {
        const auto t = target();
        if (!t) throw UsageError("weighted needs --mean/--cv or --alpha/--beta");
        return weighted_priors(p, t ? *t : BetaShape{}, k);
      }
    }
    throw UsageError("unreachable prior kind");
  }
};

std::string summary_csv(const std::string& provenance,
                        const PosteriorSummary& summary,
                        const std::vector<std::string>& names) {
  std::ostringstream os;
  os << provenance << "\n" << "parameter,mean,ci_low,ci_high,map,rhat\n";
  for (std::size_t j = 0; j < summary.coefficients.size(); ++j) {
    const auto& c = summary.coefficients[j];
    os << names[j] << "," << format_double(c.mean) << "," << format_double(c.ci_low)
       << "," << format_double(c.ci_high) << "," << format_double(c.map) << ","
       << format_double(c.rhat) << "\n";
  }
  return os.str();
}

void print_summary(const PosteriorSummary& summary,
                   const std::vector<std::string>& names) {
  std::printf("%-10s %12s %12s %12s %12s %8s\n", "parameter", "mean", "ci_low",
              "ci_high", "map", "rhat");
  for (std::size_t j = 0; j < summary.coefficients.size(); ++j) {
    const auto& c = summary.coefficients[j];
    std::printf("%-10s %12.4f %12.4f %12.4f %12.4f %8.4f\n", names[j].c_str(),
                c.mean, c.ci_low, c.ci_high, c.map, c.rhat);
  }
}

std::string chains_csv(const std::string& provenance, const Chains& chains,
                       const std::vector<std::string>& names) {
  std::ostringstream os;
  os << provenance << "\n" << "chain,iteration";
  for (const auto& n : names) os << "," << n;
  os << "\n";
  for (std::size_t c = 0; c < chains.n_chains; ++c) {
    for (std::size_t t = 0; t < chains.iterations; ++t) {
      os << c << "," << t;
      for (std::size_t k = 0; k < chains.dim; ++k) {
        os << "," << format_double(chains.at(c, t, k));
      }
      os << "\n";
    }
  }
  return os.str();
}

Dataset read_dataset_csv(const std::string& path, bool restandardize) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open data file: " + path);
  std::string line;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    if (header.empty()) {
      while (std::getline(ls, cell, ',')) header.push_back(cell);
      if (header.empty() || header[0] != "y") {
        throw UsageError("data file must start with a 'y,x1,...' header");
      }
      continue;
    }
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != header.size()) throw UsageError("ragged data row in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw UsageError("no data rows in " + path);
  Dataset d;
  d.n = rows.size();
  d.p = header.size() - 1;
  d.y.resize(d.n);
  d.X.resize(d.n * d.p);
  for (std::size_t i = 0; i < d.n; ++i) {
    const double yv = rows[i][0];
    if (yv != 0.0 && yv != 1.0) throw UsageError("responses must be 0 or 1");
    d.y[i] = static_cast<int>(yv);
    for (std::size_t j = 0; j < d.p; ++j) d.X[i * d.p + j] = rows[i][j + 1];
  }
  if (restandardize && d.p > 0) {
    d.X = standardize(d.X, d.n, d.p).X;
    d.standardized = true;
  }
  return d;
}

std::vector<std::string> coef_names(std::size_t dim, const std::string& stem) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < dim; ++j) names.push_back(stem + std::to_string(j));
  return names;
}

int run(int argc, char** argv) {
  CLI::App app{"indprior: priors for logistic-regression coefficients that induce a chosen distribution on the Bernoulli probability"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;

  // -------------------------------------------------------------- induce
  auto* induce = app.add_subcommand(
      "induce", "Induced density across the logit change of variables");
  std::string induce_direction, induce_prior;
  int induce_grid = 512;
  double bmin = -10.0, bmax = 10.0;
  std::string induce_out = "induced.csv", induce_json_out;
  induce->add_option("--direction", induce_direction, "theta or beta")->required();
  induce->add_option("--prior", induce_prior,
                     "family:params (uniform | normal:mean,variance | "
                     "logistic:mu,s | beta:alpha,beta)")->required();
  induce->add_option("--grid", induce_grid, "Grid points");
  induce->add_option("--bmin", bmin, "Lower beta-grid endpoint");
  induce->add_option("--bmax", bmax, "Upper beta-grid endpoint");
  induce->add_option("--out", induce_out, "Output CSV path");
  induce->add_option("--out-json", induce_json_out, "Optional JSON output path");

  // ---------------------------------------------------------- build-prior
  auto* build = app.add_subcommand("build-prior",
                                   "Construct a matched coefficient prior");
  PriorFlags build_flags;
  build_flags.attach(build);
  std::string build_out;
  build->add_option("--out", build_out, "Write the PriorSpec JSON here");

  // ---------------------------------------------------------- eta-moments
  auto* etam = app.add_subcommand(
      "eta-moments", "Mean/variance of logit(theta) for a Beta target");
  double em_alpha = -1.0, em_beta = -1.0, em_mean = -1.0, em_cv = -1.0;
  etam->add_option("--alpha", em_alpha, "Beta alpha");
  etam->add_option("--beta", em_beta, "Beta beta");
  etam->add_option("--mean", em_mean, "Target E[theta]");
  etam->add_option("--cv", em_cv, "Target CV[theta]");

  // ---------------------------------------------------------- sample-root
  auto* sroot = app.add_subcommand(
      "sample-root", "Sample the root-logistic coefficient distribution");
  int sr_p = 0;
  std::size_t sr_n = 10000;
  std::string sr_out = "root_samples.csv", sr_table_out;
  sroot->add_option("--p", sr_p, "Covariate count (root order p+1)")->required();
  sroot->add_option("--n", sr_n, "Sample count");
  sroot->add_option("--seed", seed, "RNG seed")->required();
  sroot->add_option("--out", sr_out, "Samples CSV path");
  sroot->add_option("--density-out", sr_table_out,
                    "Also write the tabulated pdf/cdf here");

  // ------------------------------------------------------- genfunc-curves
  auto* curves = app.add_subcommand(
      "genfunc-curves", "Root MGF/CF curves on a t grid");
  std::string gc_plist = "0,1,3";
  double gc_tmax = 0.95;
  int gc_points = 99;
  std::string gc_out = "genfunc_curves.csv";
  curves->add_option("--p", gc_plist, "Comma-separated covariate counts");
  curves->add_option("--tmax", gc_tmax, "Largest |t|");
  curves->add_option("--points", gc_points, "Grid points");
  curves->add_option("--out", gc_out, "Output CSV path");

  // --------------------------------------------------------- laplace-half
  auto* laplace = app.add_subcommand(
      "laplace-half", "One-sided Laplace transform of the doubled logistic");
  double lp_t = 0.1, lp_mu = 0.0, lp_s = 1.0;
  laplace->add_option("--t", lp_t, "Transform argument (> 0)")->required();
  laplace->add_option("--mu", lp_mu, "Location");
  laplace->add_option("--s", lp_s, "Scale");

  // ------------------------------------------------------------------ fit
  auto* fit = app.add_subcommand("fit", "Bayesian logistic regression");
  std::string fit_data, fit_summary_out, fit_chains_out;
  PriorFlags fit_prior;
  McmcSettings fit_mcmc;
  bool fit_no_standardize = false;
  fit->add_option("--data", fit_data, "CSV with a y,x1,...,xp header")->required();
  fit_prior.attach(fit);
  fit->add_option("--chains", fit_mcmc.chains, "Chain count");
  fit->add_option("--iterations", fit_mcmc.iterations, "Iterations per chain");
  fit->add_option("--burnin", fit_mcmc.burnin, "Burn-in iterations");
  fit->add_option("--seed", seed, "RNG seed")->required();
  fit->add_flag("--no-standardize", fit_no_standardize,
                "Use covariates as-is instead of standardizing");
  fit->add_option("--out-summary", fit_summary_out, "Summary CSV path");
  fit->add_option("--out-chains", fit_chains_out, "Chains CSV path");
  std::string fit_json_out, fit_hist_prefix;
  fit->add_option("--out-json", fit_json_out, "Summary JSON path");
  fit->add_option("--out-histograms", fit_hist_prefix,
                  "Writes a posterior histogram CSV per coefficient: "
                  "<prefix>_beta_<j>.csv");

  // ------------------------------------------------------------- simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Replicated frequentist study (MSE*, MSE, coverage). Config "
      "keys: scenario, n, replicates, seed, priors, mean, cv, alpha, beta, k, "
      "intercept, chains, iterations, burnin, threads, gamma_parameterization, "
      "vague_sd");
  std::string sim_config, sim_csv_out = "simulation.csv", sim_json_out;
  int sim_threads = 0;
  std::uint64_t sim_seed = 0;
  bool sim_seed_given = false;
  std::size_t sim_replicates = 0;
  simulate->add_option("--config", sim_config, "key=value config file")->required();
  simulate->add_option("--seed", sim_seed, "Master seed (overrides config)");
  simulate->add_option("--threads", sim_threads, "Worker threads");
  simulate->add_option("--replicates", sim_replicates, "Override replicate count");
  simulate->add_option("--out", sim_csv_out, "Report CSV path");
  simulate->add_option("--out-json", sim_json_out, "Report JSON path");

  // ------------------------------------------------------------ occupancy
  auto* occ = app.add_subcommand("occupancy", "Synthetic occupancy model");
  occ->require_subcommand(1);

  auto* occ_sim = occ->add_subcommand("sim", "Simulate presence/detection data");
  std::size_t occ_sites = 200, occ_visits = 3;
  std::string occ_psi_betas = "0.3,0.4,-0.3,0.2", occ_det_betas = "0.5,0.3,-0.4,0.1";
  std::string occ_prefix = "occupancy";
  occ_sim->add_option("--sites", occ_sites, "Site count");
  occ_sim->add_option("--visits", occ_visits, "Visits per site");
  occ_sim->add_option("--psi-betas", occ_psi_betas, "Occupancy coefficients");
  occ_sim->add_option("--det-betas", occ_det_betas, "Detection coefficients");
  occ_sim->add_option("--seed", seed, "RNG seed")->required();
  occ_sim->add_option("--out-prefix", occ_prefix,
                      "Writes <prefix>_sites.csv and <prefix>_detections.csv");

  auto* occ_fit = occ->add_subcommand("fit", "Fit the occupancy model");
  std::string occ_data_prefix = "occupancy";
  PriorFlags occ_psi_prior, occ_det_prior;
  McmcSettings occ_mcmc;
  std::string occ_out;
  occ_fit->add_option("--data-prefix", occ_data_prefix,
                      "Reads <prefix>_sites.csv and <prefix>_detections.csv");
  occ_psi_prior.attach(occ_fit, "psi");
  occ_det_prior.attach(occ_fit, "det");
  occ_fit->add_option("--chains", occ_mcmc.chains, "Chain count");
  occ_fit->add_option("--iterations", occ_mcmc.iterations, "Iterations per chain");
  occ_fit->add_option("--burnin", occ_mcmc.burnin, "Burn-in iterations");
  occ_fit->add_option("--seed", seed, "RNG seed")->required();
  occ_fit->add_option("--out-summary", occ_out, "Summary CSV path");

  auto* occ_ind = occ->add_subcommand(
      "induced", "Induced priors on occupancy and detection probabilities");
  PriorFlags ind_psi_prior, ind_det_prior;
  std::size_t ind_draws = 100000, ind_rows = 400;
  std::string ind_out_prefix = "induced_occupancy";
  ind_psi_prior.attach(occ_ind, "psi");
  ind_det_prior.attach(occ_ind, "det");
  occ_ind->add_option("--draws", ind_draws, "Monte Carlo draws");
  occ_ind->add_option("--rows", ind_rows,
                      "Synthetic standardized covariate rows to average over "
                      "(0 = intercept only)");
  occ_ind->add_option("--seed", seed, "RNG seed")->required();
  occ_ind->add_option("--out-prefix", ind_out_prefix,
                      "Writes <prefix>_psi.csv and <prefix>_det.csv");

  // ------------------------------------------------------------ricker-demo
  auto* ricker = app.add_subcommand(
      "ricker-demo", "Induced priors across the two Ricker parameterizations");
  double rk_sd_a = 10.0, rk_sd_b = 10.0, rk_sd_k = 10.0;
  std::size_t rk_n = 100000;
  std::string rk_prefix = "ricker";
  ricker->add_option("--sd-a", rk_sd_a, "Half-normal sd for the growth rate");
  ricker->add_option("--sd-b", rk_sd_b, "Half-normal sd for density dependence");
  ricker->add_option("--sd-k", rk_sd_k, "Half-normal sd for carrying capacity (model B)");
  ricker->add_option("--n", rk_n, "Draws");
  ricker->add_option("--seed", seed, "RNG seed")->required();
  ricker->add_option("--out-prefix", rk_prefix,
                     "Writes <prefix>_modelA_K.csv and <prefix>_modelB_b.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help is success, anything else is usage
  }

  // ---------------------------------------------------------------------
  if (*induce) {
    const std::map<std::string, std::string> opts = {
        {"direction", induce_direction},
        {"prior", induce_prior},
        {"grid", std::to_string(induce_grid)}};
    const std::string prov = provenance_line("induce", 0, opts);
    const DensityFn prior = parse_density(induce_prior);
    std::vector<double> grid(induce_grid), dens(induce_grid);
    if (induce_direction == "theta") {
      for (int i = 0; i < induce_grid; ++i) {
        grid[i] = (i + 0.5) / induce_grid;
        dens[i] = induce_theta_density(prior, grid[i]);
      }
    } else if (induce_direction == "beta") {
      if (!(bmax > bmin)) throw UsageError("need --bmax > --bmin");
      for (int i = 0; i < induce_grid; ++i) {
        grid[i] = bmin + (bmax - bmin) * i / (induce_grid - 1.0);
        dens[i] = induce_beta_density(prior, grid[i]);
      }
    } else {
      throw UsageError("--direction must be theta or beta");
    }
    write_text_file(induce_out, density_csv(prov, grid, dens));
    if (!induce_json_out.empty()) {
      nlohmann::json j;
      j["direction"] = induce_direction;
      j["prior"] = induce_prior;
      j["grid"] = grid;
      j["density"] = dens;
      write_text_file(induce_json_out, j.dump(2));
    }
    std::cout << "wrote " << induce_out << "\n";
    return 0;
  }

  if (*build) {
    const PriorSpec spec = build_flags.build();
    const std::string json = prior_spec_to_json(spec);
    std::cout << json << "\n";
    if (!build_out.empty()) write_text_file(build_out, json);
    return 0;
  }

  if (*etam) {
    BetaShape shape{em_alpha, em_beta};
    if (em_mean > 0.0 || em_cv > 0.0) {
      if (!(em_mean > 0.0 && em_cv > 0.0)) throw UsageError("need both --mean and --cv");
      shape = beta_shapes_from_mean_cv(em_mean, em_cv);
    } else if (!(em_alpha > 0.0 && em_beta > 0.0)) {
      throw UsageError("need --alpha/--beta or --mean/--cv");
    }
    const auto m1 = eta_moment(shape, 1);
    const auto m2 = eta_moment(shape, 2);
    const auto quad = eta_mean_var(shape);
    const auto exact = eta_mean_var_analytic(shape);
    nlohmann::json j;
    j["target"] = {{"alpha", shape.alpha}, {"beta", shape.beta}};
    j["quadrature"] = {{"mu_eta", quad.mu_eta},
                       {"var_eta", quad.var_eta},
                       {"moment1_error", m1.error},
                       {"moment2_error", m2.error}};
    j["analytic"] = {{"mu_eta", exact.mu_eta}, {"var_eta", exact.var_eta}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (*sroot) {
    if (sr_p < 0) throw UsageError("--p must be >= 0");
    if (sr_n < 1) throw UsageError("--n must be >= 1");
    const std::map<std::string, std::string> opts = {
        {"p", std::to_string(sr_p)}, {"n", std::to_string(sr_n)}};
    const std::string prov = provenance_line("sample-root", seed, opts);
    RngStream rng(seed);
    const auto draws = sample_root_logistic(sr_p, sr_n, rng);
    std::ostringstream os;
    os << prov << "\n" << "sample\n";
    for (double v : draws) os << format_double(v) << "\n";
    write_text_file(sr_out, os.str());
    if (!sr_table_out.empty()) {
      const auto table = root_logistic_table(sr_p);
      std::ostringstream ts;
      ts << prov << "\n" << "grid,pdf,cdf\n";
      for (std::size_t i = 0; i < table.grid.size(); ++i) {
        ts << format_double(table.grid[i]) << "," << format_double(table.pdf[i])
           << "," << format_double(table.cdf[i]) << "\n";
      }
      write_text_file(sr_table_out, ts.str());
    }
    std::cout << "wrote " << sr_out << "\n";
    return 0;
  }

  if (*curves) {
    const auto ps = parse_ints(gc_plist);
    for (int p : ps) {
      if (p < 0) throw UsageError("--p entries must be >= 0");
    }
    if (gc_points < 2) throw UsageError("--points must be >= 2");
    const std::map<std::string, std::string> opts = {
        {"p", gc_plist}, {"tmax", format_double(gc_tmax)}};
    std::ostringstream os;
    os << provenance_line("genfunc-curves", 0, opts) << "\n";
    os << "t";
    for (int p : ps) os << ",mgf_p" << p << ",cf_p" << p;
    os << "\n";
    std::size_t omitted = 0;
    for (int i = 0; i < gc_points; ++i) {
      const double t = -gc_tmax + 2.0 * gc_tmax * i / (gc_points - 1.0);
      if (std::fabs(t) >= 1.0) {
        ++omitted;
        continue;  // outside the MGF strip
      }
      os << format_double(t);
      for (int p : ps) {
        os << "," << format_double(root_mgf(t, p)) << "," << format_double(root_cf(t, p));
      }
      os << "\n";
    }
    if (omitted > 0) {
      std::cerr << "warning: omitted " << omitted
                << " grid rows outside the MGF strip |t| < 1\n";
    }
    write_text_file(gc_out, os.str());
    std::cout << "wrote " << gc_out << "\n";
    return 0;
  }

  if (*laplace) {
    const LogisticParams params{lp_mu, lp_s};
    const double doubled = half_logistic_laplace(lp_t, params);
    std::cout << "half_logistic_laplace=" << format_double(doubled)
              << " undoubled=" << format_double(doubled / 2.0) << "\n";
    return 0;
  }

  if (*fit) {
    const Dataset data = read_dataset_csv(fit_data, !fit_no_standardize);
    PriorFlags flags = fit_prior;
    flags.p = static_cast<int>(data.p);
    const PriorSpec prior = flags.build();
    if (prior.p != static_cast<int>(data.p)) {
      throw UsageError("prior dimension does not match the data");
    }
    const std::map<std::string, std::string> opts = {
        {"data", fit_data},
        {"prior", to_string(prior.kind)},
        {"chains", std::to_string(fit_mcmc.chains)},
        {"iterations", std::to_string(fit_mcmc.iterations)},
        {"burnin", std::to_string(fit_mcmc.burnin)}};
    const std::string prov = provenance_line("fit", seed, opts);
    const Chains chains = mh_sample(data, prior, fit_mcmc, seed);
    const PosteriorSummary summary = summarize(chains);
    const auto names = coef_names(chains.dim, "beta_");
    print_summary(summary, names);
    const MleResult mle = logistic_mle(data);
    std::cout << "mle:";
    for (double b : mle.beta) std::cout << " " << format_double(b, 6);
    std::cout << (mle.converged ? "" : " (not converged)") << "\n";
    if (!fit_summary_out.empty()) {
      write_text_file(fit_summary_out, summary_csv(prov, summary, names));
    }
    if (!fit_chains_out.empty()) {
      write_text_file(fit_chains_out, chains_csv(prov, chains, names));
    }
    if (!fit_json_out.empty()) {
      nlohmann::json j;
      j["seed"] = seed;
      j["mle"] = mle.beta;
      j["mle_converged"] = mle.converged;
      for (std::size_t k = 0; k < chains.dim; ++k) {
        const auto& c = summary.coefficients[k];
        j["coefficients"][names[k]] = {{"mean", c.mean},
                                       {"ci_low", c.ci_low},
                                       {"ci_high", c.ci_high},
                                       {"map", c.map},
                                       {"rhat", c.rhat}};
      }
      write_text_file(fit_json_out, j.dump(2));
    }
    if (!fit_hist_prefix.empty()) {
      std::vector<double> pooled;
      pooled.reserve(chains.n_chains * chains.post_burnin());
      for (std::size_t k = 0; k < chains.dim; ++k) {
        pooled.clear();
        for (std::size_t c = 0; c < chains.n_chains; ++c) {
          for (std::size_t t = chains.burnin; t < chains.iterations; ++t) {
            pooled.push_back(chains.at(c, t, k));
          }
        }
        const Histogram h = make_histogram(pooled, 128);
        write_text_file(fit_hist_prefix + "_" + names[k] + ".csv",
                        histogram_csv(prov, h));
      }
    }
    return 0;
  }

  if (*simulate) {
    if (!std::ifstream(sim_config)) {
      throw UsageError("cannot open config file: " + sim_config);
    }
    auto kv = parse_config_file(sim_config);
    if (sim_seed_given || simulate->count("--seed") > 0) {
      kv["seed"] = std::to_string(sim_seed);
    }
    if (sim_threads > 0) kv["threads"] = std::to_string(sim_threads);
    if (sim_replicates > 0) kv["replicates"] = std::to_string(sim_replicates);
    const ScenarioSpec spec = scenario_from_config(kv);
    const std::string prov = provenance_line("simulate", spec.master_seed, kv);
    const SimulationReport report = run_study(spec);
    write_text_file(sim_csv_out, report_to_csv(report, prov));
    if (!sim_json_out.empty()) write_text_file(sim_json_out, report_to_json(report));
    std::cout << report_to_csv(report, prov);
    return 0;
  }

  if (*occ_sim) {
    const auto psi_betas = parse_doubles(occ_psi_betas);
    const auto det_betas = parse_doubles(occ_det_betas);
    if (psi_betas.empty() || det_betas.empty()) throw UsageError("empty coefficients");
    // Scenario-style Gamma generators for however many covariates are implied.
    const std::vector<GammaSpec> pool = {{10.0, 2.0}, {12.0, 6.0}, {3.0, 3.0},
                                         {5.0, 1.0},  {8.0, 4.0},  {2.0, 1.0}};
    if (psi_betas.size() - 1 > pool.size() || det_betas.size() - 1 > pool.size()) {
      throw UsageError("at most " + std::to_string(pool.size()) +
                       " covariates per block");
    }
    std::vector<GammaSpec> occ_cov(pool.begin(), pool.begin() + (psi_betas.size() - 1));
    std::vector<GammaSpec> det_cov(pool.begin(), pool.begin() + (det_betas.size() - 1));
    const auto data = simulate_occupancy(psi_betas, det_betas, occ_cov, det_cov,
                                         occ_sites, occ_visits, seed);
    const std::map<std::string, std::string> opts = {
        {"sites", std::to_string(occ_sites)},
        {"visits", std::to_string(occ_visits)},
        {"psi_betas", occ_psi_betas},
        {"det_betas", occ_det_betas}};
    const auto csv = occupancy_to_csv(data, provenance_line("occupancy-sim", seed, opts));
    write_text_file(occ_prefix + "_sites.csv", csv.sites);
    write_text_file(occ_prefix + "_detections.csv", csv.detections);
    std::cout << "wrote " << occ_prefix << "_sites.csv and " << occ_prefix
              << "_detections.csv\n";
    return 0;
  }

  if (*occ_fit) {
    const std::string sites_path = occ_data_prefix + "_sites.csv";
    const std::string det_path = occ_data_prefix + "_detections.csv";
    if (!std::ifstream(sites_path) || !std::ifstream(det_path)) {
      throw UsageError("cannot open " + sites_path + " / " + det_path);
    }
    const auto data = occupancy_from_csv(read_text_file(sites_path),
                                         read_text_file(det_path));
    PriorFlags psi_flags = occ_psi_prior, det_flags = occ_det_prior;
    psi_flags.p = static_cast<int>(data.q);
    det_flags.p = static_cast<int>(data.r);
    OccupancyFitOptions options;
    options.mcmc = occ_mcmc;
    const auto fitres = fit_occupancy(data, psi_flags.build(), det_flags.build(),
                                      options, seed);
    const auto psi_names = coef_names(data.q + 1, "psi_beta_");
    const auto det_names = coef_names(data.r + 1, "det_beta_");
    std::cout << "occupancy block:\n";
    print_summary(fitres.psi_summary, psi_names);
    std::cout << "detection block:\n";
    print_summary(fitres.det_summary, det_names);
    if (!occ_out.empty()) {
      const std::map<std::string, std::string> opts = {
          {"data_prefix", occ_data_prefix}};
      const std::string prov = provenance_line("occupancy-fit", seed, opts);
      std::ostringstream os;
      os << summary_csv(prov, fitres.psi_summary, psi_names)
         << summary_csv(prov, fitres.det_summary, det_names);
      write_text_file(occ_out, os.str());
    }
    return 0;
  }

  if (*occ_ind) {
    PriorFlags psi_flags = ind_psi_prior, det_flags = ind_det_prior;
    const PriorSpec psi_prior = psi_flags.build();
    const PriorSpec det_prior = det_flags.build();
    RngStream row_rng(seed ^ 0xABCD);
    std::vector<std::vector<double>> psi_rows(ind_rows), det_rows(ind_rows);
    for (std::size_t i = 0; i < ind_rows; ++i) {
      psi_rows[i].resize(psi_prior.p);
      det_rows[i].resize(det_prior.p);
      for (auto& v : psi_rows[i]) v = row_rng.normal();
      for (auto& v : det_rows[i]) v = row_rng.normal();
    }
    const auto induced = induced_occupancy_priors(psi_prior, det_prior, psi_rows,
                                                  det_rows, ind_draws, seed);
    const std::map<std::string, std::string> opts = {
        {"psi_kind", to_string(psi_prior.kind)},
        {"det_kind", to_string(det_prior.kind)},
        {"draws", std::to_string(ind_draws)}};
    const std::string prov = provenance_line("occupancy-induced", seed, opts);
    write_text_file(ind_out_prefix + "_psi.csv",
                    histogram_csv(prov, induced.psi_histogram));
    write_text_file(ind_out_prefix + "_det.csv",
                    histogram_csv(prov, induced.det_histogram));
    std::cout << "wrote " << ind_out_prefix << "_psi.csv and " << ind_out_prefix
              << "_det.csv\n";
    return 0;
  }

  if (*ricker) {
    const std::map<std::string, std::string> opts = {
        {"sd_a", format_double(rk_sd_a)},
        {"sd_b", format_double(rk_sd_b)},
        {"sd_k", format_double(rk_sd_k)},
        {"n", std::to_string(rk_n)}};
    const std::string prov = provenance_line("ricker-demo", seed, opts);

    PushforwardSpec model_a;
    model_a.samplers = {
        {"a", [=](RngStream& rs) { return std::fabs(rs.normal(0.0, rk_sd_a)); }},
        {"b", [=](RngStream& rs) { return std::fabs(rs.normal(0.0, rk_sd_b)); }}};
    model_a.transform = [](std::span<const double> v) { return v[0] / v[1]; };
    model_a.n_samples = rk_n;
    const auto k_induced = pushforward_sample(model_a, seed);

    PushforwardSpec model_b;
    model_b.samplers = {
        {"a", [=](RngStream& rs) { return std::fabs(rs.normal(0.0, rk_sd_a)); }},
        {"K", [=](RngStream& rs) { return std::fabs(rs.normal(0.0, rk_sd_k)); }}};
    model_b.transform = [](std::span<const double> v) { return v[0] / v[1]; };
    model_b.n_samples = rk_n;
    const auto b_induced = pushforward_sample(model_b, seed + 1);

    write_text_file(rk_prefix + "_modelA_K.csv",
                    histogram_csv(prov, k_induced.histogram));
    write_text_file(rk_prefix + "_modelB_b.csv",
                    histogram_csv(prov, b_induced.histogram));

    auto skew = [](const std::vector<double>& v) {
      double m = 0.0;
      for (double x : v) m += x;
      m /= static_cast<double>(v.size());
      double m2 = 0.0, m3 = 0.0;
      for (double x : v) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
      }
      m2 /= static_cast<double>(v.size());
      m3 /= static_cast<double>(v.size());
      return m3 / std::pow(m2, 1.5);
    };
    std::cout << "modelA induced K skewness=" << format_double(skew(k_induced.draws), 6)
              << "\nmodelB induced b skewness=" << format_double(skew(b_induced.draws), 6)
              << "\n";
    return 0;
  }

  throw UsageError("no subcommand handled");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
