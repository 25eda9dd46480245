#include "indprior/sim_harness.hpp"

#include <cmath>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "indprior/io.hpp"
#include "indprior/special.hpp"

namespace indprior {

void ScenarioSpec::validate() const {
  if (true_betas.size() != p() + 1) {
    throw std::invalid_argument("ScenarioSpec: true_betas must have length p+1");
  }
  if (n < p() + 2) throw std::invalid_argument("ScenarioSpec: need n >= p+2");
  if (replicates < 1) throw std::invalid_argument("ScenarioSpec: replicates must be >= 1");
  if (priors.empty()) throw std::invalid_argument("ScenarioSpec: no priors to compare");
  if (priors.size() != prior_names.size()) {
    throw std::invalid_argument("ScenarioSpec: prior/name count mismatch");
  }
  for (const auto& pr : priors) {
    pr.validate();
    if (pr.p != static_cast<int>(p())) {
      throw std::invalid_argument("ScenarioSpec: prior dimension mismatch");
    }
  }
}

ScenarioSpec scenario1_spec(std::size_t n) {
  ScenarioSpec spec;
  spec.id = ScenarioId::scenario1;
  spec.n = n;
  spec.true_betas = {-0.5, 0.3};
  spec.covariates = {{3.0, 0.2}};
  spec.priors = {vague_priors(1), logistic_matched_priors(1)};
  spec.prior_names = {"vague", "logistic"};
  return spec;
}

ScenarioSpec scenario23_spec(std::size_t n, double intercept) {
  ScenarioSpec spec;
  spec.id = ScenarioId::scenario23;
  spec.n = n;
  spec.true_betas = {intercept, 0.3, -0.6, 0.02};
  spec.covariates = {{10.0, 2.0}, {12.0, 6.0}, {3.0, 3.0}};
  spec.priors = {vague_priors(3), logistic_matched_priors(3)};
  spec.prior_names = {"vague", "logistic"};
  return spec;
}

Dataset generate_scenario(const ScenarioSpec& spec, std::size_t replicate_index) {
  spec.validate();
  RngStream root = RngStream(spec.master_seed).substream(replicate_index);
  const std::size_t p = spec.p();

  Dataset data;
  data.n = spec.n;
  data.p = p;
  data.truth = spec.true_betas;

  for (std::uint64_t attempt = 0;; ++attempt) {
    RngStream rng = root.substream(attempt);
    data.seed = rng.seed();
    std::vector<double> raw(spec.n * p);
    for (std::size_t i = 0; i < spec.n; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        const GammaSpec& g = spec.covariates[j];
        const double scale = spec.rate_parameterization ? 1.0 / g.rate : g.rate;
        raw[i * p + j] = rng.gamma(g.shape) * scale;
      }
    }
    try {
      if (p > 0) {
        data.X = standardize(raw, spec.n, p).X;
      }
      data.standardized = true;
    } catch (const std::invalid_argument&) {
      std::cerr << "generate_scenario: degenerate covariate draw, replicate "
                << replicate_index << ", retrying\n";
      continue;
    }
    data.y.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double theta = expit(data.eta(i, spec.true_betas));
      data.y[i] = rng.bernoulli(theta) ? 1 : 0;
    }
    return data;
  }
}

double mse(std::span<const double> estimates, double target) {
  if (estimates.empty()) throw std::invalid_argument("mse: no estimates");
  double acc = 0.0;
  for (double e : estimates) acc += (e - target) * (e - target);
  return acc / static_cast<double>(estimates.size());
}

double mse(std::span<const double> estimates, std::span<const double> targets) {
  if (estimates.empty()) throw std::invalid_argument("mse: no estimates");
  if (estimates.size() != targets.size()) {
    throw std::invalid_argument("mse: estimate/target length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    acc += (estimates[i] - targets[i]) * (estimates[i] - targets[i]);
  }
  return acc / static_cast<double>(estimates.size());
}

SimulationReport run_study(const ScenarioSpec& spec) {
  spec.validate();
  const std::size_t d = spec.p() + 1;
  const std::size_t n_priors = spec.priors.size();
  const std::size_t reps = spec.replicates;

  struct ReplicateOutcome {
    std::vector<double> mle;          // length d
    bool mle_converged = false;
    std::vector<double> post_mean;    // n_priors * d
    std::vector<char> covered;        // n_priors * d
  };
  std::vector<ReplicateOutcome> outcomes(reps);

  RngStream master(spec.master_seed);
  parallel_for(reps, spec.threads, [&](std::size_t r) {
    ReplicateOutcome& out = outcomes[r];
    const Dataset data = generate_scenario(spec, r);
    const MleResult mle = logistic_mle(data);
    out.mle = mle.beta;
    out.mle_converged = mle.converged;
    out.post_mean.resize(n_priors * d);
    out.covered.resize(n_priors * d);
    for (std::size_t k = 0; k < n_priors; ++k) {
      const std::uint64_t fit_seed = master.substream(r).substream(k + 1).seed();
      const Chains chains = mh_sample(data, spec.priors[k], spec.mcmc, fit_seed);
      const PosteriorSummary summary = summarize(chains);
      for (std::size_t j = 0; j < d; ++j) {
        const CoefficientSummary& s = summary.coefficients[j];
        out.post_mean[k * d + j] = s.mean;
        out.covered[k * d + j] =
            (s.ci_low <= spec.true_betas[j] && spec.true_betas[j] <= s.ci_high) ? 1 : 0;
      }
    }
  });

  SimulationReport report;
  report.replicates = reps;
  report.master_seed = spec.master_seed;
  report.n = spec.n;
  report.truth = spec.true_betas;
  for (std::size_t j = 0; j < d; ++j) {
    report.parameter_names.push_back("beta_" + std::to_string(j));
  }

  std::vector<std::size_t> converged_idx;
  for (std::size_t r = 0; r < reps; ++r) {
    if (outcomes[r].mle_converged) converged_idx.push_back(r);
  }
  report.mle_excluded = reps - converged_idx.size();
  report.avg_mle.assign(d, 0.0);
  if (!converged_idx.empty()) {
    for (std::size_t r : converged_idx) {
      for (std::size_t j = 0; j < d; ++j) report.avg_mle[j] += outcomes[r].mle[j];
    }
    for (auto& v : report.avg_mle) v /= static_cast<double>(converged_idx.size());
  }

  for (std::size_t k = 0; k < n_priors; ++k) {
    PriorStudyResult res;
    res.name = spec.prior_names[k];
    res.mse_star.resize(d);
    res.mse.resize(d);
    res.coverage.resize(d);
    res.avg_posterior_mean.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> means_all, means_conv, mles_conv;
      double cover = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        means_all.push_back(outcomes[r].post_mean[k * d + j]);
        cover += outcomes[r].covered[k * d + j];
      }
      for (std::size_t r : converged_idx) {
        means_conv.push_back(outcomes[r].post_mean[k * d + j]);
        mles_conv.push_back(outcomes[r].mle[j]);
      }
      res.mse[j] = mse(means_all, spec.true_betas[j]);
      res.mse_star[j] = means_conv.empty() ? 0.0 : mse(means_conv, mles_conv);
      res.coverage[j] = cover / static_cast<double>(reps);
      double avg = 0.0;
      for (double m : means_all) avg += m;
      res.avg_posterior_mean[j] = avg / static_cast<double>(reps);
    }
    report.priors.push_back(std::move(res));
  }
  return report;
}

std::string report_to_csv(const SimulationReport& report,
                          const std::string& provenance) {
  std::ostringstream os;
  if (!provenance.empty()) os << provenance << "\n";
  os << "parameter,truth,avg_mle";
  for (const auto& pr : report.priors) {
    os << "," << pr.name << "_mse_star," << pr.name << "_mse," << pr.name << "_cov";
  }
  os << "\n";
  for (std::size_t j = 0; j < report.parameter_names.size(); ++j) {
    os << report.parameter_names[j] << "," << format_double(report.truth[j]) << ","
       << format_double(report.avg_mle[j]);
    for (const auto& pr : report.priors) {
      os << "," << format_double(pr.mse_star[j]) << "," << format_double(pr.mse[j])
         << "," << format_double(pr.coverage[j]);
    }
    os << "\n";
  }
  return os.str();
}

std::string report_to_json(const SimulationReport& report) {
  nlohmann::json j;
  j["replicates"] = report.replicates;
  j["master_seed"] = report.master_seed;
  j["n"] = report.n;
  j["mle_excluded"] = report.mle_excluded;
  j["parameters"] = report.parameter_names;
  j["truth"] = report.truth;
  j["avg_mle"] = report.avg_mle;
  for (const auto& pr : report.priors) {
    nlohmann::json pj;
    pj["mse_star"] = pr.mse_star;
    pj["mse"] = pr.mse;
    pj["coverage"] = pr.coverage;
    pj["avg_posterior_mean"] = pr.avg_posterior_mean;
    j["priors"][pr.name] = pj;
  }
  return j.dump(2);
}

ScenarioSpec scenario_from_config(const std::map<std::string, std::string>& kv) {
  static const std::set<std::string> known = {
      "scenario", "n", "replicates", "seed", "priors", "mean", "cv",
      "alpha", "beta", "k", "intercept", "chains", "iterations", "burnin",
      "threads", "gamma_parameterization", "vague_sd"};
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!known.count(key)) {
      throw std::invalid_argument("simulate config: unknown key '" + key + "'");
    }
  }
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  const std::string scenario = get("scenario", "scenario1");
  ScenarioSpec spec;
  if (scenario == "scenario1") {
    spec = scenario1_spec(std::stoul(get("n", "15")));
  } else if (scenario == "scenario23") {
    spec = scenario23_spec(std::stoul(get("n", "50")),
                           std::stod(get("intercept", "1.5")));
  } else {
    throw std::invalid_argument("simulate config: unknown scenario '" + scenario + "'");
  }
  spec.replicates = std::stoul(get("replicates", "100"));
  if (kv.count("seed")) spec.master_seed = std::stoull(kv.at("seed"));
  spec.mcmc.chains = std::stoi(get("chains", "4"));
  spec.mcmc.iterations = std::stoi(get("iterations", "5000"));
  spec.mcmc.burnin = std::stoi(get("burnin", "2000"));
  spec.threads = std::stoi(get("threads", "1"));
  spec.rate_parameterization = get("gamma_parameterization", "rate") != "scale";

  const int p = static_cast<int>(spec.p());
  BetaShape target{1.0, 1.0};
  bool have_target = false;
  if (kv.count("mean") || kv.count("cv")) {
    target = beta_shapes_from_mean_cv(std::stod(get("mean", "0.7")),
                                      std::stod(get("cv", "0.3")));
    have_target = true;
  }
  if (kv.count("alpha") || kv.count("beta")) {
    target = BetaShape{std::stod(get("alpha", "1")), std::stod(get("beta", "1"))};
    have_target = true;
  }

  if (kv.count("priors")) {
    spec.priors.clear();
    spec.prior_names.clear();
    std::istringstream names(kv.at("priors"));
    std::string name;
    while (std::getline(names, name, ',')) {
      if (name == "vague") {
        spec.priors.push_back(vague_priors(p, std::stod(get("vague_sd", "1000"))));
      } else if (name == "logistic") {
        spec.priors.push_back(logistic_matched_priors(p));
      } else if (name == "beta_matched") {
        if (!have_target) {
          throw std::invalid_argument("simulate config: beta_matched needs mean/cv or alpha/beta");
        }
        spec.priors.push_back(beta_matched_priors(p, target));
      } else if (name == "weighted") {
        if (!have_target) {
          throw std::invalid_argument("simulate config: weighted needs mean/cv or alpha/beta");
        }
        spec.priors.push_back(weighted_priors(p, target, std::stod(get("k", "0.4"))));
      } else {
        throw std::invalid_argument("simulate config: unknown prior '" + name + "'");
      }
      spec.prior_names.push_back(name);
    }
  }
  spec.validate();
  return spec;
}

}  // namespace indprior
