#include "indprior/occupancy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "indprior/io.hpp"
#include "indprior/special.hpp"

namespace indprior {

bool OccupancyData::detected(std::size_t i) const {
  for (std::size_t t = 0; t < visits; ++t) {
    if (obs(i, t) == 1) return true;
  }
  return false;
}

void OccupancyData::validate() const {
  if (W.size() != sites * q) throw std::invalid_argument("OccupancyData: W size mismatch");
  if (V.size() != sites * visits * r) {
    throw std::invalid_argument("OccupancyData: V size mismatch");
  }
  if (y.size() != sites * visits) throw std::invalid_argument("OccupancyData: y size mismatch");
  for (int v : y) {
    if (v != 0 && v != 1) throw std::invalid_argument("OccupancyData: y entries must be 0 or 1");
  }
  if (z_true) {
    if (z_true->size() != sites) throw std::invalid_argument("OccupancyData: z_true size mismatch");
    for (std::size_t i = 0; i < sites; ++i) {
      if (detected(i) && (*z_true)[i] != 1) {
        throw std::invalid_argument("OccupancyData: detection at a site with z_true = 0");
      }
    }
  }
}

namespace {

double dot_row(std::span<const double> beta, const double* row, std::size_t k) {
  double v = beta[0];
  for (std::size_t j = 0; j < k; ++j) v += row[j] * beta[j + 1];
  return v;
}

std::vector<double> standardized_gamma_matrix(const std::vector<GammaSpec>& specs,
                                              std::size_t rows, RngStream& rng) {
  const std::size_t p = specs.size();
  std::vector<double> raw(rows * p);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      raw[i * p + j] = rng.gamma(specs[j].shape) / specs[j].rate;
    }
  }
  if (p == 0 || rows < 2) return raw;
  return standardize(raw, rows, p).X;
}

}  // namespace

OccupancyData simulate_occupancy(std::span<const double> psi_betas,
                                 std::span<const double> det_betas,
                                 const std::vector<GammaSpec>& occ_covariates,
                                 const std::vector<GammaSpec>& det_covariates,
                                 std::size_t sites, std::size_t visits,
                                 std::uint64_t seed) {
  if (sites < 1 || visits < 1) {
    throw std::invalid_argument("simulate_occupancy: need sites >= 1 and visits >= 1");
  }
  if (psi_betas.size() != occ_covariates.size() + 1 ||
      det_betas.size() != det_covariates.size() + 1) {
    throw std::invalid_argument("simulate_occupancy: coefficient/covariate mismatch");
  }
  OccupancyData data;
  data.sites = sites;
  data.visits = visits;
  data.q = occ_covariates.size();
  data.r = det_covariates.size();

  RngStream rng(seed);
  data.W = standardized_gamma_matrix(occ_covariates, sites, rng);
  data.V = standardized_gamma_matrix(det_covariates, sites * visits, rng);

  std::vector<int> z(sites);
  data.y.assign(sites * visits, 0);
  for (std::size_t i = 0; i < sites; ++i) {
    const double psi = expit(dot_row(psi_betas, &data.W[i * data.q], data.q));
    z[i] = rng.bernoulli(psi) ? 1 : 0;
    for (std::size_t t = 0; t < visits; ++t) {
      const double p =
          expit(dot_row(det_betas, &data.V[(i * visits + t) * data.r], data.r));
      data.y[i * visits + t] = (z[i] == 1 && rng.bernoulli(p)) ? 1 : 0;
    }
  }
  data.z_true = std::move(z);
  data.validate();
  return data;
}

double conditional_presence_prob(double psi, std::span<const double> det_probs) {
  if (!(psi > 0.0 && psi < 1.0)) {
    throw std::domain_error("conditional_presence_prob: psi must lie in (0,1)");
  }
  double miss = 1.0;
  for (double p : det_probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error("conditional_presence_prob: detection probabilities must lie in [0,1]");
    }
    miss *= 1.0 - p;
  }
  const double num = psi * miss;
  return num / (num + 1.0 - psi);
}

namespace {

/// Adaptive random-walk Metropolis block, same recipe as mh_sample: diagonal
/// proposal, Robbins-Monro global scale toward 30% acceptance, per-coordinate
/// scales refreshed from recent history, frozen after burn-in.
class AdaptiveBlock {
 public:
  AdaptiveBlock(const PriorSpec& prior, RngStream& rng)
      : dim_(static_cast<std::size_t>(prior.dim())),
        beta_(dim_),
        proposal_(dim_),
        scale_(dim_),
        log_s_(std::log(2.38 / std::sqrt(static_cast<double>(dim_)))) {
    for (std::size_t j = 0; j < dim_; ++j) {
      beta_[j] = normal_draw(prior.coeff_priors[j], rng);
      scale_[j] = prior.coeff_priors[j].sd();
    }
    history_.reserve(kWindow * dim_);
  }

  const std::vector<double>& state() const { return beta_; }
  void set_state(std::vector<double> beta) { beta_ = std::move(beta); }

  template <typename LogTarget>
  void step(const LogTarget& log_target, RngStream& rng, bool adapt, std::size_t t) {
    const double cur = log_target(beta_);
    const double s = std::exp(log_s_);
    for (std::size_t j = 0; j < dim_; ++j) {
      proposal_[j] = beta_[j] + s * scale_[j] * rng.normal();
    }
    const double prop = log_target(proposal_);
    const double alpha = std::min(1.0, std::exp(prop - cur));
    if (rng.uniform01() < alpha) beta_ = proposal_;
    if (adapt) {
      const double gamma = std::min(0.25, 4.0 / std::sqrt(static_cast<double>(t) + 10.0));
      log_s_ += gamma * (alpha - 0.3);
      history_.insert(history_.end(), beta_.begin(), beta_.end());
      if (history_.size() >= kWindow * dim_) {
        const std::size_t rows = history_.size() / dim_;
        for (std::size_t j = 0; j < dim_; ++j) {
          double mean = 0.0;
          for (std::size_t r = 0; r < rows; ++r) mean += history_[r * dim_ + j];
          mean /= static_cast<double>(rows);
          double ss = 0.0;
          for (std::size_t r = 0; r < rows; ++r) {
            const double d = history_[r * dim_ + j] - mean;
            ss += d * d;
          }
          const double sd = std::sqrt(ss / static_cast<double>(rows - 1));
          if (sd > 0.0) scale_[j] = sd;
        }
        history_.clear();
      }
    }
  }

 private:
  static constexpr std::size_t kWindow = 250;
  std::size_t dim_;
  std::vector<double> beta_, proposal_, scale_, history_;
  double log_s_;
};

}  // namespace

OccupancyFit fit_occupancy(const OccupancyData& data, const PriorSpec& psi_prior,
                           const PriorSpec& det_prior,
                           const OccupancyFitOptions& options,
                           std::uint64_t seed) {
  data.validate();
  psi_prior.validate();
  det_prior.validate();
  if (psi_prior.p != static_cast<int>(data.q) ||
      det_prior.p != static_cast<int>(data.r)) {
    throw std::invalid_argument("fit_occupancy: prior/covariate dimension mismatch");
  }
  const McmcSettings& mcmc = options.mcmc;
  if (mcmc.chains < 1 || mcmc.burnin < 0 || mcmc.iterations <= mcmc.burnin) {
    throw std::invalid_argument("fit_occupancy: bad MCMC settings");
  }
  const auto iters = static_cast<std::size_t>(mcmc.iterations);
  const auto burnin = static_cast<std::size_t>(mcmc.burnin);
  const std::size_t dq = data.q + 1, dr = data.r + 1;
  const bool fixed_det = options.fixed_det_betas.has_value();
  if (fixed_det && options.fixed_det_betas->size() != dr) {
    throw std::invalid_argument("fit_occupancy: fixed_det_betas length mismatch");
  }

  OccupancyFit fit;
  auto init_chains = [&](Chains& c, std::size_t dim) {
    c.n_chains = static_cast<std::size_t>(mcmc.chains);
    c.iterations = iters;
    c.burnin = burnin;
    c.dim = dim;
    c.seed = seed;
    c.draws.resize(c.n_chains * iters * dim);
    c.acceptance.assign(c.n_chains, 0.0);
  };
  init_chains(fit.psi_chains, dq);
  init_chains(fit.det_chains, dr);

  RngStream root(seed);
  std::vector<int> z(data.sites);
  std::vector<double> det_probs(data.visits);

  for (std::size_t c = 0; c < fit.psi_chains.n_chains; ++c) {
    RngStream rng = root.substream(c);
    AdaptiveBlock psi_block(psi_prior, rng);
    AdaptiveBlock det_block(det_prior, rng);
    if (fixed_det) det_block.set_state(*options.fixed_det_betas);

    for (std::size_t i = 0; i < data.sites; ++i) {
      z[i] = data.detected(i) ? 1 : (rng.bernoulli(0.5) ? 1 : 0);
    }

    auto psi_target = [&](const std::vector<double>& beta) {
      double lp = 0.0;
      for (std::size_t i = 0; i < data.sites; ++i) {
        const double eta = dot_row(beta, &data.W[i * data.q], data.q);
        lp += z[i] * eta - log1p_exp(eta);
      }
      for (std::size_t j = 0; j < dq; ++j) {
        lp += normal_log_pdf(beta[j], psi_prior.coeff_priors[j]);
      }
      return lp;
    };
    auto det_target = [&](const std::vector<double>& beta) {
      double lp = 0.0;
      for (std::size_t i = 0; i < data.sites; ++i) {
        if (z[i] != 1) continue;
        for (std::size_t t = 0; t < data.visits; ++t) {
          const double eta =
              dot_row(beta, &data.V[(i * data.visits + t) * data.r], data.r);
          lp += data.obs(i, t) * eta - log1p_exp(eta);
        }
      }
      for (std::size_t j = 0; j < dr; ++j) {
        lp += normal_log_pdf(beta[j], det_prior.coeff_priors[j]);
      }
      return lp;
    };

    for (std::size_t t = 0; t < iters; ++t) {
      // Latent presence at undetected sites.
      const std::vector<double>& bp = psi_block.state();
      const std::vector<double>& bd = det_block.state();
      for (std::size_t i = 0; i < data.sites; ++i) {
        if (data.detected(i)) {
          z[i] = 1;
          continue;
        }
        const double psi = expit(dot_row(bp, &data.W[i * data.q], data.q));
        for (std::size_t tt = 0; tt < data.visits; ++tt) {
          det_probs[tt] =
              expit(dot_row(bd, &data.V[(i * data.visits + tt) * data.r], data.r));
        }
        z[i] = rng.bernoulli(conditional_presence_prob(psi, det_probs)) ? 1 : 0;
      }

      const bool adapt = t < burnin;
      psi_block.step(psi_target, rng, adapt, t);
      if (!fixed_det) det_block.step(det_target, rng, adapt, t);

      double* ps = &fit.psi_chains.draws[(c * iters + t) * dq];
      std::copy(psi_block.state().begin(), psi_block.state().end(), ps);
      double* ds = &fit.det_chains.draws[(c * iters + t) * dr];
      std::copy(det_block.state().begin(), det_block.state().end(), ds);
    }
  }
  fit.psi_summary = summarize(fit.psi_chains);
  fit.det_summary = summarize(fit.det_chains);
  return fit;
}

InducedOccupancyPriors induced_occupancy_priors(
    const PriorSpec& psi_prior, const PriorSpec& det_prior,
    const std::vector<std::vector<double>>& occ_rows,
    const std::vector<std::vector<double>>& det_rows, std::size_t n_draws,
    std::uint64_t seed) {
  psi_prior.validate();
  det_prior.validate();
  if (n_draws < 1) throw std::invalid_argument("induced_occupancy_priors: n_draws must be >= 1");

  auto draw_probs = [&](const PriorSpec& prior,
                        const std::vector<std::vector<double>>& rows,
                        RngStream root) {
    std::vector<double> out(n_draws);
    std::vector<double> beta(static_cast<std::size_t>(prior.dim()));
    for (std::size_t i = 0; i < n_draws; ++i) {
      RngStream rs = root.substream(i);
      for (std::size_t j = 0; j < beta.size(); ++j) {
        beta[j] = normal_draw(prior.coeff_priors[j], rs);
      }
      double eta = beta[0];
      if (!rows.empty()) {
        const auto idx = static_cast<std::size_t>(rs.uniform01() * rows.size());
        const auto& row = rows[idx >= rows.size() ? rows.size() - 1 : idx];
        if (row.size() != static_cast<std::size_t>(prior.p)) {
          throw std::invalid_argument("induced_occupancy_priors: row length mismatch");
        }
        for (std::size_t j = 0; j < row.size(); ++j) eta += row[j] * beta[j + 1];
      }
      out[i] = expit(eta);
    }
    return out;
  };

  RngStream root(seed);
  InducedOccupancyPriors result;
  result.psi_draws = draw_probs(psi_prior, occ_rows, root.substream(1));
  result.det_draws = draw_probs(det_prior, det_rows, root.substream(2));
  result.psi_histogram = make_histogram(result.psi_draws, 0.0, 1.0, 512);
  result.det_histogram = make_histogram(result.det_draws, 0.0, 1.0, 512);
  return result;
}

OccupancyCsv occupancy_to_csv(const OccupancyData& data,
                              const std::string& provenance) {
  data.validate();
  std::ostringstream sites;
  if (!provenance.empty()) sites << provenance << "\n";
  sites << "site";
  if (data.z_true) sites << ",z";
  for (std::size_t j = 0; j < data.q; ++j) sites << ",w" << (j + 1);
  sites << "\n";
  for (std::size_t i = 0; i < data.sites; ++i) {
    sites << i;
    if (data.z_true) sites << "," << (*data.z_true)[i];
    for (std::size_t j = 0; j < data.q; ++j) {
      sites << "," << format_double(data.w(i, j));
    }
    sites << "\n";
  }

  std::ostringstream det;
  if (!provenance.empty()) det << provenance << "\n";
  det << "site,visit,y";
  for (std::size_t j = 0; j < data.r; ++j) det << ",v" << (j + 1);
  det << "\n";
  for (std::size_t i = 0; i < data.sites; ++i) {
    for (std::size_t t = 0; t < data.visits; ++t) {
      det << i << "," << t << "," << data.obs(i, t);
      for (std::size_t j = 0; j < data.r; ++j) {
        det << "," << format_double(data.v(i, t, j));
      }
      det << "\n";
    }
  }
  return {sites.str(), det.str()};
}

namespace {

std::vector<std::vector<std::string>> parse_csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

OccupancyData occupancy_from_csv(const std::string& sites_text,
                                 const std::string& detections_text) {
  const auto site_rows = parse_csv_rows(sites_text);
  const auto det_rows = parse_csv_rows(detections_text);
  if (site_rows.size() < 2 || det_rows.size() < 2) {
    throw std::runtime_error("occupancy_from_csv: missing header or data rows");
  }
  const auto& sh = site_rows.front();
  const bool has_z = sh.size() > 1 && sh[1] == "z";
  OccupancyData data;
  data.sites = site_rows.size() - 1;
  data.q = sh.size() - 1 - (has_z ? 1 : 0);
  data.r = det_rows.front().size() - 3;
  if ((det_rows.size() - 1) % data.sites != 0) {
    throw std::runtime_error("occupancy_from_csv: detections not rectangular");
  }
  data.visits = (det_rows.size() - 1) / data.sites;

  data.W.resize(data.sites * data.q);
  if (has_z) data.z_true = std::vector<int>(data.sites);
  for (std::size_t i = 0; i < data.sites; ++i) {
    const auto& row = site_rows[i + 1];
    std::size_t col = 1;
    if (has_z) (*data.z_true)[i] = std::stoi(row[col++]);
    for (std::size_t j = 0; j < data.q; ++j) {
      data.W[i * data.q + j] = std::stod(row[col++]);
    }
  }
  data.V.resize(data.sites * data.visits * data.r);
  data.y.resize(data.sites * data.visits);
  for (std::size_t k = 0; k + 1 < det_rows.size(); ++k) {
    const auto& row = det_rows[k + 1];
    const auto i = static_cast<std::size_t>(std::stoul(row[0]));
    const auto t = static_cast<std::size_t>(std::stoul(row[1]));
    if (i >= data.sites || t >= data.visits) {
      throw std::runtime_error("occupancy_from_csv: site/visit index out of range");
    }
    data.y[i * data.visits + t] = std::stoi(row[2]);
    for (std::size_t j = 0; j < data.r; ++j) {
      data.V[(i * data.visits + t) * data.r + j] = std::stod(row[3 + j]);
    }
  }
  data.validate();
  return data;
}

}  // namespace indprior
