#include "indprior/prior_builder.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "indprior/eta_moments.hpp"

namespace indprior {

using nlohmann::json;

const char* to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::vague: return "vague";
    case PriorKind::logistic: return "logistic";
    case PriorKind::beta_matched: return "beta_matched";
    case PriorKind::weighted: return "weighted";
  }
  return "unknown";
}

PriorKind prior_kind_from_string(const std::string& name) {
  if (name == "vague") return PriorKind::vague;
  if (name == "logistic") return PriorKind::logistic;
  if (name == "beta_matched") return PriorKind::beta_matched;
  if (name == "weighted") return PriorKind::weighted;
  throw std::invalid_argument("unknown prior kind '" + name +
                              "' (expected vague, logistic, beta_matched or weighted)");
}

void PriorSpec::validate() const {
  if (p < 0) throw std::domain_error("PriorSpec: p must be >= 0");
  if (coeff_priors.size() != static_cast<std::size_t>(p + 1)) {
    throw std::invalid_argument("PriorSpec: need exactly p+1 coefficient priors");
  }
  for (const auto& c : coeff_priors) c.validate();
  if (kind == PriorKind::weighted && !k.has_value()) {
    throw std::invalid_argument("PriorSpec: weighted kind requires k");
  }
}

BetaShape beta_shapes_from_mean_cv(double mean, double cv) {
  if (!(mean > 0.0 && mean < 1.0)) {
    throw std::domain_error("beta_shapes_from_mean_cv: mean must lie in (0,1)");
  }
  if (!(cv > 0.0)) {
    throw std::domain_error("beta_shapes_from_mean_cv: cv must be positive");
  }
  const double v = (mean * cv) * (mean * cv);
  if (!(v < mean * (1.0 - mean))) {
    const double cv_max = std::sqrt((1.0 - mean) / mean);
    std::ostringstream os;
    os << "beta_shapes_from_mean_cv: infeasible variance; for mean " << mean
       << " the cv must be below " << cv_max;
    throw std::domain_error(os.str());
  }
  const double c = mean * (1.0 - mean) / v - 1.0;
  return {mean * c, (1.0 - mean) * c};
}

namespace {

PriorSpec make_spec(int p, PriorKind kind, NormalParams intercept,
                    NormalParams slope) {
  PriorSpec spec;
  spec.p = p;
  spec.kind = kind;
  spec.coeff_priors.assign(static_cast<std::size_t>(p) + 1, slope);
  spec.coeff_priors[0] = intercept;
  return spec;
}

}  // namespace

PriorSpec logistic_matched_priors(int p) {
  if (p < 0) throw std::domain_error("logistic_matched_priors: p must be >= 0");
  const double var = M_PI * M_PI / (3.0 * (p + 1));
  PriorSpec spec = make_spec(p, PriorKind::logistic, {0.0, var}, {0.0, var});
  return spec;
}

PriorSpec beta_matched_priors(int p, const BetaShape& target) {
  if (p < 0) throw std::domain_error("beta_matched_priors: p must be >= 0");
  target.validate();
  const EtaMoments m = eta_mean_var_analytic(target);
  const double var = m.var_eta / (p + 1);
  PriorSpec spec =
      make_spec(p, PriorKind::beta_matched, {m.mu_eta, var}, {0.0, var});
  spec.target = target;
  return spec;
}

PriorSpec weighted_priors(int p, const BetaShape& target, double k) {
  if (p < 1) throw std::domain_error("weighted_priors: p must be >= 1");
  target.validate();
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error(
        "weighted_priors: k must lie in the open interval (0,1); k=1 removes "
        "the slope coefficients and k=0 fixes the intercept");
  }
  const EtaMoments m = eta_mean_var_analytic(target);
  PriorSpec spec = make_spec(p, PriorKind::weighted, {m.mu_eta, k * m.var_eta},
                             {0.0, (1.0 - k) * m.var_eta / p});
  spec.k = k;
  spec.target = target;
  return spec;
}

PriorSpec vague_priors(int p, double sd) {
  if (p < 0) throw std::domain_error("vague_priors: p must be >= 0");
  if (!(sd > 0.0)) throw std::domain_error("vague_priors: sd must be positive");
  return make_spec(p, PriorKind::vague, {0.0, sd * sd}, {0.0, sd * sd});
}

std::string prior_spec_to_json(const PriorSpec& spec) {
  spec.validate();
  json j;
  j["kind"] = to_string(spec.kind);
  j["p"] = spec.p;
  if (spec.k) j["k"] = *spec.k;
  if (spec.target) {
    j["target"] = {{"alpha", spec.target->alpha}, {"beta", spec.target->beta}};
  }
  json coeffs = json::array();
  for (const auto& c : spec.coeff_priors) {
    coeffs.push_back({{"mean", c.mean}, {"variance", c.variance}});
  }
  j["coefficients"] = coeffs;
  return j.dump(2);
}

PriorSpec prior_spec_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  PriorSpec spec;
  spec.kind = prior_kind_from_string(j.at("kind").get<std::string>());
  spec.p = j.at("p").get<int>();
  if (j.contains("k")) spec.k = j["k"].get<double>();
  if (j.contains("target")) {
    spec.target = BetaShape{j["target"].at("alpha").get<double>(),
                            j["target"].at("beta").get<double>()};
  }
  for (const auto& c : j.at("coefficients")) {
    spec.coeff_priors.push_back(
        {c.at("mean").get<double>(), c.at("variance").get<double>()});
  }
  spec.validate();
  return spec;
}

}  // namespace indprior
