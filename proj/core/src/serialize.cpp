#include "cbl/serialize.hpp"

#include <cmath>

#include "cbl/errors.hpp"

namespace cbl {

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json matrix_json(const Mat2& m) {
  return nlohmann::json::array({{m.a11, m.a12}, {m.a21, m.a22}});
}

}  // namespace

void to_json(nlohmann::json& j, const ModelParams& p) {
  j = {{"alpha", p.alpha}, {"j11", p.j11}, {"j22", p.j22}, {"j12", p.j12}};
}

void from_json(const nlohmann::json& j, ModelParams& p) {
  if (!j.is_object()) throw DomainError("model parameters must be a JSON object");
  for (const char* key : {"alpha", "j11", "j22", "j12"}) {
    if (!j.contains(key) || !j.at(key).is_number())
      throw DomainError(std::string("model parameters: missing or non-numeric \"") + key + "\"");
  }
  p.alpha = j.at("alpha").get<double>();
  p.j11 = j.at("j11").get<double>();
  p.j22 = j.at("j22").get<double>();
  p.j12 = j.at("j12").get<double>();
  p.validate();
}

void to_json(nlohmann::json& j, const CriticalityReport& r) {
  j = {{"j12_nonzero", r.j12_nonzero},
       {"j11_below_inverse_alpha", r.j11_below_inverse_alpha},
       {"j22_below_inverse_complement", r.j22_below_inverse_complement},
       {"equality_holds", r.equality_holds},
       {"trace_exceeds_one", r.trace_exceeds_one},
       {"positive_definite", r.positive_definite},
       {"lambda_min_is_zero", r.lambda_min_is_zero},
       {"residual", r.residual},
       {"lambda_min", r.lambda_min},
       {"all_hold", r.all()},
       {"violations", r.violations()}};
}

void to_json(nlohmann::json& j, const Hessian& h) {
  j = {{"h11", h.h11}, {"h12", h.h12}, {"h22", h.h22}};
}

void to_json(nlohmann::json& j, const SpectralData& s) {
  j = {{"hessian", s.hessian},
       {"lambda_max", s.lambda_max},
       {"lambda_min", s.lambda_min},
       {"v_max", s.v_max},
       {"v_min", s.v_min},
       {"P", matrix_json(s.P)},
       {"A", matrix_json(s.A)}};
}

void to_json(nlohmann::json& j, const GTildeCoefficients& c) {
  j = {{"jt11", c.jt11}, {"jt12", c.jt12}, {"jt22", c.jt22}, {"a1", c.a1},
       {"a2", c.a2},     {"b1", c.b1},     {"b2", c.b2}};
}

void to_json(nlohmann::json& j, const TransformedModel& tm) {
  j = tm.coeffs;
  j["zeta1"] = tm.zeta1;
  j["zeta2"] = tm.zeta2;
  j["d"] = tm.d;
  j["xi1"] = tm.xi1;
  j["xi2"] = tm.xi2;
}

void to_json(nlohmann::json& j, const SystemSize& sz) {
  j = {{"n1", sz.n1}, {"n2", sz.n2}, {"n", sz.n()}};
}

void to_json(nlohmann::json& j, const EmpiricalSummary& s) {
  j = {{"mean_x1", s.mean_x1},
       {"mean_x2", s.mean_x2},
       {"var_x1", s.var_x1},
       {"var_x2", s.var_x2},
       {"fourth_x2", s.fourth_x2},
       {"kurtosis_x2", number_or_null(s.kurtosis_x2)},
       {"cross_corr", number_or_null(s.cross_corr)},
       {"ks_x1", number_or_null(s.ks_x1)},
       {"ks_x2", number_or_null(s.ks_x2)}};
}

void to_json(nlohmann::json& j, const LimitMoments& m) {
  j = {{"var_x1", m.var_x1},
       {"var_x2", m.var_x2},
       {"fourth_x2", m.fourth_x2},
       {"kurtosis_x2", m.kurtosis_x2}};
}

void to_json(nlohmann::json& j, const ChainConfig& c) {
  j = {{"seed", c.seed},
       {"sweeps", c.sweeps},
       {"burn_in", c.burn_in},
       {"thinning", c.thinning},
       {"n_chains", c.n_chains}};
}

}  // namespace cbl
