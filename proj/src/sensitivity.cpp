#include "rejuv/sensitivity.hpp"

#include <map>

namespace rejuv {

namespace {

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a{{"gamma_fs", "gamma_rs"}, {"gamma_fv", "gamma_rv"}};
  return a;
}

Parameter<MsfcParams> law_parameter(const LawField& f) {
  auto member = f.member;
  return {f.rate_symbol, "rate (1/h), all phases scaled together",
          [member](const MsfcParams& p) { return 1.0 / mean(p.*member); },
          [member](MsfcParams& p, double rate) {
            p.*member = (p.*member).with_rate_scaled(rate * mean(p.*member));
          }};
}

Parameter<MsfcParams> aging_parameter(const MeanField& f) {
  auto member = f.member;
  return {f.rate_symbol, "rate (1/h) = 1/mean", [member](const MsfcParams& p) { return 1.0 / (p.*member); },
          [member](MsfcParams& p, double rate) { p.*member = 1.0 / rate; }};
}

Parameter<MsfcParams> rti_parameter(const MeanField& f) {
  auto member = f.member;
  return {f.name, "interval (h)", [member](const MsfcParams& p) { return p.*member; },
          [member](MsfcParams& p, double v) { p.*member = v; }};
}

Parameter<MsfcParams> asvh_parameter() {
  return {"kappa_asvh", "rate (1/h), all phases scaled together",
          [](const MsfcParams& p) { return 1.0 / mean(asvh_law(p)); },
          [](MsfcParams& p, double rate) {
            const auto law = asvh_law(p);
            p.asvh = law.with_rate_scaled(rate * mean(law));
          }};
}

}  // namespace

std::vector<Parameter<MsfcParams>> msfc_parameters(bool all) {
  std::vector<Parameter<MsfcParams>> out;
  for (const auto& f : law_fields()) out.push_back(law_parameter(f));
  if (all) {
    for (const auto& f : mean_fields()) out.push_back(*f.rate_symbol ? aging_parameter(f) : rti_parameter(f));
    out.push_back(asvh_parameter());
  }
  return out;
}

std::optional<Parameter<MsfcParams>> find_msfc_parameter(const std::string& name) {
  std::string key = name;
  if (auto it = aliases().find(name); it != aliases().end()) key = it->second;
  for (const auto& f : law_fields())
    if (key == f.rate_symbol || key == f.name) return law_parameter(f);
  for (const auto& f : mean_fields()) {
    if (*f.rate_symbol && key == f.rate_symbol) return aging_parameter(f);
    if (key == f.name) return *f.rate_symbol ? aging_parameter(f) : rti_parameter(f);
  }
  if (key == "kappa_asvh" || key == "asvh") return asvh_parameter();
  return std::nullopt;
}

Metric<MsfcParams> availability_metric(HostVariant variant) {
  return {"availability", [variant](const MsfcParams& p) {
            return solve_steady_state<extended>(generate(p, variant)).availability;
          }};
}

Metric<MsfcParams> mttf_metric(HostVariant variant) {
  return {"mttf", [variant](const MsfcParams& p) {
            const auto model = generate(p, variant);
            return analyze_absorbing<extended>(model, model.down_states()).mttf;
          }};
}

}  // namespace rejuv
