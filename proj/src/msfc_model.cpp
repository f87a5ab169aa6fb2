#include "rejuv/msfc_model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "rejuv/error.hpp"

namespace rejuv {

MsfcParams default_params() { return MsfcParams{}; }

const std::vector<MeanField>& mean_fields() {
  static const std::vector<MeanField> fields{
      {"t_aas", &MsfcParams::t_aas, "theta_aas", {"aas"}},
      {"t_aav", &MsfcParams::t_aav, "theta_aav", {"aav"}},
      {"t_aam", &MsfcParams::t_aam, "theta_aam", {"aam"}},
      {"t_abs", &MsfcParams::t_abs, "theta_abs", {"abs"}},
      {"t_abv", &MsfcParams::t_abv, "theta_abv", {"abv"}},
      {"t_abm", &MsfcParams::t_abm, "theta_abm", {"abm"}},
      {"omega_s", &MsfcParams::omega_s, "", {"rtsh", "rtsr", "rtsc"}},
      {"omega_v", &MsfcParams::omega_v, "", {"rtvh", "rtvr", "rtvc"}},
      {"omega_m", &MsfcParams::omega_m, "", {"rtmh", "rtmr", "rtmc"}},
  };
  return fields;
}

const std::vector<LawField>& law_fields() {
  static const std::vector<LawField> fields{
      {"f_fsa", &MsfcParams::f_fsa, "alpha_fsa", {"fsa"}},
      {"f_fsr", &MsfcParams::f_fsr, "alpha_fsr", {"fsr"}},
      {"f_fsc", &MsfcParams::f_fsc, "alpha_fsc", {"fsc"}},
      {"f_fsd", &MsfcParams::f_fsd, "alpha_fsd", {"fsd"}},
      {"f_fsl", &MsfcParams::f_fsl, "alpha_fsl", {"fsl"}},
      {"f_fva", &MsfcParams::f_fva, "beta_fva", {"fva"}},
      {"f_fvr", &MsfcParams::f_fvr, "beta_fvr", {"fvr"}},
      {"f_fvc", &MsfcParams::f_fvc, "beta_fvc", {"fvc"}},
      {"f_fvd", &MsfcParams::f_fvd, "beta_fvd", {"fvd"}},
      {"f_fvl", &MsfcParams::f_fvl, "beta_fvl", {"fvl"}},
      {"f_fma", &MsfcParams::f_fma, "delta_fma", {"fma"}},
      {"f_fmr", &MsfcParams::f_fmr, "delta_fmr", {"fmr"}},
      {"f_fmc", &MsfcParams::f_fmc, "delta_fmc", {"fmc"}},
      {"f_fmd", &MsfcParams::f_fmd, "delta_fmd", {"fmd"}},
      {"f_fmm", &MsfcParams::f_fmm, "delta_fmm", {"fmm"}},
      {"r_s", &MsfcParams::r_s, "gamma_rs", {"rs"}},
      {"r_v", &MsfcParams::r_v, "gamma_rv", {"rv"}},
      {"r_m", &MsfcParams::r_m, "gamma_rm", {"rm"}},
      {"rb_s", &MsfcParams::rb_s, "eta_rbs", {"rbs"}},
      {"rb_v", &MsfcParams::rb_v, "eta_rbv", {"rbv"}},
      {"rb_m", &MsfcParams::rb_m, "eta_rbm", {"rbm"}},
      {"frb_s", &MsfcParams::frb_s, "lambda_frbs", {"frbs"}},
      {"frb_v", &MsfcParams::frb_v, "lambda_frbv", {"frbv"}},
      {"frb_m", &MsfcParams::frb_m, "lambda_frbm", {"frbm"}},
      {"R_V", &MsfcParams::R_V, "mu_RV", {"RV"}},
      {"R_M", &MsfcParams::R_M, "mu_RM", {"RM"}},
      {"R_host", &MsfcParams::R_host, "mu_R", {"R"}},
  };
  return fields;
}

const std::vector<WeightField>& weight_fields() {
  static const std::vector<WeightField> fields{
      {"c_s", &MsfcParams::c_s}, {"c_v", &MsfcParams::c_v}, {"c_m", &MsfcParams::c_m}};
  return fields;
}

void check(const MsfcParams& p) {
  auto fail = [](auto&&... parts) {
    std::ostringstream out;
    (out << ... << parts);
    throw Error(ErrorKind::InvalidParameter, out.str());
  };
  for (const auto& f : mean_fields()) {
    const double v = p.*f.member;
    const bool rti = *f.rate_symbol == '\0';
    if (!std::isfinite(v) || v < 0.0 || (!rti && v == 0.0))
      fail(f.name, " must be ", rti ? "finite and >= 0" : "positive and finite", ", got ", v);
  }
  for (const auto& f : weight_fields()) {
    const auto& c = p.*f.member;
    double total = 0.0;
    for (double x : c) {
      if (!(x >= 0.0 && x <= 1.0)) fail(f.name, " entries must lie in [0,1]");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) fail(f.name, " must sum to 1, sums to ", total);
  }
}

Distribution asvh_law(const MsfcParams& p) {
  if (p.asvh) return *p.asvh;
  return Distribution::exponential(1.0 / p.t_aas + 1.0 / p.t_aav);
}

namespace {

struct BranchSpec {
  std::string prefix;       // state-name prefix
  char tag;                 // 's', 'v' or 'm' in event labels
  StateId base;
  std::string rejuvenated;  // name of the fifth state: "L" or "M"
  double backup_aging_mean;
  const Distribution* fail_a;
  const Distribution* fail_r;
  const Distribution* fail_c;
  const Distribution* fail_d;
  const Distribution* fail_l;
  const Distribution* rejuvenate;
  const Distribution* restart;
  const Distribution* fix;
  double rti;
  std::array<double, 3> weights;
  std::vector<Event> cross;  // cross-layer aging, raced in all five states
};

std::string label(const char* head, char tag, const char* tail = "") {
  return std::string(head) + tag + tail;
}

void add_branch(std::vector<StateSpec>& states, const BranchSpec& b, bool backup_behaviour) {
  const StateId da = b.base + branch::arbitrary;
  const StateId br = b.base + branch::restarted;
  const StateId bc = b.base + branch::recovered;
  const StateId dd = b.base + branch::backup_degraded;
  const StateId lm = b.base + branch::rejuvenating;
  const Distribution backup_aging = Distribution::exponential(1.0 / b.backup_aging_mean);
  const Distribution rti = Distribution::deterministic(b.rti);

  auto mode = [&](double w, std::vector<Event> events) {
    Mode m{w, std::move(events)};
    m.events.insert(m.events.end(), b.cross.begin(), b.cross.end());
    return m;
  };
  auto backup_ages = [&](std::vector<Event>& ev) {
    if (backup_behaviour) ev.push_back({label("ab", b.tag), backup_aging, dd});
  };

  // D(A): the backup is checked on entry; each outcome is a separate mode.
  {
    StateSpec s{da, b.prefix + "D(A)", true, {}};
    const auto w = backup_behaviour ? b.weights : std::array<double, 3>{1.0, 0.0, 0.0};
    if (w[0] > 0.0) {
      std::vector<Event> ev{{label("rt", b.tag, "h"), rti, lm}};
      backup_ages(ev);
      ev.push_back({label("f", b.tag, "a"), *b.fail_a, 3});
      s.modes.push_back(mode(w[0], std::move(ev)));
    }
    if (w[1] > 0.0) {
      s.modes.push_back(mode(w[1], {{label("rb", b.tag), *b.restart, br},
                                    {label("f", b.tag, "a"), *b.fail_a, 3}}));
    }
    if (w[2] > 0.0) {
      s.modes.push_back(mode(w[2], {{label("frb", b.tag), *b.fix, bc},
                                    {label("f", b.tag, "a"), *b.fail_a, 3}}));
    }
    states[da] = std::move(s);
  }
  // D(BR) and D(BC): backup ready after restart / fix; wait out the RTI again.
  {
    std::vector<Event> ev{{label("rt", b.tag, "r"), rti, lm}};
    backup_ages(ev);
    ev.push_back({label("f", b.tag, "r"), *b.fail_r, 3});
    states[br] = StateSpec{br, b.prefix + "D(BR)", true, {mode(1.0, std::move(ev))}};
  }
  {
    std::vector<Event> ev{{label("rt", b.tag, "c"), rti, lm}};
    backup_ages(ev);
    ev.push_back({label("f", b.tag, "c"), *b.fail_c, 3});
    states[bc] = StateSpec{bc, b.prefix + "D(BC)", true, {mode(1.0, std::move(ev))}};
  }
  // D(D): the backup aged; restart it.
  states[dd] = StateSpec{dd, b.prefix + "D(D)", true,
                         {mode(1.0, {{label("rb", b.tag), *b.restart, br},
                                     {label("f", b.tag, "d"), *b.fail_d, 3}})}};
  // L / M: rejuvenation in progress.
  {
    std::string rejuvenation_label = b.tag == 'm' ? "rm" : label("r", b.tag);
    std::string failure_label = b.tag == 'm' ? "fmm" : label("f", b.tag, "l");
    std::vector<Event> ev{{rejuvenation_label, *b.rejuvenate, host_state::up},
                          {failure_label, *b.fail_l, host_state::host_fix}};
    backup_ages(ev);
    states[lm] = StateSpec{lm, b.prefix + b.rejuvenated, true, {mode(1.0, std::move(ev))}};
  }
}

}  // namespace

SmpModel generate_host_model(const MsfcParams& p, HostModelOptions options) {
  check(p);
  using namespace host_state;
  const auto aas = Distribution::exponential(1.0 / p.t_aas);
  const auto aav = Distribution::exponential(1.0 / p.t_aav);
  const auto aam = Distribution::exponential(1.0 / p.t_aam);

  std::vector<StateSpec> states(count);
  states[up] = {up, "UP", true, {{1.0, {{"aas", aas, msf_branch}, {"aav", aav, vm_branch}, {"aam", aam, vmm_branch}}}}};
  states[restart_vm] = {restart_vm, "RV", false, {{1.0, {{"RV", p.R_V, up}}}}};
  states[restart_all] = {restart_all, "RM", false, {{1.0, {{"RM", p.R_M, up}}}}};
  states[host_fix] = {host_fix, "FX", false, {{1.0, {{"R", p.R_host, up}}}}};

  add_branch(states,
             {"S_", 's', msf_branch, "L", p.t_abs, &p.f_fsa, &p.f_fsr, &p.f_fsc, &p.f_fsd, &p.f_fsl,
              &p.r_s, &p.rb_s, &p.frb_s, p.omega_s, p.c_s,
              {{"aav", aav, restart_vm}, {"aam", aam, restart_all}}},
             options.backup_behaviour);
  add_branch(states,
             {"V_", 'v', vm_branch, "L", p.t_abv, &p.f_fva, &p.f_fvr, &p.f_fvc, &p.f_fvd, &p.f_fvl,
              &p.r_v, &p.rb_v, &p.frb_v, p.omega_v, p.c_v,
              {{"aas", aas, restart_vm}, {"aam", aam, restart_all}}},
             options.backup_behaviour);
  add_branch(states,
             {"M_", 'm', vmm_branch, "M", p.t_abm, &p.f_fma, &p.f_fmr, &p.f_fmc, &p.f_fmd, &p.f_fmm,
              &p.r_m, &p.rb_m, &p.frb_m, p.omega_m, p.c_m,
              {{"asvh", asvh_law(p), restart_all}}},
             options.backup_behaviour);

  SmpModel model{std::move(states), up};
  if (options.prune) model = prune_unreachable(model);
  return model;
}

SmpModel generate_no_backup_model(const MsfcParams& p) {
  return generate_host_model(p, {.backup_behaviour = false, .prune = true});
}

SmpModel generate(const MsfcParams& p, HostVariant variant) {
  return variant == HostVariant::Full ? generate_host_model(p) : generate_no_backup_model(p);
}

std::vector<std::string> unused_parameters(const SmpModel& model) {
  std::set<std::string> present;
  for (const auto& s : model.states)
    for (const auto& m : s.modes)
      for (const auto& e : m.events) present.insert(e.label);
  auto used = [&](const std::vector<std::string>& labels) {
    for (const auto& l : labels)
      if (present.count(l)) return true;
    return false;
  };
  std::vector<std::string> unused;
  for (const auto& f : mean_fields())
    if (!used(f.labels)) unused.emplace_back(f.name);
  for (const auto& f : law_fields())
    if (!used(f.labels)) unused.emplace_back(f.name);
  if (!used(asvh_labels)) unused.emplace_back("asvh");
  return unused;
}

}  // namespace rejuv
