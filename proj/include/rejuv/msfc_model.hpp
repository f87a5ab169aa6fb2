#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rejuv/distribution.hpp"
#include "rejuv/rbd.hpp"
#include "rejuv/reliability.hpp"
#include "rejuv/smp_model.hpp"
#include "rejuv/steady_state.hpp"
#include "rejuv/units.hpp"

namespace rejuv {

/// Parameters of one primary host and its backup host. Hours throughout.
///
/// Member initializers are the default operating point: the midpoint of each
/// published range, aging exponential, failures hypoexponential, recoveries
/// exponential, rejuvenation-triggered intervals (RTIs) deterministic.
struct MsfcParams {
  // Aging means: active and backup MSF / VM / VMM.
  double t_aas = units::months(24);
  double t_aav = units::months(30);
  double t_aam = units::months(36);
  double t_abs = units::months(24);
  double t_abv = units::months(30);
  double t_abm = units::months(36);

  // Active-component failure laws by backup state: A(rbitrary), BR, BC, D, and during L/M.
  Distribution f_fsa = Distribution::hypoexponential_with_mean(units::months(24));
  Distribution f_fsr = Distribution::hypoexponential_with_mean(units::months(24));
  Distribution f_fsc = Distribution::hypoexponential_with_mean(units::months(24));
  Distribution f_fsd = Distribution::hypoexponential_with_mean(units::months(24));
  Distribution f_fsl = Distribution::hypoexponential_with_mean(units::months(24));
  Distribution f_fva = Distribution::hypoexponential_with_mean(units::months(36));
  Distribution f_fvr = Distribution::hypoexponential_with_mean(units::months(36));
  Distribution f_fvc = Distribution::hypoexponential_with_mean(units::months(36));
  Distribution f_fvd = Distribution::hypoexponential_with_mean(units::months(36));
  Distribution f_fvl = Distribution::hypoexponential_with_mean(units::months(36));
  Distribution f_fma = Distribution::hypoexponential_with_mean(units::months(48));
  Distribution f_fmr = Distribution::hypoexponential_with_mean(units::months(48));
  Distribution f_fmc = Distribution::hypoexponential_with_mean(units::months(48));
  Distribution f_fmd = Distribution::hypoexponential_with_mean(units::months(48));
  Distribution f_fmm = Distribution::hypoexponential_with_mean(units::months(48));

  // Rejuvenation: MSF failover, VM failover, VM migration.
  Distribution r_s = Distribution::exponential_with_mean(units::seconds(2.25));
  Distribution r_v = Distribution::exponential_with_mean(units::seconds(4.5));
  Distribution r_m = Distribution::exponential_with_mean(units::seconds(9));
  // Backup restart, and backup fix-and-restart.
  Distribution rb_s = Distribution::exponential_with_mean(units::seconds(2.25));
  Distribution rb_v = Distribution::exponential_with_mean(units::seconds(4.5));
  Distribution rb_m = Distribution::exponential_with_mean(units::seconds(9));
  Distribution frb_s = Distribution::exponential_with_mean(units::seconds(6.25));
  Distribution frb_v = Distribution::exponential_with_mean(units::seconds(8.75));
  Distribution frb_m = Distribution::exponential_with_mean(units::seconds(11.25));

  // System recovery: restart MSFs+VMs, restart everything, host fix.
  Distribution R_V = Distribution::exponential_with_mean(units::minutes(0.525));
  Distribution R_M = Distribution::exponential_with_mean(units::minutes(0.775));
  Distribution R_host = Distribution::exponential_with_mean(0.225);

  /// First MSF/VM aging while the VMM is degraded or migrating.
  /// Unset: exponential with the summed active MSF and VM aging rates.
  std::optional<Distribution> asvh;

  // RTIs, hours.
  double omega_s = units::minutes(900);
  double omega_v = units::minutes(1800);
  double omega_m = units::minutes(3600);

  // Backup found healthy / aged / failed when the active component ages.
  std::array<double, 3> c_s{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::array<double, 3> c_v{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::array<double, 3> c_m{1.0 / 3, 1.0 / 3, 1.0 / 3};
};

MsfcParams default_params();

/// Throws Error(InvalidParameter) naming the first offending field.
void check(const MsfcParams& p);

Distribution asvh_law(const MsfcParams& p);

// Field registry, shared by file I/O, the coverage audit and sensitivity.

struct MeanField {
  const char* name;
  double MsfcParams::*member;
  const char* rate_symbol;  ///< rate-style name, empty when not rate-like
  std::vector<std::string> labels;
};

struct LawField {
  const char* name;
  Distribution MsfcParams::*member;
  const char* rate_symbol;
  std::vector<std::string> labels;
};

struct WeightField {
  const char* name;
  std::array<double, 3> MsfcParams::*member;
};

const std::vector<MeanField>& mean_fields();  ///< aging means and RTIs
const std::vector<LawField>& law_fields();
const std::vector<WeightField>& weight_fields();
inline const std::vector<std::string> asvh_labels{"asvh"};

namespace host_state {
inline constexpr StateId up = 0;
inline constexpr StateId restart_vm = 1;   ///< restart all MSFs and VMs (down)
inline constexpr StateId restart_all = 2;  ///< restart/reboot everything (down)
inline constexpr StateId host_fix = 3;     ///< host fix (down)
inline constexpr StateId msf_branch = 4;   ///< D(A), D(BR), D(BC), D(D), L
inline constexpr StateId vm_branch = 9;
inline constexpr StateId vmm_branch = 14;  ///< D(A), D(BR), D(BC), D(D), M
inline constexpr std::size_t count = 19;
}  // namespace host_state

/// Offsets within a five-state branch.
namespace branch {
inline constexpr StateId arbitrary = 0;
inline constexpr StateId restarted = 1;
inline constexpr StateId recovered = 2;
inline constexpr StateId backup_degraded = 3;
inline constexpr StateId rejuvenating = 4;
}  // namespace branch

struct HostModelOptions {
  bool backup_behaviour = true;  ///< backup aging events and the A-state backup check
  bool prune = false;            ///< drop states unreachable from UP
};

/// The 19-state host-pair model.
SmpModel generate_host_model(const MsfcParams& p, HostModelOptions options = {});

/// Backups never age or fail: c_x1 = 1, no backup-aging events, unreachable states pruned.
SmpModel generate_no_backup_model(const MsfcParams& p);

/// Parameter fields none of whose event labels occur in `model`.
std::vector<std::string> unused_parameters(const SmpModel& model);

enum class HostVariant { Full, NoBackup };

SmpModel generate(const MsfcParams& p, HostVariant variant);

/// Steady-state availability and MTTF (down states absorbing) of one host pair.
template <class Scalar = double>
HostMetrics<Scalar> evaluate_host(const MsfcParams& p, HostVariant variant = HostVariant::Full) {
  const SmpModel model = generate(p, variant);
  const auto ss = solve_steady_state<Scalar>(model);
  const auto rel = analyze_absorbing<Scalar>(model, model.down_states());
  return {ss.availability, rel.mttf};
}

}  // namespace rejuv
