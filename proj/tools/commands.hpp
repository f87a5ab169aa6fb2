#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"
#include "rejuv/msfc_model.hpp"

namespace rejuv::cli {

/// Where the analysed host comes from: a model file, a params file, or the defaults.
struct HostInput {
  std::optional<std::filesystem::path> model;
  std::optional<std::filesystem::path> params;
  bool no_backup = false;
  bool unit_check = false;
  std::optional<std::filesystem::path> emit_model;
};

/// Resolved inputs, also recorded in the run record.
struct Resolved {
  SmpModel model;
  std::optional<MsfcParams> params;
  json inputs = json::object();  ///< file contents keyed by path
};

Resolved resolve(const HostInput& in);
MsfcParams resolve_params(const HostInput& in, json& inputs);

struct SolveOptions {
  bool quadrature = false;
  bool extended = false;
};
Output cmd_solve(const Resolved& r, const SolveOptions& o);

/// `absorb` lists state ids or names; empty means the model's down states
/// (or its absorbing states when every state is up).
Output cmd_mttf(const Resolved& r, const std::vector<std::string>& absorb);

struct SimulateOptions {
  std::uint64_t seed = 1;
  std::size_t replications = 200;
  double horizon = 1e6;
  double confidence = 0.99;
  unsigned threads = 1;
  bool mttf = false;
  std::vector<std::string> absorb;
};
Output cmd_simulate(const Resolved& r, const SimulateOptions& o);

struct SweepOptions {
  std::string grid;  ///< "availability" or "mttf" preset; empty when axes are explicit
  std::vector<double> omega_s, omega_v, omega_m;
  std::size_t n = 1, m = 1;
  std::size_t budget = 10000;
  unsigned threads = 1;
};
Output cmd_sweep(const MsfcParams& p, bool no_backup, const SweepOptions& o);

struct ComposeOptions {
  std::optional<std::filesystem::path> topology;
  std::vector<std::size_t> replicate;
  std::size_t serial = 2;
  std::size_t budget = 10000;
};
Output cmd_compose(const HostInput& host, const ComposeOptions& o, json& inputs);

Output cmd_compare(const MsfcParams& p, std::size_t n, std::size_t m);

struct CdfStudyOptions {
  std::vector<double> host_fix_means{0.1, 0.15, 0.2, 0.25, 0.3, 0.35};
  std::size_t n = 4, m = 2;
};
Output cmd_cdf_study(const MsfcParams& p, const CdfStudyOptions& o);

struct SensitivityCliOptions {
  std::vector<std::string> metrics{"availability", "mttf"};
  std::vector<std::string> parameters;  ///< empty: default set; "all": extended set
  double delta = 1e-4;
  bool no_backup = false;
};
Output cmd_sensitivity(const MsfcParams& p, const SensitivityCliOptions& o);

/// SVG for commands that have a natural line chart; returns false when the command has none.
bool plot(const std::string& command, const Output& out, const std::filesystem::path& path);

}  // namespace rejuv::cli
