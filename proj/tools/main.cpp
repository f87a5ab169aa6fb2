#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rejuv/error.hpp"
#include "rejuv/io.hpp"

using namespace rejuv;
using namespace rejuv::cli;

namespace {

enum Exit { ok = 0, input_error = 2, solver_error = 3, budget_exceeded = 4 };

std::filesystem::path record_path(const std::string& command, const std::string& out, const std::string& record) {
  if (!record.empty()) return record;
  if (!out.empty()) return out + ".record.json";
  const char* dir = std::getenv("REJUV_OUT_DIR");
  return std::filesystem::path(dir && *dir ? dir : ".") / ("rejuv-" + command + ".record.json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Availability and MTTF of service-function chains with software aging and rejuvenation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", REJUV_VERSION);

  std::string format = "csv", out_path, plot_path, record;
  std::uint64_t seed = 1;
  HostInput host;
  std::string model_file, params_file, emit_file;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write results here instead of stdout");
  app.add_option("--plot", plot_path, "SVG chart (sweep, compose, cdf-study)");
  app.add_option("--record", record, "run-record path (default: next to --out, else $REJUV_OUT_DIR or .)");
  app.add_option("--seed", seed, "simulation seed");
  app.add_flag("--unit-check", host.unit_check, "reject params entries that lack an explicit unit");

  auto host_options = [&](CLI::App* sub, bool allow_model) {
    if (allow_model) sub->add_option("--model", model_file, "SMP model file");
    sub->add_option("--params", params_file, "host parameter file (defaults when omitted)");
    sub->add_flag("--no-backup", host.no_backup, "use the model without backup aging and failure");
    if (allow_model) sub->add_option("--emit-model", emit_file, "write the analysed model as JSON");
  };

  SolveOptions solve;
  auto* c_solve = app.add_subcommand("solve", "steady-state availability");
  host_options(c_solve, true);
  c_solve->add_flag("--quadrature", solve.quadrature, "kernel limits by adaptive quadrature");
  c_solve->add_flag("--extended", solve.extended, "50-digit arithmetic");

  std::vector<std::string> absorb;
  auto* c_mttf = app.add_subcommand("mttf", "mean time to failure");
  host_options(c_mttf, true);
  c_mttf->add_option("--absorb", absorb, "absorbing state ids or names (default: down states)")->delimiter(',');

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo estimate with confidence interval");
  host_options(c_sim, true);
  c_sim->add_option("--reps", sim.replications)->check(CLI::PositiveNumber);
  c_sim->add_option("--horizon", sim.horizon, "hours per availability replication");
  c_sim->add_option("--confidence", sim.confidence)->check(CLI::Range(0.0, 1.0));
  c_sim->add_option("--threads", sim.threads, "0: all cores");
  c_sim->add_flag("--mttf", sim.mttf, "estimate time to absorption instead of availability");
  c_sim->add_option("--absorb", sim.absorb)->delimiter(',');

  SweepOptions sweep;
  auto* c_sweep = app.add_subcommand("sweep", "grid over the three rejuvenation-triggered intervals");
  host_options(c_sweep, false);
  c_sweep->add_option("--grid", sweep.grid, "preset: coarse or fine");
  c_sweep->add_option("--omega-s", sweep.omega_s, "hours")->delimiter(',');
  c_sweep->add_option("--omega-v", sweep.omega_v, "hours")->delimiter(',');
  c_sweep->add_option("--omega-m", sweep.omega_m, "hours")->delimiter(',');
  c_sweep->add_option("--n", sweep.n, "hosts in the chain");
  c_sweep->add_option("--m", sweep.m, "serial hosts (rest parallel)");
  c_sweep->add_option("--budget", sweep.budget, "maximum grid points");
  c_sweep->add_option("--threads", sweep.threads, "0: all cores");

  ComposeOptions compose_opt;
  std::string topology_file;
  auto* c_compose = app.add_subcommand("compose", "chain metrics from per-host results");
  host_options(c_compose, false);
  c_compose->add_option("--topology", topology_file, "topology file");
  c_compose->add_option("--replicate", compose_opt.replicate, "host counts for the scaling study")->delimiter(',');
  c_compose->add_option("--serial", compose_opt.serial, "serial hosts in the parallel variant");

  std::size_t cmp_n = 4, cmp_m = 2;
  auto* c_compare = app.add_subcommand("compare", "full model against the no-backup model");
  host_options(c_compare, false);
  c_compare->add_option("--n", cmp_n);
  c_compare->add_option("--m", cmp_m);

  CdfStudyOptions cdf;
  auto* c_cdf = app.add_subcommand("cdf-study", "failure/recovery law families at matched means");
  host_options(c_cdf, false);
  c_cdf->add_option("--host-fix", cdf.host_fix_means, "host fix means, hours")->delimiter(',');
  c_cdf->add_option("--n", cdf.n);
  c_cdf->add_option("--m", cdf.m);

  SensitivityCliOptions sens;
  auto* c_sens = app.add_subcommand("sensitivity", "scaled sensitivities, ranked");
  host_options(c_sens, false);
  c_sens->add_option("--metric", sens.metrics)->delimiter(',');
  c_sens->add_option("--parameters", sens.parameters, "names, or 'all'")->delimiter(',');
  c_sens->add_option("--delta", sens.delta, "relative step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  const auto start = std::chrono::steady_clock::now();
  const std::string command = app.get_subcommands().front()->get_name();
  if (!model_file.empty()) host.model = model_file;
  if (!params_file.empty()) host.params = params_file;
  if (!emit_file.empty()) host.emit_model = emit_file;

  try {
    Output result;
    json inputs = json::object();
    json resolved = nullptr;
    if (command == "solve" || command == "mttf" || command == "simulate") {
      const auto r = resolve(host);
      inputs = r.inputs;
      resolved = r.params ? io::to_json(*r.params) : io::to_json(r.model);
      if (command == "solve") result = cmd_solve(r, solve);
      else if (command == "mttf") result = cmd_mttf(r, absorb);
      else {
        sim.seed = seed;
        result = cmd_simulate(r, sim);
      }
    } else if (command == "compose") {
      if (!topology_file.empty()) compose_opt.topology = topology_file;
      result = cmd_compose(host, compose_opt, inputs);
    } else {
      const auto p = resolve_params(host, inputs);
      resolved = io::to_json(p);
      if (command == "sweep") result = cmd_sweep(p, host.no_backup, sweep);
      else if (command == "compare") result = cmd_compare(p, cmp_n, cmp_m);
      else if (command == "cdf-study") result = cmd_cdf_study(p, cdf);
      else result = cmd_sensitivity(p, [&] { sens.no_backup = host.no_backup; return sens; }());
    }

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw Error(ErrorKind::Parse, "cannot write " + out_path);
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    if (format == "json") os << to_json(result).dump(2) << '\n';
    else write_csv(os, result.table);
    for (const auto& n : result.notes) std::cerr << n << '\n';
    if (!plot_path.empty() && !plot(command, result, plot_path))
      std::cerr << "no chart for " << command << "; --plot ignored\n";

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const json run{{"command", command},
                   {"argv", std::vector<std::string>(argv, argv + argc)},
                   {"inputs", inputs},
                   {"parameters", resolved},
                   {"outputs", to_json(result)},
                   {"seed", seed},
                   {"version", REJUV_VERSION},
                   {"wall_time_s", wall}};
    const auto rp = record_path(command, out_path, record);
    std::ofstream rec(rp);
    if (!rec) throw Error(ErrorKind::Parse, "cannot write run record " + rp.string());
    rec << run.dump(2) << '\n';
    return ok;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::BudgetExceeded) return budget_exceeded;
    return e.is_input_error() ? input_error : solver_error;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return solver_error;
  }
}
