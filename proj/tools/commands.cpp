#include "commands.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "rejuv/error.hpp"
#include "rejuv/io.hpp"
#include "rejuv/rbd.hpp"
#include "rejuv/reliability.hpp"
#include "rejuv/sensitivity.hpp"
#include "rejuv/simulator.hpp"
#include "rejuv/steady_state.hpp"
#include "svg.hpp"

namespace rejuv::cli {

namespace {

std::string state_name(const SmpModel& m, StateId i) { return m[i].name; }

std::vector<StateId> parse_states(const SmpModel& model, const std::vector<std::string>& ids) {
  std::vector<StateId> out;
  for (const auto& s : ids) {
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) {
      const auto id = static_cast<StateId>(std::stoull(s));
      if (id >= model.size()) throw Error(ErrorKind::InvalidModel, "state " + s + " out of range");
      out.push_back(id);
    } else {
      out.push_back(model.id_of(s));
    }
  }
  return out;
}

std::vector<StateId> default_absorbing(const SmpModel& model) {
  auto down = model.down_states();
  return down.empty() ? model.absorbing_states() : down;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F body) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) body(i);
  };
  threads = static_cast<unsigned>(std::min<std::size_t>(threads ? threads : std::thread::hardware_concurrency(), n));
  if (threads <= 1) return work();
  // Errors are rethrown on the calling thread in grid order.
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
}

HostMetrics<extended> chain_metrics(const HostMetrics<extended>& host, std::size_t n, std::size_t m) {
  return compose<extended>(RbdTopology::uniform(n, m, "host"), [&](const std::string&) { return host; });
}

}  // namespace

MsfcParams resolve_params(const HostInput& in, json& inputs) {
  if (!in.params) return default_params();
  const json j = io::load_file(*in.params);
  inputs[in.params->string()] = j;
  const auto reading = io::read_params(j);
  if (in.unit_check && !reading.unitless.empty()) {
    std::string list;
    for (const auto& f : reading.unitless) list += (list.empty() ? "" : ", ") + f;
    throw Error(ErrorKind::Parse, "unit check: entries without an explicit unit: " + list);
  }
  return reading.params;
}

Resolved resolve(const HostInput& in) {
  Resolved r;
  if (in.model && in.params) throw Error(ErrorKind::Parse, "give either --model or --params, not both");
  if (in.model) {
    const json j = io::load_file(*in.model);
    r.inputs[in.model->string()] = j;
    r.model = io::model_from_json(j);
  } else {
    r.params = resolve_params(in, r.inputs);
    r.model = generate(*r.params, in.no_backup ? HostVariant::NoBackup : HostVariant::Full);
  }
  if (in.emit_model) {
    std::ofstream out(*in.emit_model);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + in.emit_model->string());
    out << io::to_json(r.model).dump(2) << '\n';
  }
  return r;
}

Output cmd_solve(const Resolved& r, const SolveOptions& o) {
  Output out;
  out.table.columns = {"quantity", "state", "name", "value"};
  auto emit = [&](const auto& ss) {
    out.table.add({std::string("availability"), std::string(), std::string(), to_double(ss.availability)});
    out.table.add({std::string("unavailability"), std::string(), std::string(), to_double(ss.unavailability)});
    for (const char* q : {"pi", "V", "h"})
      for (StateId i = 0; i < r.model.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const auto v = std::string(q) == "pi" ? ss.pi(k) : std::string(q) == "V" ? ss.visits(k) : ss.chain.sojourn(k);
        out.table.add({std::string(q), static_cast<long long>(i), state_name(r.model, i), to_double(v)});
      }
    out.summary["availability"] = rounded(to_double(ss.availability));
    out.summary["unavailability"] = rounded(to_double(ss.unavailability));
  };
  if (o.quadrature) emit(solve_steady_state_quadrature(r.model));
  else if (o.extended) emit(solve_steady_state<extended>(r.model));
  else emit(solve_steady_state<double>(r.model));
  out.summary["route"] = o.quadrature ? "quadrature" : "exact";
  return out;
}

Output cmd_mttf(const Resolved& r, const std::vector<std::string>& absorb) {
  const auto set = absorb.empty() ? default_absorbing(r.model) : parse_states(r.model, absorb);
  const auto a = analyze_absorbing<double>(r.model, set);
  Output out;
  out.table.columns = {"quantity", "state", "name", "value"};
  out.table.add({std::string("mttf"), std::string(), std::string(), a.mttf});
  for (std::size_t k = 0; k < a.transient.size(); ++k)
    out.table.add({std::string("V_star"), static_cast<long long>(a.transient[k]), state_name(r.model, a.transient[k]),
                   a.visits(static_cast<Eigen::Index>(k))});
  for (std::size_t k = 0; k < a.transient.size(); ++k)
    out.table.add({std::string("h_star"), static_cast<long long>(a.transient[k]), state_name(r.model, a.transient[k]),
                   a.sojourn(static_cast<Eigen::Index>(k))});
  out.summary["mttf"] = rounded(a.mttf);
  out.summary["absorbing"] = set;
  return out;
}

Output cmd_simulate(const Resolved& r, const SimulateOptions& o) {
  SimConfig cfg;
  cfg.seed = o.seed;
  cfg.replications = o.replications;
  cfg.horizon = o.horizon;
  cfg.confidence = o.confidence;
  cfg.threads = o.threads;
  Output out;
  out.table.columns = {"quantity", "point", "ci_low", "ci_high", "analytic", "replications", "events", "censored"};
  auto row = [&](const char* q, const Estimate& e, double analytic, const SimResult& s) {
    out.table.add({std::string(q), e.point, e.ci_low, e.ci_high, analytic, static_cast<long long>(s.replications_used),
                   static_cast<long long>(s.events_simulated), static_cast<long long>(s.censored)});
    out.summary[q] = {{"point", rounded(e.point)},
                      {"ci_low", rounded(e.ci_low)},
                      {"ci_high", rounded(e.ci_high)},
                      {"analytic", rounded(analytic)},
                      {"contains_analytic", e.contains(analytic)}};
  };
  if (o.mttf) {
    const auto set = o.absorb.empty() ? default_absorbing(r.model) : parse_states(r.model, o.absorb);
    const auto s = simulate_mttf(r.model, set, cfg);
    row("mttf", s, analyze_absorbing<double>(r.model, set).mttf, s);
    if (s.censored) out.notes.push_back(std::to_string(s.censored) + " replications censored at the guard horizon");
  } else {
    const auto s = simulate_availability(r.model, cfg);
    const auto ss = solve_steady_state<extended>(r.model);
    row("availability", s, to_double(ss.availability), s);
    row("unavailability", s.complement, to_double(ss.unavailability), s);
    if (s.complement.point > 0)
      out.summary["unavailability_relative_half_width"] = rounded(s.complement.half_width() / s.complement.point);
  }
  out.summary["seed"] = o.seed;
  out.summary["confidence"] = o.confidence;
  return out;
}

Output cmd_sweep(const MsfcParams& p, bool no_backup, const SweepOptions& o) {
  std::vector<double> s = o.omega_s, v = o.omega_v, m = o.omega_m;
  if (o.grid == "coarse") {
    s = {0, 4, 8, 12}, v = {0, 10, 20, 30}, m = {0, 20, 40, 60};
  } else if (o.grid == "fine") {
    s = {0, 2, 4, 6}, v = {0, 1, 2, 3}, m = {0, 2, 4, 6};
  } else if (!o.grid.empty()) {
    throw Error(ErrorKind::Parse, "unknown grid preset '" + o.grid + "' (coarse, fine)");
  }
  if (s.empty()) s = {p.omega_s};
  if (v.empty()) v = {p.omega_v};
  if (m.empty()) m = {p.omega_m};
  for (const auto* axis : {&s, &v, &m})
    for (double x : *axis)
      if (!(x >= 0.0 && std::isfinite(x))) throw Error(ErrorKind::InvalidParameter, "RTI grid values must be >= 0");
  const std::size_t points = s.size() * v.size() * m.size();
  if (points > o.budget)
    throw Error(ErrorKind::BudgetExceeded,
                "grid has " + std::to_string(points) + " points, budget is " + std::to_string(o.budget));
  if (o.m > o.n || o.n == 0) throw Error(ErrorKind::InvalidModel, "topology needs 1 <= n and m <= n");

  struct Point {
    double s, v, m;
    HostMetrics<extended> chain;
  };
  std::vector<Point> grid;
  for (double a : s)
    for (double b : v)
      for (double c : m) grid.push_back({a, b, c, {}});
  const auto variant = no_backup ? HostVariant::NoBackup : HostVariant::Full;
  std::vector<std::exception_ptr> errors(grid.size());
  parallel_for(grid.size(), o.threads, [&](std::size_t i) {
    try {
      MsfcParams q = p;
      q.omega_s = grid[i].s, q.omega_v = grid[i].v, q.omega_m = grid[i].m;
      grid[i].chain = chain_metrics(evaluate_host<extended>(q, variant), o.n, o.m);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Output out;
  out.table.columns = {"omega_s", "omega_v", "omega_m", "availability", "mttf"};
  std::size_t best_a = 0, best_m = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.table.add({grid[i].s, grid[i].v, grid[i].m, to_double(grid[i].chain.availability), to_double(grid[i].chain.mttf)});
    if (grid[i].chain.availability > grid[best_a].chain.availability) best_a = i;
    if (grid[i].chain.mttf > grid[best_m].chain.mttf) best_m = i;
  }
  auto describe = [&](std::size_t i) {
    auto interior = [](const std::vector<double>& axis, double x) {
      return x != *std::min_element(axis.begin(), axis.end()) && x != *std::max_element(axis.begin(), axis.end());
    };
    return json{{"omega_s", grid[i].s},
                {"omega_v", grid[i].v},
                {"omega_m", grid[i].m},
                {"availability", rounded(to_double(grid[i].chain.availability))},
                {"mttf", rounded(to_double(grid[i].chain.mttf))},
                {"interior", {interior(s, grid[i].s), interior(v, grid[i].v), interior(m, grid[i].m)}}};
  };
  out.summary["argmax_availability"] = describe(best_a);
  out.summary["argmax_mttf"] = describe(best_m);
  out.summary["topology"] = {{"n", o.n}, {"m", o.m}};
  std::ostringstream note;
  note << "availability maximal at (" << grid[best_a].s << ", " << grid[best_a].v << ", " << grid[best_a].m
       << "), MTTF maximal at (" << grid[best_m].s << ", " << grid[best_m].v << ", " << grid[best_m].m << ")";
  out.notes.push_back(note.str());
  return out;
}

Output cmd_compose(const HostInput& host, const ComposeOptions& o, json& inputs) {
  std::map<std::string, HostMetrics<extended>> cache;
  auto host_metrics = [&](const HostInput& in) {
    const auto p = resolve_params(in, inputs);
    return evaluate_host<extended>(p, in.no_backup ? HostVariant::NoBackup : HostVariant::Full);
  };
  Output out;
  if (o.topology) {
    const json j = io::load_file(*o.topology);
    inputs[o.topology->string()] = j;
    const auto file = io::topology_from_json(j);
    const auto base = o.topology->parent_path();
    const auto metrics = compose<extended>(file.topology, [&](const std::string& ref) -> HostMetrics<extended> {
      if (auto it = file.inline_metrics.find(ref); it != file.inline_metrics.end())
        return {extended(it->second.availability), extended(it->second.mttf)};
      HostInput in = host;
      in.model.reset();
      if (ref == "default") in.params.reset();
      else in.params = base / ref;
      return host_metrics(in);
    });
    const auto t = file.topology.normalized();
    out.table.columns = {"n", "serial", "parallel", "availability", "mttf"};
    out.table.add({static_cast<long long>(t.size()), static_cast<long long>(t.serial.size()),
                   static_cast<long long>(t.parallel.size()), to_double(metrics.availability), to_double(metrics.mttf)});
    return out;
  }
  if (o.replicate.empty()) throw Error(ErrorKind::Parse, "compose needs --topology or --replicate");
  if (o.replicate.size() > o.budget) throw Error(ErrorKind::BudgetExceeded, "too many replicate sizes");
  if (host.model) throw Error(ErrorKind::Parse, "--replicate works from --params, not --model");
  const auto h = host_metrics(host);
  out.table.columns = {"topology", "n", "serial", "parallel", "availability", "mttf"};
  for (std::size_t n : o.replicate) {
    if (n == 0) throw Error(ErrorKind::InvalidModel, "host count must be >= 1");
    const auto serial = chain_metrics(h, n, n);
    out.table.add({std::string("serial"), static_cast<long long>(n), static_cast<long long>(n), 0LL,
                   to_double(serial.availability), to_double(serial.mttf)});
  }
  for (std::size_t n : o.replicate) {
    if (o.serial >= n) continue;
    const auto par = chain_metrics(h, n, o.serial);
    const auto t = RbdTopology::uniform(n, o.serial, "host").normalized();
    out.table.add({std::string("parallel"), static_cast<long long>(n), static_cast<long long>(t.serial.size()),
                   static_cast<long long>(t.parallel.size()), to_double(par.availability), to_double(par.mttf)});
  }
  out.summary["host"] = {{"availability", rounded(to_double(h.availability))}, {"mttf", rounded(to_double(h.mttf))}};
  return out;
}

Output cmd_compare(const MsfcParams& p, std::size_t n, std::size_t m) {
  if (m > n || n == 0) throw Error(ErrorKind::InvalidModel, "topology needs 1 <= n and m <= n");
  const auto full = evaluate_host<extended>(p, HostVariant::Full);
  const auto simple = evaluate_host<extended>(p, HostVariant::NoBackup);
  Output out;
  out.table.columns = {"topology", "n", "m", "full_availability", "no_backup_availability", "delta_availability",
                       "full_mttf", "no_backup_mttf", "delta_mttf"};
  auto row = [&](const char* name, std::size_t nn, std::size_t mm) {
    const auto a = chain_metrics(full, nn, mm);
    const auto b = chain_metrics(simple, nn, mm);
    out.table.add({std::string(name), static_cast<long long>(nn), static_cast<long long>(mm),
                   to_double(a.availability), to_double(b.availability), to_double(b.availability - a.availability),
                   to_double(a.mttf), to_double(b.mttf), to_double(b.mttf - a.mttf)});
    out.summary[name] = {{"no_backup_availability_higher", b.availability > a.availability},
                         {"no_backup_mttf_higher", b.mttf > a.mttf}};
  };
  row("host", 1, 1);
  row("serial", n, n);
  row("parallel", n, m);
  return out;
}

namespace {

struct Regime {
  const char* failure;
  const char* recovery;
};

Distribution as_exponential(const Distribution& d) { return Distribution::exponential_with_mean(mean(d)); }
Distribution as_hypo(const Distribution& d) {
  return std::holds_alternative<Hypoexponential>(d.variant()) ? d : Distribution::hypoexponential_with_mean(mean(d));
}
Distribution as_step(const Distribution& d) { return Distribution::deterministic(mean(d)); }

bool is_failure_law(const LawField& f) { return f.name[0] == 'f' && f.name[1] == '_'; }

}  // namespace

Output cmd_cdf_study(const MsfcParams& p, const CdfStudyOptions& o) {
  if (o.m > o.n || o.n == 0) throw Error(ErrorKind::InvalidModel, "topology needs 1 <= n and m <= n");
  const Regime regimes[] = {{"HYPO", "EXP"}, {"HYPO", "DET"}, {"EXP", "EXP"}, {"EXP", "DET"}};
  Output out;
  out.table.columns = {"topology", "failure", "recovery", "host_fix_mean", "availability", "mttf", "means_matched"};
  bool all_matched = true;
  for (const auto& regime : regimes) {
    for (double tr : o.host_fix_means) {
      MsfcParams q = p;
      q.R_host = Distribution::exponential_with_mean(tr);
      MsfcParams reference = q;
      for (const auto& f : law_fields()) {
        auto& law = q.*f.member;
        if (is_failure_law(f)) law = std::string(regime.failure) == "EXP" ? as_exponential(law) : as_hypo(law);
        else law = std::string(regime.recovery) == "DET" ? as_step(law) : as_exponential(law);
      }
      bool matched = true;
      for (const auto& f : law_fields()) {
        const double a = mean(q.*f.member), b = mean(reference.*f.member);
        matched = matched && std::abs(a - b) <= 1e-12 * b;
      }
      all_matched = all_matched && matched;
      const auto host = evaluate_host<extended>(q);
      const std::pair<const char*, HostMetrics<extended>> rows[] = {
          {"host", host}, {"serial", chain_metrics(host, o.n, o.n)}, {"parallel", chain_metrics(host, o.n, o.m)}};
      for (const auto& [name, metrics] : rows)
        out.table.add({std::string(name), std::string(regime.failure), std::string(regime.recovery), tr,
                       to_double(metrics.availability), to_double(metrics.mttf), matched});
    }
  }
  out.summary["means_matched"] = all_matched;
  out.summary["topology"] = {{"n", o.n}, {"m", o.m}};
  return out;
}

Output cmd_sensitivity(const MsfcParams& p, const SensitivityCliOptions& o) {
  const auto variant = o.no_backup ? HostVariant::NoBackup : HostVariant::Full;
  std::vector<Metric<MsfcParams>> metrics;
  for (const auto& m : o.metrics) {
    if (m == "availability") metrics.push_back(availability_metric(variant));
    else if (m == "mttf") metrics.push_back(mttf_metric(variant));
    else throw Error(ErrorKind::Parse, "unknown metric '" + m + "' (availability, mttf)");
  }
  std::vector<Parameter<MsfcParams>> params;
  if (o.parameters.empty()) params = msfc_parameters(false);
  else if (o.parameters.size() == 1 && o.parameters[0] == "all") params = msfc_parameters(true);
  else
    for (const auto& name : o.parameters) {
      auto q = find_msfc_parameter(name);
      if (!q) throw Error(ErrorKind::Parse, "unknown parameter '" + name + "'");
      params.push_back(*q);
    }
  SensitivityOptions opt;
  opt.delta = o.delta;
  const auto report = rank_parameters(metrics, p, params, opt);
  Output out;
  out.table.columns = {"parameter", "metric", "SS", "delta", "richardson_flag", "convention", "error"};
  std::size_t flagged = 0;
  for (const auto& e : report.entries) {
    Cell ss = e.error ? Cell(std::string("NA")) : e.unaffected ? Cell(std::string("--")) : Cell(e.ss);
    out.table.add({e.parameter, e.metric, ss, e.delta, e.richardson_flag, e.convention, e.error.value_or("")});
    flagged += e.richardson_flag;
  }
  out.summary["step_policy"] = report.step_policy;
  out.summary["richardson_flagged"] = flagged;
  out.summary["aliases"] = {{"gamma_fs", "gamma_rs"}, {"gamma_fv", "gamma_rv"}};
  return out;
}

namespace {

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  throw Error(ErrorKind::Parse, "no column " + name);
}

double as_number(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return *d;
  if (auto l = std::get_if<long long>(&c)) return static_cast<double>(*l);
  return std::nan("");
}

}  // namespace

bool plot(const std::string& command, const Output& out, const std::filesystem::path& path) {
  const auto& t = out.table;
  if (command == "sweep") {
    Series s{"availability", {}, {}};
    const auto a = column(t, "availability");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      s.x.push_back(static_cast<double>(i));
      s.y.push_back(as_number(t.rows[i][a]));
    }
    write_line_plot(path, "Availability over the RTI grid", "grid point (omega_s slowest, omega_m fastest)",
                    "availability", {s});
    return true;
  }
  if (command == "compose" || command == "cdf-study") {
    const bool compose_cmd = command == "compose";
    const auto key = column(t, "topology");
    const auto x = column(t, compose_cmd ? "n" : "host_fix_mean");
    const auto a = column(t, "availability");
    std::map<std::string, Series> by;
    std::vector<std::string> order;
    for (const auto& row : t.rows) {
      std::string label = std::get<std::string>(row[key]);
      if (!compose_cmd) {
        if (label != "host") continue;
        label = std::get<std::string>(row[column(t, "failure")]) + "/" + std::get<std::string>(row[column(t, "recovery")]);
      }
      if (!by.count(label)) order.push_back(label), by[label].label = label;
      by[label].x.push_back(as_number(row[x]));
      by[label].y.push_back(as_number(row[a]));
    }
    std::vector<Series> series;
    for (const auto& l : order) series.push_back(by[l]);
    write_line_plot(path, compose_cmd ? "Chain availability by host count" : "Host availability by host-fix mean",
                    compose_cmd ? "hosts" : "host fix mean (h)", "availability", series);
    return true;
  }
  return false;
}

}  // namespace rejuv::cli
