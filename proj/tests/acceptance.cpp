// Acceptance checks, one line per criterion. `acceptance` runs all of them;
// `acceptance --criterion N` runs one. Exit status is nonzero if any checked criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rejuv/kernel.hpp"
#include "rejuv/msfc_model.hpp"
#include "rejuv/rbd.hpp"
#include "rejuv/reliability.hpp"
#include "rejuv/sensitivity.hpp"
#include "rejuv/simulator.hpp"
#include "rejuv/steady_state.hpp"
#include "support.hpp"

using namespace rejuv;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << (ok ? "" : "NOT ") << what;
  }
};

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// 1. exponential oracle
void exponential_oracle(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = testing::up_down(0.1, 1.0);
  const double a = solve_steady_state(m).availability;
  const double t = analyze_absorbing(m, {1}).mttf;
  v.require(std::abs(a - 10.0 / 11) <= 1e-10, "A = 10/11 to 1e-10 (got " + sci(a) + ")");
  v.require(std::abs(t - 10.0) <= 1e-10, "MTTF = 10 h to 1e-10 (got " + sci(t) + ")");
  SimConfig cfg;
  cfg.seed = 1;
  cfg.replications = 200;
  cfg.horizon = 1e5;
  cfg.confidence = 0.99;
  const auto sa = simulate_availability(m, cfg);
  const auto sm = simulate_mttf(m, {1}, cfg);
  v.require(sa.contains(10.0 / 11), "99% CI [" + sci(sa.ci_low) + ", " + sci(sa.ci_high) + "] contains 10/11");
  v.require(sm.contains(10.0), "99% CI [" + sci(sm.ci_low) + ", " + sci(sm.ci_high) + "] contains 10 h");
  const double s = elapsed(start);
  v.require(s < 30, "runtime " + sci(s) + " s < 30 s");
}

// 2. CTMC equivalence
void ctmc_equivalence(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 g(20240601);
  double worst_pi = 0, worst_mttf = 0;
  for (int k = 0; k < 5; ++k) {
    const auto m = testing::random_exponential_model(g, 8);
    const auto q = testing::generator(m);
    const auto pi = solve_steady_state(m).pi;
    const auto oracle = testing::ctmc_stationary(q);
    for (Eigen::Index i = 0; i < pi.size(); ++i)
      worst_pi = std::max(worst_pi, std::abs(pi(i) - oracle(i)) / std::max(oracle(i), 1e-300));
    const auto down = m.down_states();
    const double a = analyze_absorbing(m, down).mttf;
    const double b = testing::ctmc_mttf(q, down, m.initial);
    worst_mttf = std::max(worst_mttf, std::abs(a - b) / b);
  }
  v.require(worst_pi <= 1e-8, "pi relative error " + sci(worst_pi) + " <= 1e-8");
  v.require(worst_mttf <= 1e-8, "MTTF relative error " + sci(worst_mttf) + " <= 1e-8");
  const double s = elapsed(start);
  v.require(s < 10, "runtime " + sci(s) + " s < 10 s");
}

// 3. kernel race
void kernel_race(Verdict& v) {
  const auto m = testing::race_model({Distribution::deterministic(1), Distribution::exponential(1)});
  const auto c = build_embedded_chain(m);
  const double e1 = std::exp(-1.0);
  v.require(std::abs(c.transition(0, 1) - e1) <= 1e-10, "P(atom wins) = e^-1");
  v.require(std::abs(c.transition(0, 2) - (1 - e1)) <= 1e-10, "P(exponential wins) = 1 - e^-1");
  v.require(std::abs(c.sojourn(0) - (1 - e1)) <= 1e-10, "sojourn = 1 - e^-1");
  Walker w(m);
  auto g = replication_stream(3, 0);
  const int n = 1'000'000;
  int atom = 0;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const auto st = w.step(0, g);
    atom += st.next == 1;
    sum += st.sojourn;
    sum2 += st.sojourn * st.sojourn;
  }
  const double freq = static_cast<double>(atom) / n;
  const double sigma = std::sqrt(e1 * (1 - e1) / n);
  v.require(std::abs(freq - e1) <= 3 * sigma, "simulated frequency " + sci(freq) + " within 3 sigma");
  const double mean = sum / n, sd = std::sqrt((sum2 / n - mean * mean) / n);
  v.require(std::abs(mean - (1 - e1)) <= 3 * sd, "simulated mean sojourn " + sci(mean) + " within 3 sigma");
}

// 4. bundled-model regime
void bundled_regime(Verdict& v) {
  const auto p = default_params();
  const auto model = generate_host_model(p);
  const auto ss = solve_steady_state<extended>(model);
  const double u = to_double(ss.unavailability);
  const double t = to_double(analyze_absorbing<extended>(model, model.down_states()).mttf);
  v.require(u >= 1e-7 && u <= 1e-5, "unavailability " + sci(u) + " in [1e-7, 1e-5]");
  v.require(t >= 1.67e5 / 5 && t <= 1.67e5 * 5, "MTTF " + sci(t) + " h within 5x of 1.67e5 h");
  const auto start = std::chrono::steady_clock::now();
  SimConfig cfg;
  cfg.seed = 2024;
  cfg.replications = 4000;
  cfg.horizon = 1e6;
  cfg.confidence = 0.99;
  cfg.threads = 0;
  const auto sim = simulate_availability(model, cfg);
  const double s = elapsed(start);
  v.require(sim.contains(to_double(ss.availability)), "analytic A inside simulated 99% CI");
  v.require(sim.complement.contains(u), "analytic U inside simulated 99% CI [" + sci(sim.complement.ci_low) + ", " +
                                            sci(sim.complement.ci_high) + "]");
  const double rel = sim.complement.half_width() / u;
  v.require(rel <= 0.25, "U half-width " + sci(100 * rel) + "% <= 25% (4000 x 1e6 h)");
  v.require(s <= 600, "simulation " + sci(s) + " s <= 600 s");
}

// 5. RTI structure
struct Grid {
  const char* name;
  std::vector<double> s, v, m;
};

void rti_structure(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const Grid grids[] = {{"coarse", {0, 4, 8, 12}, {0, 10, 20, 30}, {0, 20, 40, 60}},
                        {"fine", {0, 2, 4, 6}, {0, 1, 2, 3}, {0, 2, 4, 6}}};
  bool any_interior = false;
  bool mttf_ok = true;
  std::string where;
  for (const auto& grid : grids) {
    const std::size_t ns = grid.s.size(), nv = grid.v.size(), nm = grid.m.size();
    std::vector<HostMetrics<extended>> h(ns * nv * nm);
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> HostMetrics<extended>& {
      return h[(i * nv + j) * nm + k];
    };
    std::size_t bi = 0, bj = 0, bk = 0;
    for (std::size_t i = 0; i < ns; ++i)
      for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t k = 0; k < nm; ++k) {
          auto p = default_params();
          p.omega_s = grid.s[i], p.omega_v = grid.v[j], p.omega_m = grid.m[k];
          at(i, j, k) = evaluate_host<extended>(p);
          if (at(i, j, k).availability > at(bi, bj, bk).availability) bi = i, bj = j, bk = k;
        }
    const bool interior = (bi > 0 && bi + 1 < ns) || (bj > 0 && bj + 1 < nv) || (bk > 0 && bk + 1 < nm);
    any_interior = any_interior || interior;
    where += std::string(where.empty() ? "" : ", ") + grid.name + " argmax (" + sci(grid.s[bi]) + "," +
             sci(grid.v[bj]) + "," + sci(grid.m[bk]) + ")";
    for (std::size_t i = 0; i < ns; ++i)
      for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t k = 0; k < nm; ++k) {
          const auto& x = at(i, j, k).mttf;
          if (x > at(0, 0, 0).mttf) mttf_ok = false;
          if (i + 1 < ns && at(i + 1, j, k).mttf > x) mttf_ok = false;
          if (j + 1 < nv && at(i, j + 1, k).mttf > x) mttf_ok = false;
          if (k + 1 < nm && at(i, j, k + 1).mttf > x) mttf_ok = false;
        }
  }
  v.require(any_interior, "availability argmax interior on some axis (" + where + ")");
  v.require(mttf_ok, "MTTF maximal at (0,0,0) and nonincreasing along each axis");
  const double s = elapsed(start);
  v.require(s < 300, "runtime " + sci(s) + " s < 300 s");
}

// 6. scaling study
void scaling(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  int solves = 0;
  const auto host = evaluate_host<extended>(default_params());
  auto resolve = [&](const std::string&) {
    ++solves;
    return host;
  };
  std::vector<HostMetrics<extended>> serial, par;
  for (std::size_t n : {4, 5, 6}) {
    serial.push_back(compose<extended>(RbdTopology::uniform(n, n, "h"), resolve));
    par.push_back(compose<extended>(RbdTopology::uniform(n, 2, "h"), resolve));
  }
  bool a_dec = true, m_noninc = true, p_nondec = true;
  for (std::size_t i = 0; i + 1 < serial.size(); ++i) {
    a_dec = a_dec && serial[i + 1].availability < serial[i].availability;
    m_noninc = m_noninc && serial[i + 1].mttf <= serial[i].mttf;
    p_nondec = p_nondec && par[i + 1].availability >= par[i].availability;
  }
  v.require(a_dec, "serial A strictly decreasing for n = 4, 5, 6");
  v.require(m_noninc, "serial MTTF nonincreasing");
  v.require(p_nondec, "parallel A nondecreasing as the group grows 2, 3, 4");
  v.require(solves == 6, "one host solve per composition (" + std::to_string(solves) + ")");
  const double s = elapsed(start);
  v.require(s < 120, "runtime " + sci(s) + " s < 120 s");
}

// 7. backup-behaviour comparison
void backup_comparison(Verdict& v) {
  auto check_topologies = [](const MsfcParams& p) {
    const auto full = evaluate_host<extended>(p, HostVariant::Full);
    const auto simple = evaluate_host<extended>(p, HostVariant::NoBackup);
    std::vector<std::pair<HostMetrics<extended>, HostMetrics<extended>>> out;
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{4, 4}, {4, 2}}) {
      auto f = [&](const HostMetrics<extended>& h) {
        return compose<extended>(RbdTopology::uniform(n, m, "h"), [&](const std::string&) { return h; });
      };
      out.emplace_back(f(full), f(simple));
    }
    return out;
  };
  bool higher = true;
  for (const auto& [full, simple] : check_topologies(default_params()))
    higher = higher && simple.availability > full.availability && simple.mttf > full.mttf;
  v.require(higher, "no-backup A and MTTF exceed the full model (serial 4, parallel 2+2)");

  // Limit: backups that never age are never found degraded, so c_x1 = 1 goes with it.
  double last_a = 0, last_m = 0;
  std::string trail;
  for (double mean_age : {1e6, 1e10, 1e14, 1e20}) {
    last_a = last_m = 0;
    auto p = default_params();
    p.t_abs = p.t_abv = p.t_abm = mean_age;
    p.c_s = p.c_v = p.c_m = {1, 0, 0};
    for (const auto& [full, simple] : check_topologies(p)) {
      last_a = std::max(last_a, to_double(abs(simple.availability - full.availability)));
      last_m = std::max(last_m, to_double(abs(simple.mttf - full.mttf) / simple.mttf));
    }
    trail += (trail.empty() ? "" : " ") + sci(last_a) + "/" + sci(last_m);
  }
  v.require(true, "A/relative MTTF deltas at backup aging means 1e6, 1e10, 1e14, 1e20 h: " + trail);
  v.require(last_a < 1e-10, "A delta " + sci(last_a) + " < 1e-10 as backup aging means -> 1e20 h");
  v.require(last_m < 1e-10, "relative MTTF delta " + sci(last_m) + " < 1e-10");
}

// 8. sensitivity
void sensitivity(Verdict& v) {
  struct Rates {
    double lambda = 0.1, mu = 1.0;
  };
  const Metric<Rates> a{"A", [](const Rates& r) { return extended(r.mu) / (extended(r.lambda) + extended(r.mu)); }};
  const Parameter<Rates> mu{"mu", "rate", [](const Rates& r) { return r.mu; }, [](Rates& r, double x) { r.mu = x; }};
  const Parameter<Rates> la{"lambda", "rate", [](const Rates& r) { return r.lambda; },
                            [](Rates& r, double x) { r.lambda = x; }};
  const double oracle = 0.1 / 1.1;
  const double e1 = std::abs(scaled_sensitivity(a, Rates{}, mu).ss - oracle);
  const double e2 = std::abs(scaled_sensitivity(a, Rates{}, la).ss + oracle);
  v.require(std::max(e1, e2) <= 1e-6, "closed-form SS within 1e-6 (" + sci(std::max(e1, e2)) + ")");

  const auto report = rank_parameters<MsfcParams>({availability_metric(), mttf_metric()}, default_params(),
                                                  msfc_parameters());
  bool negative = true;
  std::string top;
  double mu_r = 0;
  for (const auto& e : report.entries) {
    const bool failure = e.parameter.rfind("alpha_f", 0) == 0 || e.parameter.rfind("beta_f", 0) == 0 ||
                         e.parameter.rfind("delta_f", 0) == 0;
    if (failure) negative = negative && !e.error && !e.unaffected && e.ss < 0;
    if (e.metric == "availability" && top.empty()) top = e.parameter;
    if (e.metric == "availability" && e.parameter == "mu_R") mu_r = e.ss;
  }
  v.require(negative, "all failure-law sensitivities negative");
  v.require(mu_r > 0, "host-fix availability SS positive (" + sci(mu_r) + ")");
  v.require(top == "mu_R", "host fix ranks first for availability (first: " + top + ")");
}

// 9. host-fix monotonicity
void host_fix(Verdict& v) {
  bool decreasing = true;
  extended prev = 2;
  double first = 0, last = 0;
  for (int k = 0; k <= 25; ++k) {
    auto p = default_params();
    const double tr = 0.1 + 0.01 * k;
    p.R_host = Distribution::exponential_with_mean(tr);
    const auto a = solve_steady_state<extended>(generate_host_model(p)).availability;
    decreasing = decreasing && a < prev;
    prev = a;
    (k == 0 ? first : last) = to_double(a);
  }
  v.require(decreasing, "A strictly decreasing over host-fix means 0.1..0.35 h (" + sci(1 - first) + " -> " +
                            sci(1 - last) + " unavailability)");
}

// 10. RBD identities by enumeration
void rbd_identities(Verdict& v) {
  std::mt19937_64 g(10);
  std::uniform_real_distribution<double> prob(0.0, 1.0), life(1.0, 1e5);
  double worst = 0;
  bool mttf_rule = true;
  int topologies = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t m = 0; m <= n; ++m) {
      ++topologies;
      for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> a(n), t(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = prob(g), t[i] = life(g);
        RbdTopology topo;
        for (std::size_t i = 0; i < n; ++i) (i < m ? topo.serial : topo.parallel).push_back(std::to_string(i));
        const auto norm = topo.normalized();
        const auto got = compose<double>(topo, [&](const std::string& r) {
          const auto i = std::stoul(r);
          return HostMetrics<double>{a[i], t[i]};
        });
        // enumerate every up/down assignment
        double up = 0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          double pr = 1;
          for (std::size_t i = 0; i < n; ++i) pr *= (mask >> i & 1u) ? a[i] : 1 - a[i];
          bool ok = true, any_parallel = norm.parallel.empty();
          for (const auto& r : norm.serial) ok = ok && (mask >> std::stoul(r) & 1u);
          for (const auto& r : norm.parallel) any_parallel = any_parallel || (mask >> std::stoul(r) & 1u);
          if (ok && any_parallel) up += pr;
        }
        worst = std::max(worst, std::abs(up - got.availability));
        double rule = norm.parallel.empty() ? 1e300 : 0;
        for (const auto& r : norm.parallel) rule = std::max(rule, t[std::stoul(r)]);
        for (const auto& r : norm.serial) rule = std::min(rule, t[std::stoul(r)]);
        mttf_rule = mttf_rule && got.mttf == rule;
      }
    }
  v.require(worst <= 1e-14, "availability matches enumeration over " + std::to_string(topologies) +
                                " topologies (max error " + sci(worst) + ")");
  v.require(mttf_rule, "MTTF equals the min/max rule");
}

const std::vector<std::pair<const char*, std::function<void(Verdict&)>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> c{
      {"exponential oracle", exponential_oracle},
      {"CTMC equivalence", ctmc_equivalence},
      {"kernel race", kernel_race},
      {"bundled-model regime", bundled_regime},
      {"RTI structure", rti_structure},
      {"scaling study", scaling},
      {"backup-behaviour comparison", backup_comparison},
      {"sensitivity", sensitivity},
      {"host-fix monotonicity", host_fix},
      {"RBD identities", rbd_identities},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t only = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::stoul(argv[i + 1]);
  bool all = true;
  for (std::size_t k = 1; k <= criteria().size(); ++k) {
    if (only && k != only) continue;
    Verdict v;
    try {
      criteria()[k - 1].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("threw: ") + e.what());
    }
    std::printf("criterion %zu %s: %s (%s)\n", k, criteria()[k - 1].first, v.pass ? "PASS" : "FAIL",
                v.detail.str().c_str());
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
