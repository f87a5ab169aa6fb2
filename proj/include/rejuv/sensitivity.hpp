#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rejuv/error.hpp"
#include "rejuv/msfc_model.hpp"
#include "rejuv/scalar.hpp"

namespace rejuv {

/// A scalar knob on a parameter set P. `get`/`set` work in the parameter's own convention.
template <class P>
struct Parameter {
  std::string name;
  std::string convention;  ///< e.g. "rate (1/h), all phases scaled"
  std::function<double(const P&)> get;
  std::function<void(P&, double)> set;
};

template <class P>
struct Metric {
  std::string name;
  std::function<extended(const P&)> eval;
};

struct SensitivityOptions {
  double delta = 1e-4;
  double fallback_delta = 1e-3;
  /// Relative resolution of the metric evaluation; differences below 10x this trigger the fallback step.
  double solver_tolerance = 1e-40;
  double richardson_limit = 0.01;
};

struct SensitivityEntry {
  std::string parameter;
  std::string metric;
  std::string convention;
  double ss = 0.0;
  double delta = 0.0;
  bool richardson_flag = false;
  bool unaffected = false;  ///< the metric does not depend on the parameter; printed as "--"
  std::optional<std::string> error;
};

struct SensitivityReport {
  std::vector<SensitivityEntry> entries;  ///< grouped by metric, |SS| descending
  std::string step_policy;
};

namespace detail {

template <class P>
extended evaluate_at(const Metric<P>& metric, const P& base, const Parameter<P>& param, double value) {
  P q = base;
  try {
    param.set(q, value);
    return metric.eval(q);
  } catch (const Error& e) {
    throw Error(ErrorKind::MetricUndefined,
                metric.name + " at " + param.name + "=" + std::to_string(value) + ": " + e.what());
  }
}

template <class P>
extended central_difference(const Metric<P>& metric, const P& p, const Parameter<P>& param, double rho, double delta) {
  const extended up = evaluate_at(metric, p, param, rho * (1 + delta));
  const extended dn = evaluate_at(metric, p, param, rho * (1 - delta));
  return up - dn;
}

}  // namespace detail

/// SS = (dY/drho)(rho/Y) by central difference with relative step delta.
template <class P>
SensitivityEntry scaled_sensitivity(const Metric<P>& metric, const P& p, const Parameter<P>& param,
                                    const SensitivityOptions& opt = {}) {
  SensitivityEntry e{param.name, metric.name, param.convention};
  const double rho = param.get(p);
  if (!(rho > 0.0 && std::isfinite(rho)))
    throw Error(ErrorKind::InvalidParameter, param.name + " must be positive for scaled sensitivity");
  const extended y = metric.eval(p);
  if (y == 0) throw Error(ErrorKind::ZeroMetric, metric.name + " is zero");

  auto ss_at = [&](double delta) {
    const extended diff = detail::central_difference(metric, p, param, rho, delta);
    return std::pair{diff, diff / (2 * extended(delta) * y)};
  };
  double delta = opt.delta;
  auto [diff, ss] = ss_at(delta);
  if (diff == 0) {
    e.unaffected = true;
    e.delta = delta;
    return e;
  }
  if (abs(diff) < 10 * opt.solver_tolerance * abs(y)) {
    delta = opt.fallback_delta;
    std::tie(diff, ss) = ss_at(delta);
  }
  const extended half = ss_at(delta / 2).second;
  e.ss = to_double(ss);
  e.delta = delta;
  e.richardson_flag = abs(half - ss) > opt.richardson_limit * abs(ss);
  return e;
}

/// Every (metric, parameter) pair; failures are recorded per entry.
template <class P>
SensitivityReport rank_parameters(const std::vector<Metric<P>>& metrics, const P& p,
                                  const std::vector<Parameter<P>>& params, const SensitivityOptions& opt = {}) {
  if (params.empty()) throw Error(ErrorKind::InvalidParameter, "parameter list is empty");
  SensitivityReport report;
  report.step_policy = "central difference, relative step " + std::to_string(opt.delta) + " (fallback " +
                       std::to_string(opt.fallback_delta) + "), Richardson check at half step, limit " +
                       std::to_string(opt.richardson_limit);
  for (const auto& m : metrics) {
    std::vector<SensitivityEntry> block;
    for (const auto& q : params) {
      try {
        block.push_back(scaled_sensitivity(m, p, q, opt));
      } catch (const Error& err) {
        SensitivityEntry e{q.name, m.name, q.convention};
        e.error = err.what();
        block.push_back(e);
      }
    }
    auto key = [](const SensitivityEntry& e) {
      return e.error ? -2.0 : e.unaffected ? -1.0 : std::abs(e.ss);
    };
    std::stable_sort(block.begin(), block.end(), [&](const auto& a, const auto& b) { return key(a) > key(b); });
    report.entries.insert(report.entries.end(), block.begin(), block.end());
  }
  return report;
}

// Host-model bindings.

/// Rate-style parameters of the host model. The default set covers the failure, recovery
/// and restart laws; `all` adds aging rates, the cross-layer aging rate and the RTIs.
std::vector<Parameter<MsfcParams>> msfc_parameters(bool all = false);

/// Lookup by name or alias (gamma_fs = gamma_rs, gamma_fv = gamma_rv, field names such as R_host).
std::optional<Parameter<MsfcParams>> find_msfc_parameter(const std::string& name);

Metric<MsfcParams> availability_metric(HostVariant variant = HostVariant::Full);
Metric<MsfcParams> mttf_metric(HostVariant variant = HostVariant::Full);

}  // namespace rejuv
