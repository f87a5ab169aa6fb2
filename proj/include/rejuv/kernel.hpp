#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "rejuv/error.hpp"
#include "rejuv/expsum.hpp"
#include "rejuv/scalar.hpp"
#include "rejuv/smp_model.hpp"

namespace rejuv {

/// Limit transition matrix of the kernel plus mean sojourn times (hours).
template <class Scalar = double>
struct EmbeddedChain {
  Matrix<Scalar> transition;
  Vector<Scalar> sojourn;
};

/// Outcome of one mode's race of independent events.
template <class Scalar>
struct RaceOutcome {
  std::vector<Scalar> win;  ///< P(event k fires first, by the horizon)
  Scalar sojourn;           ///< ∫₀^∞ P(no event has fired by u) du
};

/// Races the events of `mode` up to `horizon` hours.
///
/// Point masses cut the race: the smallest atom (earliest-declared on ties)
/// fires at that instant if nothing continuous fired before it; all other
/// point masses never win.
template <class Scalar = double>
RaceOutcome<Scalar> race(const Mode& mode,
                         double horizon = std::numeric_limits<double>::infinity()) {
  const auto& events = mode.events;
  double cut = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> atom_winner;
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (auto a = events[k].dist.atom(); a && *a < cut) {
      cut = *a;
      atom_winner = k;
    }
  }

  std::vector<std::size_t> continuous;
  std::vector<ExpSum<Scalar>> surv;
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (events[k].dist.is_deterministic()) continue;
    continuous.push_back(k);
    surv.push_back(ExpSum<Scalar>::survival(events[k].dist));
  }

  auto product_except = [&](std::size_t skip) {
    auto p = ExpSum<Scalar>::constant(Scalar(1));
    for (std::size_t c = 0; c < surv.size(); ++c)
      if (c != skip) p *= surv[c];
    return p;
  };

  RaceOutcome<Scalar> out{std::vector<Scalar>(events.size(), Scalar(0)), Scalar(0)};
  const double limit = std::min(cut, horizon);
  for (std::size_t c = 0; c < continuous.size(); ++c) {
    const auto& d = events[continuous[c]].dist;
    out.win[continuous[c]] = (product_except(c) * ExpSum<Scalar>::density(d)).integral(limit);
  }
  const auto all = product_except(surv.size());
  if (atom_winner && cut <= horizon) out.win[*atom_winner] = all(Scalar(cut));
  out.sojourn = all.integral(cut);
  return out;
}

/// k_ij(t): probability of leaving i for j within sojourn time t.
/// Throws Error(AbsorbingSource) when i has no modes.
template <class Scalar = double>
Scalar kernel_value(const SmpModel& model, StateId i, StateId j, double t) {
  const auto& s = model[i];
  if (s.absorbing()) throw Error(ErrorKind::AbsorbingSource, "state '" + s.name + "' has no outgoing events");
  Scalar k(0);
  for (const auto& mode : s.modes) {
    const auto r = race<Scalar>(mode, t);
    for (std::size_t e = 0; e < mode.events.size(); ++e)
      if (mode.events[e].to == j) k += Scalar(mode.weight) * r.win[e];
  }
  return k;
}

/// P = lim K(t) and h. Absorbing states get identity rows and zero sojourn.
template <class Scalar = double>
EmbeddedChain<Scalar> build_embedded_chain(const SmpModel& model) {
  require_valid(model, false);
  const auto n = static_cast<Eigen::Index>(model.size());
  EmbeddedChain<Scalar> chain{Matrix<Scalar>::Zero(n, n), Vector<Scalar>::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = model[static_cast<StateId>(i)];
    if (s.absorbing()) {
      chain.transition(i, i) = Scalar(1);
      continue;
    }
    for (const auto& mode : s.modes) {
      const Scalar w(mode.weight);
      const auto r = race<Scalar>(mode);
      for (std::size_t e = 0; e < mode.events.size(); ++e)
        chain.transition(i, static_cast<Eigen::Index>(mode.events[e].to)) += w * r.win[e];
      chain.sojourn(i) += w * r.sojourn;
    }
  }
  return chain;
}

// Quadrature route: the same quantities from pointwise survival/density
// evaluation and adaptive Gauss-Kronrod, independent of the exponential-sum
// algebra above. Used for cross-checks and selectable from the CLI.

double kernel_value_quadrature(const SmpModel& model, StateId i, StateId j, double t);
double sojourn_quadrature(const SmpModel& model, StateId i);
EmbeddedChain<double> build_embedded_chain_quadrature(const SmpModel& model);

}  // namespace rejuv
