#include "rejuv/kernel.hpp"

#include <cmath>

#include "rejuv/quadrature.hpp"

namespace rejuv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailMass = 1e-14;

struct ModeView {
  double cut = kInf;
  std::optional<std::size_t> atom_winner;
  std::vector<std::size_t> continuous;
};

ModeView inspect(const Mode& mode) {
  ModeView v;
  for (std::size_t k = 0; k < mode.events.size(); ++k) {
    if (auto a = mode.events[k].dist.atom()) {
      if (*a < v.cut) {
        v.cut = *a;
        v.atom_winner = k;
      }
    } else {
      v.continuous.push_back(k);
    }
  }
  return v;
}

double survival_product(const Mode& mode, const ModeView& v, double u,
                        std::optional<std::size_t> skip = std::nullopt) {
  double p = 1.0;
  for (auto k : v.continuous)
    if (k != skip) p *= survival(mode.events[k].dist, u);
  return p;
}

// Point past which every continuous competitor together has survival < 1e-14.
double truncation(const Mode& mode, const ModeView& v) {
  if (v.continuous.empty()) return 0.0;
  double hi = kInf;
  for (auto k : v.continuous) hi = std::min(hi, mean(mode.events[k].dist));
  while (survival_product(mode, v, hi) >= kTailMass) hi *= 2.0;
  return hi;
}

double win_probability(const Mode& mode, std::size_t e, double t) {
  const auto v = inspect(mode);
  if (mode.events[e].dist.is_deterministic()) {
    if (v.atom_winner != e || v.cut > t) return 0.0;
    return survival_product(mode, v, v.cut);
  }
  const double limit = std::min({v.cut, t, truncation(mode, v)});
  return stieltjes_integrate([&](double u) { return survival_product(mode, v, u, e); },
                             mode.events[e].dist, limit);
}

double mode_sojourn(const Mode& mode) {
  const auto v = inspect(mode);
  if (v.continuous.empty()) return v.cut;
  const double limit = std::min(v.cut, truncation(mode, v));
  QuadratureOptions opts;
  opts.geometric_splits = 40;
  return integrate([&](double u) { return survival_product(mode, v, u); }, 0.0, limit, opts);
}

}  // namespace

double kernel_value_quadrature(const SmpModel& model, StateId i, StateId j, double t) {
  const auto& s = model[i];
  if (s.absorbing()) throw Error(ErrorKind::AbsorbingSource, "state '" + s.name + "' has no outgoing events");
  double k = 0.0;
  for (const auto& mode : s.modes)
    for (std::size_t e = 0; e < mode.events.size(); ++e)
      if (mode.events[e].to == j) k += mode.weight * win_probability(mode, e, t);
  return k;
}

double sojourn_quadrature(const SmpModel& model, StateId i) {
  double h = 0.0;
  for (const auto& mode : model[i].modes) h += mode.weight * mode_sojourn(mode);
  return h;
}

EmbeddedChain<double> build_embedded_chain_quadrature(const SmpModel& model) {
  require_valid(model, false);
  const auto n = static_cast<Eigen::Index>(model.size());
  EmbeddedChain<double> chain{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = model[static_cast<StateId>(i)];
    if (s.absorbing()) {
      chain.transition(i, i) = 1.0;
      continue;
    }
    for (const auto& mode : s.modes)
      for (std::size_t e = 0; e < mode.events.size(); ++e)
        chain.transition(i, static_cast<Eigen::Index>(mode.events[e].to)) +=
            mode.weight * win_probability(mode, e, kInf);
    chain.sojourn(i) = sojourn_quadrature(model, static_cast<StateId>(i));
  }
  return chain;
}

}  // namespace rejuv
