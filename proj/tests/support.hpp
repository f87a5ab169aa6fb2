#pragma once

// Model builders, hand-rolled generators and independent oracles shared by the tests.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "rejuv/distribution.hpp"
#include "rejuv/smp_model.hpp"

namespace testing {

using rejuv::Distribution;
using rejuv::Event;
using rejuv::Mode;
using rejuv::SmpModel;
using rejuv::StateId;
using rejuv::StateSpec;

inline Mode single(std::vector<Event> events) { return Mode{1.0, std::move(events)}; }

/// UP --Exp(lambda)--> DOWN --Exp(mu)--> UP
inline SmpModel up_down(double lambda = 0.1, double mu = 1.0) {
  return SmpModel{{{0, "UP", true, {single({{"fail", Distribution::exponential(lambda), 1}})}},
                   {1, "DOWN", false, {single({{"repair", Distribution::exponential(mu), 0}})}}},
                  0};
}

/// Single state racing the given events to distinct sinks; sinks return to the racer.
inline SmpModel race_model(const std::vector<Distribution>& laws) {
  SmpModel m;
  Mode mode{1.0, {}};
  for (std::size_t k = 0; k < laws.size(); ++k) mode.events.push_back({"e" + std::to_string(k), laws[k], k + 1});
  m.states.push_back({0, "R", true, {mode}});
  for (std::size_t k = 0; k < laws.size(); ++k)
    m.states.push_back({k + 1, "S" + std::to_string(k), false, {single({{"back", Distribution::exponential(1.0), 0}})}});
  return m;
}

/// Random all-exponential single-mode SMP: a ring guarantees irreducibility, extra
/// events (self-loops and parallel edges included) are sprinkled on top. State 0 is up;
/// at least one state is down.
template <class Rng>
SmpModel random_exponential_model(Rng& g, std::size_t max_states = 8) {
  std::uniform_int_distribution<std::size_t> size(2, max_states);
  const std::size_t n = size(g);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1), extra(0, 3);
  std::uniform_real_distribution<double> lograte(-3.0, 2.0);
  std::bernoulli_distribution coin(0.5);
  auto rate = [&] { return std::pow(10.0, lograte(g)); };
  SmpModel m;
  m.initial = 0;
  for (StateId i = 0; i < n; ++i) {
    Mode mode{1.0, {{"ring", Distribution::exponential(rate()), (i + 1) % n}}};
    for (std::size_t k = extra(g); k > 0; --k) mode.events.push_back({"x", Distribution::exponential(rate()), pick(g)});
    m.states.push_back({i, "s" + std::to_string(i), i == 0 || coin(g), {mode}});
  }
  bool any_down = false;
  for (const auto& s : m.states) any_down = any_down || !s.up;
  if (!any_down) m.states[n - 1].up = false;
  return m;
}

/// Generator matrix of an all-exponential single-mode model; self-loops vanish.
inline Eigen::MatrixXd generator(const SmpModel& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const auto& s : m.states) {
    if (s.absorbing()) continue;
    for (const auto& e : s.modes.front().events) {
      const double r = std::get<rejuv::Exponential>(e.dist.variant()).rate;
      if (e.to == s.id) continue;
      q(static_cast<Eigen::Index>(s.id), static_cast<Eigen::Index>(e.to)) += r;
      q(static_cast<Eigen::Index>(s.id), static_cast<Eigen::Index>(s.id)) -= r;
    }
  }
  return q;
}

/// CTMC stationary distribution: least-squares solution of [Q^T; 1^T] pi = [0; 1] by QR.
inline Eigen::RowVectorXd ctmc_stationary(const Eigen::MatrixXd& q) {
  // Grassmann-Taksar-Heyman state reduction: no subtractions, so small entries keep relative accuracy.
  const auto n = q.rows();
  Eigen::MatrixXd a = q;
  for (Eigen::Index k = n - 1; k > 0; --k) {
    const double s = a.row(k).head(k).sum();
    for (Eigen::Index i = 0; i < k; ++i) a(i, k) /= s;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        if (i != j) a(i, j) += a(i, k) * a(k, j);
  }
  Eigen::RowVectorXd pi(n);
  pi(0) = 1.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    pi(k) = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) pi(k) += pi(i) * a(i, k);
  }
  return pi / pi.sum();
}

/// Mean time to absorption from `initial`: -alpha Q_TT^{-1} 1 on the transient block.
inline double ctmc_mttf(const Eigen::MatrixXd& q, const std::vector<StateId>& absorbing, StateId initial) {
  std::vector<Eigen::Index> t;
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    if (std::find(absorbing.begin(), absorbing.end(), static_cast<StateId>(i)) == absorbing.end()) t.push_back(i);
  const auto k = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd qt(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) qt(a, b) = q(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]);
  const Eigen::VectorXd tau = (-qt).householderQr().solve(Eigen::VectorXd::Ones(k));
  for (Eigen::Index a = 0; a < k; ++a)
    if (t[static_cast<std::size_t>(a)] == static_cast<Eigen::Index>(initial)) return tau(a);
  return 0.0;
}

/// One-sample Kolmogorov-Smirnov statistic.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace testing
