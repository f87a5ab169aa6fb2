#pragma once

#include <cmath>
#include <deque>
#include <sstream>
#include <vector>

#include "rejuv/error.hpp"
#include "rejuv/kernel.hpp"
#include "rejuv/scalar.hpp"
#include "rejuv/smp_model.hpp"

namespace rejuv {

namespace detail {

template <class Derived>
std::vector<std::vector<bool>> reach_sets(const Eigen::MatrixBase<Derived>& P) {
  const auto n = P.rows();
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s) {
    auto& seen = reach[static_cast<std::size_t>(s)];
    seen.assign(static_cast<std::size_t>(n), false);
    std::deque<Eigen::Index> todo{s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!todo.empty()) {
      const auto i = todo.front();
      todo.pop_front();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (P(i, j) > 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          todo.push_back(j);
        }
      }
    }
  }
  return reach;
}

}  // namespace detail

/// Stationary vector of a stochastic matrix: V = V P, Σ V = 1.
///
/// Requires exactly one closed communicating class and no absorbing rows;
/// transient states (unreachable from that class) get zero mass. Solved
/// directly with the last balance equation replaced by normalization.
template <class Derived>
RowVector<typename Derived::Scalar> steady_state_edtmc(const Eigen::MatrixBase<Derived>& P) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  const auto n = P.rows();
  if (n == 0 || P.cols() != n) throw Error(ErrorKind::InvalidModel, "transition matrix must be square and nonempty");

  for (Eigen::Index i = 0; i < n; ++i) {
    if (abs(P.row(i).sum() - Scalar(1)) > Scalar(1e-9)) {
      std::ostringstream msg;
      msg << "row " << i << " sums to " << to_double(Scalar(P.row(i).sum()));
      throw Error(ErrorKind::InvalidModel, msg.str());
    }
    if (n > 1 && P(i, i) == Scalar(1)) {
      std::ostringstream msg;
      msg << "state " << i << " is absorbing";
      throw Error(ErrorKind::Reducible, msg.str());
    }
  }

  const auto reach = detail::reach_sets(P);
  Eigen::Index anchor = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ri = reach[static_cast<std::size_t>(i)];
    bool closed = true;
    for (Eigen::Index j = 0; j < n && closed; ++j)
      if (ri[static_cast<std::size_t>(j)] && !reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) closed = false;
    if (!closed) continue;
    if (anchor < 0) {
      anchor = i;
    } else if (!reach[static_cast<std::size_t>(anchor)][static_cast<std::size_t>(i)]) {
      std::ostringstream msg;
      msg << "states " << anchor << " and " << i << " lie in different closed classes";
      throw Error(ErrorKind::Reducible, msg.str());
    }
  }

  Matrix<Scalar> A = P.transpose() - Matrix<Scalar>::Identity(n, n);
  A.row(n - 1).setOnes();
  Vector<Scalar> b = Vector<Scalar>::Zero(n);
  b(n - 1) = Scalar(1);
  Vector<Scalar> v = A.fullPivLu().solve(b);

  for (Eigen::Index i = 0; i < n; ++i)
    if (v(i) < Scalar(0)) v(i) = Scalar(0);
  v /= v.sum();
  return v.transpose();
}

/// π_i = V_i h_i / Σ_j V_j h_j.
template <class DerivedV, class DerivedH>
RowVector<typename DerivedV::Scalar> state_probabilities(const Eigen::MatrixBase<DerivedV>& V,
                                                         const Eigen::MatrixBase<DerivedH>& h) {
  using Scalar = typename DerivedV::Scalar;
  if (V.size() != h.size()) throw Error(ErrorKind::InvalidModel, "visit and sojourn vectors differ in length");
  RowVector<Scalar> w(V.size());
  for (Eigen::Index i = 0; i < V.size(); ++i) w(i) = V(i) * h(i);
  const Scalar total = w.sum();
  if (!(total > Scalar(0))) throw Error(ErrorKind::DegenerateSojourn, "Σ V_j h_j is zero");
  return w / total;
}

/// Σ π_i over up states.
template <class Derived>
typename Derived::Scalar availability(const SmpModel& model, const Eigen::MatrixBase<Derived>& pi) {
  typename Derived::Scalar a(0);
  for (const auto& s : model.states)
    if (s.up) a += pi(static_cast<Eigen::Index>(s.id));
  return a;
}

/// Σ π_i over down states; carries full relative precision when availability is near one.
template <class Derived>
typename Derived::Scalar unavailability(const SmpModel& model, const Eigen::MatrixBase<Derived>& pi) {
  typename Derived::Scalar u(0);
  for (const auto& s : model.states)
    if (!s.up) u += pi(static_cast<Eigen::Index>(s.id));
  return u;
}

template <class Scalar = double>
struct SteadyState {
  EmbeddedChain<Scalar> chain;
  RowVector<Scalar> visits;  ///< stationary vector of the embedded chain
  RowVector<Scalar> pi;
  Scalar availability;
  Scalar unavailability;
};

/// Full pipeline: kernel limit, embedded stationary vector, time-weighted
/// probabilities, and availability.
template <class Scalar = double>
SteadyState<Scalar> solve_steady_state(const SmpModel& model) {
  SteadyState<Scalar> out;
  out.chain = build_embedded_chain<Scalar>(model);
  out.visits = steady_state_edtmc(out.chain.transition);
  out.pi = state_probabilities(out.visits, out.chain.sojourn);
  out.availability = availability(model, out.pi);
  out.unavailability = unavailability(model, out.pi);
  return out;
}

SteadyState<double> solve_steady_state_quadrature(const SmpModel& model);

}  // namespace rejuv
