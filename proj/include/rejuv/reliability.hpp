#pragma once

#include <algorithm>
#include <vector>

#include "rejuv/error.hpp"
#include "rejuv/kernel.hpp"
#include "rejuv/scalar.hpp"
#include "rejuv/smp_model.hpp"

namespace rejuv {

/// Copy of `model` in which every state of `absorbing` loses its outgoing events.
/// Throws EmptyAbsorbingSet or InitialAbsorbing.
SmpModel make_absorbing(const SmpModel& model, const std::vector<StateId>& absorbing);

/// Expected visits before absorption: V* (I - Q) = alpha, Q the transient block.
/// Throws Error(NonAbsorbing) when I - Q is singular.
template <class DerivedQ, class DerivedA>
RowVector<typename DerivedQ::Scalar> expected_visits(const Eigen::MatrixBase<DerivedQ>& Q,
                                                     const Eigen::MatrixBase<DerivedA>& alpha) {
  using Scalar = typename DerivedQ::Scalar;
  const auto n = Q.rows();
  if (Q.cols() != n || alpha.size() != n)
    throw Error(ErrorKind::InvalidModel, "transient block and alpha disagree in size");
  Matrix<Scalar> M = Matrix<Scalar>::Identity(n, n) - Q;
  Eigen::FullPivLU<Matrix<Scalar>> lu(M.transpose());
  if (!lu.isInvertible()) throw Error(ErrorKind::NonAbsorbing, "absorption is not certain (I - Q is singular)");
  Vector<Scalar> a(n);
  for (Eigen::Index i = 0; i < n; ++i) a(i) = alpha(i);
  Vector<Scalar> v = lu.solve(a);
  for (Eigen::Index i = 0; i < n; ++i)
    if (v(i) < Scalar(0)) v(i) = Scalar(0);
  return v.transpose();
}

/// Σ V*_i h*_i.
template <class DerivedV, class DerivedH>
typename DerivedV::Scalar mttf(const Eigen::MatrixBase<DerivedV>& visits,
                               const Eigen::MatrixBase<DerivedH>& sojourn) {
  if (visits.size() != sojourn.size())
    throw Error(ErrorKind::InvalidModel, "visit and sojourn vectors differ in length");
  typename DerivedV::Scalar total(0);
  for (Eigen::Index i = 0; i < visits.size(); ++i) total += visits(i) * sojourn(i);
  return total;
}

template <class Scalar = double>
struct AbsorbingAnalysis {
  std::vector<StateId> transient;
  std::vector<StateId> absorbing;
  RowVector<Scalar> alpha;   ///< initial distribution over `transient`
  RowVector<Scalar> visits;  ///< V*, indexed like `transient`
  Vector<Scalar> sojourn;    ///< h*, indexed like `transient`
  Scalar mttf;
};

/// True when every transient state reachable from the initial state can reach `absorbing`.
bool absorption_certain(const SmpModel& deformed, const std::vector<StateId>& absorbing);

/// Mean time to absorption from the initial state, all initial mass on it.
template <class Scalar = double>
AbsorbingAnalysis<Scalar> analyze_absorbing(const SmpModel& model, const std::vector<StateId>& absorbing) {
  const SmpModel deformed = make_absorbing(model, absorbing);
  AbsorbingAnalysis<Scalar> out;
  for (const auto& s : deformed.states) (s.absorbing() ? out.absorbing : out.transient).push_back(s.id);
  if (!absorption_certain(deformed, out.absorbing))
    throw Error(ErrorKind::NonAbsorbing, "some reachable state cannot reach the absorbing set");

  const auto chain = build_embedded_chain<Scalar>(deformed);
  const auto m = static_cast<Eigen::Index>(out.transient.size());
  Matrix<Scalar> Q(m, m);
  out.sojourn.resize(m);
  out.alpha = RowVector<Scalar>::Zero(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto i = static_cast<Eigen::Index>(out.transient[static_cast<std::size_t>(a)]);
    out.sojourn(a) = chain.sojourn(i);
    if (out.transient[static_cast<std::size_t>(a)] == deformed.initial) out.alpha(a) = Scalar(1);
    for (Eigen::Index b = 0; b < m; ++b)
      Q(a, b) = chain.transition(i, static_cast<Eigen::Index>(out.transient[static_cast<std::size_t>(b)]));
  }
  out.visits = expected_visits(Q, out.alpha);
  out.mttf = rejuv::mttf(out.visits, out.sojourn);
  return out;
}

}  // namespace rejuv
