#pragma once

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <ranges>
#include <string>
#include <vector>

#include "rejuv/error.hpp"

namespace rejuv {

// Chain composition of per-host metrics: a serial section plus at most one
// parallel group. Free functions accept any range of probabilities/hours so
// they work equally on std::vector, Eigen vectors, or views.

template <std::ranges::input_range R>
auto series_availability(const R& a) {
  using T = std::ranges::range_value_t<R>;
  T p(1);
  for (const auto& x : a) p *= x;
  return p;
}

template <std::ranges::input_range S, std::ranges::input_range P>
auto parallel_availability(const S& serial, const P& parallel) {
  using T = std::ranges::range_value_t<S>;
  if (std::ranges::empty(parallel)) throw Error(ErrorKind::EmptyParallelGroup, "parallel group is empty");
  T all_down(1);
  for (const auto& x : parallel) all_down *= T(1) - x;
  return (T(1) - all_down) * series_availability(serial);
}

/// The chain fails at its first host failure.
template <std::ranges::input_range R>
auto series_mttf(const R& m) {
  if (std::ranges::empty(m)) throw Error(ErrorKind::InvalidModel, "series MTTF needs at least one component");
  return *std::ranges::min_element(m);
}

/// min over the serial hosts and the longest-lived parallel member.
template <std::ranges::input_range S, std::ranges::input_range P>
auto parallel_mttf(const S& serial, const P& parallel) {
  if (std::ranges::empty(parallel)) throw Error(ErrorKind::EmptyParallelGroup, "parallel group is empty");
  auto best = *std::ranges::max_element(parallel);
  for (const auto& x : serial) best = std::min(best, x);
  return best;
}

template <class Scalar = double>
struct HostMetrics {
  Scalar availability;
  Scalar mttf;
};

/// Component references name a host parameterization; identical hosts share a ref.
struct RbdTopology {
  std::vector<std::string> serial;
  std::vector<std::string> parallel;

  /// A one-member parallel group is moved into the serial section.
  RbdTopology normalized() const;
  std::size_t size() const noexcept { return serial.size() + parallel.size(); }

  /// n hosts, the first m serial and the rest parallel, all sharing `ref`.
  static RbdTopology uniform(std::size_t n, std::size_t m, const std::string& ref);
};

/// Composes chain metrics. `resolve` is called once per distinct ref.
template <class Scalar = double>
HostMetrics<Scalar> compose(const RbdTopology& topology,
                            const std::function<HostMetrics<Scalar>(const std::string&)>& resolve) {
  const auto t = topology.normalized();
  if (t.size() == 0) throw Error(ErrorKind::InvalidModel, "topology has no components");
  std::map<std::string, HostMetrics<Scalar>> cache;
  auto lookup = [&](const std::string& ref) -> const HostMetrics<Scalar>& {
    auto it = cache.find(ref);
    if (it == cache.end()) it = cache.emplace(ref, resolve(ref)).first;
    return it->second;
  };
  std::vector<Scalar> sa, sm, pa, pm;
  for (const auto& r : t.serial) {
    sa.push_back(lookup(r).availability);
    sm.push_back(lookup(r).mttf);
  }
  for (const auto& r : t.parallel) {
    pa.push_back(lookup(r).availability);
    pm.push_back(lookup(r).mttf);
  }
  if (pa.empty()) return {series_availability(sa), series_mttf(sm)};
  return {parallel_availability(sa, pa), parallel_mttf(sm, pm)};
}

}  // namespace rejuv
