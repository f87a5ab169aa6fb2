#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "rejuv/smp_model.hpp"

namespace rejuv {

struct SimConfig {
  std::uint64_t seed = 1;
  std::size_t replications = 200;
  double horizon = 1e6;      ///< hours per availability replication
  double confidence = 0.99;
  unsigned threads = 1;      ///< 0: hardware concurrency
  double guard = 1e12;       ///< MTTF runs: a replication still transient at this time is censored
};

/// Normal-approximation interval across replications.
struct Estimate {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  double half_width() const noexcept { return 0.5 * (ci_high - ci_low); }
  bool contains(double x) const noexcept { return ci_low <= x && x <= ci_high; }
};

struct SimResult : Estimate {
  std::size_t replications_used = 0;
  std::uint64_t events_simulated = 0;
  std::size_t censored = 0;  ///< MTTF runs only
  /// Availability runs: the down-time fraction, estimated directly rather than as 1 - point.
  Estimate complement;
};

/// Per-replication stream, independent of scheduling.
std::mt19937_64 replication_stream(std::uint64_t seed, std::uint64_t replication);

/// Mean and confidence interval of `samples` (pairwise summation).
Estimate summarize(const std::vector<double>& samples, double confidence);

/// Walks one SMP trajectory: mode drawn on entry, earliest event wins, ties to the earlier-declared event.
class Walker {
 public:
  explicit Walker(const SmpModel& model) : model_(&model) {}

  struct Step {
    StateId next;
    double sojourn;
  };

  template <class Urbg>
  Step step(StateId state, Urbg& g) const;

 private:
  const SmpModel* model_;
};

/// Up-time fraction over [0, horizon] per replication.
/// Throws InvalidModel when an absorbing state is reachable from the initial state.
SimResult simulate_availability(const SmpModel& model, const SimConfig& cfg);

/// Time of first entry into `absorbing` per replication.
SimResult simulate_mttf(const SmpModel& model, const std::vector<StateId>& absorbing, const SimConfig& cfg);

template <class Urbg>
Walker::Step Walker::step(StateId state, Urbg& g) const {
  const auto& s = (*model_)[state];
  const Mode* mode = &s.modes.front();
  if (s.modes.size() > 1) {
    double total = 0.0;
    for (const auto& m : s.modes) total += m.weight;
    double u = uniform01(g) * total;
    mode = &s.modes.back();
    for (const auto& m : s.modes) {
      if (u < m.weight) {
        mode = &m;
        break;
      }
      u -= m.weight;
    }
  }
  Step best{mode->events.front().to, std::numeric_limits<double>::infinity()};
  for (const auto& e : mode->events) {
    const double t = sample(e.dist, g);
    if (t < best.sojourn) best = {e.to, t};
  }
  return best;
}

}  // namespace rejuv
