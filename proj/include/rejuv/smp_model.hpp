#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rejuv/distribution.hpp"

namespace rejuv {

using StateId = std::size_t;

/// One timed transition racing against the other events of its mode.
struct Event {
  std::string label;
  Distribution dist;
  StateId to;
};

/// A weighted set of competing events. The mode is drawn once on state entry;
/// only its events race.
struct Mode {
  double weight = 1.0;
  std::vector<Event> events;
};

struct StateSpec {
  StateId id = 0;
  std::string name;
  bool up = true;
  std::vector<Mode> modes;  ///< empty: absorbing

  bool absorbing() const noexcept { return modes.empty(); }
};

struct SmpModel {
  std::vector<StateSpec> states;
  StateId initial = 0;

  std::size_t size() const noexcept { return states.size(); }
  const StateSpec& operator[](StateId i) const { return states.at(i); }

  std::vector<StateId> down_states() const;
  std::vector<StateId> absorbing_states() const;
  /// Lookup by state name; throws Error(InvalidModel) if absent.
  StateId id_of(const std::string& name) const;
};

/// Empty iff every structural invariant holds and (unless disabled) each state
/// is reachable from the initial state. Each message names the offending state or event.
std::vector<std::string> validate(const SmpModel& model, bool require_reachable = true);

/// Throws Error(InvalidModel) carrying the first diagnostics.
void require_valid(const SmpModel& model, bool require_reachable = true);

/// reachable[i] is true when i can be entered from `from` along positive-weight events.
std::vector<bool> reachable_from(const SmpModel& model, StateId from);

/// Drops states not reachable from the initial state and renumbers the rest in order.
SmpModel prune_unreachable(const SmpModel& model);

/// Relabels state i as perm[i]; event destinations and the initial state follow.
SmpModel permute_states(const SmpModel& model, const std::vector<StateId>& perm);

}  // namespace rejuv
