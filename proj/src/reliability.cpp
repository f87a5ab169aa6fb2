#include "rejuv/reliability.hpp"

#include <sstream>

namespace rejuv {

SmpModel make_absorbing(const SmpModel& model, const std::vector<StateId>& absorbing) {
  if (absorbing.empty()) throw Error(ErrorKind::EmptyAbsorbingSet, "absorbing set is empty");
  SmpModel out = model;
  for (auto id : absorbing) {
    if (id >= model.size()) {
      std::ostringstream msg;
      msg << "absorbing state " << id << " does not exist";
      throw Error(ErrorKind::InvalidModel, msg.str());
    }
    if (id == model.initial) {
      throw Error(ErrorKind::InitialAbsorbing,
                  "initial state '" + model[id].name + "' cannot be absorbing");
    }
    out.states[id].modes.clear();
  }
  return out;
}

bool absorption_certain(const SmpModel& deformed, const std::vector<StateId>& absorbing) {
  const auto from_initial = reachable_from(deformed, deformed.initial);
  for (StateId i = 0; i < deformed.size(); ++i) {
    if (!from_initial[i] || deformed[i].absorbing()) continue;
    const auto onward = reachable_from(deformed, i);
    bool hits = false;
    for (auto a : absorbing) hits = hits || onward[a];
    if (!hits) return false;
  }
  return true;
}

}  // namespace rejuv
