#include "rejuv/smp_model.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "rejuv/error.hpp"

namespace rejuv {

std::vector<StateId> SmpModel::down_states() const {
  std::vector<StateId> out;
  for (const auto& s : states)
    if (!s.up) out.push_back(s.id);
  return out;
}

std::vector<StateId> SmpModel::absorbing_states() const {
  std::vector<StateId> out;
  for (const auto& s : states)
    if (s.absorbing()) out.push_back(s.id);
  return out;
}

StateId SmpModel::id_of(const std::string& name) const {
  for (const auto& s : states)
    if (s.name == name) return s.id;
  throw Error(ErrorKind::InvalidModel, "no state named '" + name + "'");
}

std::vector<std::string> validate(const SmpModel& model, bool require_reachable) {
  std::vector<std::string> diags;
  const std::size_t n = model.size();
  auto say = [&](auto&&... parts) {
    std::ostringstream out;
    (out << ... << parts);
    diags.push_back(out.str());
  };

  if (n == 0) {
    say("model has no states");
    return diags;
  }
  if (model.initial >= n) say("initial state ", model.initial, " does not exist (", n, " states)");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = model.states[i];
    if (s.id != i) say("state at position ", i, " ('", s.name, "') has id ", s.id, "; ids must be dense");
    if (s.modes.empty()) continue;
    double total = 0.0;
    for (std::size_t m = 0; m < s.modes.size(); ++m) {
      const auto& mode = s.modes[m];
      total += mode.weight;
      if (!(mode.weight > 0.0 && mode.weight <= 1.0))
        say("state ", i, " ('", s.name, "') mode ", m, " has weight ", mode.weight, " outside (0,1]");
      if (mode.events.empty()) say("state ", i, " ('", s.name, "') mode ", m, " has no events");
      for (const auto& e : mode.events) {
        if (e.to >= n)
          say("state ", i, " ('", s.name, "') event '", e.label, "' targets out-of-range state ", e.to);
      }
    }
    if (std::abs(total - 1.0) > 1e-12)
      say("state ", i, " ('", s.name, "') mode weights sum to ", total, ", expected 1");
  }
  if (!diags.empty() || !require_reachable) return diags;

  const auto seen = reachable_from(model, model.initial);
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) say("state ", i, " ('", model.states[i].name, "') is unreachable from the initial state");
  return diags;
}

void require_valid(const SmpModel& model, bool require_reachable) {
  const auto diags = validate(model, require_reachable);
  if (diags.empty()) return;
  std::ostringstream out;
  out << diags.front();
  if (diags.size() > 1) out << " (+" << diags.size() - 1 << " more)";
  throw Error(ErrorKind::InvalidModel, out.str());
}

std::vector<bool> reachable_from(const SmpModel& model, StateId from) {
  std::vector<bool> seen(model.size(), false);
  if (from >= model.size()) return seen;
  std::deque<StateId> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    const StateId i = todo.front();
    todo.pop_front();
    for (const auto& mode : model.states[i].modes) {
      for (const auto& e : mode.events) {
        if (e.to < model.size() && !seen[e.to]) {
          seen[e.to] = true;
          todo.push_back(e.to);
        }
      }
    }
  }
  return seen;
}

SmpModel prune_unreachable(const SmpModel& model) {
  const auto keep = reachable_from(model, model.initial);
  std::vector<StateId> remap(model.size(), model.size());
  StateId next = 0;
  for (std::size_t i = 0; i < model.size(); ++i)
    if (keep[i]) remap[i] = next++;

  SmpModel out;
  out.initial = remap[model.initial];
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (!keep[i]) continue;
    StateSpec s = model.states[i];
    s.id = remap[i];
    for (auto& mode : s.modes)
      for (auto& e : mode.events) e.to = remap[e.to];
    out.states.push_back(std::move(s));
  }
  return out;
}

SmpModel permute_states(const SmpModel& model, const std::vector<StateId>& perm) {
  if (perm.size() != model.size()) throw Error(ErrorKind::InvalidModel, "permutation size mismatch");
  SmpModel out;
  out.states.resize(model.size());
  out.initial = perm.at(model.initial);
  for (std::size_t i = 0; i < model.size(); ++i) {
    StateSpec s = model.states[i];
    s.id = perm[i];
    for (auto& mode : s.modes)
      for (auto& e : mode.events) e.to = perm.at(e.to);
    out.states.at(perm[i]) = std::move(s);
  }
  return out;
}

}  // namespace rejuv
