#include "rejuv/io.hpp"

#include <fstream>
#include <set>

#include "rejuv/error.hpp"
#include "rejuv/units.hpp"

namespace rejuv::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_error(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_error(where + ": expected a number, got " + j.dump());
  return j.get<double>();
}

double unit_factor(const json& j, const std::string& where) {
  if (!j.contains("unit")) return 1.0;
  const auto& u = j.at("unit");
  if (!u.is_string()) parse_error(where + ": unit must be a string");
  const auto f = units::hours_per(u.get<std::string>());
  if (!f) parse_error(where + ": unknown unit '" + u.get<std::string>() + "'");
  return *f;
}

Distribution distribution_at(const json& j, const std::string& where) {
  const auto& t = field(j, "type", where);
  if (!t.is_string()) parse_error(where + ": type must be a string");
  const std::string type = t.get<std::string>();
  const double f = unit_factor(j, where);
  try {
    if (j.contains("mean")) {
      const double m = number(j.at("mean"), where + ".mean") * f;
      if (type == "exp") return Distribution::exponential_with_mean(m);
      if (type == "hypoexp") return Distribution::hypoexponential_with_mean(m);
      if (type == "det") return Distribution::deterministic(m);
    } else {
      if (type == "exp") return Distribution::exponential(number(field(j, "rate", where), where + ".rate") / f);
      if (type == "hypoexp") {
        const auto& r = field(j, "rates", where);
        if (!r.is_array() || r.size() != 2) parse_error(where + ": rates must be a 2-element array");
        return Distribution::hypoexponential(number(r[0], where + ".rates[0]") / f,
                                             number(r[1], where + ".rates[1]") / f);
      }
      if (type == "det") return Distribution::deterministic(number(field(j, "at", where), where + ".at") * f);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(e.kind(), where + ": " + e.what());
  }
  parse_error(where + ": unknown distribution type '" + type + "'");
}

}  // namespace

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

Distribution distribution_from_json(const json& j) { return distribution_at(j, "dist"); }

json to_json(const Distribution& d) {
  return std::visit(
      [](const auto& law) -> json {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) return {{"type", "exp"}, {"rate", law.rate}};
        else if constexpr (std::is_same_v<T, Hypoexponential>)
          return {{"type", "hypoexp"}, {"rates", {law.rate1, law.rate2}}};
        else return {{"type", "det"}, {"at", law.at}};
      },
      d.variant());
}

SmpModel model_from_json(const json& j) {
  SmpModel m;
  const auto& states = field(j, "states", "model");
  if (!states.is_array()) parse_error("model: states must be an array");
  m.initial = j.value("initial", std::size_t{0});
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const std::string where = "states[" + std::to_string(i) + "]";
    StateSpec spec;
    spec.id = s.value("id", i);
    spec.name = s.value("name", "s" + std::to_string(i));
    spec.up = s.value("up", true);
    if (s.contains("modes")) {
      for (std::size_t k = 0; k < s.at("modes").size(); ++k) {
        const auto& mj = s.at("modes")[k];
        const std::string mw = where + ".modes[" + std::to_string(k) + "]";
        Mode mode;
        mode.weight = mj.contains("weight") ? number(mj.at("weight"), mw + ".weight") : 1.0;
        const auto& events = field(mj, "events", mw);
        for (std::size_t e = 0; e < events.size(); ++e) {
          const auto& ej = events[e];
          const std::string ew = mw + ".events[" + std::to_string(e) + "]";
          const auto& to = field(ej, "to", ew);
          if (!to.is_number_unsigned()) parse_error(ew + ": to must be a state id");
          mode.events.push_back({ej.value("label", std::string{}), distribution_at(field(ej, "dist", ew), ew + ".dist"),
                                 to.get<StateId>()});
        }
        spec.modes.push_back(std::move(mode));
      }
    }
    m.states.push_back(std::move(spec));
  }
  require_valid(m, false);
  return m;
}

json to_json(const SmpModel& model) {
  json states = json::array();
  for (const auto& s : model.states) {
    json modes = json::array();
    for (const auto& m : s.modes) {
      json events = json::array();
      for (const auto& e : m.events) events.push_back({{"label", e.label}, {"dist", to_json(e.dist)}, {"to", e.to}});
      modes.push_back({{"weight", m.weight}, {"events", events}});
    }
    states.push_back({{"id", s.id}, {"name", s.name}, {"up", s.up}, {"modes", modes}});
  }
  return {{"initial", model.initial}, {"states", states}};
}

ParamsReading read_params(const json& j) {
  if (!j.is_object()) parse_error("params: expected an object");
  ParamsReading r;
  MsfcParams& p = r.params;
  std::set<std::string> known;
  for (const auto& f : mean_fields()) {
    known.insert(f.name);
    if (!j.contains(f.name)) continue;
    const auto& v = j.at(f.name);
    if (v.is_object()) {
      if (!v.contains("unit")) r.unitless.emplace_back(f.name);
      p.*f.member = number(field(v, "value", f.name), std::string(f.name) + ".value") * unit_factor(v, f.name);
    } else {
      r.unitless.emplace_back(f.name);
      p.*f.member = number(v, f.name);
    }
  }
  for (const auto& f : law_fields()) {
    known.insert(f.name);
    if (!j.contains(f.name)) continue;
    const auto& v = j.at(f.name);
    if (!v.contains("unit")) r.unitless.emplace_back(f.name);
    p.*f.member = distribution_at(v, f.name);
  }
  known.insert("asvh");
  if (j.contains("asvh") && !j.at("asvh").is_null()) {
    if (!j.at("asvh").contains("unit")) r.unitless.emplace_back("asvh");
    p.asvh = distribution_at(j.at("asvh"), "asvh");
  }
  for (const auto& f : weight_fields()) {
    known.insert(f.name);
    if (!j.contains(f.name)) continue;
    const auto& v = j.at(f.name);
    if (!v.is_array() || v.size() != 3) parse_error(std::string(f.name) + ": expected 3 probabilities");
    for (std::size_t i = 0; i < 3; ++i) (p.*f.member)[i] = number(v[i], f.name);
  }
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) parse_error("params: unknown key '" + key + "'");
  check(p);
  return r;
}

MsfcParams params_from_json(const json& j) { return read_params(j).params; }

json to_json(const MsfcParams& p) {
  json j;
  for (const auto& f : mean_fields()) j[f.name] = p.*f.member;
  for (const auto& f : law_fields()) j[f.name] = to_json(p.*f.member);
  j["asvh"] = p.asvh ? to_json(*p.asvh) : json(nullptr);
  for (const auto& f : weight_fields()) j[f.name] = p.*f.member;
  return j;
}

TopologyFile topology_from_json(const json& j) {
  TopologyFile out;
  std::size_t anonymous = 0;
  auto refs = [&](const char* key, std::vector<std::string>& into) {
    if (!j.contains(key)) return;
    const auto& list = j.at(key);
    if (!list.is_array()) parse_error(std::string("topology: ") + key + " must be an array");
    for (const auto& r : list) {
      if (r.is_string()) {
        into.push_back(r.get<std::string>());
      } else if (r.is_object()) {
        const std::string name = "#inline" + std::to_string(anonymous++);
        const double a = number(field(r, "availability", name), name + ".availability");
        const double m = number(field(r, "mttf", name), name + ".mttf");
        if (!(a >= 0.0 && a <= 1.0)) parse_error(name + ": availability outside [0,1]");
        if (!(m >= 0.0)) parse_error(name + ": mttf must be nonnegative");
        out.inline_metrics[name] = {a, m};
        into.push_back(name);
      } else {
        parse_error(std::string("topology: bad ref in ") + key);
      }
    }
  };
  if (!j.is_object()) parse_error("topology: expected an object");
  refs("serial", out.topology.serial);
  refs("parallel", out.topology.parallel);
  if (out.topology.size() == 0) throw Error(ErrorKind::InvalidModel, "topology has no components");
  return out;
}

}  // namespace rejuv::io
