#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rejuv/distribution.hpp"
#include "rejuv/msfc_model.hpp"
#include "rejuv/rbd.hpp"
#include "rejuv/smp_model.hpp"

namespace rejuv::io {

using nlohmann::json;

/// Reads and parses a JSON file; Error(Parse) names the file and position.
json load_file(const std::filesystem::path& path);

// Distribution literals:
//   {"type":"exp","rate":r}  {"type":"hypoexp","rates":[r1,r2]}  {"type":"det","at":a}
// plus a mean shorthand {"type":"exp"|"hypoexp"|"det","mean":m,"unit":"months"}.
// Rates are per hour and times in hours unless "unit" is given.
Distribution distribution_from_json(const json& j);
json to_json(const Distribution& d);

SmpModel model_from_json(const json& j);
json to_json(const SmpModel& model);

/// One key per MsfcParams field; omitted keys keep their defaults. Means and RTIs are
/// a number of hours or {"value":x,"unit":u}; laws are distribution literals; c_s/c_v/c_m
/// are 3-element arrays. Unknown keys are rejected.
struct ParamsReading {
  MsfcParams params;
  std::vector<std::string> unitless;  ///< time-valued entries given without an explicit unit
};
ParamsReading read_params(const json& j);
MsfcParams params_from_json(const json& j);
json to_json(const MsfcParams& p);

/// A component ref is a string (params file path, or "default") or inline {"availability":a,"mttf":h}.
struct TopologyFile {
  RbdTopology topology;
  std::map<std::string, HostMetrics<double>> inline_metrics;  ///< keyed by synthetic ref
};
TopologyFile topology_from_json(const json& j);

}  // namespace rejuv::io
