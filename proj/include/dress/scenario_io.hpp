#pragma once

#include <string>

#include "dress/workload.hpp"

namespace dress {

// Scenario files are UTF-8 JSON:
//   {version, k, servers: [[cap...]...],
//    jobs: [{id, submit, phases: [{tasks, base_duration, demand: [...],
//            spread, heading, trailing, stretch, fill?}...]}...],
//    config: {ts, te, pw, delta0, theta, delta_min, delta_max, delays?},
//    seed}
// Unknown fields are rejected. Errors carry the offending field path.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace dress
