#pragma once

#include <vector>

#include "dress/workload.hpp"

namespace dress::testing {

inline PhaseSpec phase(int tasks, Tick duration, ResourceVector demand = {1}) {
  PhaseSpec p;
  p.task_count = tasks;
  p.base_duration = duration;
  p.demand = std::move(demand);
  return p;
}

inline JobSpec job(JobId id, Tick submit, std::vector<PhaseSpec> phases) {
  return JobSpec{id, submit, std::move(phases)};
}

// One-dimensional cluster of `slots` containers per server.
inline Scenario scenario(std::vector<std::int64_t> slots, std::vector<JobSpec> jobs,
                         std::array<Tick, 3> delays = {0, 0, 0}) {
  Scenario s;
  s.k = 1;
  for (auto n : slots) s.servers.push_back(ResourceVector{n});
  s.jobs = std::move(jobs);
  s.config.delays = delays;
  return s;
}

}  // namespace dress::testing
