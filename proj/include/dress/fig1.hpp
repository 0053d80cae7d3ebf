#pragma once

#include <vector>

#include "dress/oracle.hpp"
#include "dress/workload.hpp"

namespace dress {

// The four-job, six-container motivating example, recovered by search.
struct Fig1Reconstruction {
  Scenario scenario;
  Tick fcfs_makespan = 0;
  std::vector<Tick> fcfs_waits;
  IlpInstance instance;              // one gang task per job
  Tick optimal_makespan = 0;         // from solve_exact
  std::vector<Placement> reordered;  // parallel to instance.tasks
  Tick reordered_makespan = 0;
  std::vector<Tick> reordered_waits;
  std::uint64_t candidates_checked = 0;
};

struct Fig1Target {
  std::int64_t slots = 6;
  std::int64_t job1_demand = 3;
  Tick job1_duration = 10;
  int max_demand = 6;
  Tick max_duration = 40;
  Tick fcfs_makespan = 40;
  std::vector<Tick> fcfs_waits{0, 9, 28, 27};
  Tick reordered_makespan = 30;
  Tick reordered_total_wait = 23;  // average 5.75 over four jobs
};

// Builds the scenario for the given per-job (containers, duration) pairs:
// one server of `slots` containers, submissions one tick apart, zero
// transition delays.
Scenario fig1_scenario(const std::vector<std::pair<std::int64_t, Tick>>& jobs,
                       std::int64_t slots);

// Searches demands and durations in ascending order (job 2, then 3, then
// 4; demand before duration) for the first assignment whose strict-FCFS
// replay matches the target waits and makespan and whose oracle instance
// admits a makespan-optimal schedule with the target total wait in which
// jobs 1 and 3 overlap, jobs 2 and 4 overlap, and jobs 2 and 4 both start
// after jobs 1 and 3 end. Throws when none exists, listing the closest
// FCFS matches.
Fig1Reconstruction reconstruct_fig1(const Fig1Target& target = {});

}  // namespace dress
