#pragma once

#include <string>

#include "dress/scheduler.hpp"
#include "dress/trace.hpp"
#include "dress/workload.hpp"

namespace dress {

struct EngineOptions {
  // Ticks without any event, while work is pending and nothing is in
  // flight, before the run is declared deadlocked.
  Tick deadlock_ticks = 1000;
  std::string scenario_name = "scenario";
};

// Deterministic discrete-event loop. Each tick fires, in order:
// completions (releasing capacity), job submissions, phase unlocks, the
// scheduler heartbeat, then lease transitions. Throws an invariant error on
// any infeasible grant or broken accounting and a deadlock error when
// pending work can no longer progress.
ScheduleTrace run(const Scenario& scenario, Scheduler& scheduler,
                  const EngineOptions& options = {});

// Idle-cluster classification used for reporting: SD iff the job's peak
// request is at most theta * Tot_R.
Category reporting_category(const JobSpec& job, const Scenario& scenario);

}  // namespace dress
