#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dress/oracle.hpp"
#include "dress/trace.hpp"

namespace dress {

// One task's occupancy interval [begin, end) on a server.
struct ScheduledTask {
  TaskId task = 0;
  ServerId server = 0;
  Tick begin = 0;
  Tick end = 0;
  ResourceVector demand;
  Category pool = Category::kNone;
};

struct Violation {
  int constraint = 0;  // 1 unique assignment, 2 capacity, 3 SD reserve, 4 LD share
  Tick tick = -1;
  TaskId task = -1;
  ServerId server = -1;
  bool borrow_tick = false;
  std::string detail;
};

// Per-tick SD slot limit; nullopt leaves constraints (3)/(4) unchecked at
// that tick. The LD limit is Tot_R minus the SD limit.
using ReserveLimit = std::function<std::optional<std::int64_t>(Tick)>;

std::vector<Violation> check_schedule(std::span<const ScheduledTask> schedule,
                                      const std::vector<ResourceVector>& servers,
                                      std::span<const TaskId> expected_tasks,
                                      const ReserveLimit& sd_limit,
                                      const std::function<bool(Tick)>& borrow = {});

// Trace check: leases are charged from grant to completion. Reserve
// constraints use the logged SD quota for pooled schedulers only.
std::vector<Violation> check_feasibility(const ScheduleTrace& trace);

// Solution check against the instance's own alpha.
std::vector<Violation> check_feasibility(const IlpSolution& solution,
                                         const IlpInstance& instance);

std::string violations_to_json(const std::vector<Violation>& violations);

}  // namespace dress
