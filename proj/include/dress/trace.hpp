#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dress/resource.hpp"
#include "dress/workload.hpp"

namespace dress {

enum class Category { kNone, kSmall, kLarge };
std::string_view to_string(Category c);
Category category_from_string(std::string_view s);

struct TaskRecord {
  TaskId task = 0;
  JobId job = 0;
  int phase = 0;
  TaskKind kind = TaskKind::kNormal;
  Category category = Category::kNone;  // idle-cluster classification
  Category pool = Category::kNone;      // pool charged by the scheduler
  ResourceVector demand;
  ServerId server = 0;
  Tick grant = 0;       // Reserved
  Tick start = 0;       // st_i, first Running tick
  Tick duration = 0;    // mu_i
  Tick completion = 0;  // st_i + mu_i
};

// Observations taken once per tick after the heartbeat and lease
// transitions. Policy fields are meaningful only for pooled schedulers.
struct TickRecord {
  Tick tick = 0;
  std::int64_t free_slots = 0;  // A_c
  std::int64_t occupied_sd = 0;
  std::int64_t occupied_ld = 0;
  std::int64_t grants = 0;
  std::optional<double> delta;
  std::int64_t quota_sd = 0;
  std::int64_t quota_ld = 0;
  std::int64_t pending_sd = 0;  // P_1
  std::int64_t pending_ld = 0;  // P_2
  std::int64_t forecast = 0;    // F(t+1)
  std::int64_t forecast_sd = 0; // F_1(t+1)
  std::int64_t forecast_ld = 0; // F_2(t+1)
  std::string branch;
  bool borrow = false;

  bool operator==(const TickRecord&) const = default;
};

struct JobRecord {
  JobId job = 0;
  Tick submit = 0;
  Category category = Category::kNone;
  Category pool = Category::kNone;
  std::int64_t demand_slots = 0;
  int tasks = 0;
  Tick alpha = 0;  // first Running tick
  Tick beta = 0;   // last completion tick
};

struct ScheduleTrace {
  std::string scheduler;
  std::string scenario;
  std::uint64_t seed = 0;
  std::int64_t total_slots = 0;
  std::vector<ResourceVector> servers;
  Tick makespan = 0;
  std::int64_t work_conservation_misses = 0;
  std::vector<TaskRecord> tasks;  // sorted by task id
  std::vector<TickRecord> ticks;  // one per tick, 0..makespan
  std::vector<JobRecord> jobs;    // scenario order
};

bool operator==(const TaskRecord& a, const TaskRecord& b);

}  // namespace dress
