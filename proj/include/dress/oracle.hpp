#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dress/dress_scheduler.hpp"
#include "dress/trace.hpp"
#include "dress/workload.hpp"

namespace dress {

// Clairvoyant makespan-minimization instance: every duration is known.
struct OracleTask {
  TaskId id = 0;
  JobId job = 0;
  ResourceVector demand;
  Tick duration = 1;
  Tick release = 0;  // earliest start (the job's submit tick)
  Category category = Category::kLarge;
};

struct IlpInstance {
  std::size_t k = 1;
  std::vector<ResourceVector> servers;
  std::vector<OracleTask> tasks;
  // Reserve fraction for SD tasks, in component-0 (slot) units: SD usage
  // <= floor(alpha * Tot_R), LD usage <= Tot_R - floor(alpha * Tot_R).
  std::optional<Ratio> alpha;
  Tick horizon = 0;  // every task must end by this tick

  std::int64_t total_slots() const;
};

struct Placement {
  ServerId server = 0;
  Tick start = 0;
  bool operator==(const Placement&) const = default;
};

struct IlpSolution {
  bool feasible = false;  // some schedule within the horizon exists
  bool optimal = false;   // search finished inside the node budget
  Tick makespan = 0;      // best incumbent when feasible
  Tick lower_bound = 0;
  std::uint64_t nodes = 0;
  std::vector<Placement> placements;  // parallel to instance.tasks
};

struct SolveOptions {
  std::uint64_t node_budget = 10'000'000;
};

// Depth-first branch-and-bound over (task -> server, start) in task order,
// servers ascending, starts ascending; pruned by the incumbent and by the
// release and resource-area lower bounds.
IlpSolution solve_exact(const IlpInstance& instance, const SolveOptions& options = {});

// Visits every feasible schedule with makespan <= cap in the same
// deterministic order the solver explores. The visitor returns false to
// stop. Returns false when the node budget ran out.
bool for_each_schedule(const IlpInstance& instance, Tick cap,
                       const std::function<bool(std::span<const Placement>)>& visit,
                       std::uint64_t node_budget = 10'000'000);

// Combined release + area lower bound on the makespan.
Tick makespan_lower_bound(const IlpInstance& instance);

enum class Granularity {
  kTask,     // one oracle task per simulator task
  kJobGang,  // one task per single-phase job with demand = tasks x demand
};

// Horizon 0 picks max release + sum of durations, which always admits the
// serial schedule.
IlpInstance instance_from_scenario(const Scenario& scenario, Granularity granularity,
                                   std::optional<Ratio> alpha = std::nullopt,
                                   Tick horizon = 0);

std::string solution_to_json(const IlpInstance& instance, const IlpSolution& solution);
// Reads the solution block back; placements follow instance.tasks and the
// makespan is recomputed from them.
IlpSolution solution_from_json(const IlpInstance& instance, const std::string& text);

}  // namespace dress
