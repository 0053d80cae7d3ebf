#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dress/cluster.hpp"
#include "dress/trace.hpp"
#include "dress/workload.hpp"

namespace dress {

struct Grant {
  TaskId task = 0;
  ServerId server = 0;
  bool operator==(const Grant&) const = default;
};

struct JobView {
  JobId id = 0;
  Tick submit = 0;
  std::int64_t demand_slots = 0;
  int phases = 0;
};

// A job with eligible tasks that have not been granted yet. The engine
// presents these in submission order (submit tick, then job id).
struct PendingJob {
  JobId job = 0;
  Tick submit = 0;
  int phase = 0;
  int phase_tasks = 0;
  int granted_in_phase = 0;
  std::vector<const TaskSpec*> ungranted;  // task index order
};

struct PolicyRecord {
  std::optional<double> delta;
  std::int64_t quota_sd = 0;
  std::int64_t quota_ld = 0;
  std::int64_t occupied_sd = 0;
  std::int64_t occupied_ld = 0;
  std::int64_t pending_sd = 0;
  std::int64_t pending_ld = 0;
  std::int64_t forecast = 0;
  std::int64_t forecast_sd = 0;
  std::int64_t forecast_ld = 0;
  std::string branch;
  bool borrow = false;
  bool tracks_pools = false;
};

// Resource-manager policy driven by the engine. Every callback runs on the
// engine thread; grants returned from on_heartbeat are verified by the
// engine and any infeasible one aborts the run.
class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string name() const = 0;

  virtual void on_job_submitted(const JobView& job, const ClusterState& cluster,
                                Tick tick) = 0;
  virtual std::vector<Grant> on_heartbeat(const ClusterState& cluster,
                                          std::span<const PendingJob> pending,
                                          Tick tick) = 0;
  virtual void on_task_granted(const TaskSpec&, Tick) {}
  virtual void on_task_started(const TaskSpec&, Tick) {}
  virtual void on_task_completed(const TaskSpec&, Tick) {}
  virtual void on_tick_end(Tick) {}

  virtual Category pool_of(JobId job) const = 0;
  virtual PolicyRecord policy_record() const { return {}; }
};

// Tentative first-fit placement against a snapshot of server availability.
class PlacementPlan {
 public:
  explicit PlacementPlan(const ClusterState& cluster);
  std::optional<ServerId> place(const ResourceVector& demand);
  bool fits_all(std::span<const TaskSpec* const> tasks) const;
  // How many of `tasks`, in order, first-fit onto the empty cluster.
  std::int64_t fits_when_empty(std::span<const TaskSpec* const> tasks) const;

 private:
  std::vector<ResourceVector> available_;
  std::vector<ResourceVector> capacity_;
};

// Strict head-of-line FIFO granting over one queue. A job that has not yet
// received any container of its current phase is admitted only when its
// whole wave, min(ungranted, wave_cap, what fits on the empty cluster),
// fits at once; an admitted job then takes whatever fits. The queue stops
// at the first job left with ungranted tasks. `free_slots` is the queue's
// remaining slot budget and is decremented per grant.
void grant_fifo(std::span<const PendingJob* const> queue, PlacementPlan& plan,
                std::int64_t& free_slots, std::int64_t wave_cap,
                std::vector<Grant>& out);

std::unique_ptr<Scheduler> make_scheduler(const std::string& name,
                                          const Scenario& scenario);

}  // namespace dress
