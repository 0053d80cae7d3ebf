#pragma once

#include <boost/rational.hpp>
#include <map>
#include <string>
#include <vector>

#include "dress/estimator.hpp"
#include "dress/scheduler.hpp"

namespace dress {

using Ratio = boost::rational<std::int64_t>;

// Decimal fraction to an exact ratio with micro-unit resolution.
Ratio ratio_from_double(double value);

// LD iff demand > free_slots * theta; SD otherwise (including demand 0).
Category classify(std::int64_t demand_slots, std::int64_t free_slots, double theta);

struct PendingDemand {
  std::int64_t slots = 0;  // r_i: ungranted containers of the current wave
  Tick submit = 0;
  JobId job = 0;
};

enum class RatioBranch { kSmallSurplus, kLargeSurplus, kCongested, kFrozen };
std::string_view to_string(RatioBranch b);

struct RatioInputs {
  Ratio delta;
  std::int64_t total_slots = 0;  // Tot_R
  std::int64_t free_sd = 0;      // A_c1
  std::int64_t free_ld = 0;      // A_c2
  std::int64_t release_sd = 0;   // F_1(t+1) release term
  std::int64_t release_ld = 0;   // F_2(t+1) release term
  std::vector<PendingDemand> pending_sd;
  std::vector<PendingDemand> pending_ld;
  Ratio delta_min{1, 20};
  Ratio delta_max{19, 20};
};

struct RatioDecision {
  Ratio delta;
  RatioBranch branch = RatioBranch::kSmallSurplus;
  std::int64_t pending_sd = 0;  // P_1
  std::int64_t pending_ld = 0;  // P_2
  std::vector<JobId> absorbed;  // SD jobs funded by LD leftovers
  std::vector<std::string> steps;
};

// One reserve-ratio adjustment. SD surplus shrinks delta by the surplus;
// otherwise an LD surplus grows it; when both categories are congested each
// side greedily serves its smallest pending demands and the LD leftover
// funds further SD jobs, each raising delta by r_i / Tot_R. The result is
// clamped to [delta_min, delta_max].
RatioDecision adjust_ratio(const RatioInputs& in);

// Two-category pooled scheduler with a dynamically adjusted reserve
// ratio. With `adaptive` false the ratio stays at delta0 (static
// reservation).
class DressScheduler : public Scheduler {
 public:
  DressScheduler(const Scenario& scenario, bool adaptive);

  std::string name() const override { return adaptive_ ? "dress" : "static"; }
  void on_job_submitted(const JobView& job, const ClusterState& cluster,
                        Tick tick) override;
  std::vector<Grant> on_heartbeat(const ClusterState& cluster,
                                  std::span<const PendingJob> pending,
                                  Tick tick) override;
  void on_task_granted(const TaskSpec& task, Tick tick) override;
  void on_task_started(const TaskSpec& task, Tick tick) override;
  void on_task_completed(const TaskSpec& task, Tick tick) override;
  void on_tick_end(Tick tick) override;
  Category pool_of(JobId job) const override;
  PolicyRecord policy_record() const override { return record_; }

  const Estimator& estimator() const { return estimator_; }
  Ratio delta() const { return delta_; }
  std::int64_t quota_sd(std::int64_t total_slots) const;

 private:
  SchedulerConfig config_;
  bool adaptive_;
  Ratio delta_;
  Ratio delta_min_;
  Ratio delta_max_;
  Estimator estimator_;
  std::map<JobId, Category> pools_;
  std::int64_t occupied_sd_ = 0;
  std::int64_t occupied_ld_ = 0;
  std::int64_t heartbeats_ = 0;
  PolicyRecord record_;
};

// Single-queue strict head-of-line FIFO over the whole cluster.
class FcfsScheduler : public Scheduler {
 public:
  explicit FcfsScheduler(const Scenario& scenario);

  std::string name() const override { return "fcfs"; }
  void on_job_submitted(const JobView&, const ClusterState&, Tick) override {}
  std::vector<Grant> on_heartbeat(const ClusterState& cluster,
                                  std::span<const PendingJob> pending,
                                  Tick tick) override;
  Category pool_of(JobId job) const override;
  PolicyRecord policy_record() const override { return record_; }

 private:
  std::map<JobId, Category> categories_;
  PolicyRecord record_;
};

}  // namespace dress
