#include "dress/dress_scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "dress/error.hpp"

namespace dress {

Ratio ratio_from_double(double value) {
  return Ratio(static_cast<std::int64_t>(std::llround(value * 1e6)), 1000000);
}

Category classify(std::int64_t demand_slots, std::int64_t free_slots, double theta) {
  // Compare demand > free * theta exactly in micro-units.
  const Ratio threshold = Ratio(free_slots) * ratio_from_double(theta);
  return Ratio(demand_slots) > threshold ? Category::kLarge : Category::kSmall;
}

std::string_view to_string(RatioBranch b) {
  switch (b) {
    case RatioBranch::kSmallSurplus: return "sd_surplus";
    case RatioBranch::kLargeSurplus: return "ld_surplus";
    case RatioBranch::kCongested: return "congested";
    case RatioBranch::kFrozen: return "static";
  }
  return "?";
}

namespace {

std::string fmt(const Ratio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void sort_ascending(std::vector<PendingDemand>& v) {
  std::stable_sort(v.begin(), v.end(), [](const PendingDemand& a, const PendingDemand& b) {
    if (a.slots != b.slots) return a.slots < b.slots;
    if (a.submit != b.submit) return a.submit < b.submit;
    return a.job < b.job;
  });
}

}  // namespace

RatioDecision adjust_ratio(const RatioInputs& in) {
  if (in.total_slots <= 0) throw config_error("adjust_ratio needs Tot_R > 0");
  RatioDecision d;
  d.delta = in.delta;
  for (const auto& p : in.pending_sd) d.pending_sd += p.slots;
  for (const auto& p : in.pending_ld) d.pending_ld += p.slots;
  const std::int64_t avail_sd = in.free_sd + in.release_sd;
  const std::int64_t avail_ld = in.free_ld + in.release_ld;
  const Ratio tot(in.total_slots);
  d.steps.push_back("P1=" + std::to_string(d.pending_sd) +
                    " P2=" + std::to_string(d.pending_ld) +
                    " A1+F1=" + std::to_string(avail_sd) +
                    " A2+F2=" + std::to_string(avail_ld));

  if (avail_sd >= d.pending_sd) {
    d.branch = RatioBranch::kSmallSurplus;
    d.delta -= Ratio(avail_sd - d.pending_sd) / tot;
    d.steps.push_back("sd surplus " + std::to_string(avail_sd - d.pending_sd) +
                      " -> delta " + fmt(d.delta));
  } else if (avail_ld >= d.pending_ld) {
    d.branch = RatioBranch::kLargeSurplus;
    d.delta += Ratio(avail_ld - d.pending_ld) / tot;
    d.steps.push_back("ld surplus " + std::to_string(avail_ld - d.pending_ld) +
                      " -> delta " + fmt(d.delta));
  } else {
    d.branch = RatioBranch::kCongested;
    auto sd = in.pending_sd;
    auto ld = in.pending_ld;
    sort_ascending(sd);
    sort_ascending(ld);
    std::int64_t left_sd = avail_sd;
    std::int64_t left_ld = avail_ld;
    std::vector<bool> served(sd.size(), false);
    for (std::size_t i = 0; i < sd.size(); ++i) {
      if (sd[i].slots <= left_sd) {
        left_sd -= sd[i].slots;
        served[i] = true;
        d.steps.push_back("sd serve job " + std::to_string(sd[i].job) + " r=" +
                          std::to_string(sd[i].slots) + " left " + std::to_string(left_sd));
      }
    }
    for (const auto& p : ld) {
      if (p.slots <= left_ld) {
        left_ld -= p.slots;
        d.steps.push_back("ld serve job " + std::to_string(p.job) + " r=" +
                          std::to_string(p.slots) + " left " + std::to_string(left_ld));
      }
    }
    d.steps.push_back("leftover sd=" + std::to_string(left_sd) +
                      " ld=" + std::to_string(left_ld));
    for (std::size_t i = 0; i < sd.size(); ++i) {
      if (served[i]) continue;
      if (sd[i].slots > left_sd + left_ld) break;
      const auto from_sd = std::min(left_sd, sd[i].slots);
      left_sd -= from_sd;
      left_ld -= sd[i].slots - from_sd;
      d.delta += Ratio(sd[i].slots) / tot;
      d.absorbed.push_back(sd[i].job);
      d.steps.push_back("absorb job " + std::to_string(sd[i].job) + " r=" +
                        std::to_string(sd[i].slots) + " -> delta " + fmt(d.delta));
    }
  }
  const Ratio unclamped = d.delta;
  d.delta = std::clamp(d.delta, in.delta_min, in.delta_max);
  if (d.delta != unclamped) d.steps.push_back("clamp -> delta " + fmt(d.delta));
  return d;
}

DressScheduler::DressScheduler(const Scenario& scenario, bool adaptive)
    : config_(scenario.config),
      adaptive_(adaptive),
      delta_(ratio_from_double(scenario.config.delta0)),
      delta_min_(ratio_from_double(scenario.config.delta_min)),
      delta_max_(ratio_from_double(scenario.config.delta_max)),
      estimator_(EstimatorConfig::from(scenario.config)) {}

std::int64_t DressScheduler::quota_sd(std::int64_t total_slots) const {
  const Ratio q = delta_ * Ratio(total_slots);
  return q.numerator() / q.denominator();
}

void DressScheduler::on_job_submitted(const JobView& job, const ClusterState& cluster,
                                      Tick) {
  const std::int64_t basis = config_.classify_on == SchedulerConfig::ClassifyBasis::kFree
                                 ? cluster.free_slots()
                                 : cluster.total_slots();
  pools_[job.id] = classify(job.demand_slots, basis, config_.theta);
}

Category DressScheduler::pool_of(JobId job) const {
  auto it = pools_.find(job);
  return it == pools_.end() ? Category::kNone : it->second;
}

std::vector<Grant> DressScheduler::on_heartbeat(const ClusterState& cluster,
                                                std::span<const PendingJob> pending,
                                                Tick tick) {
  const std::int64_t tot = cluster.total_slots();
  const std::int64_t free = cluster.free_slots();
  std::vector<const PendingJob*> queue_sd, queue_ld;
  RatioInputs in;
  for (const auto& pj : pending) {
    const PendingDemand demand{static_cast<std::int64_t>(pj.ungranted.size()), pj.submit,
                               pj.job};
    if (pool_of(pj.job) == Category::kSmall) {
      queue_sd.push_back(&pj);
      in.pending_sd.push_back(demand);
    } else {
      queue_ld.push_back(&pj);
      in.pending_ld.push_back(demand);
    }
  }

  auto split_free = [&](std::int64_t q_sd) {
    const std::int64_t sd = std::clamp(q_sd - occupied_sd_, std::int64_t{0}, free);
    return std::make_pair(sd, free - sd);
  };
  auto [free_sd, free_ld] = split_free(quota_sd(tot));
  const auto availability = system_availability(
      estimator_, free_sd, free_ld, [this](JobId j) { return pool_of(j); }, tick + 1);

  record_ = PolicyRecord{};
  record_.tracks_pools = true;
  record_.branch = std::string(to_string(RatioBranch::kFrozen));
  for (const auto& p : in.pending_sd) record_.pending_sd += p.slots;
  for (const auto& p : in.pending_ld) record_.pending_ld += p.slots;

  // The first heartbeat only observes; adjustments start afterwards.
  if (adaptive_ && heartbeats_ > 0) {
    in.delta = delta_;
    in.total_slots = tot;
    in.free_sd = free_sd;
    in.free_ld = free_ld;
    in.release_sd = availability.release_sd;
    in.release_ld = availability.release_ld;
    in.delta_min = delta_min_;
    in.delta_max = delta_max_;
    RatioDecision decision = adjust_ratio(in);
    Ratio next = decision.delta;
    if (decision.absorbed.empty()) {
      // Without preemption a pool's quota never drops below what it holds.
      next = std::clamp(next, Ratio(occupied_sd_, tot),
                        std::max(Ratio(occupied_sd_, tot), Ratio(tot - occupied_ld_, tot)));
      next = std::clamp(next, delta_min_, delta_max_);
    }
    delta_ = next;
    record_.branch = std::string(to_string(decision.branch));
    record_.borrow = !decision.absorbed.empty();
  }
  ++heartbeats_;

  const std::int64_t q_sd = quota_sd(tot);
  const std::int64_t q_ld = tot - q_sd;
  std::tie(free_sd, free_ld) = split_free(q_sd);
  std::int64_t budget_sd = std::max<std::int64_t>(0, q_sd - occupied_sd_);
  std::int64_t budget_ld = std::max<std::int64_t>(0, q_ld - occupied_ld_);
  budget_sd = std::min(budget_sd, free);
  budget_ld = std::min(budget_ld, free - budget_sd);

  std::vector<Grant> grants;
  PlacementPlan plan(cluster);
  grant_fifo(queue_sd, plan, budget_sd, q_sd, grants);
  grant_fifo(queue_ld, plan, budget_ld, q_ld, grants);

  record_.delta = boost::rational_cast<double>(delta_);
  record_.quota_sd = q_sd;
  record_.quota_ld = q_ld;
  record_.forecast = availability.total;
  record_.forecast_sd = availability.small;
  record_.forecast_ld = availability.large;
  return grants;
}

void DressScheduler::on_task_granted(const TaskSpec& task, Tick) {
  if (pool_of(task.job) == Category::kSmall) {
    ++occupied_sd_;
  } else {
    ++occupied_ld_;
  }
  record_.occupied_sd = occupied_sd_;
  record_.occupied_ld = occupied_ld_;
}

void DressScheduler::on_task_started(const TaskSpec& task, Tick tick) {
  estimator_.observe_start(task.job, task.id, tick);
}

void DressScheduler::on_task_completed(const TaskSpec& task, Tick tick) {
  if (pool_of(task.job) == Category::kSmall) {
    --occupied_sd_;
  } else {
    --occupied_ld_;
  }
  record_.occupied_sd = occupied_sd_;
  record_.occupied_ld = occupied_ld_;
  estimator_.observe_completion(task.job, task.id, tick);
}

void DressScheduler::on_tick_end(Tick tick) {
  estimator_.end_tick(tick);
  record_.occupied_sd = occupied_sd_;
  record_.occupied_ld = occupied_ld_;
}

}  // namespace dress
