#include <algorithm>

#include "dress/dress_scheduler.hpp"
#include "dress/engine.hpp"
#include "dress/error.hpp"

namespace dress {

PlacementPlan::PlacementPlan(const ClusterState& cluster) {
  for (const auto& srv : cluster.servers()) {
    available_.push_back(srv.available);
    capacity_.push_back(srv.capacity);
  }
}

std::optional<ServerId> PlacementPlan::place(const ResourceVector& demand) {
  for (std::size_t j = 0; j < available_.size(); ++j) {
    if (demand.fits_within(available_[j])) {
      available_[j] -= demand;
      return static_cast<ServerId>(j);
    }
  }
  return std::nullopt;
}

bool PlacementPlan::fits_all(std::span<const TaskSpec* const> tasks) const {
  PlacementPlan trial = *this;
  for (const auto* task : tasks) {
    if (!trial.place(task->demand)) return false;
  }
  return true;
}

std::int64_t PlacementPlan::fits_when_empty(std::span<const TaskSpec* const> tasks) const {
  PlacementPlan empty = *this;
  empty.available_ = capacity_;
  std::int64_t n = 0;
  for (const auto* task : tasks) {
    if (!empty.place(task->demand)) break;
    ++n;
  }
  return n;
}

void grant_fifo(std::span<const PendingJob* const> queue, PlacementPlan& plan,
                std::int64_t& free_slots, std::int64_t wave_cap,
                std::vector<Grant>& out) {
  for (const PendingJob* pj : queue) {
    const auto ungranted = static_cast<std::int64_t>(pj->ungranted.size());
    if (pj->granted_in_phase == 0) {
      const std::int64_t need =
          std::min({ungranted, wave_cap, plan.fits_when_empty(pj->ungranted)});
      if (need < 1 || free_slots < need) return;
      if (!plan.fits_all(std::span(pj->ungranted).first(static_cast<std::size_t>(need)))) {
        return;
      }
    }
    std::int64_t granted = 0;
    for (const TaskSpec* task : pj->ungranted) {
      if (free_slots < 1) break;
      auto server = plan.place(task->demand);
      if (!server) break;
      out.push_back({task->id, *server});
      --free_slots;
      ++granted;
    }
    if (granted < ungranted) return;
  }
}

FcfsScheduler::FcfsScheduler(const Scenario& scenario) {
  for (const auto& job : scenario.jobs) {
    categories_[job.id] = reporting_category(job, scenario);
  }
  record_.branch = "fcfs";
}

Category FcfsScheduler::pool_of(JobId job) const {
  auto it = categories_.find(job);
  return it == categories_.end() ? Category::kNone : it->second;
}

std::vector<Grant> FcfsScheduler::on_heartbeat(const ClusterState& cluster,
                                               std::span<const PendingJob> pending,
                                               Tick) {
  std::vector<const PendingJob*> queue;
  for (const auto& pj : pending) queue.push_back(&pj);
  std::vector<Grant> grants;
  PlacementPlan plan(cluster);
  std::int64_t free = cluster.free_slots();
  grant_fifo(queue, plan, free, cluster.total_slots(), grants);
  return grants;
}

std::unique_ptr<Scheduler> make_scheduler(const std::string& name, const Scenario& scenario) {
  if (name == "fcfs") return std::make_unique<FcfsScheduler>(scenario);
  if (name == "dress") return std::make_unique<DressScheduler>(scenario, true);
  if (name == "static") return std::make_unique<DressScheduler>(scenario, false);
  throw config_error("unknown scheduler '" + name + "' (expected fcfs, dress, static)");
}

}  // namespace dress
