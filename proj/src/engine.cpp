#include "dress/engine.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "dress/dress_scheduler.hpp"
#include "dress/error.hpp"

namespace dress {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kNone: return "none";
    case Category::kSmall: return "SD";
    case Category::kLarge: return "LD";
  }
  return "?";
}

Category category_from_string(std::string_view s) {
  if (s == "SD") return Category::kSmall;
  if (s == "LD") return Category::kLarge;
  if (s == "none") return Category::kNone;
  throw parse_error("category", "unknown category '" + std::string(s) + "'");
}

bool operator==(const TaskRecord& a, const TaskRecord& b) {
  return a.task == b.task && a.job == b.job && a.phase == b.phase &&
         a.kind == b.kind && a.category == b.category && a.pool == b.pool &&
         a.demand == b.demand && a.server == b.server && a.grant == b.grant &&
         a.start == b.start && a.duration == b.duration &&
         a.completion == b.completion;
}

Category reporting_category(const JobSpec& job, const Scenario& scenario) {
  return classify(job.demand_slots(), scenario.total_slots(), scenario.config.theta);
}

namespace {

struct JobRuntime {
  const JobSpec* spec = nullptr;
  std::vector<std::vector<TaskId>> phase_tasks;
  bool submitted = false;
  bool finished = false;
  int phase = 0;
  int completed_in_phase = 0;
  int granted_in_phase = 0;
};

class Engine {
 public:
  Engine(const Scenario& scenario, Scheduler& scheduler, const EngineOptions& options)
      : scenario_(scenario),
        scheduler_(scheduler),
        options_(options),
        cluster_(scenario.servers),
        tasks_(expand_tasks(scenario)) {
    for (const auto& job : scenario.jobs) {
      JobRuntime rt;
      rt.spec = &job;
      rt.phase_tasks.resize(job.phases.size());
      jobs_.emplace(job.id, std::move(rt));
      submit_order_.push_back(&job);
    }
    for (const auto& t : tasks_) jobs_.at(t.job).phase_tasks[t.phase].push_back(t.id);
    std::stable_sort(submit_order_.begin(), submit_order_.end(),
                     [](const JobSpec* a, const JobSpec* b) {
                       return a->submit != b->submit ? a->submit < b->submit
                                                     : a->id < b->id;
                     });
    records_.resize(tasks_.size());
    granted_.assign(tasks_.size(), false);
    for (const auto& job : scenario.jobs) {
      category_[job.id] = reporting_category(job, scenario);
    }
  }

  ScheduleTrace run() {
    ScheduleTrace trace;
    trace.scheduler = scheduler_.name();
    trace.scenario = options_.scenario_name;
    trace.seed = scenario_.seed;
    trace.total_slots = cluster_.total_slots();
    trace.servers = scenario_.servers;

    std::size_t next_submit = 0;
    std::size_t finished_jobs = 0;
    Tick last_event = 0;
    for (Tick t = 0;; ++t) {
      bool event = false;

      // Completions release capacity before anything else this tick.
      for (auto it = completions_.lower_bound(t);
           it != completions_.end() && it->first == t; it = completions_.erase(it)) {
        const TaskSpec& task = tasks_[it->second];
        cluster_.advance_lease(task.id, LeaseState::kCompleted, t);
        records_[task.id].completion = t;
        auto& job = jobs_.at(task.job);
        ++job.completed_in_phase;
        scheduler_.on_task_completed(task, t);
        event = true;
      }

      while (next_submit < submit_order_.size() &&
             submit_order_[next_submit]->submit == t) {
        const JobSpec& spec = *submit_order_[next_submit++];
        auto& job = jobs_.at(spec.id);
        job.submitted = true;
        scheduler_.on_job_submitted(
            {spec.id, spec.submit, spec.demand_slots(), static_cast<int>(spec.phases.size())},
            cluster_, t);
        event = true;
      }

      // Phase barrier: the next phase becomes eligible once every task of
      // the current one has completed.
      for (auto& [id, job] : jobs_) {
        if (!job.submitted || job.finished) continue;
        const auto& current = job.phase_tasks[job.phase];
        if (job.completed_in_phase < static_cast<int>(current.size())) continue;
        event = true;
        if (job.phase + 1 < static_cast<int>(job.phase_tasks.size())) {
          ++job.phase;
          job.completed_in_phase = 0;
          job.granted_in_phase = 0;
        } else {
          job.finished = true;
          ++finished_jobs;
        }
      }

      const auto pending = pending_jobs();
      const std::int64_t free_before = cluster_.free_slots();
      const auto grants = scheduler_.on_heartbeat(cluster_, pending, t);
      apply_grants(grants, t);
      if (!grants.empty()) event = true;
      if (grants.empty() && free_before > 0 && any_pending_fits(pending)) {
        ++trace.work_conservation_misses;
      }

      if (advance_transitions(t)) event = true;
      scheduler_.on_tick_end(t);
      cluster_.check_invariants();
      trace.ticks.push_back(observe(t, static_cast<std::int64_t>(grants.size())));

      if (event) last_event = t;
      if (next_submit == submit_order_.size() && finished_jobs == jobs_.size()) {
        trace.makespan = t;
        break;
      }
      if (!pending.empty() && cluster_.occupied_slots() == 0 &&
          t - last_event >= options_.deadlock_ticks) {
        throw Error(ErrorKind::kDeadlock,
                    "no progress for " + std::to_string(options_.deadlock_ticks) +
                        " ticks with pending work (tick " + std::to_string(t) + ")");
      }
    }

    trace.tasks = records_;
    for (const auto& spec : scenario_.jobs) {
      JobRecord jr;
      jr.job = spec.id;
      jr.submit = spec.submit;
      jr.category = category_.at(spec.id);
      jr.pool = scheduler_.pool_of(spec.id);
      jr.demand_slots = spec.demand_slots();
      bool first = true;
      for (const auto& phase : jobs_.at(spec.id).phase_tasks) {
        for (TaskId id : phase) {
          const auto& r = records_[id];
          ++jr.tasks;
          jr.alpha = first ? r.start : std::min(jr.alpha, r.start);
          jr.beta = first ? r.completion : std::max(jr.beta, r.completion);
          first = false;
        }
      }
      trace.jobs.push_back(jr);
    }
    return trace;
  }

 private:
  std::vector<PendingJob> pending_jobs() const {
    std::vector<PendingJob> out;
    for (const JobSpec* spec : submit_order_) {
      const auto& job = jobs_.at(spec->id);
      if (!job.submitted || job.finished) continue;
      PendingJob pj;
      pj.job = spec->id;
      pj.submit = spec->submit;
      pj.phase = job.phase;
      const auto& ids = job.phase_tasks[job.phase];
      pj.phase_tasks = static_cast<int>(ids.size());
      pj.granted_in_phase = job.granted_in_phase;
      for (TaskId id : ids) {
        if (!granted_[id]) pj.ungranted.push_back(&tasks_[id]);
      }
      if (!pj.ungranted.empty()) out.push_back(std::move(pj));
    }
    return out;
  }

  bool any_pending_fits(const std::vector<PendingJob>& pending) const {
    for (const auto& pj : pending) {
      for (const auto* task : pj.ungranted) {
        for (const auto& srv : cluster_.servers()) {
          if (can_place(task->demand, srv)) return true;
        }
      }
    }
    return false;
  }

  void apply_grants(const std::vector<Grant>& grants, Tick t) {
    for (const auto& g : grants) {
      if (g.task < 0 || static_cast<std::size_t>(g.task) >= tasks_.size()) {
        throw invariant_error("tick " + std::to_string(t) + ": grant for unknown task " +
                              std::to_string(g.task));
      }
      const TaskSpec& task = tasks_[g.task];
      auto& job = jobs_.at(task.job);
      if (granted_[task.id] || !job.submitted || job.finished || task.phase != job.phase) {
        throw invariant_error("tick " + std::to_string(t) + ": task " +
                              std::to_string(task.id) + " is not eligible for a grant");
      }
      if (cluster_.free_slots() < 1) {
        throw invariant_error("tick " + std::to_string(t) +
                              ": scheduler granted more containers than A_c");
      }
      cluster_.reserve(task.id, task.demand, g.server, t);
      granted_[task.id] = true;
      ++job.granted_in_phase;
      auto& r = records_[task.id];
      r.task = task.id;
      r.job = task.job;
      r.phase = task.phase;
      r.kind = task.kind;
      r.category = category_.at(task.job);
      r.pool = scheduler_.pool_of(task.job);
      r.demand = task.demand;
      r.server = g.server;
      r.grant = t;
      r.duration = task.duration;
      in_flight_.insert(task.id);
      scheduler_.on_task_granted(task, t);
    }
  }

  Tick delay_in(const TaskSpec& task, LeaseState state) const {
    const auto& d = scenario_.config.delays;
    switch (state) {
      case LeaseState::kReserved: return d[0];
      case LeaseState::kAllocated: return d[1];
      case LeaseState::kAcquired: return d[2] + task.start_offset;
      default: return 0;
    }
  }

  bool advance_transitions(Tick t) {
    bool any = false;
    for (auto it = in_flight_.begin(); it != in_flight_.end();) {
      const TaskSpec& task = tasks_[*it];
      bool running = false;
      for (;;) {
        const auto* lease = cluster_.lease(task.id);
        if (lease->state == LeaseState::kRunning) {
          running = true;
          break;
        }
        if (t - *lease->stamp(lease->state) < delay_in(task, lease->state)) break;
        const auto next = static_cast<LeaseState>(static_cast<int>(lease->state) + 1);
        cluster_.advance_lease(task.id, next, t);
        any = true;
      }
      if (running) {
        records_[task.id].start = t;
        completions_.emplace(t + task.duration, task.id);
        scheduler_.on_task_started(task, t);
        it = in_flight_.erase(it);
      } else {
        ++it;
      }
    }
    return any;
  }

  TickRecord observe(Tick t, std::int64_t grants) const {
    TickRecord rec;
    rec.tick = t;
    rec.free_slots = cluster_.free_slots();
    rec.grants = grants;
    for (const auto& [task, lease] : cluster_.leases()) {
      if (!lease.charged()) continue;
      const Category pool = scheduler_.pool_of(tasks_[task].job);
      if (pool == Category::kSmall) {
        ++rec.occupied_sd;
      } else if (pool == Category::kLarge) {
        ++rec.occupied_ld;
      } else {
        throw invariant_error("charged lease without a pool");
      }
    }
    if (rec.occupied_sd + rec.occupied_ld + rec.free_slots != cluster_.total_slots()) {
      throw invariant_error("tick " + std::to_string(t) + ": pool accounting broken");
    }
    const PolicyRecord policy = scheduler_.policy_record();
    if (policy.tracks_pools && (policy.occupied_sd != rec.occupied_sd ||
                                policy.occupied_ld != rec.occupied_ld)) {
      throw invariant_error("tick " + std::to_string(t) +
                            ": scheduler pool occupancy disagrees with the cluster");
    }
    rec.delta = policy.delta;
    rec.quota_sd = policy.quota_sd;
    rec.quota_ld = policy.quota_ld;
    rec.pending_sd = policy.pending_sd;
    rec.pending_ld = policy.pending_ld;
    rec.forecast = policy.forecast;
    rec.forecast_sd = policy.forecast_sd;
    rec.forecast_ld = policy.forecast_ld;
    rec.branch = policy.branch;
    rec.borrow = policy.borrow;
    return rec;
  }

  const Scenario& scenario_;
  Scheduler& scheduler_;
  EngineOptions options_;
  ClusterState cluster_;
  std::vector<TaskSpec> tasks_;
  std::map<JobId, JobRuntime> jobs_;
  std::map<JobId, Category> category_;
  std::vector<const JobSpec*> submit_order_;
  std::vector<TaskRecord> records_;
  std::vector<bool> granted_;
  std::set<TaskId> in_flight_;
  std::multimap<Tick, TaskId> completions_;
};

}  // namespace

ScheduleTrace run(const Scenario& scenario, Scheduler& scheduler,
                  const EngineOptions& options) {
  validate(scenario);
  Engine engine(scenario, scheduler, options);
  return engine.run();
}

}  // namespace dress
