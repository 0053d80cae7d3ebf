#include "dress/fig1.hpp"

#include <algorithm>
#include <numeric>

#include "dress/dress_scheduler.hpp"
#include "dress/engine.hpp"
#include "dress/error.hpp"

namespace dress {

Scenario fig1_scenario(const std::vector<std::pair<std::int64_t, Tick>>& jobs,
                       std::int64_t slots) {
  Scenario s;
  s.k = 1;
  s.servers = {ResourceVector{slots}};
  s.config.delays = {0, 0, 0};
  JobId id = 1;
  for (const auto& [containers, duration] : jobs) {
    PhaseSpec ph;
    ph.task_count = static_cast<int>(containers);
    ph.base_duration = duration;
    ph.demand = ResourceVector{1};
    s.jobs.push_back({id, id - 1, {ph}});
    ++id;
  }
  return s;
}

namespace {

struct FcfsOutcome {
  Tick makespan = 0;
  std::vector<Tick> waits;
};

FcfsOutcome replay_fcfs(const Scenario& s) {
  FcfsScheduler fcfs(s);
  const auto trace = run(s, fcfs);
  FcfsOutcome out;
  out.makespan = trace.makespan;
  for (const auto& job : trace.jobs) out.waits.push_back(job.alpha - job.submit);
  return out;
}

bool overlaps(Tick a0, Tick a1, Tick b0, Tick b1) { return a0 < b1 && b0 < a1; }

}  // namespace

Fig1Reconstruction reconstruct_fig1(const Fig1Target& target) {
  Fig1Reconstruction result;
  std::vector<std::vector<std::pair<std::int64_t, Tick>>> near_misses;
  const std::pair<std::int64_t, Tick> job1{target.job1_demand, target.job1_duration};

  // Strict FCFS is causal in submission order, so each prefix of jobs can
  // be checked before the later jobs are enumerated.
  for (std::int64_t r2 = 1; r2 <= target.max_demand; ++r2) {
    for (Tick l2 = 1; l2 <= target.max_duration; ++l2) {
      std::vector<std::pair<std::int64_t, Tick>> p2{job1, {r2, l2}};
      ++result.candidates_checked;
      const auto o2 = replay_fcfs(fig1_scenario(p2, target.slots));
      if (o2.waits[0] != target.fcfs_waits[0] || o2.waits[1] != target.fcfs_waits[1]) {
        continue;
      }
      for (std::int64_t r3 = 1; r3 <= target.max_demand; ++r3) {
        for (Tick l3 = 1; l3 <= target.max_duration; ++l3) {
          auto p3 = p2;
          p3.push_back({r3, l3});
          ++result.candidates_checked;
          const auto o3 = replay_fcfs(fig1_scenario(p3, target.slots));
          if (o3.waits[2] != target.fcfs_waits[2]) continue;
          for (std::int64_t r4 = 1; r4 <= target.max_demand; ++r4) {
            for (Tick l4 = 1; l4 <= target.max_duration; ++l4) {
              auto p4 = p3;
              p4.push_back({r4, l4});
              ++result.candidates_checked;
              const Scenario s = fig1_scenario(p4, target.slots);
              const auto o4 = replay_fcfs(s);
              if (o4.waits != target.fcfs_waits) continue;
              if (o4.makespan != target.fcfs_makespan) {
                if (near_misses.size() < 5) near_misses.push_back(p4);
                continue;
              }
              IlpInstance inst = instance_from_scenario(s, Granularity::kJobGang);
              const auto best = solve_exact(inst);
              if (!best.optimal || !best.feasible ||
                  best.makespan != target.reordered_makespan) {
                if (near_misses.size() < 5) near_misses.push_back(p4);
                continue;
              }
              std::vector<Placement> found;
              for_each_schedule(inst, target.reordered_makespan,
                                [&](std::span<const Placement> pl) {
                Tick total = 0;
                for (std::size_t i = 0; i < pl.size(); ++i) {
                  total += pl[i].start - inst.tasks[i].release;
                }
                if (total != target.reordered_total_wait) return true;
                auto end = [&](std::size_t i) { return pl[i].start + inst.tasks[i].duration; };
                if (!overlaps(pl[0].start, end(0), pl[2].start, end(2))) return true;
                if (!overlaps(pl[1].start, end(1), pl[3].start, end(3))) return true;
                if (std::min(pl[1].start, pl[3].start) < std::max(end(0), end(2))) return true;
                found.assign(pl.begin(), pl.end());
                return false;
              });
              if (found.empty()) {
                if (near_misses.size() < 5) near_misses.push_back(p4);
                continue;
              }
              result.scenario = s;
              result.fcfs_makespan = o4.makespan;
              result.fcfs_waits = o4.waits;
              result.instance = inst;
              result.optimal_makespan = best.makespan;
              result.reordered = found;
              result.reordered_makespan = 0;
              for (std::size_t i = 0; i < found.size(); ++i) {
                const auto& task = inst.tasks[i];
                result.reordered_makespan =
                    std::max(result.reordered_makespan, found[i].start + task.duration);
                result.reordered_waits.push_back(found[i].start - task.release);
              }
              return result;
            }
          }
        }
      }
    }
  }
  std::string msg = "no job parameters reproduce the example; closest FCFS matches:";
  for (const auto& cand : near_misses) {
    msg += " [";
    for (const auto& [r, l] : cand) msg += " R" + std::to_string(r) + "L" + std::to_string(l);
    msg += " ]";
  }
  throw config_error(msg);
}

}  // namespace dress
