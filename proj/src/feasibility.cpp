#include "dress/feasibility.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace dress {

std::vector<Violation> check_schedule(std::span<const ScheduledTask> schedule,
                                      const std::vector<ResourceVector>& servers,
                                      std::span<const TaskId> expected_tasks,
                                      const ReserveLimit& sd_limit,
                                      const std::function<bool(Tick)>& borrow) {
  std::vector<Violation> out;
  auto is_borrow = [&](Tick t) { return borrow ? borrow(t) : false; };

  std::map<TaskId, int> seen;
  for (const auto& s : schedule) ++seen[s.task];
  for (const auto& [task, count] : seen) {
    if (count > 1) {
      out.push_back({1, -1, task, -1, false,
                     "task assigned " + std::to_string(count) + " times"});
    }
  }
  for (TaskId task : expected_tasks) {
    if (!seen.count(task)) out.push_back({1, -1, task, -1, false, "task never assigned"});
  }

  Tick horizon = 0;
  for (const auto& s : schedule) {
    horizon = std::max(horizon, s.end);
    if (s.server < 0 || static_cast<std::size_t>(s.server) >= servers.size()) {
      out.push_back({1, s.begin, s.task, s.server, false, "unknown server"});
    }
  }
  std::int64_t tot = 0;
  for (const auto& cap : servers) tot += cap[0];

  // Sweep ticks; the instances are small enough for a dense scan.
  for (Tick t = 0; t < horizon; ++t) {
    std::vector<ResourceVector> used;
    for (const auto& cap : servers) used.push_back(ResourceVector::zeros(cap.size()));
    std::int64_t sd = 0, ld = 0;
    for (const auto& s : schedule) {
      if (t < s.begin || t >= s.end) continue;
      if (s.server >= 0 && static_cast<std::size_t>(s.server) < servers.size()) {
        used[s.server] += s.demand;
      }
      if (s.pool == Category::kSmall) sd += s.demand[0];
      if (s.pool == Category::kLarge) ld += s.demand[0];
    }
    for (std::size_t j = 0; j < servers.size(); ++j) {
      if (!used[j].fits_within(servers[j])) {
        out.push_back({2, t, -1, static_cast<ServerId>(j), is_borrow(t),
                       "usage " + used[j].to_string() + " exceeds " + servers[j].to_string()});
      }
    }
    if (sd_limit) {
      if (auto limit = sd_limit(t)) {
        if (sd > *limit) {
          out.push_back({3, t, -1, -1, is_borrow(t),
                         "SD usage " + std::to_string(sd) + " > " + std::to_string(*limit)});
        }
        if (ld > tot - *limit) {
          out.push_back({4, t, -1, -1, is_borrow(t),
                         "LD usage " + std::to_string(ld) + " > " +
                             std::to_string(tot - *limit)});
        }
      }
    }
  }
  return out;
}

std::vector<Violation> check_feasibility(const ScheduleTrace& trace) {
  std::vector<ScheduledTask> schedule;
  std::vector<TaskId> expected;
  for (const auto& r : trace.tasks) {
    schedule.push_back({r.task, r.server, r.grant, r.completion, r.demand, r.pool});
    expected.push_back(r.task);
  }
  std::map<Tick, const TickRecord*> by_tick;
  for (const auto& rec : trace.ticks) by_tick[rec.tick] = &rec;
  ReserveLimit limit = [&](Tick t) -> std::optional<std::int64_t> {
    auto it = by_tick.find(t);
    if (it == by_tick.end() || !it->second->delta) return std::nullopt;
    return it->second->quota_sd;
  };
  auto borrow = [&](Tick t) {
    auto it = by_tick.find(t);
    return it != by_tick.end() && it->second->borrow;
  };
  return check_schedule(schedule, trace.servers, expected, limit, borrow);
}

std::vector<Violation> check_feasibility(const IlpSolution& solution,
                                         const IlpInstance& instance) {
  std::vector<ScheduledTask> schedule;
  std::vector<TaskId> expected;
  for (std::size_t i = 0; i < instance.tasks.size(); ++i) {
    const auto& task = instance.tasks[i];
    expected.push_back(task.id);
    if (i >= solution.placements.size()) continue;
    const auto& p = solution.placements[i];
    schedule.push_back({task.id, p.server, p.start, p.start + task.duration, task.demand,
                        task.category});
  }
  std::vector<Violation> out;
  for (std::size_t i = 0; i < instance.tasks.size() && i < solution.placements.size(); ++i) {
    const auto& task = instance.tasks[i];
    const auto& p = solution.placements[i];
    if (p.start < task.release) {
      out.push_back({1, p.start, task.id, p.server, false, "starts before release"});
    }
  }
  std::optional<std::int64_t> sd_limit;
  if (instance.alpha) {
    const Ratio q = *instance.alpha * Ratio(instance.total_slots());
    sd_limit = q.numerator() / q.denominator();
  }
  auto rest = check_schedule(schedule, instance.servers, expected,
                             [&](Tick) { return sd_limit; });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::string violations_to_json(const std::vector<Violation>& violations) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : violations) {
    arr.push_back({{"constraint", v.constraint},
                   {"tick", v.tick},
                   {"task", v.task},
                   {"server", v.server},
                   {"borrow", v.borrow_tick},
                   {"detail", v.detail}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace dress
