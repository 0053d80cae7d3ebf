#include "dress/workload.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "dress/error.hpp"

namespace dress {

std::string_view to_string(SchedulerConfig::ClassifyBasis basis) {
  return basis == SchedulerConfig::ClassifyBasis::kFree ? "free" : "total";
}

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::kNormal: return "normal";
    case TaskKind::kHeading: return "heading";
    case TaskKind::kTrailing: return "trailing";
  }
  return "?";
}

std::int64_t JobSpec::demand_slots() const {
  std::int64_t peak = 0;
  for (const auto& ph : phases) peak = std::max<std::int64_t>(peak, ph.task_count);
  return peak;
}

std::int64_t Scenario::total_slots() const {
  std::int64_t total = 0;
  for (const auto& cap : servers) total += cap.size() ? cap[0] : 0;
  return total;
}

Tick heading_duration(const PhaseSpec& phase) {
  auto scaled = static_cast<Tick>(std::llround(phase.base_duration * phase.fill));
  return std::min(phase.base_duration - 1, std::max<Tick>(1, scaled));
}

Tick trailing_duration(const PhaseSpec& phase) {
  auto scaled = static_cast<Tick>(std::llround(phase.base_duration * phase.stretch));
  return std::max(phase.base_duration + 1, scaled);
}

namespace {

std::string phase_path(std::size_t j, std::size_t p) {
  return "jobs[" + std::to_string(j) + "].phases[" + std::to_string(p) + "]";
}

}  // namespace

void validate(const Scenario& s) {
  if (s.k < 1) throw config_error("k: must be >= 1");
  if (s.servers.empty()) throw config_error("servers: at least one server required");
  for (std::size_t i = 0; i < s.servers.size(); ++i) {
    if (s.servers[i].size() != s.k) {
      throw config_error("servers[" + std::to_string(i) + "]: expected " +
                         std::to_string(s.k) + " components");
    }
  }
  const auto& c = s.config;
  if (c.ts < 0 || c.te < 0) throw config_error("config: ts/te must be >= 0");
  if (c.pw < 1) throw config_error("config.pw: must be >= 1");
  if (!(c.theta > 0 && c.theta < 1)) throw config_error("config.theta: must be in (0,1)");
  if (!(c.delta_min > 0 && c.delta_min <= c.delta_max && c.delta_max < 1)) {
    throw config_error("config: need 0 < delta_min <= delta_max < 1");
  }
  if (c.delta0 < c.delta_min || c.delta0 > c.delta_max) {
    throw config_error("config.delta0: must lie in [delta_min, delta_max]");
  }
  for (auto d : c.delays) {
    if (d < 0) throw config_error("config.delays: must be >= 0");
  }
  std::set<JobId> ids;
  for (std::size_t j = 0; j < s.jobs.size(); ++j) {
    const auto& job = s.jobs[j];
    const std::string jp = "jobs[" + std::to_string(j) + "]";
    if (!ids.insert(job.id).second) throw config_error(jp + ".id: duplicate job id");
    if (job.submit < 0) throw config_error(jp + ".submit: must be >= 0");
    if (job.phases.empty()) throw config_error(jp + ".phases: must be nonempty");
    for (std::size_t p = 0; p < job.phases.size(); ++p) {
      const auto& ph = job.phases[p];
      const std::string pp = phase_path(j, p);
      if (ph.task_count < 1) throw config_error(pp + ".tasks: must be >= 1");
      if (ph.base_duration < 1) throw config_error(pp + ".base_duration: must be >= 1");
      if (ph.demand.size() != s.k) {
        throw config_error(pp + ".demand: expected " + std::to_string(s.k) + " components");
      }
      if (ph.demand[0] < 1) throw config_error(pp + ".demand[0]: must be >= 1");
      if (ph.spread < 0) throw config_error(pp + ".spread: must be >= 0");
      if (ph.heading < 0 || ph.trailing < 0 ||
          ph.heading + ph.trailing > ph.task_count) {
        throw config_error(pp + ": need 0 <= heading + trailing <= tasks");
      }
      if (!(ph.stretch > 1)) throw config_error(pp + ".stretch: must be > 1");
      if (!(ph.fill > 0 && ph.fill < 1)) throw config_error(pp + ".fill: must be in (0,1)");
      if (ph.heading > 0 && ph.base_duration < 2) {
        throw config_error(pp + ".base_duration: heading tasks need base >= 2");
      }
      bool placeable = false;
      for (const auto& cap : s.servers) placeable |= ph.demand.fits_within(cap);
      if (!placeable) throw config_error(pp + ".demand: exceeds every server capacity");
    }
  }
}

std::vector<TaskSpec> expand_phase(const PhaseSpec& ph, JobId job,
                                   int phase_index, TaskId first_id) {
  std::vector<TaskSpec> tasks;
  tasks.reserve(ph.task_count);
  const int n = ph.task_count;
  const int first_heading = n - ph.heading;
  const int first_trailing = first_heading - ph.trailing;
  for (int q = 0; q < n; ++q) {
    TaskSpec t;
    t.id = first_id + q;
    t.job = job;
    t.phase = phase_index;
    t.index = q;
    t.demand = ph.demand;
    t.start_offset = n == 1 ? 0 : (q * ph.spread + (n - 1) / 2) / (n - 1);
    if (q >= first_heading) {
      t.kind = TaskKind::kHeading;
      t.duration = heading_duration(ph);
    } else if (q >= first_trailing) {
      t.kind = TaskKind::kTrailing;
      t.duration = trailing_duration(ph);
    } else {
      t.duration = ph.base_duration;
    }
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::vector<TaskSpec> expand_tasks(const Scenario& s) {
  std::vector<TaskSpec> tasks;
  TaskId next = 0;
  for (const auto& job : s.jobs) {
    for (std::size_t p = 0; p < job.phases.size(); ++p) {
      auto phase = expand_phase(job.phases[p], job.id, static_cast<int>(p), next);
      next += static_cast<TaskId>(phase.size());
      tasks.insert(tasks.end(), phase.begin(), phase.end());
    }
  }
  return tasks;
}

}  // namespace dress
