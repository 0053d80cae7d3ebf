#include "dress/oracle.hpp"

#include <algorithm>

#include "dress/engine.hpp"
#include "dress/error.hpp"
#include "json.hpp"

namespace dress {

std::int64_t IlpInstance::total_slots() const {
  std::int64_t tot = 0;
  for (const auto& cap : servers) tot += cap[0];
  return tot;
}

Tick makespan_lower_bound(const IlpInstance& in) {
  Tick bound = 0;
  for (const auto& t : in.tasks) bound = std::max(bound, t.release + t.duration);
  for (std::size_t p = 0; p < in.k; ++p) {
    std::int64_t area = 0, cap = 0;
    for (const auto& t : in.tasks) area += t.demand[p] * t.duration;
    for (const auto& s : in.servers) cap += s[p];
    if (area > 0 && cap > 0) bound = std::max<Tick>(bound, (area + cap - 1) / cap);
  }
  return bound;
}

namespace {

// Time-indexed usage profile shared by the solver and the enumerator.
class Search {
 public:
  Search(const IlpInstance& in, std::uint64_t budget)
      : in_(in), budget_(budget), placements_(in.tasks.size()) {
    const auto m = in.servers.size();
    usage_.assign(m * static_cast<std::size_t>(in.horizon) * in.k, 0);
    pool_usage_.assign(static_cast<std::size_t>(in.horizon) * 2, 0);
    if (in.alpha) {
      const Ratio q = *in.alpha * Ratio(in.total_slots());
      sd_limit_ = q.numerator() / q.denominator();
      ld_limit_ = in.total_slots() - sd_limit_;
    }
    remaining_max_end_.assign(in.tasks.size() + 1, 0);
    for (std::size_t i = in.tasks.size(); i-- > 0;) {
      remaining_max_end_[i] = std::max(remaining_max_end_[i + 1],
                                       in.tasks[i].release + in.tasks[i].duration);
    }
  }

  // `bound` is exclusive: only schedules whose makespan < bound() are
  // explored. on_leaf returns false to stop the search.
  template <typename Bound, typename Leaf>
  bool dfs(std::size_t i, Tick current, Bound&& bound, Leaf&& on_leaf) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (i == in_.tasks.size()) return on_leaf(placements_, current);
    if (std::max(current, remaining_max_end_[i]) >= bound()) return true;
    const auto& task = in_.tasks[i];
    for (std::size_t s = 0; s < in_.servers.size(); ++s) {
      if (!task.demand.fits_within(in_.servers[s])) continue;
      for (Tick start = task.release; start + task.duration <= in_.horizon; ++start) {
        const Tick end = start + task.duration;
        if (std::max(current, end) >= bound()) break;
        if (!fits(task, s, start, end)) continue;
        apply(task, s, start, end, +1);
        placements_[i] = {static_cast<ServerId>(s), start};
        const bool keep_going = dfs(i + 1, std::max(current, end), bound, on_leaf);
        apply(task, s, start, end, -1);
        if (!keep_going) return false;
      }
    }
    return true;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  std::size_t cell(std::size_t s, Tick t, std::size_t p) const {
    return (s * static_cast<std::size_t>(in_.horizon) + static_cast<std::size_t>(t)) * in_.k + p;
  }

  bool fits(const OracleTask& task, std::size_t s, Tick start, Tick end) const {
    const auto& cap = in_.servers[s];
    const int pool = task.category == Category::kSmall ? 0 : 1;
    const std::int64_t limit = pool == 0 ? sd_limit_ : ld_limit_;
    for (Tick t = start; t < end; ++t) {
      for (std::size_t p = 0; p < in_.k; ++p) {
        if (usage_[cell(s, t, p)] + task.demand[p] > cap[p]) return false;
      }
      if (in_.alpha &&
          pool_usage_[static_cast<std::size_t>(t) * 2 + pool] + task.demand[0] > limit) {
        return false;
      }
    }
    return true;
  }

  void apply(const OracleTask& task, std::size_t s, Tick start, Tick end, int sign) {
    const int pool = task.category == Category::kSmall ? 0 : 1;
    for (Tick t = start; t < end; ++t) {
      for (std::size_t p = 0; p < in_.k; ++p) usage_[cell(s, t, p)] += sign * task.demand[p];
      pool_usage_[static_cast<std::size_t>(t) * 2 + pool] += sign * task.demand[0];
    }
  }

  const IlpInstance& in_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::int64_t> usage_;
  std::vector<std::int64_t> pool_usage_;
  std::int64_t sd_limit_ = 0;
  std::int64_t ld_limit_ = 0;
  std::vector<Tick> remaining_max_end_;
  std::vector<Placement> placements_;
};

void check_instance(const IlpInstance& in) {
  if (in.servers.empty()) throw config_error("oracle instance needs servers");
  if (in.horizon < 0) throw config_error("oracle horizon must be >= 0");
  for (const auto& s : in.servers) {
    if (s.size() != in.k) throw config_error("oracle server dimension mismatch");
  }
  for (const auto& t : in.tasks) {
    if (t.demand.size() != in.k) throw config_error("oracle task dimension mismatch");
    if (t.duration < 1) throw config_error("oracle task durations must be >= 1");
  }
}

}  // namespace

IlpSolution solve_exact(const IlpInstance& in, const SolveOptions& options) {
  check_instance(in);
  IlpSolution sol;
  sol.lower_bound = makespan_lower_bound(in);
  if (in.tasks.empty()) {
    sol.feasible = sol.optimal = true;
    return sol;
  }
  Search search(in, options.node_budget);
  Tick best = in.horizon + 1;
  auto bound = [&] { return best; };
  search.dfs(0, 0, bound, [&](std::span<const Placement> placements, Tick makespan) {
    best = makespan;
    sol.feasible = true;
    sol.makespan = makespan;
    sol.placements.assign(placements.begin(), placements.end());
    // An incumbent matching the lower bound cannot be improved.
    return makespan > sol.lower_bound;
  });
  sol.nodes = search.nodes();
  sol.optimal = !search.exhausted();
  if (sol.optimal && sol.feasible) sol.lower_bound = sol.makespan;
  return sol;
}

bool for_each_schedule(const IlpInstance& in, Tick cap,
                       const std::function<bool(std::span<const Placement>)>& visit,
                       std::uint64_t node_budget) {
  check_instance(in);
  Search search(in, node_budget);
  auto bound = [&] { return cap + 1; };
  search.dfs(0, 0, bound, [&](std::span<const Placement> placements, Tick) {
    return visit(placements);
  });
  return !search.exhausted();
}

IlpInstance instance_from_scenario(const Scenario& scenario, Granularity granularity,
                                   std::optional<Ratio> alpha, Tick horizon) {
  validate(scenario);
  IlpInstance in;
  in.k = scenario.k;
  in.servers = scenario.servers;
  in.alpha = alpha;
  if (granularity == Granularity::kTask) {
    for (const auto& task : expand_tasks(scenario)) {
      const JobSpec* job = nullptr;
      for (const auto& j : scenario.jobs) {
        if (j.id == task.job) job = &j;
      }
      in.tasks.push_back({task.id, task.job, task.demand, task.duration, job->submit,
                          reporting_category(*job, scenario)});
    }
  } else {
    TaskId next = 0;
    for (const auto& job : scenario.jobs) {
      if (job.phases.size() != 1) {
        throw config_error("gang granularity needs single-phase jobs (job " +
                           std::to_string(job.id) + ")");
      }
      const auto& ph = job.phases.front();
      if (ph.heading || ph.trailing || ph.spread) {
        throw config_error("gang granularity needs uniform task durations");
      }
      std::vector<std::int64_t> demand;
      for (auto a : ph.demand.amounts()) demand.push_back(a * ph.task_count);
      in.tasks.push_back({next++, job.id, ResourceVector(demand), ph.base_duration,
                          job.submit, reporting_category(job, scenario)});
    }
  }
  if (horizon <= 0) {
    Tick release = 0, total = 0;
    for (const auto& t : in.tasks) {
      release = std::max(release, t.release);
      total += t.duration;
    }
    horizon = release + total;
  }
  in.horizon = horizon;
  return in;
}

std::string solution_to_json(const IlpInstance& in, const IlpSolution& sol) {
  nlohmann::json j;
  j["feasible"] = sol.feasible;
  j["optimal"] = sol.optimal;
  j["clairvoyant"] = true;
  j["makespan"] = sol.makespan;
  j["lower_bound"] = sol.lower_bound;
  j["nodes"] = sol.nodes;
  nlohmann::json block = nlohmann::json::object();
  for (std::size_t i = 0; i < sol.placements.size(); ++i) {
    block[std::to_string(in.tasks[i].id)] = {{"server", sol.placements[i].server},
                                             {"start", sol.placements[i].start}};
  }
  j["solution"] = block;
  return j.dump(2) + "\n";
}

IlpSolution solution_from_json(const IlpInstance& in, const std::string& text) {
  IlpSolution sol;
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& block = j.at("solution");
    for (const auto& task : in.tasks) {
      const std::string key = std::to_string(task.id);
      if (!block.contains(key)) throw parse_error("solution." + key, "missing placement");
      const auto& p = block.at(key);
      Placement pl{p.at("server").get<ServerId>(), p.at("start").get<Tick>()};
      sol.makespan = std::max(sol.makespan, pl.start + task.duration);
      sol.placements.push_back(pl);
    }
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("solution", e.what());
  }
  sol.feasible = true;
  sol.lower_bound = makespan_lower_bound(in);
  return sol;
}

}  // namespace dress
