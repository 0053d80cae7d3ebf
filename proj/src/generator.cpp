#include "dress/generator.hpp"

#include <algorithm>
#include <cmath>

#include "dress/dress_scheduler.hpp"
#include "dress/error.hpp"
#include "json.hpp"

namespace dress {

using nlohmann::json;

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) std::swap(lo, hi);
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::uniform_real(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

namespace {

Error gen_error(const std::string& what) { return Error(ErrorKind::kGeneration, what); }

int small_cap(const GenSpec& spec) {
  // Same exact arithmetic as the classifier so the realized split matches.
  const std::int64_t tot = spec.servers * spec.server_capacity[0];
  const Ratio cap = ratio_from_double(spec.config.theta) * Ratio(tot);
  return static_cast<int>(cap.numerator() / cap.denominator());
}

PhaseSpec draw_phase(const GenSpec& spec, Rng& rng, int tasks) {
  PhaseSpec ph;
  ph.task_count = tasks;
  ph.base_duration = rng.uniform_int(spec.base_min, spec.base_max);
  std::vector<std::int64_t> demand(spec.server_capacity.size(), 1);
  if (demand.size() > 1) demand[1] = rng.uniform_int(spec.vcores_min, spec.vcores_max);
  ph.demand = ResourceVector(demand);
  ph.spread = rng.uniform_int(spec.spread_min, spec.spread_max);
  ph.stretch = spec.stretch;
  ph.fill = spec.fill_min == spec.fill_max ? spec.fill_min
                                           : rng.uniform_real(spec.fill_min, spec.fill_max);
  int heading = 0, trailing = 0;
  for (int q = 0; q < tasks; ++q) {
    if (rng.bernoulli(spec.heading_rate)) ++heading;
    if (rng.bernoulli(spec.trailing_rate)) ++trailing;
  }
  if (ph.base_duration < 2) heading = 0;
  heading = std::min(heading, tasks);
  trailing = std::min(trailing, tasks - heading);
  ph.heading = heading;
  ph.trailing = trailing;
  return ph;
}

}  // namespace

Generated generate(const GenSpec& spec, std::uint64_t seed) {
  if (spec.jobs < 1) throw gen_error("jobs must be >= 1");
  if (spec.servers < 1 || spec.server_capacity.size() < 1) {
    throw gen_error("need at least one server with k >= 1");
  }
  if (spec.min_phases < 1 || spec.max_phases < spec.min_phases) {
    throw gen_error("bad phase count range");
  }
  if (spec.base_min < 1 || spec.base_max < spec.base_min) throw gen_error("bad base range");
  if (spec.spread_min < 0 || spec.spread_max < spec.spread_min) {
    throw gen_error("bad spread range");
  }
  if (!(spec.small_fraction >= 0 && spec.small_fraction <= 1)) {
    throw gen_error("small_fraction must be in [0,1]");
  }
  ResourceVector unit_demand(std::vector<std::int64_t>(spec.server_capacity.size(), 1));
  if (spec.server_capacity.size() > 1) {
    std::vector<std::int64_t> d(spec.server_capacity.size(), 1);
    d[1] = spec.vcores_max;
    unit_demand = ResourceVector(d);
  }
  if (!unit_demand.fits_within(spec.server_capacity)) {
    throw gen_error("task demand exceeds every server capacity");
  }

  const std::int64_t tot = spec.servers * spec.server_capacity[0];
  const int cap_small = small_cap(spec);
  const int cap_large =
      spec.large_tasks_max > 0 ? spec.large_tasks_max : static_cast<int>(tot);
  const int n_small =
      static_cast<int>(std::llround(spec.small_fraction * spec.jobs));
  if (n_small > 0 && cap_small < 1) {
    throw gen_error("theta * Tot_R < 1: no job can be small");
  }
  if (n_small < spec.jobs && cap_large <= cap_small) {
    throw gen_error("large_tasks_max leaves no room for large jobs");
  }

  Rng rng(seed);
  std::vector<bool> is_small(spec.jobs, false);
  for (int i = 0; i < n_small; ++i) is_small[i] = true;
  rng.shuffle(is_small);

  Generated out;
  Scenario& s = out.scenario;
  s.k = spec.server_capacity.size();
  s.servers.assign(spec.servers, spec.server_capacity);
  s.config = spec.config;
  s.seed = seed;
  for (int i = 0; i < spec.jobs; ++i) {
    JobSpec job;
    job.id = i + 1;
    job.submit = static_cast<Tick>(i) * spec.submit_interval;
    const auto phases = rng.uniform_int(spec.min_phases, spec.max_phases);
    // One phase of a large job is forced above the threshold.
    const auto peak_phase = rng.uniform_int(0, phases - 1);
    for (std::int64_t p = 0; p < phases; ++p) {
      int tasks;
      if (is_small[i]) {
        tasks = static_cast<int>(rng.uniform_int(1, cap_small));
      } else if (p == peak_phase) {
        tasks = static_cast<int>(rng.uniform_int(cap_small + 1, cap_large));
      } else {
        tasks = static_cast<int>(rng.uniform_int(1, cap_large));
      }
      job.phases.push_back(draw_phase(spec, rng, tasks));
    }
    if (is_small[i]) out.small_jobs.push_back(job.id);
    s.jobs.push_back(std::move(job));
  }
  try {
    validate(s);
  } catch (const Error& e) {
    throw gen_error(e.what());
  }
  out.truth = ground_truth(s);
  return out;
}

std::vector<PhaseTruth> ground_truth(const Scenario& s) {
  std::vector<PhaseTruth> truth;
  for (const auto& job : s.jobs) {
    for (std::size_t p = 0; p < job.phases.size(); ++p) {
      const auto tasks = expand_phase(job.phases[p], job.id, static_cast<int>(p), 0);
      PhaseTruth t;
      t.job = job.id;
      t.phase = static_cast<int>(p);
      t.spread = job.phases[p].spread;
      t.earliest_finish = -1;
      for (const auto& task : tasks) {
        const Tick finish = task.start_offset + task.duration;
        t.release_schedule.push_back(finish);
        if (task.kind != TaskKind::kHeading &&
            (t.earliest_finish < 0 || finish < t.earliest_finish)) {
          t.earliest_finish = finish;
        }
      }
      std::sort(t.release_schedule.begin(), t.release_schedule.end());
      truth.push_back(std::move(t));
    }
  }
  return truth;
}

Scenario preset(const std::string& name, std::uint64_t seed) {
  if (name == "mixed") return generate(GenSpec{}, seed).scenario;
  Scenario s;
  s.k = 2;
  s.seed = seed;
  s.servers.assign(4, ResourceVector{8, 8});
  auto phase = [](int tasks, Tick base, Tick spread, int heading, double fill) {
    PhaseSpec ph;
    ph.task_count = tasks;
    ph.base_duration = base;
    ph.demand = ResourceVector{1, 1};
    ph.spread = spread;
    ph.heading = heading;
    ph.fill = fill;
    return ph;
  };
  if (name == "wordcount") {
    s.jobs.push_back({1, 0, {phase(20, 30, 3, 0, 0.25), phase(4, 12, 1, 0, 0.25)}});
  } else if (name == "pagerank") {
    // Stage-1 Reduce: 8 tasks at the base length and one heading task that
    // processes a nearly empty final block.
    s.jobs.push_back({1, 0,
                      {phase(16, 25, 3, 0, 0.25), phase(9, 18, 2, 1, 0.069),
                       phase(16, 22, 3, 0, 0.25), phase(9, 15, 2, 0, 0.25)}});
  } else {
    throw config_error("unknown preset '" + name + "'");
  }
  validate(s);
  return s;
}

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

GenSpec gen_spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error("$", e.what());
  }
  if (!j.is_object()) throw parse_error("$", "expected an object");
  static const char* kKnown[] = {
      "jobs", "small_fraction", "servers", "server_capacity", "submit_interval",
      "min_phases", "max_phases", "large_tasks_max", "base_min", "base_max",
      "vcores_min", "vcores_max", "spread_min", "spread_max", "heading_rate",
      "trailing_rate", "fill_min", "fill_max", "stretch", "config"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw parse_error(key, "unknown field");
    }
  }
  GenSpec g;
  try {
    read_opt(j, "jobs", g.jobs);
    read_opt(j, "small_fraction", g.small_fraction);
    read_opt(j, "servers", g.servers);
    if (j.contains("server_capacity")) {
      g.server_capacity = ResourceVector(j["server_capacity"].get<std::vector<std::int64_t>>());
    }
    read_opt(j, "submit_interval", g.submit_interval);
    read_opt(j, "min_phases", g.min_phases);
    read_opt(j, "max_phases", g.max_phases);
    read_opt(j, "large_tasks_max", g.large_tasks_max);
    read_opt(j, "base_min", g.base_min);
    read_opt(j, "base_max", g.base_max);
    read_opt(j, "vcores_min", g.vcores_min);
    read_opt(j, "vcores_max", g.vcores_max);
    read_opt(j, "spread_min", g.spread_min);
    read_opt(j, "spread_max", g.spread_max);
    read_opt(j, "heading_rate", g.heading_rate);
    read_opt(j, "trailing_rate", g.trailing_rate);
    read_opt(j, "fill_min", g.fill_min);
    read_opt(j, "fill_max", g.fill_max);
    read_opt(j, "stretch", g.stretch);
    if (j.contains("config")) {
      const auto& c = j["config"];
      read_opt(c, "ts", g.config.ts);
      read_opt(c, "te", g.config.te);
      read_opt(c, "pw", g.config.pw);
      read_opt(c, "delta0", g.config.delta0);
      read_opt(c, "theta", g.config.theta);
      read_opt(c, "delta_min", g.config.delta_min);
      read_opt(c, "delta_max", g.config.delta_max);
      if (c.contains("delays")) g.config.delays = c["delays"].get<std::array<Tick, 3>>();
      if (c.contains("classify_on")) {
        g.config.classify_on = c["classify_on"] == "free"
                                   ? SchedulerConfig::ClassifyBasis::kFree
                                   : SchedulerConfig::ClassifyBasis::kTotal;
      }
    }
  } catch (const json::exception& e) {
    throw parse_error("$", e.what());
  }
  return g;
}

std::string gen_spec_to_json(const GenSpec& g) {
  json j = {{"jobs", g.jobs},
            {"small_fraction", g.small_fraction},
            {"servers", g.servers},
            {"server_capacity", g.server_capacity.amounts()},
            {"submit_interval", g.submit_interval},
            {"min_phases", g.min_phases},
            {"max_phases", g.max_phases},
            {"large_tasks_max", g.large_tasks_max},
            {"base_min", g.base_min},
            {"base_max", g.base_max},
            {"vcores_min", g.vcores_min},
            {"vcores_max", g.vcores_max},
            {"spread_min", g.spread_min},
            {"spread_max", g.spread_max},
            {"heading_rate", g.heading_rate},
            {"trailing_rate", g.trailing_rate},
            {"fill_min", g.fill_min},
            {"fill_max", g.fill_max},
            {"stretch", g.stretch},
            {"config",
             {{"ts", g.config.ts},
              {"te", g.config.te},
              {"pw", g.config.pw},
              {"delta0", g.config.delta0},
              {"theta", g.config.theta},
              {"delta_min", g.config.delta_min},
              {"delta_max", g.config.delta_max},
              {"delays", g.config.delays},
              {"classify_on", to_string(g.config.classify_on)}}}};
  return j.dump(2) + "\n";
}

}  // namespace dress
