#include <gtest/gtest.h>

#include <map>

#include "dress/engine.hpp"
#include "dress/feasibility.hpp"
#include "dress/generator.hpp"
#include "dress/metrics.hpp"
#include "dress/scenario_io.hpp"
#include "dress/scheduler.hpp"
#include "dress/trace_io.hpp"

using namespace dress;

namespace {

GenSpec random_spec(Rng& rng) {
  GenSpec spec;
  spec.jobs = static_cast<int>(rng.uniform_int(2, 10));
  spec.small_fraction = rng.uniform_real(0.1, 0.6);
  spec.servers = static_cast<int>(rng.uniform_int(2, 4));
  spec.server_capacity = ResourceVector{rng.uniform_int(5, 12), rng.uniform_int(4, 16)};
  spec.submit_interval = rng.uniform_int(0, 4);
  spec.max_phases = static_cast<int>(rng.uniform_int(1, 3));
  spec.base_min = rng.uniform_int(2, 6);
  spec.base_max = spec.base_min + rng.uniform_int(0, 10);
  spec.vcores_max = rng.uniform_int(1, 2);
  spec.spread_max = rng.uniform_int(0, 3);
  spec.heading_rate = rng.uniform_real(0.0, 0.2);
  spec.trailing_rate = rng.uniform_real(0.0, 0.2);
  spec.config.delays = {rng.uniform_int(0, 2), rng.uniform_int(0, 2), rng.uniform_int(0, 2)};
  spec.config.pw = static_cast<int>(rng.uniform_int(1, 4));
  return spec;
}

struct Case {
  std::uint64_t seed;
  Scenario scenario;
};

const std::vector<Case>& corpus() {
  static const std::vector<Case> cases = [] {
    std::vector<Case> out;
    Rng rng(31337);
    for (std::uint64_t seed = 1; out.size() < 40; ++seed) {
      out.push_back({seed, generate(random_spec(rng), seed).scenario});
    }
    return out;
  }();
  return cases;
}

class AllSchedulers : public ::testing::TestWithParam<const char*> {};

}  // namespace

TEST_P(AllSchedulers, TracesSatisfyInvariants) {
  const std::string name = GetParam();
  for (const auto& c : corpus()) {
    SCOPED_TRACE("seed " + std::to_string(c.seed));
    auto sched = make_scheduler(name, c.scenario);
    const auto trace = run(c.scenario, *sched);
    const auto tasks = expand_tasks(c.scenario);
    ASSERT_EQ(trace.tasks.size(), tasks.size());

    std::map<JobId, Tick> submit;
    for (const auto& j : c.scenario.jobs) submit[j.id] = j.submit;
    std::map<std::pair<JobId, int>, Tick> phase_end, phase_first_grant;
    Tick makespan = 0;
    for (const auto& r : trace.tasks) {
      EXPECT_GE(r.grant, submit[r.job]);
      EXPECT_GE(r.start, r.grant);
      EXPECT_EQ(r.completion, r.start + r.duration);
      makespan = std::max(makespan, r.completion);
      auto& end = phase_end[{r.job, r.phase}];
      end = std::max(end, r.completion);
      auto [it, fresh] = phase_first_grant.try_emplace({r.job, r.phase}, r.grant);
      if (!fresh) it->second = std::min(it->second, r.grant);
    }
    EXPECT_EQ(trace.makespan, makespan);
    for (const auto& [key, grant] : phase_first_grant) {
      if (key.second == 0) continue;
      EXPECT_GE(grant, (phase_end[{key.first, key.second - 1}])) << "job " << key.first;
    }

    for (const auto& v : check_feasibility(trace)) {
      EXPECT_GE(v.constraint, 3) << v.detail;
      EXPECT_TRUE(name == "dress" && v.borrow_tick) << v.detail;
    }
    for (const auto& rec : trace.ticks) {
      if (!rec.delta) continue;
      EXPECT_EQ(rec.quota_sd + rec.quota_ld, trace.total_slots);
      EXPECT_GE(*rec.delta, c.scenario.config.delta_min - 1e-12);
      EXPECT_LE(*rec.delta, c.scenario.config.delta_max + 1e-12);
      if (!rec.borrow) {
        EXPECT_LE(rec.occupied_sd, rec.quota_sd) << "tick " << rec.tick;
        EXPECT_LE(rec.occupied_ld, rec.quota_ld) << "tick " << rec.tick;
      }
    }
  }
}

TEST_P(AllSchedulers, RunsAreDeterministicAndRoundTrip) {
  for (const auto& c : corpus()) {
    SCOPED_TRACE("seed " + std::to_string(c.seed));
    auto a = make_scheduler(GetParam(), c.scenario);
    auto b = make_scheduler(GetParam(), c.scenario);
    const auto text = trace_to_jsonl(run(c.scenario, *a));
    EXPECT_EQ(text, trace_to_jsonl(run(c.scenario, *b)));
    const auto back = trace_from_jsonl(text);
    EXPECT_EQ(trace_to_jsonl(back), text);
    EXPECT_EQ(summary_csv_row(summarize(back)),
              summary_csv_row(summarize(trace_from_jsonl(text))));
  }
}

INSTANTIATE_TEST_SUITE_P(Schedulers, AllSchedulers, ::testing::Values("fcfs", "dress", "static"));

TEST(ScenarioProperty, JsonRoundTrip) {
  for (const auto& c : corpus()) {
    const auto text = scenario_to_json(c.scenario);
    EXPECT_EQ(scenario_from_json(text), c.scenario);
  }
}
