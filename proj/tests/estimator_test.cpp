#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "dress/estimator.hpp"

using namespace dress;

namespace {

struct Event {
  TaskId task;
  Tick start;
  Tick finish;
};

// Feeds start and completion events tick by tick, then closes each tick.
Estimator replay(const std::vector<Event>& events, EstimatorConfig config, Tick until) {
  Estimator est(config);
  for (Tick t = 0; t <= until; ++t) {
    for (const auto& e : events) {
      if (e.finish == t) est.observe_completion(1, e.task, t);
    }
    for (const auto& e : events) {
      if (e.start == t) est.observe_start(1, e.task, t);
    }
    est.end_tick(t);
  }
  return est;
}

std::vector<std::string> golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in) << "missing golden file " << name;
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

PhaseObservation observed(Tick gamma, Tick spread, std::int64_t c) {
  PhaseObservation obs;
  obs.release_onset = gamma;
  obs.spread = spread;
  obs.containers = c;
  return obs;
}

}  // namespace

TEST(StartDetection, RampOfTwentyTasksOverFourTicks) {
  std::vector<Event> events;
  for (TaskId i = 0; i < 20; ++i) events.push_back({i, i / 5, i / 5 + 20});
  const auto est = replay(events, {5, 5, 10}, 40);
  EXPECT_EQ(est.transcript(), golden("estimator_ramp.txt"));
  const auto& obs = est.job(1)->phases[0];
  EXPECT_EQ(obs.spread, 3);
  EXPECT_EQ(obs.first_start, 0);
  EXPECT_EQ(obs.last_start, 3);
  EXPECT_EQ(obs.release_onset, 20);
  EXPECT_EQ(est.job(1)->beta, 23);
}

TEST(StartDetection, SingleTaskNeverCrossesTheThreshold) {
  const auto est = replay({{0, 0, 5}}, {5, 5, 10}, 20);
  EXPECT_EQ(est.transcript(), golden("estimator_single.txt"));
  const auto& obs = est.job(1)->phases[0];
  EXPECT_FALSE(obs.started);
  EXPECT_FALSE(obs.profiled());
  EXPECT_TRUE(obs.unprofiled);
}

TEST(StartDetection, NoEventsLeaveNoState) {
  Estimator est;
  for (Tick t = 0; t < 30; ++t) est.end_tick(t);
  EXPECT_TRUE(est.jobs().empty());
  EXPECT_EQ(est.job(1), nullptr);
  EXPECT_TRUE(est.transcript().empty());
}

TEST(ReleaseDetection, EarlyHeadingFinishIsFiltered) {
  std::vector<Event> events;
  const Tick finishes[] = {20, 20, 21, 21, 22, 22, 23, 23};
  for (TaskId i = 0; i < 8; ++i) events.push_back({i, 0, finishes[i]});
  events.push_back({8, 0, 5});
  const auto est = replay(events, {5, 5, 10}, 40);
  EXPECT_EQ(est.transcript(), golden("estimator_heading.txt"));
  EXPECT_EQ(est.job(1)->phases[0].release_onset, 20);
}

TEST(ReleaseDetection, TrailingTaskMovesToTheNextPhase) {
  const std::vector<Event> events{{0, 0, 10}, {1, 0, 10}, {2, 1, 11}, {3, 2, 12}, {4, 2, 30}};
  const auto est = replay(events, {2, 2, 3}, 40);
  EXPECT_EQ(est.transcript(), golden("estimator_trailing.txt"));
  const auto& job = *est.job(1);
  ASSERT_EQ(job.phases.size(), 2u);
  EXPECT_EQ(job.phases[0].containers, 4);
  EXPECT_EQ(job.phases[1].containers, 1);
  EXPECT_EQ(job.phases[1].released, 1);
}

TEST(ReleaseDetection, LastCompletionSetsBeta) {
  const auto est = replay({{0, 2, 9}, {1, 3, 12}}, {5, 5, 10}, 20);
  EXPECT_EQ(est.job(1)->alpha, 2);
  EXPECT_EQ(est.job(1)->beta, 12);
}

TEST(ReleaseDetection, UnknownCompletionCountsAWarning) {
  Estimator est;
  est.observe_completion(3, 99, 4);
  est.observe_start(1, 1, 0);
  est.observe_completion(2, 1, 4);  // wrong job
  EXPECT_EQ(est.warnings(), 2);
}

TEST(PhaseRelease, LinearRampBetweenOnsetAndSpread) {
  const auto obs = observed(10, 4, 8);
  EXPECT_EQ(phase_release(obs, 5), 0);
  EXPECT_EQ(phase_release(obs, 10), 0);
  EXPECT_EQ(phase_release(obs, 12), 4);
  EXPECT_EQ(phase_release(obs, 13), 6);
  EXPECT_EQ(phase_release(obs, 14), 8);
  EXPECT_EQ(phase_release(obs, 100), 8);
}

TEST(PhaseRelease, ZeroSpreadIsAStep) {
  const auto obs = observed(10, 0, 5);
  EXPECT_EQ(phase_release(obs, 9), 0);
  EXPECT_EQ(phase_release(obs, 10), 5);
}

TEST(PhaseRelease, UnknownOnsetForecastsNothing) {
  PhaseObservation obs;
  obs.containers = 5;
  obs.spread = 2;
  EXPECT_EQ(phase_release(obs, 50), 0);
}

TEST(JobRelease, SumsPhasesWhileRunning) {
  JobEstimate job;
  job.alpha = 0;
  job.phases = {observed(10, 4, 8), observed(5, 0, 3)};
  EXPECT_EQ(job_release(job, 12), 4 + 3);
  JobEstimate idle;
  EXPECT_EQ(job_release(idle, 12), 0);
  job.beta = 11;
  EXPECT_EQ(job_release(job, 12), 0);
}

TEST(Availability, IdleClusterIsEverything) {
  Estimator est;
  const auto a = system_availability(est, 4, 36, [](JobId) { return Category::kLarge; }, 1);
  EXPECT_EQ(a.total, 40);
  EXPECT_EQ(a.small, 4);
}

TEST(Availability, AddsForecastReleasesByCategory) {
  // Four tasks start at 0 and all finish at 8: gamma 8, spread 0.
  std::vector<Event> events;
  for (TaskId i = 0; i < 4; ++i) events.push_back({i, 0, i == 3 ? 9 : 8});
  Estimator est({2, 2, 3});
  for (Tick t = 0; t <= 8; ++t) {
    for (const auto& e : events) {
      if (e.finish == t) est.observe_completion(1, e.task, t);
      if (e.start == t) est.observe_start(1, e.task, t);
    }
    est.end_tick(t);
  }
  // By t=8 three tasks are back (gamma=8, step of c=4); the straggler is
  // the one container still forecast.
  EXPECT_EQ(est.expected_release(1, 9), 1);
  const auto small = system_availability(est, 3, 0, [](JobId) { return Category::kSmall; }, 9);
  EXPECT_EQ(small.small, 4);
  EXPECT_EQ(small.release_sd, 1);
  EXPECT_EQ(small.total, 4);
}
