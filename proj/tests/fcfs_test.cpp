#include <gtest/gtest.h>

#include "dress/dress_scheduler.hpp"
#include "dress/engine.hpp"
#include "dress/fig1.hpp"
#include "support.hpp"

using namespace dress;
using dress::testing::job;
using dress::testing::phase;
using dress::testing::scenario;

namespace {

std::vector<TaskSpec> tasks_of(int n, TaskId first) {
  std::vector<TaskSpec> out;
  for (int i = 0; i < n; ++i) {
    TaskSpec t;
    t.id = first + i;
    t.demand = ResourceVector{1};
    out.push_back(t);
  }
  return out;
}

PendingJob pending(JobId id, const std::vector<TaskSpec>& tasks, int granted = 0) {
  PendingJob pj;
  pj.job = id;
  pj.phase_tasks = static_cast<int>(tasks.size()) + granted;
  pj.granted_in_phase = granted;
  for (const auto& t : tasks) pj.ungranted.push_back(&t);
  return pj;
}

std::vector<Tick> waits(const ScheduleTrace& trace) {
  std::vector<Tick> w;
  for (const auto& j : trace.jobs) w.push_back(j.alpha - j.submit);
  return w;
}

}  // namespace

TEST(GrantFifo, EmptyQueueGrantsNothing) {
  ClusterState c({ResourceVector{4}});
  PlacementPlan plan(c);
  std::int64_t free = 4;
  std::vector<Grant> out;
  grant_fifo({}, plan, free, 4, out);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(free, 4);
}

TEST(GrantFifo, HeadAndSecondBothFit) {
  ClusterState c({ResourceVector{6}});
  const auto a = tasks_of(3, 0), b = tasks_of(2, 10);
  const auto pa = pending(1, a), pb = pending(2, b);
  std::vector<const PendingJob*> q{&pa, &pb};
  PlacementPlan plan(c);
  std::int64_t free = 6;
  std::vector<Grant> out;
  grant_fifo(q, plan, free, 6, out);
  EXPECT_EQ(out.size(), 5u);
  EXPECT_EQ(free, 1);
}

TEST(GrantFifo, HeadOfLineBlocks) {
  ClusterState c({ResourceVector{4}});
  const auto a = tasks_of(5, 0), b = tasks_of(1, 10);
  const auto pa = pending(1, a), pb = pending(2, b);
  std::vector<const PendingJob*> q{&pa, &pb};
  PlacementPlan plan(c);
  std::int64_t free = 3;  // the head's wave is capped at 4 but only 3 free
  std::vector<Grant> out;
  grant_fifo(q, plan, free, 4, out);
  EXPECT_TRUE(out.empty());
}

TEST(GrantFifo, OversizedWaveAssemblesInRounds) {
  ClusterState c({ResourceVector{4}});
  const auto a = tasks_of(6, 0);
  const auto pa = pending(1, a);
  std::vector<const PendingJob*> q{&pa};
  PlacementPlan plan(c);
  std::int64_t free = 4;
  std::vector<Grant> out;
  grant_fifo(q, plan, free, 4, out);
  EXPECT_EQ(out.size(), 4u);
  // Once admitted, the job takes whatever is free.
  const auto rest = tasks_of(2, 4);
  const auto again = pending(1, rest, 4);
  std::vector<const PendingJob*> q2{&again};
  PlacementPlan plan2(c);
  std::int64_t one = 1;
  out.clear();
  grant_fifo(q2, plan2, one, 4, out);
  EXPECT_EQ(out.size(), 1u);
}

TEST(GrantFifo, PlacementIsFirstFitByServer) {
  ClusterState c({ResourceVector{1}, ResourceVector{2}});
  const auto a = tasks_of(3, 0);
  const auto pa = pending(1, a);
  std::vector<const PendingJob*> q{&pa};
  PlacementPlan plan(c);
  std::int64_t free = 3;
  std::vector<Grant> out;
  grant_fifo(q, plan, free, 3, out);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].server, 0);
  EXPECT_EQ(out[1].server, 1);
  EXPECT_EQ(out[2].server, 1);
}

TEST(Fcfs, MotivatingExample) {
  const auto s = fig1_scenario({{3, 10}, {4, 20}, {3, 1}, {1, 10}}, 6);
  FcfsScheduler fcfs(s);
  const auto trace = run(s, fcfs);
  EXPECT_EQ(trace.makespan, 40);
  EXPECT_EQ(waits(trace), (std::vector<Tick>{0, 9, 28, 27}));
}

TEST(Fcfs, JobsRunInSubmissionOrder) {
  auto s = scenario({4}, {job(2, 0, {phase(4, 5)}), job(1, 0, {phase(4, 5)}),
                          job(3, 1, {phase(1, 5)})});
  FcfsScheduler fcfs(s);
  const auto trace = run(s, fcfs);
  // Same submit tick: lower id first.
  EXPECT_EQ(trace.jobs[1].alpha, 0);   // job 1
  EXPECT_EQ(trace.jobs[0].alpha, 5);   // job 2
  EXPECT_EQ(trace.jobs[2].alpha, 10);  // job 3 waits behind job 2
}
