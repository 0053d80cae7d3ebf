#include <gtest/gtest.h>

#include <algorithm>

#include "dress/engine.hpp"
#include "dress/feasibility.hpp"
#include "dress/generator.hpp"
#include "dress/scheduler.hpp"

using namespace dress;

namespace {

const std::vector<ResourceVector> kServers{ResourceVector{2}, ResourceVector{2}};

ScheduledTask st(TaskId id, ServerId server, Tick begin, Tick end,
                 Category pool = Category::kNone) {
  return {id, server, begin, end, ResourceVector{1}, pool};
}

}  // namespace

TEST(CheckSchedule, CleanScheduleHasNoViolations) {
  std::vector<ScheduledTask> s{st(0, 0, 0, 3), st(1, 0, 0, 3), st(2, 1, 1, 2)};
  std::vector<TaskId> ids{0, 1, 2};
  EXPECT_TRUE(check_schedule(s, kServers, ids, {}).empty());
}

TEST(CheckSchedule, DoubleAssignmentNamesTheTask) {
  std::vector<ScheduledTask> s{st(0, 0, 0, 3), st(0, 1, 0, 3)};
  std::vector<TaskId> ids{0};
  const auto v = check_schedule(s, kServers, ids, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, 1);
  EXPECT_EQ(v[0].task, 0);
}

TEST(CheckSchedule, MissingTaskIsReported) {
  std::vector<ScheduledTask> s{st(0, 0, 0, 3)};
  std::vector<TaskId> ids{0, 5};
  const auto v = check_schedule(s, kServers, ids, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, 1);
  EXPECT_EQ(v[0].task, 5);
}

TEST(CheckSchedule, CapacityOverflowPerTick) {
  std::vector<ScheduledTask> s{st(0, 0, 0, 2), st(1, 0, 1, 3), st(2, 0, 1, 2)};
  std::vector<TaskId> ids{0, 1, 2};
  const auto v = check_schedule(s, kServers, ids, {});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, 2);
  EXPECT_EQ(v[0].tick, 1);
  EXPECT_EQ(v[0].server, 0);
}

TEST(CheckSchedule, ReserveLimitsAndBorrowFlags) {
  std::vector<ScheduledTask> s{st(0, 0, 0, 2, Category::kSmall), st(1, 1, 0, 2, Category::kSmall),
                               st(2, 0, 0, 2, Category::kLarge)};
  std::vector<TaskId> ids{0, 1, 2};
  // SD limit 1 at tick 0 (borrow), 3 at tick 1: LD limit then 1.
  auto limit = [](Tick t) -> std::optional<std::int64_t> { return t == 0 ? 1 : 3; };
  const auto v = check_schedule(s, kServers, ids, limit, [](Tick t) { return t == 0; });
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, 3);
  EXPECT_EQ(v[0].tick, 0);
  EXPECT_TRUE(v[0].borrow_tick);
  const auto tight = check_schedule(s, kServers, ids, [](Tick) { return 4; });
  ASSERT_EQ(tight.size(), 2u);
  EXPECT_EQ(tight[0].constraint, 4);
}

TEST(CheckFeasibility, ViolationsSerializeToJson) {
  std::vector<Violation> v{{2, 4, -1, 1, false, "usage [3] exceeds [2]"}};
  const auto text = violations_to_json(v);
  EXPECT_NE(text.find("\"constraint\": 2"), std::string::npos);
  EXPECT_NE(text.find("\"server\": 1"), std::string::npos);
}

TEST(CheckFeasibility, ReserveBreachesOnlyAtBorrowTicks) {
  // Congested mixed workloads drive the merge branch; every reserve breach
  // in the resulting traces must sit on a tick the scheduler flagged.
  int borrow_ticks = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto s = preset("mixed", seed);
    auto sched = make_scheduler("dress", s);
    const auto trace = run(s, *sched);
    borrow_ticks += static_cast<int>(std::count_if(
        trace.ticks.begin(), trace.ticks.end(), [](const TickRecord& r) { return r.borrow; }));
    for (const auto& v : check_feasibility(trace)) {
      EXPECT_GE(v.constraint, 3) << "seed " << seed << " " << v.detail;
      EXPECT_TRUE(v.borrow_tick) << "seed " << seed << " tick " << v.tick << " " << v.detail;
    }
  }
  EXPECT_GT(borrow_ticks, 0);
}

TEST(CheckFeasibility, BaselinesHaveNoReserveChecksForFcfs) {
  const auto s = preset("wordcount", 1);
  auto sched = make_scheduler("fcfs", s);
  const auto trace = run(s, *sched);
  for (const auto& r : trace.ticks) EXPECT_FALSE(r.delta.has_value());
  EXPECT_TRUE(check_feasibility(trace).empty());
}
