#include <gtest/gtest.h>

#include "dress/cluster.hpp"
#include "dress/error.hpp"

using namespace dress;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

}  // namespace

TEST(CanPlace, DominatedDemandFits) {
  Server s(0, ResourceVector{4, 2});
  EXPECT_TRUE(can_place(ResourceVector{2, 1}, s));
  EXPECT_TRUE(can_place(ResourceVector{4, 2}, s));
  EXPECT_FALSE(can_place(ResourceVector{5, 1}, s));
  EXPECT_FALSE(can_place(ResourceVector{1, 3}, s));
}

TEST(CanPlace, ZeroDemandAlwaysFits) {
  Server s(0, ResourceVector{0, 0});
  EXPECT_TRUE(can_place(ResourceVector{0, 0}, s));
}

TEST(CanPlace, DimensionMismatchIsConfigError) {
  Server s(0, ResourceVector{4, 2});
  EXPECT_EQ(kind_of([&] { (void)can_place(ResourceVector{1}, s); }), ErrorKind::kConfig);
}

TEST(ResourceVectorTest, NegativeAmountsRejected) {
  EXPECT_THROW(ResourceVector({-1, 0}), Error);
  ResourceVector a{1, 1};
  EXPECT_EQ(kind_of([&] { a -= ResourceVector{2, 0}; }), ErrorKind::kInvariant);
  EXPECT_EQ((ResourceVector{3, 4} - ResourceVector{1, 2}), (ResourceVector{2, 2}));
  EXPECT_EQ(ResourceVector({3, 4}).to_string(), "(3,4)");
}

TEST(Reserve, FullOccupancyLeavesNothing) {
  ClusterState c({ResourceVector{8, 4}});
  c.reserve(1, ResourceVector{8, 4}, 0, 0);
  EXPECT_EQ(c.server(0).available, (ResourceVector{0, 0}));
  c.check_invariants();
}

TEST(Reserve, SequentialReservesAdd) {
  ClusterState c({ResourceVector{8, 4}});
  c.reserve(1, ResourceVector{4, 2}, 0, 0);
  c.reserve(2, ResourceVector{4, 2}, 0, 0);
  EXPECT_EQ(c.server(0).available, (ResourceVector{0, 0}));
  EXPECT_EQ(kind_of([&] { c.reserve(3, ResourceVector{1, 1}, 0, 0); }), ErrorKind::kInvariant);
  c.check_invariants();
}

TEST(Reserve, EachLeaseTakesOneSlot) {
  ClusterState c({ResourceVector{8, 4}, ResourceVector{2, 2}});
  EXPECT_EQ(c.total_slots(), 10);
  c.reserve(1, ResourceVector{4, 2}, 0, 0);
  EXPECT_EQ(c.free_slots(), 9);
  EXPECT_EQ(c.occupied_slots(), 1);
}

TEST(Reserve, RejectsDuplicatesAndSlotlessDemand) {
  ClusterState c({ResourceVector{4}});
  c.reserve(1, ResourceVector{1}, 0, 0);
  EXPECT_EQ(kind_of([&] { c.reserve(1, ResourceVector{1}, 0, 0); }), ErrorKind::kInvariant);
  EXPECT_EQ(kind_of([&] { c.reserve(2, ResourceVector{0}, 0, 0); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([&] { c.reserve(3, ResourceVector{1}, 7, 0); }), ErrorKind::kInvariant);
}

TEST(Lease, StampsEachTransition) {
  ClusterState c({ResourceVector{2}});
  c.reserve(1, ResourceVector{1}, 0, 3);
  const auto& l = c.advance_lease(1, LeaseState::kAllocated, 5);
  EXPECT_EQ(l.stamp(LeaseState::kReserved), 3);
  EXPECT_EQ(l.stamp(LeaseState::kAllocated), 5);
  EXPECT_FALSE(l.stamp(LeaseState::kRunning).has_value());
}

TEST(Lease, CompletionReturnsCapacity) {
  ClusterState c({ResourceVector{8, 4}});
  c.reserve(1, ResourceVector{3, 1}, 0, 0);
  c.advance_lease(1, LeaseState::kAllocated, 1);
  c.advance_lease(1, LeaseState::kAcquired, 2);
  c.advance_lease(1, LeaseState::kRunning, 3);
  EXPECT_EQ(c.server(0).available, (ResourceVector{5, 3}));
  c.advance_lease(1, LeaseState::kCompleted, 9);
  EXPECT_EQ(c.server(0).available, (ResourceVector{8, 4}));
  EXPECT_EQ(c.free_slots(), 8);
  c.check_invariants();
}

TEST(Lease, SkippingAStateIsALifecycleError) {
  ClusterState c({ResourceVector{2}});
  c.reserve(1, ResourceVector{1}, 0, 0);
  EXPECT_EQ(kind_of([&] { c.advance_lease(1, LeaseState::kRunning, 1); }),
            ErrorKind::kLifecycle);
  EXPECT_EQ(kind_of([&] { c.advance_lease(1, LeaseState::kReserved, 1); }),
            ErrorKind::kLifecycle);
  EXPECT_EQ(kind_of([&] { c.advance_lease(42, LeaseState::kAllocated, 1); }),
            ErrorKind::kLifecycle);
}

TEST(Lease, TimestampsNeverDecrease) {
  ClusterState c({ResourceVector{2}});
  c.reserve(1, ResourceVector{1}, 0, 4);
  EXPECT_EQ(kind_of([&] { c.advance_lease(1, LeaseState::kAllocated, 3); }),
            ErrorKind::kLifecycle);
  c.advance_lease(1, LeaseState::kAllocated, 4);  // zero delay is allowed
}

TEST(Cluster, RejectsMixedDimensions) {
  EXPECT_EQ(kind_of([] { ClusterState c({ResourceVector{1, 1}, ResourceVector{1}}); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { ClusterState c({}); }), ErrorKind::kConfig);
}
