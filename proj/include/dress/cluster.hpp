#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "dress/resource.hpp"

namespace dress {

enum class LeaseState { kNew, kReserved, kAllocated, kAcquired, kRunning, kCompleted };
inline constexpr int kLeaseStateCount = 6;

std::string_view to_string(LeaseState s);

struct Server {
  ServerId id = 0;
  ResourceVector capacity;
  ResourceVector available;

  Server() = default;
  Server(ServerId id_, ResourceVector cap)
      : id(id_), capacity(cap), available(std::move(cap)) {}
};

// Componentwise demand <= server.available.
bool can_place(const ResourceVector& demand, const Server& server);

struct ContainerLease {
  TaskId task = 0;
  ServerId server = 0;
  ResourceVector demand;
  LeaseState state = LeaseState::kNew;
  std::array<std::optional<Tick>, kLeaseStateCount> stamps{};

  std::optional<Tick> stamp(LeaseState s) const {
    return stamps[static_cast<int>(s)];
  }
  // Demand is charged from Reserved through Running inclusive.
  bool charged() const {
    return state != LeaseState::kNew && state != LeaseState::kCompleted;
  }
};

// Servers plus the leases placed on them. Tot_R is the sum of component-0
// capacities and every lease occupies exactly one slot regardless of its
// vector demand. Since each demand has component 0 >= 1, vector feasibility
// implies a free slot exists on the server.
class ClusterState {
 public:
  explicit ClusterState(std::vector<ResourceVector> capacities);

  const std::vector<Server>& servers() const { return servers_; }
  const Server& server(ServerId id) const;
  const std::map<TaskId, ContainerLease>& leases() const { return leases_; }
  const ContainerLease* lease(TaskId task) const;

  std::size_t dimensions() const { return k_; }
  std::int64_t total_slots() const { return total_slots_; }  // Tot_R
  std::int64_t free_slots() const;                           // A_c
  std::int64_t occupied_slots() const { return occupied_slots_; }

  // Places a new lease in state Reserved. Throws an invariant error if the
  // demand does not fit or the task already holds a lease.
  const ContainerLease& reserve(TaskId task, const ResourceVector& demand,
                                ServerId server, Tick tick);

  // Moves a lease to the immediate successor state. Completed returns the
  // demand to the server. Throws a lifecycle error on any other transition.
  const ContainerLease& advance_lease(TaskId task, LeaseState next, Tick tick);

  // Full recomputation of the accounting invariants; throws on breach.
  void check_invariants() const;

 private:
  Server& mutable_server(ServerId id);

  std::size_t k_ = 0;
  std::vector<Server> servers_;
  std::map<TaskId, ContainerLease> leases_;
  std::int64_t total_slots_ = 0;
  std::int64_t occupied_slots_ = 0;
};

}  // namespace dress
