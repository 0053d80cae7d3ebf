#include "dress/cluster.hpp"

#include <string>
#include <utility>

#include "dress/error.hpp"

namespace dress {

std::string_view to_string(LeaseState s) {
  switch (s) {
    case LeaseState::kNew: return "New";
    case LeaseState::kReserved: return "Reserved";
    case LeaseState::kAllocated: return "Allocated";
    case LeaseState::kAcquired: return "Acquired";
    case LeaseState::kRunning: return "Running";
    case LeaseState::kCompleted: return "Completed";
  }
  return "?";
}

bool can_place(const ResourceVector& demand, const Server& server) {
  return demand.fits_within(server.available);
}

ClusterState::ClusterState(std::vector<ResourceVector> capacities) {
  if (capacities.empty()) throw config_error("cluster needs at least one server");
  k_ = capacities.front().size();
  if (k_ == 0) throw config_error("resource vectors need k >= 1");
  ServerId id = 0;
  for (auto& cap : capacities) {
    if (cap.size() != k_) throw config_error("server capacity dimension mismatch");
    total_slots_ += cap[0];
    servers_.emplace_back(id++, std::move(cap));
  }
}

const Server& ClusterState::server(ServerId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= servers_.size()) {
    throw invariant_error("unknown server " + std::to_string(id));
  }
  return servers_[id];
}

Server& ClusterState::mutable_server(ServerId id) {
  return const_cast<Server&>(std::as_const(*this).server(id));
}

const ContainerLease* ClusterState::lease(TaskId task) const {
  auto it = leases_.find(task);
  return it == leases_.end() ? nullptr : &it->second;
}

std::int64_t ClusterState::free_slots() const {
  return total_slots_ - occupied_slots_;
}

const ContainerLease& ClusterState::reserve(TaskId task,
                                            const ResourceVector& demand,
                                            ServerId server_id, Tick tick) {
  if (demand.size() != k_) throw config_error("demand dimension mismatch");
  if (demand[0] < 1) {
    throw config_error("task " + std::to_string(task) +
                       " must demand at least one unit of resource 0");
  }
  if (leases_.count(task)) {
    throw invariant_error("task " + std::to_string(task) + " already holds a lease");
  }
  Server& srv = mutable_server(server_id);
  if (!can_place(demand, srv)) {
    throw invariant_error("tick " + std::to_string(tick) + ": task " +
                          std::to_string(task) + " demand " + demand.to_string() +
                          " does not fit server " + std::to_string(server_id) +
                          " available " + srv.available.to_string());
  }
  srv.available -= demand;
  ++occupied_slots_;
  ContainerLease lease;
  lease.task = task;
  lease.server = server_id;
  lease.demand = demand;
  lease.state = LeaseState::kReserved;
  lease.stamps[static_cast<int>(LeaseState::kReserved)] = tick;
  return leases_.emplace(task, std::move(lease)).first->second;
}

const ContainerLease& ClusterState::advance_lease(TaskId task, LeaseState next,
                                                  Tick tick) {
  auto it = leases_.find(task);
  if (it == leases_.end()) {
    throw Error(ErrorKind::kLifecycle, "no lease for task " + std::to_string(task));
  }
  ContainerLease& lease = it->second;
  if (static_cast<int>(next) != static_cast<int>(lease.state) + 1) {
    throw Error(ErrorKind::kLifecycle,
                "task " + std::to_string(task) + ": illegal transition " +
                    std::string(to_string(lease.state)) + " -> " +
                    std::string(to_string(next)));
  }
  auto prev = lease.stamp(lease.state);
  if (prev && tick < *prev) {
    throw Error(ErrorKind::kLifecycle, "task " + std::to_string(task) +
                                           ": transition back in time");
  }
  lease.state = next;
  lease.stamps[static_cast<int>(next)] = tick;
  if (next == LeaseState::kCompleted) {
    mutable_server(lease.server).available += lease.demand;
    --occupied_slots_;
  }
  return lease;
}

void ClusterState::check_invariants() const {
  std::vector<ResourceVector> used(servers_.size(), ResourceVector::zeros(k_));
  std::int64_t charged = 0;
  for (const auto& [task, lease] : leases_) {
    if (!lease.charged()) continue;
    used[lease.server] += lease.demand;
    ++charged;
  }
  for (const auto& srv : servers_) {
    if (!srv.available.fits_within(srv.capacity) ||
        used[srv.id] + srv.available != srv.capacity) {
      throw invariant_error("server " + std::to_string(srv.id) +
                            " accounting broken: available " +
                            srv.available.to_string() + ", used " +
                            used[srv.id].to_string());
    }
  }
  if (charged != occupied_slots_ || free_slots() + charged != total_slots_) {
    throw invariant_error("slot conservation broken");
  }
}

}  // namespace dress
