#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dress/resource.hpp"

namespace dress {

enum class TaskKind { kNormal, kHeading, kTrailing };
std::string_view to_string(TaskKind kind);

struct PhaseSpec {
  int task_count = 1;
  Tick base_duration = 1;
  ResourceVector demand;
  Tick spread = 0;         // ground-truth start variation across the phase
  int heading = 0;         // tasks shortened by an underfilled last block
  int trailing = 0;        // skewed tasks stretched by `stretch`
  double stretch = 1.38;
  double fill = 0.25;      // block fill fraction applied to heading tasks

  bool operator==(const PhaseSpec&) const = default;
};

struct JobSpec {
  JobId id = 0;
  Tick submit = 0;
  std::vector<PhaseSpec> phases;

  // Peak container request over the job's phases.
  std::int64_t demand_slots() const;

  bool operator==(const JobSpec&) const = default;
};

struct SchedulerConfig {
  int ts = 5;   // Running-count threshold that marks a phase started
  int te = 5;   // Completed-count threshold that marks release onset
  Tick pw = 10; // phase window
  double delta0 = 0.10;
  double theta = 0.10;
  double delta_min = 0.05;
  double delta_max = 0.95;
  // Ticks spent in Reserved, Allocated and Acquired before the next state.
  std::array<Tick, 3> delays{1, 1, 1};
  // Slot count the job indicator is applied to when DRESS classifies a
  // submitted job: the whole cluster, or the slots free at submission.
  enum class ClassifyBasis { kTotal, kFree } classify_on = ClassifyBasis::kTotal;

  bool operator==(const SchedulerConfig&) const = default;
};

std::string_view to_string(SchedulerConfig::ClassifyBasis basis);

struct Scenario {
  int version = 1;
  std::size_t k = 1;
  std::vector<ResourceVector> servers;
  std::vector<JobSpec> jobs;
  SchedulerConfig config;
  std::uint64_t seed = 0;

  std::int64_t total_slots() const;
  bool operator==(const Scenario&) const = default;
};

struct TaskSpec {
  TaskId id = 0;
  JobId job = 0;
  int phase = 0;
  int index = 0;  // position inside the phase
  ResourceVector demand;
  Tick duration = 1;
  // Extra ticks spent in Acquired; realizes the phase's start variation.
  Tick start_offset = 0;
  TaskKind kind = TaskKind::kNormal;
};

// Throws a configuration error naming the first inconsistent field.
void validate(const Scenario& scenario);

// Deterministic expansion of phase descriptions into tasks. Task ids are
// dense and follow (job order, phase, index). Heading tasks are the last
// `heading` indices of a phase and trailing tasks the `trailing` indices
// before them; start offsets ramp linearly from 0 to `spread`.
std::vector<TaskSpec> expand_tasks(const Scenario& scenario);
std::vector<TaskSpec> expand_phase(const PhaseSpec& phase, JobId job,
                                   int phase_index, TaskId first_id);

Tick heading_duration(const PhaseSpec& phase);
Tick trailing_duration(const PhaseSpec& phase);

}  // namespace dress
