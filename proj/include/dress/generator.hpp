#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dress/workload.hpp"

namespace dress {

// Parameters for synthetic workloads. Ranges are inclusive.
struct GenSpec {
  int jobs = 20;
  double small_fraction = 0.3;
  int servers = 4;
  ResourceVector server_capacity{16, 16};
  Tick submit_interval = 5;
  int min_phases = 1;
  int max_phases = 2;
  // Large jobs draw task counts above theta * Tot_R up to this bound;
  // 0 means Tot_R.
  int large_tasks_max = 0;
  Tick base_min = 20;
  Tick base_max = 60;
  std::int64_t vcores_min = 1;
  std::int64_t vcores_max = 1;
  Tick spread_min = 0;
  Tick spread_max = 4;
  double heading_rate = 0.0;   // per-task probability
  double trailing_rate = 0.0;  // per-task probability
  double fill_min = 0.25;
  double fill_max = 0.5;
  double stretch = 1.38;
  SchedulerConfig config;

  bool operator==(const GenSpec&) const = default;
};

GenSpec gen_spec_from_json(const std::string& text);
std::string gen_spec_to_json(const GenSpec& spec);

// Ground truth for one generated phase, relative to the tick at which the
// phase's tasks are all granted together.
struct PhaseTruth {
  JobId job = 0;
  int phase = 0;
  Tick spread = 0;
  // Earliest finish among non-heading tasks, measured from the first start.
  Tick earliest_finish = 0;
  // Finish offsets of all tasks, sorted, measured from the first start.
  std::vector<Tick> release_schedule;
};

struct Generated {
  Scenario scenario;
  std::vector<PhaseTruth> truth;
  std::vector<JobId> small_jobs;
};

// Deterministic for a fixed (spec, seed). Throws a generation error when
// the spec cannot be realized.
Generated generate(const GenSpec& spec, std::uint64_t seed);

// Ground truth derived from any scenario's phase descriptions.
std::vector<PhaseTruth> ground_truth(const Scenario& scenario);

// Named workloads: "wordcount" (20 Map + 4 Reduce), "pagerank" (two
// MapReduce stages with a heading task in the first Reduce), "mixed"
// (default GenSpec).
Scenario preset(const std::string& name, std::uint64_t seed);

// Portable integer/real draws over mt19937_64 so outputs do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double uniform_real(double lo, double hi);
  bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dress
