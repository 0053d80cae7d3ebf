#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dress/resource.hpp"
#include "dress/trace.hpp"
#include "dress/workload.hpp"

namespace dress {

struct EstimatorConfig {
  int ts = 5;
  int te = 5;
  Tick pw = 10;

  static EstimatorConfig from(const SchedulerConfig& c) { return {c.ts, c.te, c.pw}; }
};

// What the estimator has learned about one online-detected phase of a job.
// Phases are numbered in the order their tasks start running.
struct PhaseObservation {
  JobId job = 0;
  int phase = 0;
  std::int64_t containers = 0;       // c_pj
  std::vector<Tick> starts;          // attributed start ticks, nondecreasing
  std::vector<Tick> finishes;        // attributed finish ticks, nondecreasing
  std::optional<Tick> first_start;   // ps_jf
  std::optional<Tick> last_start;    // ps_jl
  std::optional<Tick> spread;        // delta ps_j
  std::optional<Tick> release_onset; // gamma_j
  bool started = false;              // S_pj
  bool ended = false;                // E_pj
  bool unprofiled = false;           // closed without crossing ts
  bool trailing_rolled = false;
  std::int64_t running = 0;          // attributed tasks still running
  std::int64_t released = 0;         // completions accounted to this phase

  bool profiled() const { return spread.has_value(); }
};

struct JobEstimate {
  JobId job = 0;
  std::optional<Tick> alpha;  // first Running tick
  std::optional<Tick> beta;   // tick the running set last emptied
  std::vector<PhaseObservation> phases;
  int current = 0;            // phase receiving new starts
  std::int64_t running = 0;
};

// Cumulative containers phase `obs` is predicted to have released by t:
// 0 up to gamma, a linear ramp over delta ps, then held at c_pj. A zero
// spread is a step at gamma. Phases lacking gamma or delta ps forecast 0.
std::int64_t phase_release(const PhaseObservation& obs, Tick t);

// Sum of phase_release over the job's phases inside [alpha, beta]; 0
// outside it or before the job started.
std::int64_t job_release(const JobEstimate& job, Tick t);

// Online release-pattern learner. Start and completion events are buffered
// per tick; end_tick(t) then applies the window rules for tick t.
class Estimator {
 public:
  explicit Estimator(EstimatorConfig config = {}) : config_(config) {}

  void observe_start(JobId job, TaskId task, Tick t);
  void observe_completion(JobId job, TaskId task, Tick t);
  void end_tick(Tick t);

  const JobEstimate* job(JobId id) const;
  const std::map<JobId, JobEstimate>& jobs() const { return jobs_; }
  const EstimatorConfig& config() const { return config_; }
  std::int64_t warnings() const { return warnings_; }

  // Containers still held now that are forecast to be released by t:
  // sum over phases of max(0, phase_release(t) - released so far).
  std::int64_t expected_release(JobId id, Tick t) const;

  // True when every phase holding running tasks has both delta ps and
  // gamma.
  bool active_phases_profiled() const;

  // Human-readable record of every detection decision, one line each.
  const std::vector<std::string>& transcript() const { return transcript_; }

 private:
  struct TaskState {
    JobId job = 0;
    int start_phase = 0;
    int account_phase = 0;
    Tick start = 0;
    bool running = true;
  };

  PhaseObservation& phase_at(JobEstimate& job, int index);
  void apply_start_rules(JobEstimate& job, Tick t);
  void apply_completion_rules(JobEstimate& job, Tick t);
  void log(Tick t, const JobEstimate& job, int phase, const std::string& what);

  EstimatorConfig config_;
  std::map<JobId, JobEstimate> jobs_;
  std::map<TaskId, TaskState> tasks_;
  std::int64_t warnings_ = 0;
  std::vector<std::string> transcript_;
};

struct Availability {
  std::int64_t total = 0;       // F(t) = A_c + sum f_i
  std::int64_t small = 0;       // F_1(t) = A_c1 + SD releases
  std::int64_t large = 0;       // F_2(t) = A_c2 + LD releases
  std::int64_t release_sd = 0;
  std::int64_t release_ld = 0;
};

// F(t) with A_c split into the two pools and release terms attributed to
// the releasing job's category.
Availability system_availability(const Estimator& estimator, std::int64_t free_sd,
                                 std::int64_t free_ld,
                                 const std::function<Category(JobId)>& pool_of, Tick t);

}  // namespace dress
