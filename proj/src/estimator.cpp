#include "dress/estimator.hpp"

#include <algorithm>

namespace dress {

namespace {

// Number of entries of a nondecreasing tick list inside (t - pw, t].
std::int64_t window_count(const std::vector<Tick>& ticks, Tick t, Tick pw) {
  auto hi = std::upper_bound(ticks.begin(), ticks.end(), t);
  auto lo = std::upper_bound(ticks.begin(), ticks.end(), t - pw);
  return hi - lo;
}

}  // namespace

std::int64_t phase_release(const PhaseObservation& obs, Tick t) {
  if (!obs.release_onset || !obs.spread) return 0;
  const Tick gamma = *obs.release_onset;
  const Tick spread = *obs.spread;
  const std::int64_t c = std::max<std::int64_t>(0, obs.containers);
  if (spread == 0) return t >= gamma ? c : 0;
  if (t <= gamma) return 0;
  if (t >= gamma + spread) return c;
  return (t - gamma) * c / spread;
}

std::int64_t job_release(const JobEstimate& job, Tick t) {
  if (!job.alpha || t < *job.alpha) return 0;
  if (job.beta && t > *job.beta) return 0;
  std::int64_t sum = 0;
  for (const auto& obs : job.phases) sum += phase_release(obs, t);
  return sum;
}

PhaseObservation& Estimator::phase_at(JobEstimate& job, int index) {
  while (static_cast<int>(job.phases.size()) <= index) {
    PhaseObservation obs;
    obs.job = job.job;
    obs.phase = static_cast<int>(job.phases.size());
    job.phases.push_back(std::move(obs));
  }
  return job.phases[index];
}

void Estimator::log(Tick t, const JobEstimate& job, int phase, const std::string& what) {
  transcript_.push_back("t=" + std::to_string(t) + " job=" + std::to_string(job.job) +
                        " phase=" + std::to_string(phase) + " " + what);
}

void Estimator::observe_start(JobId id, TaskId task, Tick t) {
  auto& job = jobs_[id];
  job.job = id;
  if (!job.alpha) {
    job.alpha = t;
    log(t, job, job.current, "alpha=" + std::to_string(t));
  }
  job.beta.reset();
  auto& obs = phase_at(job, job.current);
  obs.starts.push_back(t);
  ++obs.containers;
  ++obs.running;
  ++job.running;
  tasks_[task] = {id, job.current, job.current, t, true};
}

void Estimator::observe_completion(JobId id, TaskId task, Tick t) {
  auto it = tasks_.find(task);
  if (it == tasks_.end() || !it->second.running || it->second.job != id) {
    ++warnings_;
    return;
  }
  auto& ts = it->second;
  ts.running = false;
  auto& job = jobs_.at(id);
  auto& started_in = job.phases[ts.start_phase];
  started_in.finishes.push_back(t);
  --started_in.running;
  ++job.phases[ts.account_phase].released;
  --job.running;
}

void Estimator::apply_start_rules(JobEstimate& job, Tick t) {
  if (job.current >= static_cast<int>(job.phases.size())) return;
  auto& obs = job.phases[job.current];
  if (obs.starts.empty()) return;
  const auto recent = window_count(obs.starts, t, config_.pw);
  auto min_running_start = [&]() {
    std::optional<Tick> lo, hi;
    for (const auto& [id, ts] : tasks_) {
      if (ts.job != job.job || ts.start_phase != obs.phase || !ts.running) continue;
      lo = lo ? std::min(*lo, ts.start) : ts.start;
      hi = hi ? std::max(*hi, ts.start) : ts.start;
    }
    return std::make_pair(lo, hi);
  };
  if (recent > config_.ts) {
    if (!obs.started) {
      obs.started = true;
      obs.first_start = min_running_start().first.value_or(obs.starts.front());
      log(t, job, obs.phase, "started ps_f=" + std::to_string(*obs.first_start));
    }
  } else if (obs.started && recent == 0) {
    obs.last_start = min_running_start().second.value_or(obs.starts.back());
    obs.spread = *obs.last_start - *obs.first_start;
    log(t, job, obs.phase,
        "profiled ps_l=" + std::to_string(*obs.last_start) +
            " dps=" + std::to_string(*obs.spread) + " c=" + std::to_string(obs.containers));
    ++job.current;
  } else if (!obs.started && obs.running == 0) {
    obs.unprofiled = true;
    log(t, job, obs.phase, "unprofiled c=" + std::to_string(obs.containers));
    ++job.current;
  }
}

void Estimator::apply_completion_rules(JobEstimate& job, Tick t) {
  for (std::size_t j = 0; j < job.phases.size(); ++j) {
    auto& obs = job.phases[j];
    if (obs.finishes.empty() && obs.running == 0) continue;
    const auto recent = window_count(obs.finishes, t, config_.pw);
    if (recent > config_.te) {
      if (!obs.ended) {
        obs.ended = true;
        auto first = std::upper_bound(obs.finishes.begin(), obs.finishes.end(),
                                      t - config_.pw);
        obs.release_onset = *first;
        log(t, job, obs.phase, "release gamma=" + std::to_string(*obs.release_onset));
      }
    } else if (obs.release_onset && recent == 0 && obs.running > 0 &&
               !obs.trailing_rolled) {
      obs.trailing_rolled = true;
      std::int64_t moved = 0;
      const int next = static_cast<int>(j) + 1;
      for (auto& [id, ts] : tasks_) {
        if (ts.job != job.job || !ts.running || ts.start_phase != obs.phase ||
            ts.account_phase != obs.phase) {
          continue;
        }
        ts.account_phase = next;
        ++moved;
      }
      auto& target = phase_at(job, next);
      auto& self = job.phases[j];  // phase_at may reallocate
      self.containers -= moved;
      target.containers += moved;
      log(t, job, self.phase,
          "trailing " + std::to_string(moved) + " -> phase " + std::to_string(next));
    }
  }
  if (job.running == 0 && job.alpha && !job.beta) {
    job.beta = t;
    log(t, job, job.current, "beta=" + std::to_string(t));
  }
}

void Estimator::end_tick(Tick t) {
  for (auto& [id, job] : jobs_) {
    apply_start_rules(job, t);
    apply_completion_rules(job, t);
  }
}

const JobEstimate* Estimator::job(JobId id) const {
  auto it = jobs_.find(id);
  return it == jobs_.end() ? nullptr : &it->second;
}

std::int64_t Estimator::expected_release(JobId id, Tick t) const {
  const auto* job = this->job(id);
  if (!job || !job->alpha || t < *job->alpha) return 0;
  if (job->beta && t > *job->beta) return 0;
  std::int64_t sum = 0;
  for (const auto& obs : job->phases) {
    sum += std::max<std::int64_t>(0, phase_release(obs, t) - obs.released);
  }
  return sum;
}

bool Estimator::active_phases_profiled() const {
  for (const auto& [id, job] : jobs_) {
    for (const auto& obs : job.phases) {
      if (obs.running > 0 && (!obs.spread || !obs.release_onset)) return false;
    }
  }
  return true;
}

Availability system_availability(const Estimator& estimator, std::int64_t free_sd,
                                 std::int64_t free_ld,
                                 const std::function<Category(JobId)>& pool_of, Tick t) {
  Availability a;
  for (const auto& [id, job] : estimator.jobs()) {
    const auto release = estimator.expected_release(id, t);
    if (pool_of(id) == Category::kSmall) {
      a.release_sd += release;
    } else {
      a.release_ld += release;
    }
  }
  a.small = free_sd + a.release_sd;
  a.large = free_ld + a.release_ld;
  a.total = a.small + a.large;
  return a;
}

}  // namespace dress
