#include "dress/dress.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <sstream>
#include <string>

#include "dress/engine.hpp"
#include "dress/error.hpp"
#include "dress/feasibility.hpp"
#include "dress/fig1.hpp"
#include "dress/generator.hpp"
#include "dress/metrics.hpp"
#include "dress/oracle.hpp"
#include "dress/scenario_io.hpp"
#include "dress/trace_io.hpp"

struct dress_scenario {
  dress::Scenario value;
};

struct dress_trace {
  dress::ScheduleTrace value;
};

namespace {

thread_local std::string last_error;

dress_status status_of(dress::ErrorKind kind) {
  switch (kind) {
    case dress::ErrorKind::kConfig: return DRESS_E_CONFIG;
    case dress::ErrorKind::kParse: return DRESS_E_PARSE;
    case dress::ErrorKind::kLifecycle: return DRESS_E_LIFECYCLE;
    case dress::ErrorKind::kInvariant: return DRESS_E_INVARIANT;
    case dress::ErrorKind::kDeadlock: return DRESS_E_DEADLOCK;
    case dress::ErrorKind::kGeneration: return DRESS_E_GENERATION;
    case dress::ErrorKind::kIo: return DRESS_E_IO;
  }
  return DRESS_E_INTERNAL;
}

dress_status fail(dress_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
dress_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const dress::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DRESS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DRESS_E_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const dress::Fig1Reconstruction& fig1() {
  static std::once_flag once;
  static dress::Fig1Reconstruction rec;
  std::call_once(once, [] { rec = dress::reconstruct_fig1(); });
  return rec;
}

#define DRESS_REQUIRE(cond, what) \
  if (!(cond)) return fail(DRESS_E_ARGUMENT, what)

}  // namespace

extern "C" {

const char* dress_last_error(void) { return last_error.c_str(); }

const char* dress_status_name(dress_status status) {
  switch (status) {
    case DRESS_OK: return "ok";
    case DRESS_E_ARGUMENT: return "argument";
    case DRESS_E_CONFIG: return "config";
    case DRESS_E_PARSE: return "parse";
    case DRESS_E_LIFECYCLE: return "lifecycle";
    case DRESS_E_INVARIANT: return "invariant";
    case DRESS_E_DEADLOCK: return "deadlock";
    case DRESS_E_GENERATION: return "generation";
    case DRESS_E_IO: return "io";
    case DRESS_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void dress_string_free(char* s) { std::free(s); }

dress_status dress_scenario_load(const char* path, dress_scenario** out) {
  DRESS_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new dress_scenario{dress::load_scenario(path)};
    return DRESS_OK;
  });
}

dress_status dress_scenario_parse(const char* json, dress_scenario** out) {
  DRESS_REQUIRE(json && out, "null argument");
  return guarded([&] {
    *out = new dress_scenario{dress::scenario_from_json(json)};
    return DRESS_OK;
  });
}

dress_status dress_scenario_generate(const char* gen_spec_json, uint64_t seed,
                                     dress_scenario** out) {
  DRESS_REQUIRE(out, "null argument");
  return guarded([&] {
    dress::GenSpec spec;
    if (gen_spec_json && *gen_spec_json) spec = dress::gen_spec_from_json(gen_spec_json);
    *out = new dress_scenario{dress::generate(spec, seed).scenario};
    return DRESS_OK;
  });
}

dress_status dress_scenario_preset(const char* name, uint64_t seed, dress_scenario** out) {
  DRESS_REQUIRE(name && out, "null argument");
  return guarded([&] {
    *out = new dress_scenario{dress::preset(name, seed)};
    return DRESS_OK;
  });
}

dress_status dress_scenario_fig1(dress_scenario** out) {
  DRESS_REQUIRE(out, "null argument");
  return guarded([&] {
    *out = new dress_scenario{fig1().scenario};
    return DRESS_OK;
  });
}

dress_status dress_scenario_to_json(const dress_scenario* s, char** out) {
  DRESS_REQUIRE(s && out, "null argument");
  return guarded([&] {
    *out = dup(dress::scenario_to_json(s->value));
    return DRESS_OK;
  });
}

dress_status dress_scenario_save(const dress_scenario* s, const char* path) {
  DRESS_REQUIRE(s && path, "null argument");
  return guarded([&] {
    dress::save_scenario(s->value, path);
    return DRESS_OK;
  });
}

dress_status dress_scenario_set(dress_scenario* s, const char* key, double value) {
  DRESS_REQUIRE(s && key, "null argument");
  return guarded([&] {
    const std::string k = key;
    auto as_int = [&](const char* name) -> std::int64_t {
      if (!std::isfinite(value) || std::floor(value) != value) {
        throw dress::config_error(std::string(name) + " must be an integer");
      }
      return static_cast<std::int64_t>(value);
    };
    dress::Scenario next = s->value;
    auto& n = next.config;
    if (k == "ts") {
      n.ts = as_int("ts");
    } else if (k == "te") {
      n.te = as_int("te");
    } else if (k == "pw") {
      n.pw = as_int("pw");
    } else if (k == "delta0") {
      n.delta0 = value;
    } else if (k == "theta") {
      n.theta = value;
    } else if (k == "delta-min") {
      n.delta_min = value;
    } else if (k == "delta-max") {
      n.delta_max = value;
    } else if (k == "seed") {
      if (value < 0) throw dress::config_error("seed must be nonnegative");
      next.seed = static_cast<std::uint64_t>(as_int("seed"));
    } else {
      return fail(DRESS_E_ARGUMENT, "unknown config key '" + k + "'");
    }
    dress::validate(next);
    s->value = std::move(next);
    return DRESS_OK;
  });
}

dress_status dress_scenario_set_text(dress_scenario* s, const char* key, const char* value) {
  DRESS_REQUIRE(s && key && value, "null argument");
  const std::string k = key, v = value;
  if (k != "classify-on") return fail(DRESS_E_ARGUMENT, "unknown config key '" + k + "'");
  if (v == "total") {
    s->value.config.classify_on = dress::SchedulerConfig::ClassifyBasis::kTotal;
  } else if (v == "free") {
    s->value.config.classify_on = dress::SchedulerConfig::ClassifyBasis::kFree;
  } else {
    return fail(DRESS_E_CONFIG, "classify-on must be total or free");
  }
  last_error.clear();
  return DRESS_OK;
}

dress_status dress_scenario_job_count(const dress_scenario* s, size_t* out) {
  DRESS_REQUIRE(s && out, "null argument");
  *out = s->value.jobs.size();
  return DRESS_OK;
}

void dress_scenario_free(dress_scenario* s) { delete s; }

dress_status dress_run(const dress_scenario* s, const char* scheduler,
                       const char* scenario_name, dress_trace** out) {
  DRESS_REQUIRE(s && scheduler && out, "null argument");
  return guarded([&] {
    auto sched = dress::make_scheduler(scheduler, s->value);
    dress::EngineOptions opts;
    if (scenario_name) opts.scenario_name = scenario_name;
    *out = new dress_trace{dress::run(s->value, *sched, opts)};
    return DRESS_OK;
  });
}

dress_status dress_trace_load(const char* path, dress_trace** out) {
  DRESS_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new dress_trace{dress::load_trace(path)};
    return DRESS_OK;
  });
}

dress_status dress_trace_to_jsonl(const dress_trace* t, char** out) {
  DRESS_REQUIRE(t && out, "null argument");
  return guarded([&] {
    *out = dup(dress::trace_to_jsonl(t->value));
    return DRESS_OK;
  });
}

dress_status dress_trace_save(const dress_trace* t, const char* path) {
  DRESS_REQUIRE(t && path, "null argument");
  return guarded([&] {
    dress::save_trace(path, t->value);
    return DRESS_OK;
  });
}

dress_status dress_trace_makespan(const dress_trace* t, int64_t* out) {
  DRESS_REQUIRE(t && out, "null argument");
  *out = t->value.makespan;
  return DRESS_OK;
}

dress_status dress_trace_summary_row(const dress_trace* t, char** out) {
  DRESS_REQUIRE(t && out, "null argument");
  return guarded([&] {
    *out = dup(dress::summary_csv_row(dress::summarize(t->value)));
    return DRESS_OK;
  });
}

const char* dress_summary_csv_header(void) {
  static const std::string header = dress::summary_csv_header();
  return header.c_str();
}

dress_status dress_trace_plot_csv(const dress_trace* t, char** out) {
  DRESS_REQUIRE(t && out, "null argument");
  return guarded([&] {
    *out = dup(dress::plot_csv(dress::summarize(t->value)));
    return DRESS_OK;
  });
}

dress_status dress_trace_waits(const dress_trace* t, int64_t* waits, size_t capacity,
                               size_t* count) {
  DRESS_REQUIRE(t && count && (waits || capacity == 0), "null argument");
  return guarded([&] {
    const auto s = dress::summarize(t->value);
    *count = s.jobs.size();
    for (size_t i = 0; i < s.jobs.size() && i < capacity; ++i) waits[i] = s.jobs[i].waiting;
    return DRESS_OK;
  });
}

dress_status dress_trace_check(const dress_trace* t, size_t* violations, char** json) {
  DRESS_REQUIRE(t && violations, "null argument");
  return guarded([&] {
    const auto v = dress::check_feasibility(t->value);
    *violations = v.size();
    if (json) *json = dup(dress::violations_to_json(v));
    return DRESS_OK;
  });
}

void dress_trace_free(dress_trace* t) { delete t; }

dress_status dress_compare(const dress_trace* const* traces, size_t n, char** csv,
                           char** text) {
  DRESS_REQUIRE(traces || n == 0, "null argument");
  return guarded([&] {
    std::vector<dress::RunSummary> summaries;
    for (size_t i = 0; i < n; ++i) {
      if (!traces[i]) return fail(DRESS_E_ARGUMENT, "null trace");
      summaries.push_back(dress::summarize(traces[i]->value));
    }
    const auto rows = dress::compare(summaries);
    if (csv) *csv = dup(dress::comparison_to_csv(rows));
    if (text) *text = dup(dress::comparison_to_text(rows));
    return DRESS_OK;
  });
}

dress_status dress_oracle_solve(const dress_scenario* s, int gang, uint64_t node_budget,
                                char** json) {
  DRESS_REQUIRE(s && json, "null argument");
  return guarded([&] {
    const auto inst = dress::instance_from_scenario(
        s->value, gang ? dress::Granularity::kJobGang : dress::Granularity::kTask);
    dress::SolveOptions opts;
    if (node_budget) opts.node_budget = node_budget;
    *json = dup(dress::solution_to_json(inst, dress::solve_exact(inst, opts)));
    return DRESS_OK;
  });
}

dress_status dress_oracle_check(const dress_scenario* s, int gang, const char* solution_json,
                                size_t* violations, char** json) {
  DRESS_REQUIRE(s && solution_json && violations, "null argument");
  return guarded([&] {
    const auto inst = dress::instance_from_scenario(
        s->value, gang ? dress::Granularity::kJobGang : dress::Granularity::kTask);
    const auto sol = dress::solution_from_json(inst, solution_json);
    const auto v = dress::check_feasibility(sol, inst);
    *violations = v.size();
    if (json) *json = dup(dress::violations_to_json(v));
    return DRESS_OK;
  });
}

dress_status dress_fig1_report(char** text) {
  DRESS_REQUIRE(text, "null argument");
  return guarded([&] {
    const auto& r = fig1();
    std::ostringstream os;
    os << "jobs (containers x duration):";
    for (const auto& j : r.scenario.jobs) {
      os << " J" << j.id << "=" << j.phases[0].task_count << "x" << j.phases[0].base_duration;
    }
    os << "\nfcfs: makespan " << r.fcfs_makespan << ", waits";
    dress::Tick total = 0;
    for (auto w : r.fcfs_waits) {
      os << ' ' << w;
      total += w;
    }
    os << ", average " << dress::format_double(static_cast<double>(total) / 4.0) << "\n";
    os << "oracle: optimal makespan " << r.optimal_makespan << "\nreordered: makespan "
       << r.reordered_makespan << ", starts";
    for (const auto& p : r.reordered) os << ' ' << p.start;
    os << ", waits";
    total = 0;
    for (auto w : r.reordered_waits) {
      os << ' ' << w;
      total += w;
    }
    os << ", average " << dress::format_double(static_cast<double>(total) / 4.0) << "\n";
    os << "candidates checked: " << r.candidates_checked << "\n";
    *text = dup(os.str());
    return DRESS_OK;
  });
}

}  // extern "C"
