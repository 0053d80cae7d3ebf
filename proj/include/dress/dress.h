/* C interface to the DRESS cluster-scheduling simulator. */
#ifndef DRESS_DRESS_H
#define DRESS_DRESS_H

#include <stddef.h>
#include <stdint.h>

#if defined(DRESS_BUILDING_LIBRARY)
#define DRESS_API __attribute__((visibility("default")))
#else
#define DRESS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dress_status {
  DRESS_OK = 0,
  DRESS_E_ARGUMENT = 1,  /* null handle or unknown name */
  DRESS_E_CONFIG = 2,
  DRESS_E_PARSE = 3,
  DRESS_E_LIFECYCLE = 4,
  DRESS_E_INVARIANT = 5,
  DRESS_E_DEADLOCK = 6,
  DRESS_E_GENERATION = 7,
  DRESS_E_IO = 8,
  DRESS_E_INTERNAL = 9
} dress_status;

typedef struct dress_scenario dress_scenario;
typedef struct dress_trace dress_trace;

/* Message for the last failing call on this thread; empty after success. */
DRESS_API const char* dress_last_error(void);
DRESS_API const char* dress_status_name(dress_status status);

/* Strings returned through char** are owned by the caller. */
DRESS_API void dress_string_free(char* s);

/* Scenarios */
DRESS_API dress_status dress_scenario_load(const char* path, dress_scenario** out);
DRESS_API dress_status dress_scenario_parse(const char* json, dress_scenario** out);
DRESS_API dress_status dress_scenario_generate(const char* gen_spec_json, uint64_t seed,
                                               dress_scenario** out);
DRESS_API dress_status dress_scenario_preset(const char* name, uint64_t seed,
                                             dress_scenario** out);
/* The reconstructed four-job motivating example. */
DRESS_API dress_status dress_scenario_fig1(dress_scenario** out);
DRESS_API dress_status dress_scenario_to_json(const dress_scenario* s, char** out);
DRESS_API dress_status dress_scenario_save(const dress_scenario* s, const char* path);
/* key: ts, te, pw, delta0, theta, delta-min, delta-max, seed. Integer
   keys reject fractional values. */
DRESS_API dress_status dress_scenario_set(dress_scenario* s, const char* key, double value);
/* key: classify-on ("total" or "free"). */
DRESS_API dress_status dress_scenario_set_text(dress_scenario* s, const char* key,
                                               const char* value);
DRESS_API dress_status dress_scenario_job_count(const dress_scenario* s, size_t* out);
DRESS_API void dress_scenario_free(dress_scenario* s);

/* Simulation. scheduler: "fcfs", "dress" or "static". */
DRESS_API dress_status dress_run(const dress_scenario* s, const char* scheduler,
                                 const char* scenario_name, dress_trace** out);

/* Traces */
DRESS_API dress_status dress_trace_load(const char* path, dress_trace** out);
DRESS_API dress_status dress_trace_to_jsonl(const dress_trace* t, char** out);
DRESS_API dress_status dress_trace_save(const dress_trace* t, const char* path);
DRESS_API dress_status dress_trace_makespan(const dress_trace* t, int64_t* out);
/* Summary CSV row without header; dress_summary_csv_header gives the header. */
DRESS_API dress_status dress_trace_summary_row(const dress_trace* t, char** out);
DRESS_API const char* dress_summary_csv_header(void);
DRESS_API dress_status dress_trace_plot_csv(const dress_trace* t, char** out);
/* Per-job waiting times, in scenario order. *count is set to the number of
   jobs; at most capacity values are written. */
DRESS_API dress_status dress_trace_waits(const dress_trace* t, int64_t* waits, size_t capacity,
                                         size_t* count);
/* Feasibility check; *violations gets the count, json (optional) the list. */
DRESS_API dress_status dress_trace_check(const dress_trace* t, size_t* violations, char** json);
DRESS_API void dress_trace_free(dress_trace* t);

/* Pairwise comparison of runs on one scenario. */
DRESS_API dress_status dress_compare(const dress_trace* const* traces, size_t n, char** csv,
                                     char** text);

/* Exact makespan oracle. gang != 0 models each single-phase job as one
   gang task. Returns the solution JSON. */
DRESS_API dress_status dress_oracle_solve(const dress_scenario* s, int gang,
                                          uint64_t node_budget, char** json);
/* Checks a saved oracle solution ({solution: {task: {server, start}}})
   against the scenario. */
DRESS_API dress_status dress_oracle_check(const dress_scenario* s, int gang,
                                          const char* solution_json, size_t* violations,
                                          char** json);
/* Human-readable report of the motivating-example reconstruction. */
DRESS_API dress_status dress_fig1_report(char** text);

#ifdef __cplusplus
}
#endif

#endif
