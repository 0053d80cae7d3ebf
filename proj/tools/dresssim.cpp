// dresssim: command-line front end over the dress C library.
#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dress/dress.h"

namespace {

constexpr int kUsage = 1;
constexpr int kInvariant = 2;

struct Failure {
  dress_status status;
  std::string message;
};

void check(dress_status st) {
  if (st != DRESS_OK) throw Failure{st, dress_last_error()};
}

int exit_code(dress_status st) {
  switch (st) {
    case DRESS_E_INVARIANT:
    case DRESS_E_LIFECYCLE:
    case DRESS_E_DEADLOCK:
    case DRESS_E_INTERNAL:
      return kInvariant;
    default:
      return kUsage;
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  dress_string_free(s);
  return out;
}

struct ScenarioHandle {
  dress_scenario* p = nullptr;
  ScenarioHandle() = default;
  ScenarioHandle(const ScenarioHandle&) = delete;
  ScenarioHandle& operator=(const ScenarioHandle&) = delete;
  ~ScenarioHandle() { dress_scenario_free(p); }
};

struct TraceHandle {
  dress_trace* p = nullptr;
  TraceHandle() = default;
  TraceHandle(TraceHandle&& o) noexcept : p(o.p) { o.p = nullptr; }
  TraceHandle(const TraceHandle&) = delete;
  ~TraceHandle() { dress_trace_free(p); }
};

struct Overrides {
  std::optional<double> ts, te, pw, delta0, theta, delta_min, delta_max, seed;
  std::string classify_on;

  void add_to(CLI::App* app) {
    app->add_option("--ts", ts, "start-detection threshold (tasks)");
    app->add_option("--te", te, "end-detection threshold (tasks)");
    app->add_option("--pw", pw, "profiling window (ticks)");
    app->add_option("--delta0", delta0, "initial reserve ratio");
    app->add_option("--theta", theta, "job indicator threshold");
    app->add_option("--delta-min", delta_min, "lower reserve-ratio bound");
    app->add_option("--delta-max", delta_max, "upper reserve-ratio bound");
    app->add_option("--seed", seed, "scenario seed");
    app->add_option("--classify-on", classify_on, "indicator basis: total or free")
        ->check(CLI::IsMember({"total", "free"}));
  }

  void apply(dress_scenario* s) const {
    const std::pair<const char*, const std::optional<double>*> fields[] = {
        {"ts", &ts},         {"te", &te},       {"pw", &pw},
        {"delta0", &delta0}, {"theta", &theta}, {"delta-min", &delta_min},
        {"delta-max", &delta_max}, {"seed", &seed}};
    for (const auto& [key, v] : fields) {
      if (*v) check(dress_scenario_set(s, key, **v));
    }
    if (!classify_on.empty()) check(dress_scenario_set_text(s, "classify-on", classify_on.c_str()));
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{DRESS_E_IO, "cannot write " + path};
}

std::string stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

std::vector<std::string> expand(const std::vector<std::string>& patterns) {
  std::vector<std::string> out;
  for (const auto& pat : patterns) {
    glob_t g{};
    if (::glob(pat.c_str(), GLOB_NOCHECK, nullptr, &g) == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    globfree(&g);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

void print_summary(dress_trace* t) {
  int64_t makespan = 0;
  check(dress_trace_makespan(t, &makespan));
  char* row = nullptr;
  check(dress_trace_summary_row(t, &row));
  std::cout << "makespan " << makespan << "\n"
            << dress_summary_csv_header() << "\n"
            << take(row) << "\n";
}

// ---- gen

struct GenArgs {
  std::string spec_path, preset, out;
  uint64_t seed = 1;
};

int cmd_gen(const GenArgs& a) {
  ScenarioHandle s;
  if (!a.preset.empty()) {
    check(dress_scenario_preset(a.preset.c_str(), a.seed, &s.p));
  } else {
    std::string spec;
    if (!a.spec_path.empty()) {
      std::ifstream in(a.spec_path);
      if (!in) throw Failure{DRESS_E_IO, "cannot read " + a.spec_path};
      spec.assign(std::istreambuf_iterator<char>(in), {});
    }
    check(dress_scenario_generate(spec.c_str(), a.seed, &s.p));
  }
  if (a.out.empty() || a.out == "-") {
    char* json = nullptr;
    check(dress_scenario_to_json(s.p, &json));
    std::cout << take(json);
  } else {
    check(dress_scenario_save(s.p, a.out.c_str()));
  }
  return 0;
}

// ---- run

struct RunArgs {
  std::string scenario, scheduler = "dress", trace, summary, plot, name;
  bool fig1 = false;
  Overrides over;
};

int cmd_run(const RunArgs& a) {
  ScenarioHandle s;
  if (a.fig1) {
    check(dress_scenario_fig1(&s.p));
  } else {
    check(dress_scenario_load(a.scenario.c_str(), &s.p));
  }
  a.over.apply(s.p);
  const std::string name = !a.name.empty() ? a.name : a.fig1 ? "fig1" : stem(a.scenario);
  TraceHandle t;
  check(dress_run(s.p, a.scheduler.c_str(), name.c_str(), &t.p));
  if (!a.trace.empty()) check(dress_trace_save(t.p, a.trace.c_str()));
  if (!a.summary.empty()) {
    char* row = nullptr;
    check(dress_trace_summary_row(t.p, &row));
    write_text(a.summary, std::string(dress_summary_csv_header()) + "\n" + take(row) + "\n");
  }
  if (!a.plot.empty()) {
    char* plot = nullptr;
    check(dress_trace_plot_csv(t.p, &plot));
    write_text(a.plot, take(plot));
  }
  print_summary(t.p);
  return 0;
}

// ---- sweep

struct SweepArgs {
  std::vector<std::string> scenarios;
  std::string gen_spec, preset, schedulers = "fcfs,dress", seeds, out, trace_dir;
  unsigned threads = 0;
  Overrides over;
};

struct SweepJob {
  std::string source;  // scenario path, or empty for generated
  std::string name;
  std::string scheduler;
  std::optional<uint64_t> seed;
  std::string row;
  std::string error;
  dress_status status = DRESS_OK;
};

int cmd_sweep(const SweepArgs& a) {
  const auto schedulers = split_list(a.schedulers);
  std::vector<std::optional<uint64_t>> seeds;
  for (const auto& s : split_list(a.seeds)) seeds.push_back(std::stoull(s));
  if (seeds.empty()) seeds.push_back(std::nullopt);

  std::string spec;
  if (!a.gen_spec.empty()) {
    std::ifstream in(a.gen_spec);
    if (!in) throw Failure{DRESS_E_IO, "cannot read " + a.gen_spec};
    spec.assign(std::istreambuf_iterator<char>(in), {});
  }
  const bool generated = !a.gen_spec.empty() || !a.preset.empty();
  std::vector<std::string> sources =
      generated ? std::vector<std::string>{""} : expand(a.scenarios);
  if (sources.empty()) throw Failure{DRESS_E_ARGUMENT, "sweep needs scenarios or a generator"};

  if (!a.trace_dir.empty()) std::filesystem::create_directories(a.trace_dir);
  std::vector<SweepJob> jobs;
  for (const auto& src : sources) {
    for (const auto& sched : schedulers) {
      for (const auto& seed : seeds) {
        SweepJob j;
        j.source = src;
        j.scheduler = sched;
        j.seed = seed;
        j.name = generated ? (a.preset.empty() ? stem(a.gen_spec) : a.preset) : stem(src);
        jobs.push_back(j);
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      auto& j = jobs[i];
      try {
        ScenarioHandle s;
        const uint64_t seed = j.seed.value_or(1);
        if (!a.preset.empty()) {
          check(dress_scenario_preset(a.preset.c_str(), seed, &s.p));
        } else if (!a.gen_spec.empty()) {
          check(dress_scenario_generate(spec.c_str(), seed, &s.p));
        } else {
          check(dress_scenario_load(j.source.c_str(), &s.p));
        }
        a.over.apply(s.p);
        if (j.seed) check(dress_scenario_set(s.p, "seed", static_cast<double>(*j.seed)));
        TraceHandle t;
        check(dress_run(s.p, j.scheduler.c_str(), j.name.c_str(), &t.p));
        if (!a.trace_dir.empty()) {
          const std::string path = a.trace_dir + "/" + j.name + "_" + j.scheduler + "_" +
                                   std::to_string(seed) + ".jsonl";
          check(dress_trace_save(t.p, path.c_str()));
        }
        char* row = nullptr;
        check(dress_trace_summary_row(t.p, &row));
        j.row = take(row);
      } catch (const Failure& f) {
        j.status = f.status;
        j.error = f.message;
      }
    }
  };
  unsigned n = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (const auto& j : jobs) {
    if (j.status != DRESS_OK) {
      throw Failure{j.status, j.name + " / " + j.scheduler + ": " + j.error};
    }
  }
  // Order-stable output: scenario, scheduler, seed.
  std::stable_sort(jobs.begin(), jobs.end(), [](const SweepJob& x, const SweepJob& y) {
    return std::tie(x.name, x.source, x.scheduler, x.seed) <
           std::tie(y.name, y.source, y.scheduler, y.seed);
  });
  std::string csv = std::string(dress_summary_csv_header()) + "\n";
  for (const auto& j : jobs) csv += j.row + "\n";
  if (a.out.empty() || a.out == "-") {
    std::cout << csv;
  } else {
    write_text(a.out, csv);
    std::cout << jobs.size() << " runs -> " << a.out << "\n";
  }
  return 0;
}

// ---- oracle

struct OracleArgs {
  std::string scenario, solution, out;
  bool gang = false;
  uint64_t budget = 0;
};

int cmd_oracle_solve(const OracleArgs& a) {
  ScenarioHandle s;
  check(dress_scenario_load(a.scenario.c_str(), &s.p));
  char* json = nullptr;
  check(dress_oracle_solve(s.p, a.gang, a.budget, &json));
  const std::string text = take(json);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return 0;
}

int cmd_oracle_check(const OracleArgs& a) {
  ScenarioHandle s;
  check(dress_scenario_load(a.scenario.c_str(), &s.p));
  std::ifstream in(a.solution);
  if (!in) throw Failure{DRESS_E_IO, "cannot read " + a.solution};
  std::string sol((std::istreambuf_iterator<char>(in)), {});
  size_t violations = 0;
  char* json = nullptr;
  check(dress_oracle_check(s.p, a.gang, sol.c_str(), &violations, &json));
  std::cout << take(json);
  std::cout << violations << " violations\n";
  return violations == 0 ? 0 : kInvariant;
}

int cmd_oracle_fig1(const OracleArgs& a) {
  char* text = nullptr;
  check(dress_fig1_report(&text));
  std::cout << take(text);
  if (!a.out.empty()) {
    ScenarioHandle s;
    check(dress_scenario_fig1(&s.p));
    check(dress_scenario_save(s.p, a.out.c_str()));
  }
  return 0;
}

// ---- report

struct ReportArgs {
  std::vector<std::string> traces;
  std::string out_dir;
};

int cmd_report(const ReportArgs& a) {
  // Runs are compared within groups sharing scenario and seed.
  std::map<std::string, std::vector<TraceHandle>> groups;
  std::string summary = std::string(dress_summary_csv_header()) + "\n";
  if (!a.out_dir.empty()) std::filesystem::create_directories(a.out_dir);
  std::size_t bad = 0;
  for (const auto& path : expand(a.traces)) {
    TraceHandle t;
    check(dress_trace_load(path.c_str(), &t.p));
    char* row = nullptr;
    check(dress_trace_summary_row(t.p, &row));
    const std::string line = take(row);
    summary += line + "\n";
    size_t violations = 0;
    check(dress_trace_check(t.p, &violations, nullptr));
    if (violations) {
      std::cerr << path << ": " << violations << " feasibility violations\n";
      bad += violations;
    }
    if (!a.out_dir.empty()) {
      char* plot = nullptr;
      check(dress_trace_plot_csv(t.p, &plot));
      write_text(a.out_dir + "/" + stem(path) + ".plot.csv", take(plot));
    }
    // scheduler,scenario,seed,...
    const auto first = line.find(',');
    const auto third = line.find(',', line.find(',', first + 1) + 1);
    groups[line.substr(first + 1, third - first - 1)].push_back(std::move(t));
  }
  std::string comparison;
  for (const auto& [key, traces] : groups) {
    if (traces.size() < 2) continue;
    std::vector<const dress_trace*> ptrs;
    for (const auto& t : traces) ptrs.push_back(t.p);
    char* csv = nullptr;
    char* text = nullptr;
    check(dress_compare(ptrs.data(), ptrs.size(), &csv, &text));
    std::string body = take(csv);
    if (!comparison.empty()) body.erase(0, body.find('\n') + 1);
    comparison += body;
    std::cout << take(text);
  }
  if (a.out_dir.empty()) {
    std::cout << summary << comparison;
  } else {
    write_text(a.out_dir + "/summary.csv", summary);
    if (!comparison.empty()) write_text(a.out_dir + "/comparison.csv", comparison);
  }
  return bad == 0 ? 0 : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator for reservation-based cluster scheduling"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a scenario file");
  g->add_option("--spec", gen.spec_path, "generator spec JSON")->check(CLI::ExistingFile);
  g->add_option("--preset", gen.preset, "wordcount, pagerank or mixed");
  g->add_option("--seed", gen.seed, "generator seed");
  g->add_option("-o,--out", gen.out, "output path (default stdout)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "simulate one scenario under one scheduler");
  auto* scen_opt = r->add_option("scenario", run.scenario, "scenario JSON");
  auto* fig_flag = r->add_flag("--fig1", run.fig1, "use the reconstructed motivating example");
  scen_opt->excludes(fig_flag);
  r->add_option("--scheduler", run.scheduler, "fcfs, dress or static")
      ->check(CLI::IsMember({"fcfs", "dress", "static"}));
  r->add_option("--trace", run.trace, "write the JSON-lines trace here");
  r->add_option("--summary", run.summary, "write the summary CSV here");
  r->add_option("--plot", run.plot, "write per-job plot data here");
  r->add_option("--name", run.name, "scenario label used in outputs");
  run.over.add_to(r);

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "run scenarios x schedulers x seeds in parallel");
  sw->add_option("scenarios", sweep.scenarios, "scenario files or glob patterns");
  sw->add_option("--gen-spec", sweep.gen_spec, "generate one scenario per seed from this spec");
  sw->add_option("--preset", sweep.preset, "generate one preset scenario per seed");
  sw->add_option("--schedulers", sweep.schedulers, "comma-separated scheduler names");
  sw->add_option("--seeds", sweep.seeds, "comma-separated seeds");
  sw->add_option("--threads", sweep.threads, "worker threads (default: hardware)");
  sw->add_option("-o,--out", sweep.out, "summary CSV path (default stdout)");
  sw->add_option("--trace-dir", sweep.trace_dir, "directory for per-run traces");
  sweep.over.add_to(sw);

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "exact makespan oracle");
  o->require_subcommand(1);
  auto* os = o->add_subcommand("solve", "solve a scenario to optimality");
  os->add_option("scenario", oracle.scenario)->required();
  os->add_flag("--gang", oracle.gang, "one gang task per single-phase job");
  os->add_option("--budget", oracle.budget, "node budget");
  os->add_option("-o,--out", oracle.out, "solution JSON path");
  auto* oc = o->add_subcommand("check", "check a solution against its scenario");
  oc->add_option("scenario", oracle.scenario)->required();
  oc->add_option("solution", oracle.solution)->required();
  oc->add_flag("--gang", oracle.gang, "one gang task per single-phase job");
  auto* of = o->add_subcommand("fig1", "reconstruct the four-job motivating example");
  of->add_option("-o,--out", oracle.out, "also save the scenario here");

  ReportArgs report;
  auto* rep = app.add_subcommand("report", "summaries, comparison and plot data from traces");
  rep->add_option("traces", report.traces, "trace files or glob patterns")->required();
  rep->add_option("--out-dir", report.out_dir, "write CSV files here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*r) {
      if (run.scenario.empty() && !run.fig1) {
        std::cerr << "run: a scenario file (or --fig1) is required\n";
        return kUsage;
      }
      return cmd_run(run);
    }
    if (*sw) return cmd_sweep(sweep);
    if (*os) return cmd_oracle_solve(oracle);
    if (*oc) return cmd_oracle_check(oracle);
    if (*of) return cmd_oracle_fig1(oracle);
    if (*rep) return cmd_report(report);
  } catch (const Failure& f) {
    std::cerr << "error (" << dress_status_name(f.status) << "): " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
