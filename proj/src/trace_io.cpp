#include "dress/trace_io.hpp"

#include <sstream>

#include "dress/error.hpp"
#include "dress/scenario_io.hpp"
#include "json.hpp"

namespace dress {

using nlohmann::ordered_json;

namespace {

TaskKind kind_from_string(const std::string& s) {
  if (s == "normal") return TaskKind::kNormal;
  if (s == "heading") return TaskKind::kHeading;
  if (s == "trailing") return TaskKind::kTrailing;
  throw parse_error("kind", "unknown task kind '" + s + "'");
}

ordered_json vec(const ResourceVector& r) { return r.amounts(); }

ResourceVector vec_from(const ordered_json& j) {
  return ResourceVector(j.get<std::vector<std::int64_t>>());
}

}  // namespace

std::string trace_to_jsonl(const ScheduleTrace& trace) {
  std::ostringstream os;
  ordered_json head;
  head["type"] = "run";
  head["scheduler"] = trace.scheduler;
  head["scenario"] = trace.scenario;
  head["seed"] = trace.seed;
  head["total_slots"] = trace.total_slots;
  head["servers"] = ordered_json::array();
  for (const auto& s : trace.servers) head["servers"].push_back(vec(s));
  head["makespan"] = trace.makespan;
  head["work_conservation_misses"] = trace.work_conservation_misses;
  os << head.dump() << '\n';

  for (const auto& t : trace.tasks) {
    ordered_json j;
    j["type"] = "task";
    j["task"] = t.task;
    j["job"] = t.job;
    j["phase"] = t.phase;
    j["kind"] = to_string(t.kind);
    j["category"] = to_string(t.category);
    j["pool"] = to_string(t.pool);
    j["demand"] = vec(t.demand);
    j["server"] = t.server;
    j["grant"] = t.grant;
    j["start"] = t.start;
    j["duration"] = t.duration;
    j["completion"] = t.completion;
    os << j.dump() << '\n';
  }
  for (const auto& t : trace.ticks) {
    ordered_json j;
    j["type"] = "tick";
    j["tick"] = t.tick;
    j["free"] = t.free_slots;
    j["occupied_sd"] = t.occupied_sd;
    j["occupied_ld"] = t.occupied_ld;
    j["grants"] = t.grants;
    if (t.delta) {
      j["delta"] = *t.delta;
      j["quota_sd"] = t.quota_sd;
      j["quota_ld"] = t.quota_ld;
      j["pending_sd"] = t.pending_sd;
      j["pending_ld"] = t.pending_ld;
      j["forecast"] = t.forecast;
      j["forecast_sd"] = t.forecast_sd;
      j["forecast_ld"] = t.forecast_ld;
      j["borrow"] = t.borrow;
    }
    j["branch"] = t.branch;
    os << j.dump() << '\n';
  }
  for (const auto& job : trace.jobs) {
    ordered_json j;
    j["type"] = "job";
    j["job"] = job.job;
    j["submit"] = job.submit;
    j["category"] = to_string(job.category);
    j["pool"] = to_string(job.pool);
    j["demand_slots"] = job.demand_slots;
    j["tasks"] = job.tasks;
    j["alpha"] = job.alpha;
    j["beta"] = job.beta;
    os << j.dump() << '\n';
  }

  const RunSummary s = summarize(trace);
  ordered_json j;
  j["type"] = "summary";
  j["makespan"] = s.makespan;
  j["avg_wait"] = s.avg_wait;
  j["median_wait"] = s.median_wait;
  j["avg_completion"] = s.avg_completion;
  j["median_completion"] = s.median_completion;
  j["sd_avg_completion"] = s.sd_avg_completion ? ordered_json(*s.sd_avg_completion) : nullptr;
  j["ld_avg_completion"] = s.ld_avg_completion ? ordered_json(*s.ld_avg_completion) : nullptr;
  j["work_conservation_misses"] = s.work_conservation_misses;
  os << j.dump() << '\n';
  return os.str();
}

ScheduleTrace trace_from_jsonl(const std::string& text) {
  ScheduleTrace trace;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_head = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "trace line " + std::to_string(lineno);
    try {
      const auto j = ordered_json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "run") {
        trace.scheduler = j.at("scheduler").get<std::string>();
        trace.scenario = j.at("scenario").get<std::string>();
        trace.seed = j.at("seed").get<std::uint64_t>();
        trace.total_slots = j.at("total_slots").get<std::int64_t>();
        for (const auto& s : j.at("servers")) trace.servers.push_back(vec_from(s));
        trace.makespan = j.at("makespan").get<Tick>();
        trace.work_conservation_misses = j.at("work_conservation_misses").get<std::int64_t>();
        have_head = true;
      } else if (type == "task") {
        TaskRecord t;
        t.task = j.at("task").get<TaskId>();
        t.job = j.at("job").get<JobId>();
        t.phase = j.at("phase").get<int>();
        t.kind = kind_from_string(j.at("kind").get<std::string>());
        t.category = category_from_string(j.at("category").get<std::string>());
        t.pool = category_from_string(j.at("pool").get<std::string>());
        t.demand = vec_from(j.at("demand"));
        t.server = j.at("server").get<ServerId>();
        t.grant = j.at("grant").get<Tick>();
        t.start = j.at("start").get<Tick>();
        t.duration = j.at("duration").get<Tick>();
        t.completion = j.at("completion").get<Tick>();
        trace.tasks.push_back(std::move(t));
      } else if (type == "tick") {
        TickRecord t;
        t.tick = j.at("tick").get<Tick>();
        t.free_slots = j.at("free").get<std::int64_t>();
        t.occupied_sd = j.at("occupied_sd").get<std::int64_t>();
        t.occupied_ld = j.at("occupied_ld").get<std::int64_t>();
        t.grants = j.at("grants").get<std::int64_t>();
        if (j.contains("delta")) {
          t.delta = j.at("delta").get<double>();
          t.quota_sd = j.at("quota_sd").get<std::int64_t>();
          t.quota_ld = j.at("quota_ld").get<std::int64_t>();
          t.pending_sd = j.at("pending_sd").get<std::int64_t>();
          t.pending_ld = j.at("pending_ld").get<std::int64_t>();
          t.forecast = j.at("forecast").get<std::int64_t>();
          t.forecast_sd = j.at("forecast_sd").get<std::int64_t>();
          t.forecast_ld = j.at("forecast_ld").get<std::int64_t>();
          t.borrow = j.at("borrow").get<bool>();
        }
        t.branch = j.at("branch").get<std::string>();
        trace.ticks.push_back(std::move(t));
      } else if (type == "job") {
        JobRecord r;
        r.job = j.at("job").get<JobId>();
        r.submit = j.at("submit").get<Tick>();
        r.category = category_from_string(j.at("category").get<std::string>());
        r.pool = category_from_string(j.at("pool").get<std::string>());
        r.demand_slots = j.at("demand_slots").get<std::int64_t>();
        r.tasks = j.at("tasks").get<int>();
        r.alpha = j.at("alpha").get<Tick>();
        r.beta = j.at("beta").get<Tick>();
        trace.jobs.push_back(r);
      } else if (type != "summary") {
        throw parse_error("type", "unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(where, e.what());
    } catch (const Error& e) {
      throw parse_error(where, e.what());
    }
  }
  if (!have_head) throw parse_error("trace", "missing run record");
  return trace;
}

void save_trace(const std::string& path, const ScheduleTrace& trace) {
  write_file(path, trace_to_jsonl(trace));
}

ScheduleTrace load_trace(const std::string& path) {
  return trace_from_jsonl(read_file(path));
}

}  // namespace dress
