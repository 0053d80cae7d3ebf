#pragma once

#include <string>

#include "dress/metrics.hpp"
#include "dress/trace.hpp"

namespace dress {

// JSON lines: a "run" header, then "task", "tick" and "job" records in
// trace order, then a "summary" record. Output is a pure function of the
// trace.
std::string trace_to_jsonl(const ScheduleTrace& trace);
ScheduleTrace trace_from_jsonl(const std::string& text);

void save_trace(const std::string& path, const ScheduleTrace& trace);
ScheduleTrace load_trace(const std::string& path);

}  // namespace dress
