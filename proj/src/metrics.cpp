#include "dress/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "dress/error.hpp"

namespace dress {

double mean(const std::vector<Tick>& xs) {
  if (xs.empty()) return 0;
  long double sum = 0;
  for (Tick x : xs) sum += x;
  return static_cast<double>(sum / xs.size());
}

double median(std::vector<Tick> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return static_cast<double>(xs[n / 2]);
  return (static_cast<double>(xs[n / 2 - 1]) + static_cast<double>(xs[n / 2])) / 2.0;
}

RunSummary summarize(const ScheduleTrace& trace) {
  RunSummary s;
  s.scheduler = trace.scheduler;
  s.scenario = trace.scenario;
  s.seed = trace.seed;
  s.makespan = trace.makespan;
  s.work_conservation_misses = trace.work_conservation_misses;

  struct Span {
    Tick first_start = 0;
    Tick last_finish = 0;
    int tasks = 0;
  };
  std::map<JobId, Span> spans;
  for (const auto& t : trace.tasks) {
    auto [it, fresh] = spans.try_emplace(t.job, Span{t.start, t.completion, 0});
    auto& sp = it->second;
    sp.first_start = std::min(sp.first_start, t.start);
    sp.last_finish = std::max(sp.last_finish, t.completion);
    ++sp.tasks;
    if (t.completion > trace.makespan) {
      throw invariant_error("task " + std::to_string(t.task) + " finishes after the makespan");
    }
  }

  std::vector<Tick> waits, completions, sd, ld;
  for (const auto& job : trace.jobs) {
    auto it = spans.find(job.job);
    if (it == spans.end() || it->second.tasks != job.tasks) {
      throw invariant_error("incomplete trace: job " + std::to_string(job.job) +
                            " is missing task records");
    }
    JobMetrics m;
    m.job = job.job;
    m.category = job.category;
    m.submit = job.submit;
    m.waiting = it->second.first_start - job.submit;
    m.completion = it->second.last_finish - job.submit;
    m.execution = m.completion - m.waiting;
    if (m.waiting < 0) {
      throw invariant_error("job " + std::to_string(job.job) + " starts before submission");
    }
    waits.push_back(m.waiting);
    completions.push_back(m.completion);
    if (m.category == Category::kSmall) sd.push_back(m.completion);
    if (m.category == Category::kLarge) ld.push_back(m.completion);
    s.jobs.push_back(m);
  }
  s.avg_wait = mean(waits);
  s.median_wait = median(waits);
  s.avg_completion = mean(completions);
  s.median_completion = median(completions);
  if (!sd.empty()) s.sd_avg_completion = mean(sd);
  if (!ld.empty()) s.ld_avg_completion = mean(ld);
  return s;
}

const std::vector<std::string>& comparison_metrics() {
  static const std::vector<std::string> names{
      "makespan",       "avg_wait",          "median_wait",       "avg_completion",
      "median_completion", "sd_avg_completion", "ld_avg_completion"};
  return names;
}

namespace {

std::vector<std::optional<double>> metric_values(const RunSummary& s) {
  return {static_cast<double>(s.makespan), s.avg_wait,          s.median_wait,
          s.avg_completion,                s.median_completion, s.sd_avg_completion,
          s.ld_avg_completion};
}

}  // namespace

std::vector<ComparisonRow> compare(const std::vector<RunSummary>& summaries) {
  if (summaries.size() < 2) throw config_error("compare needs at least two summaries");
  for (const auto& s : summaries) {
    if (s.scenario != summaries.front().scenario || s.seed != summaries.front().seed) {
      throw config_error("cannot compare runs of different scenarios: " +
                         summaries.front().scenario + " vs " + s.scenario);
    }
  }
  std::vector<ComparisonRow> rows;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    for (std::size_t j = i + 1; j < summaries.size(); ++j) {
      ComparisonRow row;
      row.scenario = summaries[i].scenario;
      row.baseline = summaries[i].scheduler;
      row.candidate = summaries[j].scheduler;
      const auto a = metric_values(summaries[i]);
      const auto b = metric_values(summaries[j]);
      for (std::size_t m = 0; m < a.size(); ++m) {
        if (!a[m] || !b[m]) {
          row.metrics.push_back(std::nullopt);
          continue;
        }
        MetricDelta d;
        d.metric = comparison_metrics()[m];
        d.baseline = *a[m];
        d.candidate = *b[m];
        d.delta = d.candidate - d.baseline;
        d.reduction = d.baseline == 0 ? 0 : (d.baseline - d.candidate) / d.baseline * 100.0;
        row.metrics.push_back(d);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& field) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw parse_error(field, "not a number: '" + s + "'");
  }
  return v;
}

template <class Int>
Int parse_int(const std::string& s, const std::string& field) {
  Int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw parse_error(field, "not an integer: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string summary_csv_header() {
  return "scheduler,scenario,seed,makespan,avg_wait,median_wait,avg_completion,"
         "median_completion,sd_avg_completion,ld_avg_completion";
}

std::string summary_csv_row(const RunSummary& s) {
  std::ostringstream os;
  os << s.scheduler << ',' << s.scenario << ',' << s.seed << ',' << s.makespan << ','
     << format_double(s.avg_wait) << ',' << format_double(s.median_wait) << ','
     << format_double(s.avg_completion) << ',' << format_double(s.median_completion) << ','
     << opt(s.sd_avg_completion) << ',' << opt(s.ld_avg_completion);
  return os.str();
}

std::string summaries_to_csv(const std::vector<RunSummary>& rows) {
  std::string out = summary_csv_header() + "\n";
  for (const auto& r : rows) out += summary_csv_row(r) + "\n";
  return out;
}

std::vector<RunSummary> summaries_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != summary_csv_header()) {
    throw parse_error("csv", "missing or unexpected header");
  }
  std::vector<RunSummary> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    const std::string where = "csv line " + std::to_string(lineno);
    if (f.size() != 10) throw parse_error(where, "expected 10 fields");
    RunSummary s;
    s.scheduler = f[0];
    s.scenario = f[1];
    s.seed = parse_int<std::uint64_t>(f[2], where + " seed");
    s.makespan = parse_int<Tick>(f[3], where + " makespan");
    s.avg_wait = parse_double(f[4], where + " avg_wait");
    s.median_wait = parse_double(f[5], where + " median_wait");
    s.avg_completion = parse_double(f[6], where + " avg_completion");
    s.median_completion = parse_double(f[7], where + " median_completion");
    if (!f[8].empty()) s.sd_avg_completion = parse_double(f[8], where + " sd_avg_completion");
    if (!f[9].empty()) s.ld_avg_completion = parse_double(f[9], where + " ld_avg_completion");
    out.push_back(std::move(s));
  }
  return out;
}

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "scenario,baseline,candidate";
  for (const auto& m : comparison_metrics()) out += "," + m + "_delta," + m + "_reduction_pct";
  out += "\n";
  for (const auto& r : rows) {
    out += r.scenario + "," + r.baseline + "," + r.candidate;
    for (const auto& m : r.metrics) {
      if (m) {
        out += "," + format_double(m->delta) + "," + format_double(m->reduction);
      } else {
        out += ",,";
      }
    }
    out += "\n";
  }
  return out;
}

std::string comparison_to_text(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.baseline << " -> " << r.candidate << " (" << r.scenario << ")\n";
    for (const auto& m : r.metrics) {
      if (!m) continue;
      os << "  " << std::left << std::setw(18) << m->metric << std::right << std::fixed
         << std::setprecision(2) << std::setw(12) << m->baseline << std::setw(12)
         << m->candidate << std::setw(12) << m->delta << std::setw(9) << m->reduction
         << "%\n";
    }
  }
  return os.str();
}

std::string plot_csv(const RunSummary& s) {
  std::string out = "job,category,waiting,execution\n";
  for (const auto& j : s.jobs) {
    out += std::to_string(j.job) + "," + std::string(to_string(j.category)) + "," +
           std::to_string(j.waiting) + "," + std::to_string(j.execution) + "\n";
  }
  return out;
}

}  // namespace dress
