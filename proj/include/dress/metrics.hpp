#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dress/trace.hpp"

namespace dress {

struct JobMetrics {
  JobId job = 0;
  Category category = Category::kNone;
  Tick submit = 0;
  Tick waiting = 0;
  Tick execution = 0;  // completion - waiting
  Tick completion = 0;
};

struct RunSummary {
  std::string scheduler;
  std::string scenario;
  std::uint64_t seed = 0;
  Tick makespan = 0;
  std::vector<JobMetrics> jobs;
  double avg_wait = 0;
  double median_wait = 0;
  double avg_completion = 0;
  double median_completion = 0;
  std::optional<double> sd_avg_completion;  // absent when no SD jobs
  std::optional<double> ld_avg_completion;
  std::int64_t work_conservation_misses = 0;
};

double mean(const std::vector<Tick>& xs);
// Even-length lists use the mean of the two central values.
double median(std::vector<Tick> xs);

RunSummary summarize(const ScheduleTrace& trace);

struct MetricDelta {
  std::string metric;
  double baseline = 0;
  double candidate = 0;
  double delta = 0;      // candidate - baseline
  double reduction = 0;  // percent of baseline, positive when candidate is lower
};

struct ComparisonRow {
  std::string scenario;
  std::string baseline;
  std::string candidate;
  std::vector<std::optional<MetricDelta>> metrics;  // comparison_metrics() order
};

const std::vector<std::string>& comparison_metrics();

// One row per pair (i < j) of summaries, i as baseline. All summaries must
// share a scenario and seed.
std::vector<ComparisonRow> compare(const std::vector<RunSummary>& summaries);

std::string summary_csv_header();
std::string summary_csv_row(const RunSummary& s);
std::string summaries_to_csv(const std::vector<RunSummary>& rows);
// Parses rows back; per-job data is not part of the CSV.
std::vector<RunSummary> summaries_from_csv(const std::string& text);

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows);
std::string comparison_to_text(const std::vector<ComparisonRow>& rows);

// Grouped-bar plot data: one row per job with its waiting and execution
// time.
std::string plot_csv(const RunSummary& s);

std::string format_double(double v);

}  // namespace dress
