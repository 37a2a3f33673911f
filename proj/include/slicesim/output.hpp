// output.hpp -- result bundle writers: summary.csv, timeline.csv, run.json
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "slicesim/engine.hpp"
#include "slicesim/scenario_file.hpp"

namespace slicesim {

// Locale-independent shortest fixed-notation rendering; identical inputs
// always yield identical bytes.
std::string format_double(double value);

// One (tenant, subslice) summary row plus a final cell row. The cell row
// reports the run's mean grid utilization (a fraction) in the
// mean_grant_rbs column.
std::string summary_csv(const Summary& summary);

// Per-TTI rows per (tenant, subslice) plus a cell row whose granted_rbs
// column holds the number of RBs assigned on the grid that TTI.
std::string timeline_csv(const std::vector<MetricsRecord>& records);

// compare.csv: the per-policy summary rows stacked under a policy column.
std::string compare_csv(const std::vector<std::pair<std::string, Summary>>& by_policy);

std::string run_json(const ParsedScenario& parsed, const SharingPolicy& policy,
                     std::uint64_t seed, long duration_ttis);

void write_text_file(const std::filesystem::path& path, const std::string& content);

// Writes summary.csv, timeline.csv and run.json under dir.
void write_bundle(const std::filesystem::path& dir, const ParsedScenario& parsed,
                  const SharingPolicy& policy, std::uint64_t seed, const RunResult& result);

}  // namespace slicesim
