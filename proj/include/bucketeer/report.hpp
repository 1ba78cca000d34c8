#pragma once

// JSON and CSV encodings shared by the CLI and the reproduction suite.
//
// TestReport        {"statistic","df","p_value","alpha","reject"}
// ExperimentConfig  {"experiment_id","salt","exposure_rate_percent","buckets":[{"name","percentage"}]}
// ValidationReport  {"kind","variant","scenario",<test name>:TestReport, payload...}
// Histogram CSV     "cell,count"
// Scatter CSV       "rb_i,rb_j"

#include <span>
#include <string>
#include <utility>

#include "bucketeer/assignment.hpp"
#include "bucketeer/bench.hpp"
#include "bucketeer/harness.hpp"
#include "bucketeer/stats.hpp"
#include "json.hpp"

namespace bucketeer {

using Json = nlohmann::ordered_json;

// Compact by default; two-space indentation when `pretty`. Always newline-terminated.
std::string dump(const Json& json, bool pretty = false);

std::string hex64(HashValue value);

Json to_json(const TestReport& report);
TestReport test_report_from_json(const Json& json);

Json to_json(const ExperimentConfig& config);
// Throws ConfigError for missing/mistyped fields or an invalid config.
ExperimentConfig experiment_config_from_json(const Json& json);

Json to_json(const CorpusSpec& spec);
CorpusSpec corpus_spec_from_json(const Json& json);

Json to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& json);

// Name under which the report's TestReport is stored: "gof_uniform",
// "independence" or "srm".
std::string_view test_name(ScenarioKind kind) noexcept;

Json to_json(const ValidationReport& report);
Json to_json(const AssignmentTrace& trace);
Json to_json(const BenchReport& report);

std::string histogram_csv(const Histogram100& hist);
std::string scatter_csv(std::span<const std::pair<int, int>> points);

}  // namespace bucketeer
