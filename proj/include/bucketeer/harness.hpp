#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bucketeer/assignment.hpp"
#include "bucketeer/corpus.hpp"
#include "bucketeer/stats.hpp"

namespace bucketeer {

// algo1: original two-step FNV. algo2/3/4: single-hash scheme with FNV/MD5/Spooky.
enum class AlgoVariant { Algo1, Algo2, Algo3, Algo4 };

inline constexpr std::array<AlgoVariant, 4> kAllVariants = {
    AlgoVariant::Algo1, AlgoVariant::Algo2, AlgoVariant::Algo3, AlgoVariant::Algo4};

std::string_view to_string(AlgoVariant variant) noexcept;
// Accepts "1".."4" and "algo1".."algo4".
std::optional<AlgoVariant> parse_variant(std::string_view text) noexcept;
AlgorithmChoice algorithm_of(AlgoVariant variant) noexcept;

enum class Condition { LessThan, EqualTo };

std::string_view to_string(Condition condition) noexcept;  // "lt" / "eq"
std::optional<Condition> parse_condition(std::string_view text) noexcept;

enum class ScenarioKind { Uniformity, Independence, Srm };

std::string_view to_string(ScenarioKind kind) noexcept;

inline constexpr std::string_view kDefaultExperimentA = "exp_A";
inline constexpr std::string_view kDefaultExperimentB = "exp_B";
inline constexpr std::size_t kScatterSize = 1000;

// Everything needed to recompute a ValidationReport. Uniformity uses one
// experiment and the (condition, y) filter on R_e; independence uses two
// experiments at full exposure; SRM uses one experiment with its own split.
// Empty salts resolve to the matching experiment ID.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Uniformity;
  AlgoVariant variant = AlgoVariant::Algo4;
  CorpusSpec corpus;
  std::vector<std::string> experiment_ids;
  std::vector<std::string> salts;
  int exposure_percent = 100;
  std::vector<BucketSpec> buckets;
  Condition condition = Condition::LessThan;
  int y = 100;
  double alpha = kDefaultAlpha;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ValidationReport {
  Scenario scenario;
  TestReport test;
  std::optional<Histogram100> histogram;         // uniformity
  std::optional<ContingencyTable> contingency;   // independence
  std::vector<std::pair<int, int>> scatter;      // independence: (R_b^i, R_b^j)
  std::vector<std::uint64_t> bucket_counts;      // srm: exposed users per bucket
};

// Experiment config the harness uses for experiment `i` of a scenario.
ExperimentConfig experiment_config(const Scenario& scenario, std::size_t i);

Scenario uniformity_scenario(AlgoVariant variant, const CorpusSpec& corpus, int exposure_percent,
                             Condition condition, int y, double alpha = kDefaultAlpha);
Scenario independence_scenario(AlgoVariant variant, const CorpusSpec& corpus,
                               const std::pair<std::string, std::string>& experiment_ids,
                               double alpha = kDefaultAlpha);
Scenario srm_scenario(AlgoVariant variant, const CorpusSpec& corpus, const ExperimentConfig& config,
                      double alpha = kDefaultAlpha);

// Throws ConfigError for inconsistent scenarios (e.g. a condition that admits
// unexposed users, identical experiment IDs).
void validate(const Scenario& scenario);

// Runs a scenario. The `users` overload skips corpus generation; the caller
// guarantees `users` equals generate_corpus(scenario.corpus).
ValidationReport run_scenario(const Scenario& scenario);
ValidationReport run_scenario(const Scenario& scenario, std::span<const std::string> users);

// Histogram of R_b over users whose R_e satisfies the condition. Throws
// SampleSizeError (suggesting a larger corpus) below the 500-observation floor.
ValidationReport run_uniformity(AlgoVariant variant, const CorpusSpec& corpus, int exposure_percent,
                                Condition condition, int y, double alpha = kDefaultAlpha);

// Two experiments, full exposure, control/treatment 50/50, 2x2 bucket table plus
// a scatter of the first 1,000 users.
ValidationReport run_independence(AlgoVariant variant, const CorpusSpec& corpus,
                                  const std::pair<std::string, std::string>& experiment_ids,
                                  double alpha = kDefaultAlpha);

// Sample ratio mismatch: exposed bucket counts against the configured split.
// Buckets with a 0% allocation are left out.
TestReport run_srm_check(AlgoVariant variant, const CorpusSpec& corpus,
                         const ExperimentConfig& config, double alpha = kDefaultAlpha);

}  // namespace bucketeer
