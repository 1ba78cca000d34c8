#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "bucketeer/bench.hpp"
#include "bucketeer/errors.hpp"
#include "bucketeer/harness.hpp"
#include "bucketeer/report.hpp"

namespace bucketeer {
namespace {

const CorpusSpec kSmall{200000, kSeededIdPattern, 0};

TEST(VariantTest, Names) {
  EXPECT_EQ(to_string(AlgoVariant::Algo1), "algo1");
  EXPECT_EQ(parse_variant("3"), AlgoVariant::Algo3);
  EXPECT_EQ(parse_variant("algo4"), AlgoVariant::Algo4);
  EXPECT_FALSE(parse_variant("5").has_value());
  EXPECT_FALSE(parse_variant("algo").has_value());
  EXPECT_TRUE(std::holds_alternative<OriginalAlgorithm>(algorithm_of(AlgoVariant::Algo1)));
  EXPECT_EQ(std::get<NewAlgorithm>(algorithm_of(AlgoVariant::Algo2)).kind, HashKind::Fnv1a64);
  EXPECT_EQ(std::get<NewAlgorithm>(algorithm_of(AlgoVariant::Algo3)).kind, HashKind::Md5_64);
  EXPECT_EQ(std::get<NewAlgorithm>(algorithm_of(AlgoVariant::Algo4)).kind, HashKind::Spooky64);
  EXPECT_EQ(parse_condition("lt"), Condition::LessThan);
  EXPECT_EQ(parse_condition("eq"), Condition::EqualTo);
  EXPECT_FALSE(parse_condition("le").has_value());
}

TEST(ScenarioTest, RejectsInconsistentScenarios) {
  const CorpusSpec tiny{1000, "u{index}", 0};
  EXPECT_THROW(validate(uniformity_scenario(AlgoVariant::Algo4, tiny, 10, Condition::LessThan, 20)),
               ConfigError);
  EXPECT_THROW(validate(uniformity_scenario(AlgoVariant::Algo4, tiny, 10, Condition::LessThan, 0)),
               ConfigError);
  EXPECT_THROW(validate(uniformity_scenario(AlgoVariant::Algo4, tiny, 10, Condition::EqualTo, 10)),
               ConfigError);
  EXPECT_NO_THROW(validate(uniformity_scenario(AlgoVariant::Algo4, tiny, 10, Condition::EqualTo, 9)));
  EXPECT_THROW(validate(uniformity_scenario(AlgoVariant::Algo4, tiny, 100, Condition::LessThan, 100,
                                            1.5)),
               ConfigError);
  EXPECT_THROW(validate(uniformity_scenario(AlgoVariant::Algo4, {0, "u{index}", 0}, 100,
                                            Condition::LessThan, 100)),
               ConfigError);

  auto ind = independence_scenario(AlgoVariant::Algo3, tiny, {"a", "b"});
  EXPECT_NO_THROW(validate(ind));
  ind.exposure_percent = 50;
  EXPECT_THROW(validate(ind), ConfigError);
  EXPECT_THROW(run_independence(AlgoVariant::Algo3, tiny, {"same", "same"}), ConfigError);

  const ExperimentConfig single{"e", "", 100, {{"only", 100}}};
  EXPECT_THROW(run_srm_check(AlgoVariant::Algo4, tiny, single), ConfigError);
  const ExperimentConfig bad{"e", "", 100, {{"a", 30}, {"b", 30}}};
  EXPECT_THROW(run_srm_check(AlgoVariant::Algo4, tiny, bad), ConfigError);
}

TEST(ScenarioTest, SampleSizeFloorSuggestsLargerCorpus) {
  const CorpusSpec corpus{5000, "u{index}", 0};
  try {
    run_uniformity(AlgoVariant::Algo4, corpus, 100, Condition::EqualTo, 5);
    FAIL() << "expected SampleSizeError";
  } catch (const SampleSizeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("500"), std::string::npos) << msg;
    EXPECT_NE(msg.find("larger corpus"), std::string::npos) << msg;
  }
}

TEST(UniformityTest, HistogramMatchesSequentialCount) {
  const auto users = generate_corpus(kSmall);
  const auto scenario = uniformity_scenario(AlgoVariant::Algo2, kSmall, 30, Condition::LessThan, 20);
  const auto report = run_scenario(scenario, users);
  ASSERT_TRUE(report.histogram.has_value());

  Histogram100 expected;
  const auto config = experiment_config(scenario, 0);
  for (const auto& u : users) {
    const auto t = assign_new(config, u, HashKind::Fnv1a64);
    if (t.r_e < 20) expected.add(*t.r_b);
  }
  EXPECT_EQ(report.histogram->counts(), expected.counts());
  EXPECT_EQ(report.test.statistic, gof_uniform(expected).statistic);
}

TEST(UniformityTest, OriginalSchemeSkewsUnderPartialExposure) {
  const auto skewed = run_uniformity(AlgoVariant::Algo1, kSmall, 10, Condition::LessThan, 10);
  EXPECT_TRUE(skewed.test.reject);
  EXPECT_LT(skewed.test.p_value, 1e-6);
  for (auto v : {AlgoVariant::Algo3, AlgoVariant::Algo4}) {
    EXPECT_FALSE(run_uniformity(v, kSmall, 10, Condition::LessThan, 10).test.reject)
        << to_string(v);
  }
}

TEST(UniformityTest, ReportRoundTripsThroughJson) {
  const auto report = run_uniformity(AlgoVariant::Algo4, kSmall, 40, Condition::EqualTo, 7);
  const Json json = to_json(report);
  EXPECT_EQ(json.at("kind"), "uniformity");
  EXPECT_EQ(json.at("variant"), "algo4");
  const Scenario back = scenario_from_json(json.at("scenario"));
  EXPECT_EQ(back, report.scenario);
  const auto again = run_scenario(back);
  EXPECT_EQ(again.test.statistic, report.test.statistic);
  EXPECT_EQ(again.test.p_value, report.test.p_value);
  EXPECT_EQ(test_report_from_json(json.at("gof_uniform")).statistic, report.test.statistic);
  EXPECT_EQ(dump(to_json(again)), dump(json));
}

TEST(IndependenceTest, TableAndScatter) {
  const auto users = generate_corpus(kSmall);
  const auto scenario = independence_scenario(AlgoVariant::Algo4, kSmall, {"exp_A", "exp_B"});
  const auto report = run_scenario(scenario, users);
  ASSERT_TRUE(report.contingency.has_value());
  EXPECT_EQ(report.contingency->total(), users.size());
  EXPECT_EQ(report.test.df, 1);
  EXPECT_FALSE(report.test.reject);

  ASSERT_EQ(report.scatter.size(), kScatterSize);
  const auto a = experiment_config(scenario, 0);
  const auto b = experiment_config(scenario, 1);
  for (std::size_t i = 0; i < kScatterSize; ++i) {
    EXPECT_EQ(report.scatter[i].first, *assign_new(a, users[i], HashKind::Spooky64).r_b);
    EXPECT_EQ(report.scatter[i].second, *assign_new(b, users[i], HashKind::Spooky64).r_b);
  }

  const Json json = to_json(report);
  EXPECT_EQ(json.at("kind"), "independence");
  EXPECT_EQ(json.at("scatter").size(), kScatterSize);
  EXPECT_EQ(run_scenario(scenario_from_json(json.at("scenario"))).test.statistic,
            report.test.statistic);
}

TEST(IndependenceTest, ScatterShorterThanCorpusLimit) {
  const CorpusSpec corpus{600, "u{index}", 0};
  const auto report = run_independence(AlgoVariant::Algo3, corpus, {"x", "y"});
  EXPECT_EQ(report.scatter.size(), 600u);
}

TEST(SrmTest, BalancedSplitPasses) {
  const ExperimentConfig config{"exp_A", "", 100, {{"a", 0}, {"b", 25}, {"c", 75}}};
  const auto report =
      run_scenario(srm_scenario(AlgoVariant::Algo4, kSmall, config));
  EXPECT_FALSE(report.test.reject);
  EXPECT_EQ(report.test.df, 1);
  ASSERT_EQ(report.bucket_counts.size(), 3u);
  EXPECT_EQ(report.bucket_counts[0], 0u);
  EXPECT_EQ(report.bucket_counts[1] + report.bucket_counts[2], kSmall.n_users);
}

// Under the original scheme the bucket residue mod 4 is tied to the exposure
// residue, so a 10% window with a 10/90 split shows a sample ratio mismatch.
TEST(SrmTest, OriginalSchemeMismatchAtPartialExposure) {
  const CorpusSpec corpus{1'000'000, kSeededIdPattern, 0};
  const ExperimentConfig config{"exp_A", "", 10, {{"control", 10}, {"treatment", 90}}};
  const auto algo1 = run_srm_check(AlgoVariant::Algo1, corpus, config);
  EXPECT_TRUE(algo1.reject);
  EXPECT_LT(algo1.p_value, 1e-6);
  EXPECT_GT(run_srm_check(AlgoVariant::Algo3, corpus, config).p_value, 1e-3);
  EXPECT_GT(run_srm_check(AlgoVariant::Algo4, corpus, config).p_value, 1e-3);
}

TEST(BenchTest, ShapeAndRatios) {
  const CorpusSpec corpus{5000, "u{index}", 0};
  const std::vector<AlgoVariant> variants = {AlgoVariant::Algo1, AlgoVariant::Algo2,
                                             AlgoVariant::Algo4};
  const auto report = run_latency_bench(variants, corpus, 3);
  EXPECT_EQ(report.iterations, 3);
  EXPECT_EQ(report.chunk_size, kBenchChunk);
  ASSERT_EQ(report.rows.size(), 3u);
  for (std::size_t i = 0; i < variants.size(); ++i) {
    EXPECT_EQ(report.rows[i].variant, variants[i]);
    EXPECT_EQ(report.rows[i].iteration_medians.size(), 3u);
    EXPECT_GT(report.rows[i].ns_per_assignment, 0.0);
  }
  ASSERT_EQ(report.ratios.size(), 6u);
  for (const auto& r : report.ratios) {
    double base = 0, other = 0;
    for (const auto& row : report.rows) {
      if (row.variant == r.baseline) base = row.ns_per_assignment;
      if (row.variant == r.variant) other = row.ns_per_assignment;
    }
    EXPECT_DOUBLE_EQ(r.ratio, base / other);
  }
  const std::string table = format_bench_table(report);
  EXPECT_NE(table.find("algo1"), std::string::npos);
  EXPECT_NE(table.find("speedup"), std::string::npos);
  const Json json = to_json(report);
  EXPECT_EQ(json.at("rows").size(), 3u);
}

TEST(BenchTest, Errors) {
  const CorpusSpec corpus{100, "u{index}", 0};
  const std::vector<AlgoVariant> none;
  const std::vector<AlgoVariant> dup = {AlgoVariant::Algo1, AlgoVariant::Algo1};
  const std::vector<AlgoVariant> one = {AlgoVariant::Algo1};
  EXPECT_THROW(run_latency_bench(none, corpus, 1), InputError);
  EXPECT_THROW(run_latency_bench(dup, corpus, 1), InputError);
  EXPECT_THROW(run_latency_bench(one, corpus, 0), InputError);
}

}  // namespace
}  // namespace bucketeer
