#include "bucketeer/harness.hpp"

#include <algorithm>
#include <thread>

#include "bucketeer/errors.hpp"

namespace bucketeer {

namespace {

constexpr std::size_t kMinItemsPerThread = 16384;

// Runs body(acc, i) for i in [0, n) on worker-local accumulators and merges them.
// Accumulation must be order-independent (pure counting).
template <typename Acc, typename MakeAcc, typename Body, typename Merge>
Acc accumulate_parallel(std::size_t n, MakeAcc make_acc, Body body, Merge merge) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t threads = std::max<std::size_t>(1, std::min(hw, n / kMinItemsPerThread));
  std::vector<Acc> partial;
  partial.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) partial.push_back(make_acc());

  const std::size_t chunk = (n + threads - 1) / threads;
  auto run = [&](std::size_t t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    for (std::size_t i = begin; i < end; ++i) body(partial[t], i);
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run, t);
  }

  Acc result = std::move(partial.front());
  for (std::size_t t = 1; t < threads; ++t) merge(result, partial[t]);
  return result;
}

std::vector<BucketSpec> fifty_fifty() { return {{"control", 50}, {"treatment", 50}}; }

bool condition_holds(Condition condition, int y, int r_e) {
  return condition == Condition::LessThan ? r_e < y : r_e == y;
}

std::size_t positive_buckets(const std::vector<BucketSpec>& buckets) {
  return static_cast<std::size_t>(std::count_if(buckets.begin(), buckets.end(),
                                                [](const BucketSpec& b) { return b.percentage > 0; }));
}

ValidationReport uniformity(const Scenario& scenario, std::span<const std::string> users) {
  const ExperimentConfig config = experiment_config(scenario, 0);
  const AlgorithmChoice algorithm = algorithm_of(scenario.variant);

  Histogram100 hist = accumulate_parallel<Histogram100>(
      users.size(), [] { return Histogram100(); },
      [&](Histogram100& h, std::size_t i) {
        const AssignmentTrace trace = assign(config, users[i], algorithm);
        if (condition_holds(scenario.condition, scenario.y, trace.r_e)) h.add(*trace.r_b);
      },
      [](Histogram100& into, const Histogram100& from) { into.merge(from); });

  if (hist.total() < kMinUniformTotal) {
    throw SampleSizeError("only " + std::to_string(hist.total()) + " of " +
                          std::to_string(users.size()) +
                          " users satisfy the R_e condition; at least " +
                          std::to_string(kMinUniformTotal) + " are needed, use a larger corpus");
  }

  ValidationReport report;
  report.scenario = scenario;
  report.test = gof_uniform(hist, scenario.alpha);
  report.histogram = hist;
  return report;
}

ValidationReport independence(const Scenario& scenario, std::span<const std::string> users) {
  const ExperimentConfig first = experiment_config(scenario, 0);
  const ExperimentConfig second = experiment_config(scenario, 1);
  const AlgorithmChoice algorithm = algorithm_of(scenario.variant);
  const std::size_t rows = first.buckets.size();
  const std::size_t cols = second.buckets.size();

  ContingencyTable table = accumulate_parallel<ContingencyTable>(
      users.size(), [&] { return ContingencyTable(rows, cols); },
      [&](ContingencyTable& t, std::size_t i) {
        const auto a = assign(first, users[i], algorithm);
        const auto b = assign(second, users[i], algorithm);
        t.add(a.assignment.bucket_index(), b.assignment.bucket_index());
      },
      [&](ContingencyTable& into, const ContingencyTable& from) {
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cols; ++c) into.add(r, c, from.at(r, c));
      });

  ValidationReport report;
  report.scenario = scenario;
  report.test = independence_test(table, scenario.alpha);
  report.contingency = table;
  const std::size_t n_scatter = std::min(kScatterSize, users.size());
  report.scatter.reserve(n_scatter);
  for (std::size_t i = 0; i < n_scatter; ++i) {
    const auto a = assign(first, users[i], algorithm);
    const auto b = assign(second, users[i], algorithm);
    report.scatter.emplace_back(*a.r_b, *b.r_b);
  }
  return report;
}

ValidationReport srm(const Scenario& scenario, std::span<const std::string> users) {
  const ExperimentConfig config = experiment_config(scenario, 0);
  const AlgorithmChoice algorithm = algorithm_of(scenario.variant);
  const std::size_t k = config.buckets.size();

  std::vector<std::uint64_t> counts = accumulate_parallel<std::vector<std::uint64_t>>(
      users.size(), [k] { return std::vector<std::uint64_t>(k, 0); },
      [&](std::vector<std::uint64_t>& c, std::size_t i) {
        const auto trace = assign(config, users[i], algorithm);
        if (!trace.assignment.is_ignored()) ++c[trace.assignment.bucket_index()];
      },
      [k](std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
        for (std::size_t b = 0; b < k; ++b) into[b] += from[b];
      });

  std::vector<std::uint64_t> observed;
  std::vector<double> proportions;
  for (std::size_t b = 0; b < k; ++b) {
    if (config.buckets[b].percentage == 0) continue;
    observed.push_back(counts[b]);
    proportions.push_back(config.buckets[b].percentage / 100.0);
  }

  ValidationReport report;
  report.scenario = scenario;
  report.test = gof_test(observed, proportions, scenario.alpha);
  report.bucket_counts = std::move(counts);
  return report;
}

}  // namespace

std::string_view to_string(AlgoVariant variant) noexcept {
  switch (variant) {
    case AlgoVariant::Algo1: return "algo1";
    case AlgoVariant::Algo2: return "algo2";
    case AlgoVariant::Algo3: return "algo3";
    case AlgoVariant::Algo4: return "algo4";
  }
  return "unknown";
}

std::optional<AlgoVariant> parse_variant(std::string_view text) noexcept {
  if (text.starts_with("algo")) text.remove_prefix(4);
  if (text == "1") return AlgoVariant::Algo1;
  if (text == "2") return AlgoVariant::Algo2;
  if (text == "3") return AlgoVariant::Algo3;
  if (text == "4") return AlgoVariant::Algo4;
  return std::nullopt;
}

AlgorithmChoice algorithm_of(AlgoVariant variant) noexcept {
  switch (variant) {
    case AlgoVariant::Algo1: return OriginalAlgorithm{};
    case AlgoVariant::Algo2: return NewAlgorithm{HashKind::Fnv1a64};
    case AlgoVariant::Algo3: return NewAlgorithm{HashKind::Md5_64};
    case AlgoVariant::Algo4: return NewAlgorithm{HashKind::Spooky64};
  }
  return OriginalAlgorithm{};
}

std::string_view to_string(Condition condition) noexcept {
  return condition == Condition::LessThan ? "lt" : "eq";
}

std::optional<Condition> parse_condition(std::string_view text) noexcept {
  if (text == "lt") return Condition::LessThan;
  if (text == "eq") return Condition::EqualTo;
  return std::nullopt;
}

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::Uniformity: return "uniformity";
    case ScenarioKind::Independence: return "independence";
    case ScenarioKind::Srm: return "srm";
  }
  return "unknown";
}

ExperimentConfig experiment_config(const Scenario& scenario, std::size_t i) {
  ExperimentConfig config;
  config.experiment_id = scenario.experiment_ids.at(i);
  config.salt = i < scenario.salts.size() && !scenario.salts[i].empty() ? scenario.salts[i]
                                                                          : config.experiment_id;
  config.exposure_rate_percent = scenario.exposure_percent;
  config.buckets = scenario.buckets;
  return config;
}

Scenario uniformity_scenario(AlgoVariant variant, const CorpusSpec& corpus, int exposure_percent,
                             Condition condition, int y, double alpha) {
  Scenario s;
  s.kind = ScenarioKind::Uniformity;
  s.variant = variant;
  s.corpus = corpus;
  s.experiment_ids = {std::string(kDefaultExperimentA)};
  s.salts = {std::string(kDefaultExperimentA)};
  s.exposure_percent = exposure_percent;
  s.buckets = fifty_fifty();
  s.condition = condition;
  s.y = y;
  s.alpha = alpha;
  return s;
}

Scenario independence_scenario(AlgoVariant variant, const CorpusSpec& corpus,
                               const std::pair<std::string, std::string>& experiment_ids,
                               double alpha) {
  Scenario s;
  s.kind = ScenarioKind::Independence;
  s.variant = variant;
  s.corpus = corpus;
  s.experiment_ids = {experiment_ids.first, experiment_ids.second};
  s.salts = s.experiment_ids;
  s.exposure_percent = 100;
  s.buckets = fifty_fifty();
  s.condition = Condition::LessThan;
  s.y = 100;
  s.alpha = alpha;
  return s;
}

Scenario srm_scenario(AlgoVariant variant, const CorpusSpec& corpus, const ExperimentConfig& config,
                      double alpha) {
  Scenario s;
  s.kind = ScenarioKind::Srm;
  s.variant = variant;
  s.corpus = corpus;
  s.experiment_ids = {config.experiment_id};
  s.salts = {config.salt.empty() ? config.experiment_id : config.salt};
  s.exposure_percent = config.exposure_rate_percent;
  s.buckets = config.buckets;
  s.condition = Condition::LessThan;
  s.y = config.exposure_rate_percent;
  s.alpha = alpha;
  return s;
}

void validate(const Scenario& scenario) {
  validate(scenario.corpus);
  if (!(scenario.alpha > 0.0 && scenario.alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  const std::size_t n_experiments = scenario.kind == ScenarioKind::Independence ? 2 : 1;
  if (scenario.experiment_ids.size() != n_experiments) {
    throw ConfigError(std::string(to_string(scenario.kind)) + " scenario needs " +
                      std::to_string(n_experiments) + " experiment ID(s)");
  }
  if (!scenario.salts.empty() && scenario.salts.size() != n_experiments) {
    throw ConfigError("salts must be empty or match the experiment IDs one to one");
  }
  for (std::size_t i = 0; i < n_experiments; ++i) validate(experiment_config(scenario, i));

  switch (scenario.kind) {
    case ScenarioKind::Uniformity:
      if (scenario.condition == Condition::LessThan &&
          (scenario.y < 1 || scenario.y > scenario.exposure_percent)) {
        throw ConfigError("condition R_e < " + std::to_string(scenario.y) +
                          " must satisfy 1 <= y <= exposure (" +
                          std::to_string(scenario.exposure_percent) + ")");
      }
      if (scenario.condition == Condition::EqualTo &&
          (scenario.y < 0 || scenario.y >= scenario.exposure_percent)) {
        throw ConfigError("condition R_e == " + std::to_string(scenario.y) +
                          " must satisfy 0 <= y < exposure (" +
                          std::to_string(scenario.exposure_percent) + ")");
      }
      break;
    case ScenarioKind::Independence:
      if (scenario.experiment_ids[0] == scenario.experiment_ids[1]) {
        throw ConfigError("independence needs two distinct experiment IDs, got '" +
                          scenario.experiment_ids[0] + "' twice");
      }
      if (scenario.exposure_percent != 100) {
        throw ConfigError("independence runs both experiments at 100% exposure");
      }
      break;
    case ScenarioKind::Srm:
      if (positive_buckets(scenario.buckets) < 2) {
        throw ConfigError("SRM check needs at least two buckets with a positive allocation");
      }
      break;
  }
}

ValidationReport run_scenario(const Scenario& scenario) {
  validate(scenario);
  const auto users = generate_corpus(scenario.corpus);
  return run_scenario(scenario, users);
}

ValidationReport run_scenario(const Scenario& scenario, std::span<const std::string> users) {
  validate(scenario);
  switch (scenario.kind) {
    case ScenarioKind::Uniformity: return uniformity(scenario, users);
    case ScenarioKind::Independence: return independence(scenario, users);
    case ScenarioKind::Srm: return srm(scenario, users);
  }
  throw ConfigError("unknown scenario kind");
}

ValidationReport run_uniformity(AlgoVariant variant, const CorpusSpec& corpus, int exposure_percent,
                                Condition condition, int y, double alpha) {
  return run_scenario(uniformity_scenario(variant, corpus, exposure_percent, condition, y, alpha));
}

ValidationReport run_independence(AlgoVariant variant, const CorpusSpec& corpus,
                                  const std::pair<std::string, std::string>& experiment_ids,
                                  double alpha) {
  return run_scenario(independence_scenario(variant, corpus, experiment_ids, alpha));
}

TestReport run_srm_check(AlgoVariant variant, const CorpusSpec& corpus,
                         const ExperimentConfig& config, double alpha) {
  return run_scenario(srm_scenario(variant, corpus, config, alpha)).test;
}

}  // namespace bucketeer
