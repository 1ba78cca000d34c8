#include "bucketeer/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bucketeer/bench.hpp"
#include "bucketeer/errors.hpp"
#include "bucketeer/harness.hpp"
#include "bucketeer/report.hpp"
#include "bucketeer/repro.hpp"

namespace bucketeer {

namespace {

constexpr const char* kSeedEnv = "BUCKETEER_SEED";

struct CorpusFlags {
  std::size_t users = 1'000'000;
  std::string pattern = kSeededIdPattern;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--users", users, "Number of synthetic users")->capture_default_str();
    app->add_option("--pattern", pattern, "User ID pattern ({index}, {random})")
        ->capture_default_str();
    app->add_option("--seed", seed, "Corpus seed (default: $BUCKETEER_SEED or 0)");
  }

  CorpusSpec resolve() const {
    CorpusSpec spec;
    spec.n_users = users;
    spec.id_pattern = pattern;
    if (seed) {
      spec.seed = *seed;
    } else if (const char* env = std::getenv(kSeedEnv); env && *env) {
      std::uint64_t value = 0;
      const std::string_view text(env);
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError(std::string(kSeedEnv) + " must be an unsigned integer, got '" + env + "'");
      }
      spec.seed = value;
    }
    validate(spec);
    return spec;
  }
};

AlgoVariant variant_or_throw(const std::string& text) {
  const auto v = parse_variant(text);
  if (!v) throw ConfigError("--algo must be one of 1, 2, 3, 4, got '" + text + "'");
  return *v;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  file << content;
  if (!file) throw ConfigError("cannot write '" + path.string() + "'");
}

int verdict_exit(const TestReport& test) { return test.reject ? kExitVerdictFailed : kExitOk; }

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic experiment assignment and randomization validation"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");

  // assign
  auto* assign_cmd = app.add_subcommand("assign", "Assign one user to a variant");
  std::string experiment, user, salt, algo, buckets = "control:50,treatment:50";
  int exposure = 100;
  bool with_trace = false;
  assign_cmd->add_option("--experiment", experiment, "Experiment ID")->required();
  assign_cmd->add_option("--user", user, "User ID")->required();
  assign_cmd->add_option("--algo", algo, "Algorithm variant 1-4")->required();
  assign_cmd->add_option("--exposure", exposure, "Exposure rate percent")->capture_default_str();
  assign_cmd->add_option("--buckets", buckets, "name:pct,name:pct")->capture_default_str();
  assign_cmd->add_option("--salt", salt, "Salt for algo 1 (default: experiment ID)");
  assign_cmd->add_flag("--trace", with_trace, "Include intermediate values");

  // uniformity
  auto* uni_cmd = app.add_subcommand("uniformity", "Chi-square uniformity of R_b | R_e");
  CorpusFlags uni_corpus;
  uni_corpus.attach(uni_cmd);
  std::string uni_algo, condition = "lt", uni_experiment(kDefaultExperimentA);
  int uni_exposure = 100;
  std::optional<int> uni_y;
  double uni_alpha = kDefaultAlpha;
  std::string uni_plot;
  uni_cmd->add_option("--algo", uni_algo, "Algorithm variant 1-4")->required();
  uni_cmd->add_option("--exposure", uni_exposure, "Exposure rate percent")->capture_default_str();
  uni_cmd->add_option("--condition", condition, "lt or eq")->capture_default_str();
  uni_cmd->add_option("--y", uni_y, "R_e threshold (default: exposure for lt)");
  uni_cmd->add_option("--experiment", uni_experiment, "Experiment ID")->capture_default_str();
  uni_cmd->add_option("--alpha", uni_alpha, "Significance level")->capture_default_str();
  uni_cmd->add_option("--plot-data", uni_plot, "Directory for histogram.csv");

  // independence
  auto* ind_cmd = app.add_subcommand("independence", "Chi-square independence across experiments");
  CorpusFlags ind_corpus;
  ind_corpus.attach(ind_cmd);
  std::string ind_algo;
  std::vector<std::string> ind_experiments = {std::string(kDefaultExperimentA),
                                              std::string(kDefaultExperimentB)};
  double ind_alpha = kDefaultAlpha;
  std::string ind_plot;
  ind_cmd->add_option("--algo", ind_algo, "Algorithm variant 1-4")->required();
  ind_cmd->add_option("--experiments", ind_experiments, "Two experiment IDs")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  ind_cmd->add_option("--alpha", ind_alpha, "Significance level")->capture_default_str();
  ind_cmd->add_option("--plot-data", ind_plot, "Directory for scatter.csv");

  // srm
  auto* srm_cmd = app.add_subcommand("srm", "Sample ratio mismatch check");
  CorpusFlags srm_corpus;
  srm_corpus.attach(srm_cmd);
  std::string srm_algo, srm_experiment(kDefaultExperimentA), srm_salt,
      srm_buckets = "control:50,treatment:50";
  int srm_exposure = 100;
  double srm_alpha = kDefaultAlpha;
  srm_cmd->add_option("--algo", srm_algo, "Algorithm variant 1-4")->required();
  srm_cmd->add_option("--exposure", srm_exposure, "Exposure rate percent")->capture_default_str();
  srm_cmd->add_option("--buckets", srm_buckets, "name:pct,name:pct")->capture_default_str();
  srm_cmd->add_option("--experiment", srm_experiment, "Experiment ID")->capture_default_str();
  srm_cmd->add_option("--salt", srm_salt, "Salt for algo 1 (default: experiment ID)");
  srm_cmd->add_option("--alpha", srm_alpha, "Significance level")->capture_default_str();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Time assignments per variant");
  CorpusFlags bench_corpus;
  bench_corpus.attach(bench_cmd);
  std::vector<std::string> bench_algos = {"1", "2", "3", "4"};
  int iterations = 5;
  bool bench_json = false;
  bench_cmd->add_option("--algos", bench_algos, "Variants to time")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--iterations", iterations, "Timed passes")->capture_default_str();
  bench_cmd->add_flag("--json", bench_json, "Print JSON instead of a table");

  // repro
  auto* repro_cmd = app.add_subcommand("repro", "Emit every table and figure artifact");
  CorpusFlags repro_corpus;
  repro_corpus.attach(repro_cmd);
  std::string repro_out;
  repro_cmd->add_option("--out", repro_out, "Output directory")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (assign_cmd->parsed()) {
      const AlgoVariant variant = variant_or_throw(algo);
      ExperimentConfig config{experiment, salt.empty() ? experiment : salt, exposure,
                              parse_buckets(buckets)};
      validate(config);
      const AssignmentTrace trace = assign(config, user, algorithm_of(variant));
      Json result = {{"experiment_id", experiment},
                     {"user_id", user},
                     {"algo", to_string(variant)},
                     {"assignment", trace.assignment.to_string()}};
      if (with_trace) result["trace"] = to_json(trace);
      out << dump(result, pretty);
      return kExitOk;
    }

    if (uni_cmd->parsed()) {
      const auto cond = parse_condition(condition);
      if (!cond) throw ConfigError("--condition must be 'lt' or 'eq'");
      Scenario scenario = uniformity_scenario(variant_or_throw(uni_algo), uni_corpus.resolve(),
                                              uni_exposure, *cond, uni_y.value_or(uni_exposure),
                                              uni_alpha);
      scenario.experiment_ids = {uni_experiment};
      scenario.salts = {uni_experiment};
      const auto report = run_scenario(scenario);
      if (!uni_plot.empty()) {
        write_file(std::filesystem::path(uni_plot) / "histogram.csv", histogram_csv(*report.histogram));
      }
      out << dump(to_json(report), pretty);
      return verdict_exit(report.test);
    }

    if (ind_cmd->parsed()) {
      const auto report = run_independence(variant_or_throw(ind_algo), ind_corpus.resolve(),
                                           {ind_experiments.at(0), ind_experiments.at(1)}, ind_alpha);
      if (!ind_plot.empty()) {
        write_file(std::filesystem::path(ind_plot) / "scatter.csv", scatter_csv(report.scatter));
      }
      out << dump(to_json(report), pretty);
      return verdict_exit(report.test);
    }

    if (srm_cmd->parsed()) {
      ExperimentConfig config{srm_experiment, srm_salt.empty() ? srm_experiment : srm_salt,
                              srm_exposure, parse_buckets(srm_buckets)};
      validate(config);
      const auto report = run_scenario(
          srm_scenario(variant_or_throw(srm_algo), srm_corpus.resolve(), config, srm_alpha));
      out << dump(to_json(report), pretty);
      return verdict_exit(report.test);
    }

    if (bench_cmd->parsed()) {
      std::vector<AlgoVariant> variants;
      for (const auto& a : bench_algos) variants.push_back(variant_or_throw(a));
      const auto report = run_latency_bench(variants, bench_corpus.resolve(), iterations);
      if (bench_json) {
        out << dump(to_json(report), pretty);
      } else {
        out << format_bench_table(report);
      }
      return kExitOk;
    }

    if (repro_cmd->parsed()) {
      const auto artifacts = build_repro(repro_corpus.resolve(), pretty);
      write_artifacts(artifacts, repro_out);
      out << dump(Json{{"out", repro_out},
                       {"files", Json::array({"table1.json", "table2.json", "fig1.csv", "fig2.csv",
                                              "fig3.csv"})},
                       {"rows", artifacts.summary},
                       {"all_match", artifacts.all_match}},
                  pretty);
      return artifacts.all_match ? kExitOk : kExitVerdictFailed;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bucketeer
