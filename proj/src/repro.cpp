#include "bucketeer/repro.hpp"

#include <fstream>

#include "bucketeer/errors.hpp"

namespace bucketeer {

namespace {

bool expected_uniformity_reject(AlgoVariant variant, int exposure) {
  return variant == AlgoVariant::Algo1 && exposure != 100;
}

bool expected_independence_reject(AlgoVariant variant) {
  return variant == AlgoVariant::Algo1 || variant == AlgoVariant::Algo2;
}

bool meets(const TestReport& test, bool expect_reject) {
  return expect_reject ? test.p_value < kStrongRejectP : test.p_value >= test.alpha;
}

std::string panel(AlgoVariant variant, int y) {
  return std::string(to_string(variant)) + "_re_lt_" + std::to_string(y);
}

void append_histogram(std::string& csv, const std::string& name, const Histogram100& hist) {
  for (std::size_t i = 0; i < Histogram100::kCells; ++i) {
    csv += name + ',' + std::to_string(i) + ',' + std::to_string(hist[i]) + '\n';
  }
}

}  // namespace

ReproArtifacts build_repro(const CorpusSpec& corpus, bool pretty) {
  const auto users = generate_corpus(corpus);
  ReproArtifacts out;
  out.summary = Json::array();

  auto record = [&](const std::string& table, const ValidationReport& report, int exposure,
                    bool expect_reject) {
    const bool ok = meets(report.test, expect_reject);
    out.all_match = out.all_match && ok;
    out.summary.push_back({{"table", table},
                           {"variant", to_string(report.scenario.variant)},
                           {"exposure_rate_percent", exposure},
                           {"statistic", report.test.statistic},
                           {"p_value", report.test.p_value},
                           {"expected_reject", expect_reject},
                           {"matches_expected", ok}});
    Json row = to_json(report);
    row["expected_reject"] = expect_reject;
    row["matches_expected"] = ok;
    return row;
  };

  // Uniformity rows plus histogram panels.
  Json table1 = {{"corpus", to_json(corpus)}, {"rows", Json::array()}};
  std::string fig1 = "panel,cell,count\n";
  std::string fig2 = "panel,cell,count\n";
  for (AlgoVariant variant : kAllVariants) {
    for (int exposure : {10, 100}) {
      const auto report = run_scenario(
          uniformity_scenario(variant, corpus, exposure, Condition::LessThan, exposure), users);
      table1["rows"].push_back(
          record("table1", report, exposure, expected_uniformity_reject(variant, exposure)));
      if (variant != AlgoVariant::Algo1) append_histogram(fig2, panel(variant, exposure), *report.histogram);
    }
  }
  for (int exposure : {50, 100}) {
    const auto report = run_scenario(
        uniformity_scenario(AlgoVariant::Algo1, corpus, exposure, Condition::LessThan, exposure), users);
    append_histogram(fig1, panel(AlgoVariant::Algo1, exposure), *report.histogram);
  }

  // Independence rows plus the scatter sample.
  Json table2 = {{"corpus", to_json(corpus)}, {"rows", Json::array()}};
  std::string fig3 = "panel,rb_i,rb_j\n";
  for (AlgoVariant variant : kAllVariants) {
    const auto report = run_scenario(
        independence_scenario(variant, corpus,
                              {std::string(kDefaultExperimentA), std::string(kDefaultExperimentB)}),
        users);
    table2["rows"].push_back(record("table2", report, 100, expected_independence_reject(variant)));
    for (const auto& [a, b] : report.scatter) {
      fig3 += std::string(to_string(variant)) + ',' + std::to_string(a) + ',' + std::to_string(b) + '\n';
    }
  }

  out.files["table1.json"] = dump(table1, pretty);
  out.files["table2.json"] = dump(table2, pretty);
  out.files["fig1.csv"] = std::move(fig1);
  out.files["fig2.csv"] = std::move(fig2);
  out.files["fig3.csv"] = std::move(fig3);
  return out;
}

void write_artifacts(const ReproArtifacts& artifacts, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& [name, content] : artifacts.files) {
    std::ofstream file(dir / name, std::ios::binary);
    file << content;
    if (!file) throw ConfigError("cannot write '" + (dir / name).string() + "'");
  }
}

}  // namespace bucketeer
