#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "bucketeer/corpus.hpp"
#include "bucketeer/report.hpp"

namespace bucketeer {

// Verdict thresholds for the reproduction tables: a row expected to reject must
// reach p < kStrongRejectP; a row expected to pass must have p >= alpha.
inline constexpr double kStrongRejectP = 1e-6;

struct ReproArtifacts {
  // table1.json, table2.json, fig1.csv, fig2.csv, fig3.csv
  std::map<std::string, std::string> files;
  Json summary;               // one verdict line per table row
  bool all_match = true;      // every row met its expected verdict
};

// table1.json: uniformity of R_b | R_e < exposure for algo1..4 at 10% and 100%.
// table2.json: independence of exp_A and exp_B for algo1..4.
// fig1.csv: algo1 histograms at 50% and 100%; fig2.csv: algo2..4 histograms;
// fig3.csv: first 1,000 users' (R_b, R_b) pairs per variant.
ReproArtifacts build_repro(const CorpusSpec& corpus, bool pretty = false);

void write_artifacts(const ReproArtifacts& artifacts, const std::filesystem::path& dir);

}  // namespace bucketeer
