#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bucketeer/corpus.hpp"
#include "bucketeer/harness.hpp"

namespace bucketeer {

struct BenchRow {
  AlgoVariant variant = AlgoVariant::Algo1;
  double ns_per_assignment = 0.0;          // median of iteration medians
  std::vector<double> iteration_medians;   // per-iteration median over chunks
};

// ratio = ns(baseline) / ns(variant); > 1 means `variant` is faster.
struct SpeedupRatio {
  AlgoVariant baseline = AlgoVariant::Algo1;
  AlgoVariant variant = AlgoVariant::Algo1;
  double ratio = 1.0;
};

struct BenchReport {
  CorpusSpec corpus;
  int iterations = 1;
  std::size_t chunk_size = 0;
  std::vector<BenchRow> rows;
  std::vector<SpeedupRatio> ratios;  // every ordered pair of distinct variants
};

inline constexpr std::size_t kBenchChunk = 1024;

// Single-threaded timing of assign() over the corpus: exposure 100, 50/50 split,
// experiment "exp_A". Each iteration times every variant in turn, chunk by chunk;
// corpus generation happens before any clock is read. Throws InputError for an
// empty/duplicated variant list or iterations < 1.
BenchReport run_latency_bench(std::span<const AlgoVariant> variants, const CorpusSpec& corpus,
                              int iterations);
BenchReport run_latency_bench(std::span<const AlgoVariant> variants, const CorpusSpec& corpus,
                              std::span<const std::string> users, int iterations);

// Human-readable timing table.
std::string format_bench_table(const BenchReport& report);

}  // namespace bucketeer
