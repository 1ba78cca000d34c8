#include "bucketeer/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>

#include "bucketeer/errors.hpp"

namespace bucketeer {

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

BenchReport run_latency_bench(std::span<const AlgoVariant> variants, const CorpusSpec& corpus,
                              int iterations) {
  if (variants.empty()) throw InputError("bench needs at least one variant");
  if (iterations < 1) throw InputError("bench needs at least one iteration");
  const auto users = generate_corpus(corpus);
  return run_latency_bench(variants, corpus, users, iterations);
}

BenchReport run_latency_bench(std::span<const AlgoVariant> variants, const CorpusSpec& corpus,
                              std::span<const std::string> users, int iterations) {
  if (variants.empty()) throw InputError("bench needs at least one variant");
  if (std::set<AlgoVariant>(variants.begin(), variants.end()).size() != variants.size()) {
    throw InputError("bench variants must be distinct");
  }
  if (iterations < 1) throw InputError("bench needs at least one iteration");
  if (users.empty()) throw InputError("bench needs a non-empty corpus");

  const ExperimentConfig config{std::string(kDefaultExperimentA), std::string(kDefaultExperimentA),
                                100, {{"control", 50}, {"treatment", 50}}};

  BenchReport report;
  report.corpus = corpus;
  report.iterations = iterations;
  report.chunk_size = std::min(kBenchChunk, users.size());
  for (AlgoVariant v : variants) report.rows.push_back({v, 0.0, {}});

  volatile int sink = 0;
  for (int it = 0; it < iterations; ++it) {
    for (auto& row : report.rows) {
      const AlgorithmChoice algorithm = algorithm_of(row.variant);
      std::vector<double> chunk_ns;
      chunk_ns.reserve(users.size() / report.chunk_size + 1);
      for (std::size_t begin = 0; begin < users.size(); begin += report.chunk_size) {
        const std::size_t end = std::min(users.size(), begin + report.chunk_size);
        int acc = 0;
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t i = begin; i < end; ++i) acc += assign(config, users[i], algorithm).r_e;
        const auto stop = std::chrono::steady_clock::now();
        sink = sink + acc;
        const double ns = std::chrono::duration<double, std::nano>(stop - start).count();
        chunk_ns.push_back(ns / static_cast<double>(end - begin));
      }
      row.iteration_medians.push_back(median(std::move(chunk_ns)));
    }
  }
  for (auto& row : report.rows) row.ns_per_assignment = median(row.iteration_medians);

  for (const auto& base : report.rows) {
    for (const auto& other : report.rows) {
      if (base.variant == other.variant) continue;
      report.ratios.push_back(
          {base.variant, other.variant, base.ns_per_assignment / other.ns_per_assignment});
    }
  }
  return report;
}

std::string format_bench_table(const BenchReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "users=%zu iterations=%d chunk=%zu\n", report.corpus.n_users,
                report.iterations, report.chunk_size);
  out += line;
  std::snprintf(line, sizeof line, "%-8s %14s\n", "variant", "ns/assignment");
  out += line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%-8s %14.1f\n", std::string(to_string(row.variant)).c_str(),
                  row.ns_per_assignment);
    out += line;
  }
  const bool has_algo1 = std::any_of(report.rows.begin(), report.rows.end(), [](const BenchRow& r) {
    return r.variant == AlgoVariant::Algo1;
  });
  if (has_algo1 && report.rows.size() > 1) {
    out += "speedup vs algo1\n";
    for (const auto& ratio : report.ratios) {
      if (ratio.baseline != AlgoVariant::Algo1) continue;
      std::snprintf(line, sizeof line, "%-8s %14.2fx\n",
                    std::string(to_string(ratio.variant)).c_str(), ratio.ratio);
      out += line;
    }
  }
  return out;
}

}  // namespace bucketeer
