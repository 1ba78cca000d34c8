#include "bucketeer/report.hpp"

#include <cstdio>

#include "bucketeer/errors.hpp"

namespace bucketeer {

namespace {

template <typename T>
T field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    throw ConfigError(std::string("missing field '") + key + "'");
  }
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& json, const char* key, T fallback) {
  return json.contains(key) ? field<T>(json, key) : fallback;
}

Json buckets_json(const std::vector<BucketSpec>& buckets) {
  Json out = Json::array();
  for (const auto& b : buckets) out.push_back({{"name", b.name}, {"percentage", b.percentage}});
  return out;
}

std::vector<BucketSpec> buckets_from_json(const Json& json) {
  if (!json.is_array()) throw ConfigError("'buckets' must be an array");
  std::vector<BucketSpec> out;
  for (const auto& b : json) out.push_back({field<std::string>(b, "name"), field<int>(b, "percentage")});
  return out;
}

}  // namespace

std::string dump(const Json& json, bool pretty) { return json.dump(pretty ? 2 : -1) + "\n"; }

std::string hex64(HashValue value) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(value));
  return buf;
}

Json to_json(const TestReport& report) {
  return {{"statistic", report.statistic},
          {"df", report.df},
          {"p_value", report.p_value},
          {"alpha", report.alpha},
          {"reject", report.reject}};
}

TestReport test_report_from_json(const Json& json) {
  TestReport r;
  r.statistic = field<double>(json, "statistic");
  r.df = field<int>(json, "df");
  r.p_value = field<double>(json, "p_value");
  r.alpha = field<double>(json, "alpha");
  r.reject = field<bool>(json, "reject");
  return r;
}

Json to_json(const ExperimentConfig& config) {
  return {{"experiment_id", config.experiment_id},
          {"salt", config.salt},
          {"exposure_rate_percent", config.exposure_rate_percent},
          {"buckets", buckets_json(config.buckets)}};
}

ExperimentConfig experiment_config_from_json(const Json& json) {
  ExperimentConfig config;
  config.experiment_id = field<std::string>(json, "experiment_id");
  config.salt = field_or<std::string>(json, "salt", "");
  config.exposure_rate_percent = field<int>(json, "exposure_rate_percent");
  config.buckets = buckets_from_json(field<Json>(json, "buckets"));
  validate(config);
  return config;
}

Json to_json(const CorpusSpec& spec) {
  return {{"n_users", spec.n_users}, {"id_pattern", spec.id_pattern}, {"seed", spec.seed}};
}

CorpusSpec corpus_spec_from_json(const Json& json) {
  CorpusSpec spec;
  spec.n_users = field<std::size_t>(json, "n_users");
  spec.id_pattern = field<std::string>(json, "id_pattern");
  spec.seed = field<std::uint64_t>(json, "seed");
  validate(spec);
  return spec;
}

Json to_json(const Scenario& s) {
  Json out = {{"kind", to_string(s.kind)},
              {"variant", to_string(s.variant)},
              {"corpus", to_json(s.corpus)},
              {"experiment_ids", s.experiment_ids},
              {"salts", s.salts},
              {"exposure_rate_percent", s.exposure_percent},
              {"buckets", buckets_json(s.buckets)}};
  if (s.kind == ScenarioKind::Uniformity) {
    out["condition"] = {{"mode", to_string(s.condition)}, {"y", s.y}};
  }
  out["alpha"] = s.alpha;
  return out;
}

Scenario scenario_from_json(const Json& json) {
  Scenario s;
  const auto kind = field<std::string>(json, "kind");
  if (kind == "uniformity") {
    s.kind = ScenarioKind::Uniformity;
  } else if (kind == "independence") {
    s.kind = ScenarioKind::Independence;
  } else if (kind == "srm") {
    s.kind = ScenarioKind::Srm;
  } else {
    throw ConfigError("unknown scenario kind '" + kind + "'");
  }
  const auto variant = parse_variant(field<std::string>(json, "variant"));
  if (!variant) throw ConfigError("unknown variant");
  s.variant = *variant;
  s.corpus = corpus_spec_from_json(field<Json>(json, "corpus"));
  s.experiment_ids = field<std::vector<std::string>>(json, "experiment_ids");
  s.salts = field_or<std::vector<std::string>>(json, "salts", {});
  s.exposure_percent = field<int>(json, "exposure_rate_percent");
  s.buckets = buckets_from_json(field<Json>(json, "buckets"));
  if (s.kind == ScenarioKind::Uniformity) {
    const Json cond = field<Json>(json, "condition");
    const auto mode = parse_condition(field<std::string>(cond, "mode"));
    if (!mode) throw ConfigError("condition mode must be 'lt' or 'eq'");
    s.condition = *mode;
    s.y = field<int>(cond, "y");
  } else {
    s.y = s.exposure_percent;
  }
  s.alpha = field<double>(json, "alpha");
  validate(s);
  return s;
}

std::string_view test_name(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::Uniformity: return "gof_uniform";
    case ScenarioKind::Independence: return "independence";
    case ScenarioKind::Srm: return "srm";
  }
  return "test";
}

Json to_json(const ValidationReport& report) {
  Json out = {{"kind", to_string(report.scenario.kind)},
              {"variant", to_string(report.scenario.variant)},
              {"scenario", to_json(report.scenario)}};
  out[std::string(test_name(report.scenario.kind))] = to_json(report.test);
  if (report.histogram) out["histogram"] = report.histogram->counts();
  if (report.contingency) out["contingency"] = report.contingency->to_rows();
  if (!report.scatter.empty()) {
    Json points = Json::array();
    for (const auto& [a, b] : report.scatter) points.push_back({a, b});
    out["scatter"] = std::move(points);
  }
  if (!report.bucket_counts.empty()) out["bucket_counts"] = report.bucket_counts;
  return out;
}

Json to_json(const AssignmentTrace& trace) {
  Json out = {{"algorithm", trace.algorithm == Algorithm::New ? "new" : "original"},
              {"hash_kind", to_string(trace.hash_kind)},
              {"hash", hex64(trace.hash)}};
  if (trace.bucket_hash) out["bucket_hash"] = hex64(*trace.bucket_hash);
  if (trace.z) out["z"] = *trace.z;
  out["r_e"] = trace.r_e;
  if (trace.r_b) out["r_b"] = *trace.r_b;
  out["assignment"] = trace.assignment.to_string();
  return out;
}

Json to_json(const BenchReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"variant", to_string(row.variant)},
                    {"ns_per_assignment", row.ns_per_assignment},
                    {"iteration_medians", row.iteration_medians}});
  }
  Json ratios = Json::array();
  for (const auto& r : report.ratios) {
    ratios.push_back({{"baseline", to_string(r.baseline)},
                      {"variant", to_string(r.variant)},
                      {"speedup", r.ratio}});
  }
  return {{"corpus", to_json(report.corpus)},
          {"iterations", report.iterations},
          {"chunk_size", report.chunk_size},
          {"rows", std::move(rows)},
          {"speedups", std::move(ratios)}};
}

std::string histogram_csv(const Histogram100& hist) {
  std::string out = "cell,count\n";
  for (std::size_t i = 0; i < Histogram100::kCells; ++i) {
    out += std::to_string(i) + ',' + std::to_string(hist[i]) + '\n';
  }
  return out;
}

std::string scatter_csv(std::span<const std::pair<int, int>> points) {
  std::string out = "rb_i,rb_j\n";
  for (const auto& [a, b] : points) out += std::to_string(a) + ',' + std::to_string(b) + '\n';
  return out;
}

}  // namespace bucketeer
