#include "bucketeer/assignment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <array>
#include <thread>

#include "bucketeer/errors.hpp"

namespace bucketeer {

namespace {

constexpr double kHashMax = static_cast<double>(0xFFFFFFFFFFFFFFFFULL);
constexpr std::size_t kMinItemsPerThread = 16384;

void require_user(std::string_view user_id) {
  if (user_id.empty()) throw InputError("user ID must not be empty");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Concatenation buffer that stays on the stack for typical key lengths.
class KeyBuffer {
 public:
  void append(std::string_view part) {
    if (heap_.empty() && size_ + part.size() <= local_.size()) {
      std::copy(part.begin(), part.end(), local_.begin() + size_);
    } else {
      if (heap_.empty()) heap_.assign(local_.data(), size_);
      heap_.append(part);
    }
    size_ += part.size();
  }
  void resize(std::size_t n) {
    size_ = n;
    if (!heap_.empty()) heap_.resize(n);
  }
  std::size_t size() const noexcept { return size_; }
  std::string_view view() const noexcept {
    return heap_.empty() ? std::string_view(local_.data(), size_) : std::string_view(heap_);
  }

 private:
  std::array<char, 192> local_;
  std::size_t size_ = 0;
  std::string heap_;
};

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.experiment_id.empty()) throw ConfigError("experiment_id must not be empty");
  if (config.exposure_rate_percent < 0 || config.exposure_rate_percent > 100) {
    throw ConfigError("exposure_rate_percent must be in [0, 100], got " +
                      std::to_string(config.exposure_rate_percent));
  }
  if (config.buckets.empty()) throw ConfigError("at least one bucket is required");
  int sum = 0;
  for (auto it = config.buckets.begin(); it != config.buckets.end(); ++it) {
    const auto& bucket = *it;
    if (bucket.name.empty()) throw ConfigError("bucket names must not be empty");
    if (std::find_if(config.buckets.begin(), it, [&](const BucketSpec& b) {
          return b.name == bucket.name;
        }) != it) {
      throw ConfigError("duplicate bucket name: " + bucket.name);
    }
    if (bucket.percentage < 0 || bucket.percentage > 100) {
      throw ConfigError("bucket '" + bucket.name + "' percentage must be in [0, 100], got " +
                        std::to_string(bucket.percentage));
    }
    sum += bucket.percentage;
  }
  if (sum != 100) {
    throw ConfigError("bucket percentages must sum to 100, got " + std::to_string(sum));
  }
}

std::vector<BucketSpec> parse_buckets(std::string_view text) {
  std::vector<BucketSpec> buckets;
  if (trim(text).empty()) throw ConfigError("bucket list is empty");
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    const auto colon = item.rfind(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("bucket entry '" + std::string(item) + "' is not of the form name:pct");
    }
    const std::string_view name = trim(item.substr(0, colon));
    const std::string_view pct = trim(item.substr(colon + 1));
    int value = 0;
    const auto [end, ec] = std::from_chars(pct.data(), pct.data() + pct.size(), value);
    if (name.empty() || pct.empty() || ec != std::errc() || end != pct.data() + pct.size()) {
      throw ConfigError("bucket entry '" + std::string(item) + "' is not of the form name:pct");
    }
    buckets.push_back({std::string(name), value});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  ExperimentConfig probe{"probe", "", 100, buckets};
  validate(probe);
  return buckets;
}

std::string format_buckets(std::span<const BucketSpec> buckets) {
  std::string out;
  for (const auto& b : buckets) {
    if (!out.empty()) out += ',';
    out += b.name + ':' + std::to_string(b.percentage);
  }
  return out;
}

int z_from_hash(HashValue hash) noexcept {
  const double z = std::floor(static_cast<double>(hash) * 10000.0 / kHashMax);
  return std::min(static_cast<int>(z), 9999);
}

std::size_t bucket_for_residue(std::span<const BucketSpec> buckets, int residue) noexcept {
  int upper = 0;
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    upper += buckets[i].percentage;
    if (residue < upper) return i;
  }
  return buckets.size() - 1;
}

AssignmentTrace assign_new(const ExperimentConfig& config, std::string_view user_id, HashKind kind) {
  validate(config);
  require_user(user_id);

  KeyBuffer key;
  key.append(config.experiment_id);
  key.append(user_id);

  AssignmentTrace trace;
  trace.algorithm = Algorithm::New;
  trace.hash_kind = kind;
  trace.hash = hash64(kind, key.view());
  const int z = z_from_hash(trace.hash);
  trace.z = z;
  trace.r_e = z / 100;
  trace.r_b = z % 100;
  if (trace.r_e >= config.exposure_rate_percent) return trace;

  const std::size_t index = bucket_for_residue(config.buckets, *trace.r_b);
  trace.assignment = Assignment::bucketed(index, config.buckets[index].name);
  return trace;
}

AssignmentTrace assign_original(const ExperimentConfig& config, std::string_view user_id) {
  validate(config);
  require_user(user_id);

  KeyBuffer key;
  key.append(config.salt);
  key.append(user_id);
  const std::size_t prefix = key.size();

  AssignmentTrace trace;
  trace.algorithm = Algorithm::Original;
  trace.hash_kind = HashKind::Fnv1a64;

  key.append("Exposure");
  trace.hash = hash64(HashKind::Fnv1a64, key.view());
  trace.r_e = static_cast<int>(trace.hash % 100);
  if (trace.r_e >= config.exposure_rate_percent) return trace;

  key.resize(prefix);
  key.append("Bucket");
  const HashValue bucket_hash = hash64(HashKind::Fnv1a64, key.view());
  trace.bucket_hash = bucket_hash;
  trace.r_b = static_cast<int>(bucket_hash % 100);
  const std::size_t index = bucket_for_residue(config.buckets, *trace.r_b);
  trace.assignment = Assignment::bucketed(index, config.buckets[index].name);
  return trace;
}

AssignmentTrace assign(const ExperimentConfig& config, std::string_view user_id,
                       const AlgorithmChoice& algorithm) {
  if (const auto* n = std::get_if<NewAlgorithm>(&algorithm)) return assign_new(config, user_id, n->kind);
  return assign_original(config, user_id);
}

std::vector<AssignmentTrace> assign_batch(const ExperimentConfig& config,
                                          std::span<const std::string> user_ids,
                                          const AlgorithmChoice& algorithm) {
  validate(config);
  for (std::size_t i = 0; i < user_ids.size(); ++i) {
    if (user_ids[i].empty()) throw BatchError(i, "user ID must not be empty");
  }

  std::vector<AssignmentTrace> out(user_ids.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = assign(config, user_ids[i], algorithm);
  };

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t threads = std::min(hw, user_ids.size() / kMinItemsPerThread);
  if (threads <= 1) {
    work(0, user_ids.size());
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (user_ids.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(user_ids.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  return out;
}

}  // namespace bucketeer
