#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bucketeer/hashing.hpp"

namespace bucketeer {

struct BucketSpec {
  std::string name;
  int percentage = 0;

  friend bool operator==(const BucketSpec&, const BucketSpec&) = default;
};

struct ExperimentConfig {
  std::string experiment_id;
  std::string salt;  // original algorithm only
  int exposure_rate_percent = 100;
  std::vector<BucketSpec> buckets;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws ConfigError unless: experiment_id is non-empty, exposure is in [0, 100],
// there is at least one bucket, names are non-empty and unique, and the integer
// percentages are each in [0, 100] and sum to exactly 100.
void validate(const ExperimentConfig& config);

// Parses "name:pct,name:pct". Throws ConfigError on malformed lists or a
// split that does not sum to 100.
std::vector<BucketSpec> parse_buckets(std::string_view text);
std::string format_buckets(std::span<const BucketSpec> buckets);

// Verdict: either ignored (not exposed) or placed in a named bucket.
class Assignment {
 public:
  static Assignment ignored() { return Assignment(); }
  static Assignment bucketed(std::size_t index, std::string name) {
    return Assignment(index, std::move(name));
  }

  bool is_ignored() const noexcept { return !index_.has_value(); }
  // Index into ExperimentConfig::buckets. Precondition: !is_ignored().
  std::size_t bucket_index() const { return index_.value(); }
  const std::string& bucket_name() const noexcept { return name_; }

  // "ignore" or the bucket name.
  std::string to_string() const { return is_ignored() ? std::string("ignore") : name_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  Assignment() = default;
  Assignment(std::size_t index, std::string name) : index_(index), name_(std::move(name)) {}

  std::optional<std::size_t> index_;
  std::string name_;
};

enum class Algorithm { Original, New };

// Intermediate values behind a verdict.
//
// New algorithm: hash = H, z = Z, r_e = Z / 100, r_b = Z % 100 (always present).
// Original algorithm: hash = H^e, r_e = H^e % 100; bucket_hash = H^b and
// r_b = H^b % 100 only when the exposure step passed. z is never set.
struct AssignmentTrace {
  Algorithm algorithm = Algorithm::New;
  HashKind hash_kind = HashKind::Fnv1a64;
  HashValue hash = 0;
  std::optional<HashValue> bucket_hash;
  std::optional<int> z;
  int r_e = 0;
  std::optional<int> r_b;
  Assignment assignment = Assignment::ignored();

  friend bool operator==(const AssignmentTrace&, const AssignmentTrace&) = default;
};

// floor(H * 10000 / double(2^64 - 1)) in double precision, clamped to 9999.
int z_from_hash(HashValue hash) noexcept;

// Index of the first bucket whose cumulative percentage exceeds `residue`.
// Precondition: percentages sum to 100 and residue is in [0, 99].
std::size_t bucket_for_residue(std::span<const BucketSpec> buckets, int residue) noexcept;

// Single-hash scheme keyed on experiment_id ++ user_id.
AssignmentTrace assign_new(const ExperimentConfig& config, std::string_view user_id, HashKind kind);

// Two-step FNV scheme: salt ++ user_id ++ "Exposure", then salt ++ user_id ++ "Bucket".
AssignmentTrace assign_original(const ExperimentConfig& config, std::string_view user_id);

struct OriginalAlgorithm {
  friend bool operator==(const OriginalAlgorithm&, const OriginalAlgorithm&) = default;
};
struct NewAlgorithm {
  HashKind kind = HashKind::Spooky64;
  friend bool operator==(const NewAlgorithm&, const NewAlgorithm&) = default;
};
using AlgorithmChoice = std::variant<OriginalAlgorithm, NewAlgorithm>;

AssignmentTrace assign(const ExperimentConfig& config, std::string_view user_id,
                       const AlgorithmChoice& algorithm);

// Element i equals assign(config, user_ids[i], algorithm). Large batches are split
// across threads; the output is identical to sequential evaluation. An empty user
// ID throws BatchError carrying the lowest offending index.
std::vector<AssignmentTrace> assign_batch(const ExperimentConfig& config,
                                          std::span<const std::string> user_ids,
                                          const AlgorithmChoice& algorithm);

}  // namespace bucketeer
