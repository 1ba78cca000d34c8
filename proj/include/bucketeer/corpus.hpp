#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bucketeer {

// Default pattern for the CLI, repro and acceptance runs.
inline constexpr const char* kSeededIdPattern = "user_{random}_{index}";

// Synthetic user population. The pattern may contain:
//   {index}   decimal position 0..n_users-1
//   {random}  16 lowercase hex digits, one seeded 64-bit draw per user
// Any other "{...}" is rejected.
struct CorpusSpec {
  std::size_t n_users = 1'000'000;
  std::string id_pattern = "user_{index}";
  std::uint64_t seed = 0;

  friend bool operator==(const CorpusSpec&, const CorpusSpec&) = default;
};

// Throws ConfigError when n_users is 0, the pattern has an unknown placeholder, or
// it lacks {index} while more than one user is requested (IDs would not be
// guaranteed distinct).
void validate(const CorpusSpec& spec);

// Deterministic in `spec`; IDs are pairwise distinct.
std::vector<std::string> generate_corpus(const CorpusSpec& spec);

}  // namespace bucketeer
