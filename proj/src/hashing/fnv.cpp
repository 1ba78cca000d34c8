#include "bucketeer/hashing.hpp"

namespace bucketeer::hashing {

namespace {
constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
}  // namespace

HashValue fnv1a64(std::span<const std::byte> data) noexcept {
  std::uint64_t h = kFnvOffsetBasis;
  for (std::byte b : data) {
    h ^= static_cast<std::uint64_t>(b);
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace bucketeer::hashing
