#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace bucketeer {

using HashValue = std::uint64_t;

enum class HashKind { Fnv1a64, Md5_64, Spooky64 };

// "fnv", "md5", "spooky"
std::string_view to_string(HashKind kind) noexcept;
std::optional<HashKind> parse_hash_kind(std::string_view name) noexcept;

namespace hashing {

// FNV-1a, 64-bit offset basis and prime.
HashValue fnv1a64(std::span<const std::byte> data) noexcept;

using Md5Digest = std::array<std::uint8_t, 16>;

// RFC 1321 digest.
Md5Digest md5(std::span<const std::byte> data) noexcept;

// First eight digest bytes read as a big-endian integer.
HashValue md5_64(std::span<const std::byte> data) noexcept;

// SpookyHash V2, 128-bit state seeded by (seed1, seed2). Results are written back
// into the seeds, matching the reference Hash128 calling convention.
void spooky128(std::span<const std::byte> data, std::uint64_t& seed1,
               std::uint64_t& seed2) noexcept;

// SpookyHash V2 Hash64: first half of Hash128 with both seeds equal to `seed`.
HashValue spooky64(std::span<const std::byte> data, std::uint64_t seed = 0) noexcept;

}  // namespace hashing

HashValue hash64(HashKind kind, std::span<const std::byte> data) noexcept;

inline HashValue hash64(HashKind kind, std::string_view text) noexcept {
  return hash64(kind, std::as_bytes(std::span(text.data(), text.size())));
}

}  // namespace bucketeer
