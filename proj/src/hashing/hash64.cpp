#include "bucketeer/hashing.hpp"

namespace bucketeer {

std::string_view to_string(HashKind kind) noexcept {
  switch (kind) {
    case HashKind::Fnv1a64: return "fnv";
    case HashKind::Md5_64: return "md5";
    case HashKind::Spooky64: return "spooky";
  }
  return "unknown";
}

std::optional<HashKind> parse_hash_kind(std::string_view name) noexcept {
  if (name == "fnv") return HashKind::Fnv1a64;
  if (name == "md5") return HashKind::Md5_64;
  if (name == "spooky") return HashKind::Spooky64;
  return std::nullopt;
}

HashValue hash64(HashKind kind, std::span<const std::byte> data) noexcept {
  switch (kind) {
    case HashKind::Fnv1a64: return hashing::fnv1a64(data);
    case HashKind::Md5_64: return hashing::md5_64(data);
    case HashKind::Spooky64: return hashing::spooky64(data, 0);
  }
  return 0;
}

}  // namespace bucketeer
