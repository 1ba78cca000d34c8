// MD5 message digest (RFC 1321).

#include <bit>
#include <cstring>

#include "bucketeer/hashing.hpp"

namespace bucketeer::hashing {

namespace {

// floor(abs(sin(i + 1)) * 2^32)
constexpr std::array<std::uint32_t, 64> kSine = {
    0xd76aa478, 0xe8c7b756, 0x242070db, 0xc1bdceee, 0xf57c0faf, 0x4787c62a,
    0xa8304613, 0xfd469501, 0x698098d8, 0x8b44f7af, 0xffff5bb1, 0x895cd7be,
    0x6b901122, 0xfd987193, 0xa679438e, 0x49b40821, 0xf61e2562, 0xc040b340,
    0x265e5a51, 0xe9b6c7aa, 0xd62f105d, 0x02441453, 0xd8a1e681, 0xe7d3fbc8,
    0x21e1cde6, 0xc33707d6, 0xf4d50d87, 0x455a14ed, 0xa9e3e905, 0xfcefa3f8,
    0x676f02d9, 0x8d2a4c8a, 0xfffa3942, 0x8771f681, 0x6d9d6122, 0xfde5380c,
    0xa4beea44, 0x4bdecfa9, 0xf6bb4b60, 0xbebfbc70, 0x289b7ec6, 0xeaa127fa,
    0xd4ef3085, 0x04881d05, 0xd9d4d039, 0xe6db99e5, 0x1fa27cf8, 0xc4ac5665,
    0xf4292244, 0x432aff97, 0xab9423a7, 0xfc93a039, 0x655b59c3, 0x8f0ccc92,
    0xffeff47d, 0x85845dd1, 0x6fa87e4f, 0xfe2ce6e0, 0xa3014314, 0x4e0811a1,
    0xf7537e82, 0xbd3af235, 0x2ad7d2bb, 0xeb86d391};

constexpr std::array<int, 64> kShift = {
    7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22, 7, 12, 17, 22,
    5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20, 5, 9,  14, 20,
    4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23, 4, 11, 16, 23,
    6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21, 6, 10, 15, 21};

struct State {
  std::uint32_t a = 0x67452301;
  std::uint32_t b = 0xefcdab89;
  std::uint32_t c = 0x98badcfe;
  std::uint32_t d = 0x10325476;
};

std::uint32_t load_le32(const std::uint8_t* p) noexcept {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void transform(State& s, const std::uint8_t* block) noexcept {
  std::array<std::uint32_t, 16> m{};
  for (std::size_t i = 0; i < 16; ++i) m[i] = load_le32(block + 4 * i);

  std::uint32_t a = s.a, b = s.b, c = s.c, d = s.d;
  for (std::size_t i = 0; i < 64; ++i) {
    std::uint32_t f = 0;
    std::size_t g = 0;
    if (i < 16) {
      f = (b & c) | (~b & d);
      g = i;
    } else if (i < 32) {
      f = (d & b) | (~d & c);
      g = (5 * i + 1) % 16;
    } else if (i < 48) {
      f = b ^ c ^ d;
      g = (3 * i + 5) % 16;
    } else {
      f = c ^ (b | ~d);
      g = (7 * i) % 16;
    }
    const std::uint32_t rotated = std::rotl(a + f + kSine[i] + m[g], kShift[i]);
    a = d;
    d = c;
    c = b;
    b = b + rotated;
  }
  s.a += a;
  s.b += b;
  s.c += c;
  s.d += d;
}

}  // namespace

Md5Digest md5(std::span<const std::byte> data) noexcept {
  State state;
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(data.data());
  const std::size_t len = data.size();

  std::size_t offset = 0;
  for (; offset + 64 <= len; offset += 64) transform(state, bytes + offset);

  // Tail: 0x80 terminator, zero pad to 56 mod 64, then the bit length (LE).
  std::array<std::uint8_t, 128> tail{};
  const std::size_t rest = len - offset;
  if (rest > 0) std::memcpy(tail.data(), bytes + offset, rest);
  tail[rest] = 0x80;
  const std::size_t tail_len = rest < 56 ? 64 : 128;
  const std::uint64_t bit_len = static_cast<std::uint64_t>(len) * 8;
  for (std::size_t i = 0; i < 8; ++i) {
    tail[tail_len - 8 + i] = static_cast<std::uint8_t>(bit_len >> (8 * i));
  }
  transform(state, tail.data());
  if (tail_len == 128) transform(state, tail.data() + 64);

  Md5Digest digest{};
  const std::array<std::uint32_t, 4> words = {state.a, state.b, state.c, state.d};
  for (std::size_t w = 0; w < 4; ++w) {
    for (std::size_t i = 0; i < 4; ++i) {
      digest[4 * w + i] = static_cast<std::uint8_t>(words[w] >> (8 * i));
    }
  }
  return digest;
}

HashValue md5_64(std::span<const std::byte> data) noexcept {
  const Md5Digest digest = md5(data);
  HashValue h = 0;
  for (std::size_t i = 0; i < 8; ++i) h = (h << 8) | digest[i];
  return h;
}

}  // namespace bucketeer::hashing
