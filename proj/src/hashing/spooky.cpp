// SpookyHash V2 (Bob Jenkins, public domain reference algorithm).
//
// Input words are read little-endian regardless of host byte order, so results
// match the reference implementation on x86/ARM.

#include <bit>
#include <cstring>

#include "bucketeer/hashing.hpp"

namespace bucketeer::hashing {

namespace {

constexpr std::size_t kNumVars = 12;
constexpr std::size_t kBlockSize = kNumVars * 8;  // 96
constexpr std::size_t kBufSize = 2 * kBlockSize;  // 192
constexpr std::uint64_t kConst = 0xdeadbeefdeadbeefULL;

using State = std::array<std::uint64_t, kNumVars>;

std::uint64_t load_le64(const std::uint8_t* p) noexcept {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::uint32_t load_le32(const std::uint8_t* p) noexcept {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

constexpr std::uint64_t rot(std::uint64_t x, int k) noexcept { return std::rotl(x, k); }

void mix(const std::uint8_t* data, State& s) noexcept {
  std::array<std::uint64_t, kNumVars> d{};
  for (std::size_t i = 0; i < kNumVars; ++i) d[i] = load_le64(data + 8 * i);
  // clang-format off
  s[0] += d[0];   s[2] ^= s[10];  s[11] ^= s[0];  s[0] = rot(s[0], 11);   s[11] += s[1];
  s[1] += d[1];   s[3] ^= s[11];  s[0] ^= s[1];   s[1] = rot(s[1], 32);   s[0] += s[2];
  s[2] += d[2];   s[4] ^= s[0];   s[1] ^= s[2];   s[2] = rot(s[2], 43);   s[1] += s[3];
  s[3] += d[3];   s[5] ^= s[1];   s[2] ^= s[3];   s[3] = rot(s[3], 31);   s[2] += s[4];
  s[4] += d[4];   s[6] ^= s[2];   s[3] ^= s[4];   s[4] = rot(s[4], 17);   s[3] += s[5];
  s[5] += d[5];   s[7] ^= s[3];   s[4] ^= s[5];   s[5] = rot(s[5], 28);   s[4] += s[6];
  s[6] += d[6];   s[8] ^= s[4];   s[5] ^= s[6];   s[6] = rot(s[6], 39);   s[5] += s[7];
  s[7] += d[7];   s[9] ^= s[5];   s[6] ^= s[7];   s[7] = rot(s[7], 57);   s[6] += s[8];
  s[8] += d[8];   s[10] ^= s[6];  s[7] ^= s[8];   s[8] = rot(s[8], 55);   s[7] += s[9];
  s[9] += d[9];   s[11] ^= s[7];  s[8] ^= s[9];   s[9] = rot(s[9], 54);   s[8] += s[10];
  s[10] += d[10]; s[0] ^= s[8];   s[9] ^= s[10];  s[10] = rot(s[10], 22); s[9] += s[11];
  s[11] += d[11]; s[1] ^= s[9];   s[10] ^= s[11]; s[11] = rot(s[11], 46); s[10] += s[0];
  // clang-format on
}

void end_partial(State& h) noexcept {
  // clang-format off
  h[11] += h[1];  h[2] ^= h[11];  h[1] = rot(h[1], 44);
  h[0] += h[2];   h[3] ^= h[0];   h[2] = rot(h[2], 15);
  h[1] += h[3];   h[4] ^= h[1];   h[3] = rot(h[3], 34);
  h[2] += h[4];   h[5] ^= h[2];   h[4] = rot(h[4], 21);
  h[3] += h[5];   h[6] ^= h[3];   h[5] = rot(h[5], 38);
  h[4] += h[6];   h[7] ^= h[4];   h[6] = rot(h[6], 33);
  h[5] += h[7];   h[8] ^= h[5];   h[7] = rot(h[7], 10);
  h[6] += h[8];   h[9] ^= h[6];   h[8] = rot(h[8], 13);
  h[7] += h[9];   h[10] ^= h[7];  h[9] = rot(h[9], 38);
  h[8] += h[10];  h[11] ^= h[8];  h[10] = rot(h[10], 53);
  h[9] += h[11];  h[0] ^= h[9];   h[11] = rot(h[11], 42);
  h[10] += h[0];  h[1] ^= h[10];  h[0] = rot(h[0], 54);
  // clang-format on
}

void end(const std::uint8_t* data, State& h) noexcept {
  for (std::size_t i = 0; i < kNumVars; ++i) h[i] += load_le64(data + 8 * i);
  end_partial(h);
  end_partial(h);
  end_partial(h);
}

void short_mix(std::uint64_t& h0, std::uint64_t& h1, std::uint64_t& h2,
               std::uint64_t& h3) noexcept {
  // clang-format off
  h2 = rot(h2, 50);  h2 += h3;  h0 ^= h2;
  h3 = rot(h3, 52);  h3 += h0;  h1 ^= h3;
  h0 = rot(h0, 30);  h0 += h1;  h2 ^= h0;
  h1 = rot(h1, 41);  h1 += h2;  h3 ^= h1;
  h2 = rot(h2, 54);  h2 += h3;  h0 ^= h2;
  h3 = rot(h3, 48);  h3 += h0;  h1 ^= h3;
  h0 = rot(h0, 38);  h0 += h1;  h2 ^= h0;
  h1 = rot(h1, 37);  h1 += h2;  h3 ^= h1;
  h2 = rot(h2, 62);  h2 += h3;  h0 ^= h2;
  h3 = rot(h3, 34);  h3 += h0;  h1 ^= h3;
  h0 = rot(h0, 5);   h0 += h1;  h2 ^= h0;
  h1 = rot(h1, 36);  h1 += h2;  h3 ^= h1;
  // clang-format on
}

void short_end(std::uint64_t& h0, std::uint64_t& h1, std::uint64_t& h2,
               std::uint64_t& h3) noexcept {
  // clang-format off
  h3 ^= h2;  h2 = rot(h2, 15);  h3 += h2;
  h0 ^= h3;  h3 = rot(h3, 52);  h0 += h3;
  h1 ^= h0;  h0 = rot(h0, 26);  h1 += h0;
  h2 ^= h1;  h1 = rot(h1, 51);  h2 += h1;
  h3 ^= h2;  h2 = rot(h2, 28);  h3 += h2;
  h0 ^= h3;  h3 = rot(h3, 9);   h0 += h3;
  h1 ^= h0;  h0 = rot(h0, 47);  h1 += h0;
  h2 ^= h1;  h1 = rot(h1, 54);  h2 += h1;
  h3 ^= h2;  h2 = rot(h2, 32);  h3 += h2;
  h0 ^= h3;  h3 = rot(h3, 25);  h0 += h3;
  h1 ^= h0;  h0 = rot(h0, 63);  h1 += h0;
  // clang-format on
}

// Messages shorter than kBufSize.
void short_hash(const std::uint8_t* p, std::size_t length, std::uint64_t& hash1,
                std::uint64_t& hash2) noexcept {
  std::size_t remainder = length % 32;
  std::uint64_t a = hash1;
  std::uint64_t b = hash2;
  std::uint64_t c = kConst;
  std::uint64_t d = kConst;

  if (length > 15) {
    const std::uint8_t* end_ptr = p + (length / 32) * 32;
    for (; p < end_ptr; p += 32) {
      c += load_le64(p);
      d += load_le64(p + 8);
      short_mix(a, b, c, d);
      a += load_le64(p + 16);
      b += load_le64(p + 24);
    }
    if (remainder >= 16) {
      c += load_le64(p);
      d += load_le64(p + 8);
      short_mix(a, b, c, d);
      p += 16;
      remainder -= 16;
    }
  }

  d += static_cast<std::uint64_t>(length) << 56;
  auto byte = [p](std::size_t i) { return static_cast<std::uint64_t>(p[i]); };
  switch (remainder) {
    case 15: d += byte(14) << 48; [[fallthrough]];
    case 14: d += byte(13) << 40; [[fallthrough]];
    case 13: d += byte(12) << 32; [[fallthrough]];
    case 12:
      d += load_le32(p + 8);
      c += load_le64(p);
      break;
    case 11: d += byte(10) << 16; [[fallthrough]];
    case 10: d += byte(9) << 8; [[fallthrough]];
    case 9: d += byte(8); [[fallthrough]];
    case 8: c += load_le64(p); break;
    case 7: c += byte(6) << 48; [[fallthrough]];
    case 6: c += byte(5) << 40; [[fallthrough]];
    case 5: c += byte(4) << 32; [[fallthrough]];
    case 4: c += load_le32(p); break;
    case 3: c += byte(2) << 16; [[fallthrough]];
    case 2: c += byte(1) << 8; [[fallthrough]];
    case 1: c += byte(0); break;
    case 0:
      c += kConst;
      d += kConst;
      break;
  }
  short_end(a, b, c, d);
  hash1 = a;
  hash2 = b;
}

}  // namespace

void spooky128(std::span<const std::byte> data, std::uint64_t& seed1,
               std::uint64_t& seed2) noexcept {
  const auto* p = reinterpret_cast<const std::uint8_t*>(data.data());
  const std::size_t length = data.size();
  if (length < kBufSize) {
    short_hash(p, length, seed1, seed2);
    return;
  }

  State h{};
  h[0] = h[3] = h[6] = h[9] = seed1;
  h[1] = h[4] = h[7] = h[10] = seed2;
  h[2] = h[5] = h[8] = h[11] = kConst;

  const std::size_t whole = (length / kBlockSize) * kBlockSize;
  for (std::size_t off = 0; off < whole; off += kBlockSize) mix(p + off, h);

  // Last partial block, zero padded, with its length in the final byte.
  std::array<std::uint8_t, kBlockSize> buf{};
  const std::size_t remainder = length - whole;
  if (remainder > 0) std::memcpy(buf.data(), p + whole, remainder);
  buf[kBlockSize - 1] = static_cast<std::uint8_t>(remainder);
  end(buf.data(), h);

  seed1 = h[0];
  seed2 = h[1];
}

HashValue spooky64(std::span<const std::byte> data, std::uint64_t seed) noexcept {
  std::uint64_t h1 = seed;
  std::uint64_t h2 = seed;
  spooky128(data, h1, h2);
  return h1;
}

}  // namespace bucketeer::hashing
