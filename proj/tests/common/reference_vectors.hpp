#pragma once

// Hash reference vectors shared by the unit tests and the acceptance binary.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bucketeer::testdata {

// Byte i = (7 i + 3) mod 256; the desk scripts that produced the vectors use
// the same generator.
inline std::string pattern(std::size_t n) {
  std::string s(n, '\0');
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<char>((i * 7 + 3) & 0xff);
  return s;
}

// Published FNV-1a 64-bit vectors.
inline const std::vector<std::pair<std::string, std::uint64_t>> kFnvVectors = {
    {"", 0xcbf29ce484222325ULL},
    {"a", 0xaf63dc4c8601ec8cULL},
    {"b", 0xaf63df4c8601f1a5ULL},
    {"foobar", 0x85944171f73967e8ULL},
    {"fo", 0x08985907b541d342ULL},
};

// RFC 1321 test suite.
inline const std::vector<std::pair<std::string, std::string>> kMd5Suite = {
    {"", "d41d8cd98f00b204e9800998ecf8427e"},
    {"a", "0cc175b9c0f1b6a831c399e269772661"},
    {"abc", "900150983cd24fb0d6963f7d28e17f72"},
    {"message digest", "f96b697d7cb7938d525a2f31aaf161d0"},
    {"abcdefghijklmnopqrstuvwxyz", "c3fcd3d76192e4007dfb496cca67e13b"},
    {"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789",
     "d174ab98d277d9f5a5611c2c9f419d9f"},
    {"1234567890123456789012345678901234567890123456789012345678901234567890123456789"
     "0",
     "57edf4a22be3c955ac49da2e2107b67a"},
};

// SpookyHash V2 reference implementation, seed 0.
inline const std::vector<std::pair<std::string, std::uint64_t>> kSpookyText = {
    {"", 0x232706fc6bf50919ULL},
    {"a", 0x1a108191a0bbc9bdULL},
    {"abc", 0x8aab15f77537c967ULL},
    {"exp1user42", 0x77888fc91bf5af98ULL},
    {"exp_Auser_0", 0xcd8c861db6680e06ULL},
    {"message digest", 0xa087095ca5c23096ULL},
    {"The quick brown fox jumps over the lazy dog", 0x2b12e846aa0693c7ULL},
};

// Same implementation over pattern(n); covers every short-path remainder class
// and the long (>= 192 byte) path.
inline const std::vector<std::pair<std::size_t, std::uint64_t>> kSpookySized = {
    {12, 0x55c0306fc907b8e3ULL},  {15, 0x80ff2557a5f3fce9ULL},  {16, 0x996b234d7cd0c4edULL},
    {31, 0xb8cc43d889b92e0cULL},  {32, 0xe10b9985690e40f4ULL},  {47, 0xc3eb8b9737232ebdULL},
    {63, 0xca1cae9c64df1f4dULL},  {64, 0x5345591ecf7c6e35ULL},  {100, 0x9c6d47f3223495a7ULL},
    {191, 0x5a8b556721e70004ULL}, {192, 0x4bd5231fc1b3b9cfULL}, {193, 0x898f9ebe5674b3c2ULL},
    {287, 0xef60b12696bcb0ecULL}, {288, 0x70a2ef669478aefbULL}, {500, 0xf0c6a863ba8c7a80ULL},
    {1000, 0x85072d3218a51b05ULL},
};

}  // namespace bucketeer::testdata
