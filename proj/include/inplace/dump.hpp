#pragma once

// LZAR dump format, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "LZAR"
//   4       1     version (1)
//   5       1     word bits w
//   6       2     element bits ℓ
//   8       8     length N
//   16      1     flags (bit 0 = saturation flag)
//   17      8·⌈Nℓ/w⌉  storage words

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "inplace/word_model.hpp"

namespace inplace {

inline constexpr std::uint8_t kDumpVersion = 1;
inline constexpr std::size_t kDumpHeaderBytes = 17;

struct DumpImage {
  unsigned word_bits = kWordBits;
  unsigned elem_bits = 1;
  std::uint64_t n = 0;
  bool flag = false;
  std::vector<Word> words;
};

std::vector<std::uint8_t> encode_dump(unsigned elem_bits, std::uint64_t n, bool flag,
                                      std::span<const Word> words);

/// Throws std::runtime_error on bad magic, version, word size or length.
DumpImage decode_dump(std::span<const std::uint8_t> bytes);

}  // namespace inplace
