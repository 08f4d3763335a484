#include "inplace/dump.hpp"

#include <stdexcept>

namespace inplace {
namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, unsigned bytes) {
  for (unsigned i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, unsigned bytes) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < bytes; ++i) v |= std::uint64_t{in[at + i]} << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_dump(unsigned elem_bits, std::uint64_t n, bool flag,
                                      std::span<const Word> words) {
  std::vector<std::uint8_t> out;
  out.reserve(kDumpHeaderBytes + 8 * words.size());
  for (char c : {'L', 'Z', 'A', 'R'}) out.push_back(static_cast<std::uint8_t>(c));
  out.push_back(kDumpVersion);
  out.push_back(static_cast<std::uint8_t>(kWordBits));
  put_le(out, elem_bits, 2);
  put_le(out, n, 8);
  out.push_back(flag ? 1 : 0);
  for (Word w : words) put_le(out, w, 8);
  return out;
}

DumpImage decode_dump(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kDumpHeaderBytes) throw std::runtime_error("dump: truncated header");
  if (bytes[0] != 'L' || bytes[1] != 'Z' || bytes[2] != 'A' || bytes[3] != 'R') {
    throw std::runtime_error("dump: bad magic");
  }
  if (bytes[4] != kDumpVersion) throw std::runtime_error("dump: unsupported version");
  DumpImage img;
  img.word_bits = bytes[5];
  if (img.word_bits != kWordBits) throw std::runtime_error("dump: word size mismatch");
  img.elem_bits = static_cast<unsigned>(get_le(bytes, 6, 2));
  img.n = get_le(bytes, 8, 8);
  img.flag = (bytes[16] & 1) != 0;
  if (img.elem_bits == 0 || img.elem_bits > kMaxElemBits) {
    throw std::runtime_error("dump: bad element width");
  }
  if (img.n > (std::uint64_t{1} << 58) / img.elem_bits) {
    throw std::runtime_error("dump: length out of range");
  }
  const std::size_t count = (img.n * img.elem_bits + kWordBits - 1) / kWordBits;
  if (bytes.size() != kDumpHeaderBytes + 8 * count) {
    throw std::runtime_error("dump: payload size does not match header");
  }
  img.words.resize(count);
  for (std::size_t i = 0; i < count; ++i) img.words[i] = get_le(bytes, kDumpHeaderBytes + 8 * i, 8);
  return img;
}

}  // namespace inplace
