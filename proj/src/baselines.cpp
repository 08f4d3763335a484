#include "inplace/baselines.hpp"

#include <random>
#include <stdexcept>

#include "inplace/dump.hpp"

namespace inplace {

NaiveArray::NaiveArray(std::size_t n, unsigned elem_bits) : data_(n, elem_bits) {
  if (elem_bits > kWordBits) throw std::invalid_argument("naive array needs elem_bits <= w");
}

std::vector<Word> NaiveArray::snapshot() const {
  std::vector<Word> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = data_.buffer().peek_bits(i * elem_bits(), elem_bits());
  }
  return out;
}

std::vector<std::uint8_t> NaiveArray::dump() const {
  return encode_dump(elem_bits(), size(), false, data_.buffer().words());
}

BitmapArray::BitmapArray(std::size_t n, unsigned elem_bits) : data_(n, elem_bits), written_(n) {
  if (elem_bits > kWordBits) throw std::invalid_argument("bitmap array needs elem_bits <= w");
}

void BitmapArray::init(Word v) {
  INPLACE_EXPECTS((v & ~low_mask(elem_bits())) == 0);
  for (std::size_t w = 0; w < written_.word_count(); ++w) written_.store(w, 0);
  initv_ = v;
  ++registers_.scalar_writes;
}

Word BitmapArray::read(std::size_t i) const {
  INPLACE_EXPECTS(i < size());
  if (written_.read_bits(i, 1) != 0) return data_.read(i);
  ++registers_.scalar_reads;
  return initv_;
}

void BitmapArray::write(std::size_t i, Word v) {
  INPLACE_EXPECTS(i < size());
  data_.write(i, v);
  written_.write_bits(i, 1, 1);
}

SpaceAccount BitmapArray::space() const {
  const std::size_t data = data_.buffer().bit_len();
  return {data, data + written_.bit_len() + elem_bits()};
}

void BitmapArray::reset_cost() {
  data_.buffer().reset_ledger();
  written_.reset_ledger();
  registers_ = {};
}

void BitmapArray::scramble(std::uint64_t seed) {
  data_.buffer().scramble(seed);
  written_.scramble(seed ^ 0x94d049bb133111ebULL);
  std::mt19937_64 rng(seed);
  initv_ = rng() & low_mask(elem_bits());
}

}  // namespace inplace
