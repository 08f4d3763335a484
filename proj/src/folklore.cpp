#include "inplace/folklore.hpp"

#include <random>
#include <stdexcept>

namespace inplace {

FolkloreArray::FolkloreArray(std::size_t n, unsigned elem_bits)
    : values_(n, elem_bits), from_(n, elem_bits), to_(n, elem_bits) {
  if (elem_bits > kWordBits || elem_bits < ceil_log2(n)) {
    throw std::invalid_argument("folklore array needs ceil(log N) <= elem_bits <= w");
  }
}

bool FolkloreArray::chained(std::size_t i) const {
  const Word f = from_.read(i);
  ++registers_.scalar_reads;
  return f < top_ && to_.read(f) == i;
}

void FolkloreArray::init(Word v) {
  INPLACE_EXPECTS((v & ~low_mask(elem_bits())) == 0);
  top_ = 0;
  initv_ = v;
  registers_.scalar_writes += 2;
}

Word FolkloreArray::read(std::size_t i) const {
  INPLACE_EXPECTS(i < size());
  if (chained(i)) return values_.read(i);
  ++registers_.scalar_reads;
  return initv_;
}

void FolkloreArray::write(std::size_t i, Word v) {
  INPLACE_EXPECTS(i < size());
  values_.write(i, v);
  if (!chained(i)) {
    to_.write(top_, i);
    from_.write(i, top_);
    ++top_;
    registers_.scalar_writes += 1;
  }
}

SpaceAccount FolkloreArray::space() const {
  const std::size_t data = values_.buffer().bit_len();
  return {data, data + from_.buffer().bit_len() + to_.buffer().bit_len() + 2 * elem_bits()};
}

CostLedger FolkloreArray::cost() const {
  return values_.buffer().ledger() + from_.buffer().ledger() + to_.buffer().ledger() + registers_;
}

void FolkloreArray::reset_cost() {
  values_.buffer().reset_ledger();
  from_.buffer().reset_ledger();
  to_.buffer().reset_ledger();
  registers_ = {};
}

void FolkloreArray::scramble(std::uint64_t seed) {
  values_.buffer().scramble(seed);
  from_.buffer().scramble(seed ^ 0x9e3779b97f4a7c15ULL);
  to_.buffer().scramble(seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::mt19937_64 rng(seed);
  top_ = size() == 0 ? 0 : rng() % (size() + 1);
  initv_ = rng() & low_mask(elem_bits());
}

}  // namespace inplace
