#include "inplace/special_array.hpp"

#include <stdexcept>

namespace inplace {

// One ℓ-bit element per cell; a pointer is the whole cell value.
class SpecialArray::Store {
 public:
  explicit Store(SpecialArray& owner) : owner_(owner) {}

  std::size_t cells() const { return owner_.cells_.size(); }
  std::uint64_t pointer(std::size_t cell) const { return owner_.cells_.read(cell); }
  void set_pointer(std::size_t cell, std::uint64_t target) { owner_.cells_.write(cell, target); }
  void copy_cell(std::size_t dst, std::size_t src) {
    owner_.cells_.write(dst, owner_.cells_.read(src));
  }
  void fill_cell(std::size_t cell, Word initv) { owner_.cells_.write(cell, initv); }
  Word read_slot(std::size_t cell, unsigned) const { return owner_.cells_.read(cell); }
  void write_slot(std::size_t cell, unsigned, Word v) { owner_.cells_.write(cell, v); }
  void commit_written_blocks(std::size_t b) {
    owner_.written_ = b;
    ++owner_.registers_.scalar_writes;
  }

 private:
  SpecialArray& owner_;
};

SpecialArray::SpecialArray(std::size_t n, unsigned elem_bits) : cells_(n, elem_bits) {
  if (n % 2 != 0) throw std::invalid_argument("special array needs an even length");
  if (elem_bits > kWordBits || elem_bits < ceil_log2(n)) {
    throw std::invalid_argument("special array needs ceil(log N) <= elem_bits <= w");
  }
}

void SpecialArray::init(Word v) {
  INPLACE_EXPECTS((v & ~low_mask(elem_bits())) == 0);
  written_ = 0;
  initv_ = v;
  registers_.scalar_writes += 2;
}

Word SpecialArray::read(std::size_t i) const {
  INPLACE_EXPECTS(i < size());
  registers_.scalar_reads += 2;
  Store store(const_cast<SpecialArray&>(*this));
  const Engine engine(store, written_, initv_);
  return engine.read(i, 0);
}

void SpecialArray::write(std::size_t i, Word v) {
  INPLACE_EXPECTS(i < size());
  INPLACE_EXPECTS((v & ~low_mask(elem_bits())) == 0);
  registers_.scalar_reads += 2;
  Store store(*this);
  Engine engine(store, written_, initv_, &paths_);
  engine.write(i, 0, v);
}

SpaceAccount SpecialArray::space() const {
  const std::size_t data = cells_.buffer().bit_len();
  return {data, data + 2 * elem_bits()};
}

std::optional<std::size_t> SpecialArray::chain_with(std::size_t block) const {
  INPLACE_EXPECTS(2 * block < size());
  Store store(const_cast<SpecialArray&>(*this));
  return Engine(store, written_, initv_).chain_with(block);
}

void SpecialArray::make_chain(std::size_t written, std::size_t unwritten) {
  INPLACE_EXPECTS(written < written_ && written_ <= unwritten && 2 * unwritten < size());
  Store store(*this);
  Engine(store, written_, initv_).make_chain(written, unwritten);
}

void SpecialArray::break_chain(std::size_t block) {
  INPLACE_EXPECTS(2 * block < size());
  Store store(*this);
  Engine(store, written_, initv_).break_chain(block);
}

void SpecialArray::init_block(std::size_t block) {
  INPLACE_EXPECTS(2 * block < size());
  Store store(*this);
  Engine(store, written_, initv_).init_block(block);
}

std::size_t SpecialArray::extend() {
  INPLACE_EXPECTS(2 * written_ < size());
  Store store(*this);
  Engine engine(store, written_, initv_, &paths_);
  return engine.extend();
}

}  // namespace inplace
