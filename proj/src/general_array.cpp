#include "inplace/general_array.hpp"

#include <limits>
#include <random>
#include <stdexcept>

#include "inplace/dump.hpp"

namespace inplace {

GeneralLayout plan_general_layout(std::size_t n, unsigned elem_bits, GeneralOptions opts) {
  if (elem_bits < 1 || elem_bits > kWordBits) {
    throw std::invalid_argument("general array needs 1 <= elem_bits <= w");
  }
  if (n > std::numeric_limits<std::size_t>::max() / elem_bits) {
    throw std::length_error("general array bit length overflows");
  }

  GeneralLayout lay;
  lay.n = n;
  lay.elem_bits = elem_bits;
  const unsigned log_n = ceil_log2(n);
  lay.pack = 2 * ((log_n + elem_bits - 1) / elem_bits) + 1;
  lay.wide_bits = lay.pack * elem_bits;
  lay.packed_len = n / lay.pack;
  lay.leftover = n - lay.pack * lay.packed_len;

  const std::size_t np = lay.packed_len;
  lay.meta.ptr_bits = ceil_log2(np) + 1;
  lay.meta.b_bits = np == 0 ? 0 : ceil_log2(np + 2) - 1;  // ⌈log(N'/2 + 1)⌉
  lay.meta.initv_bits = elem_bits;
  lay.meta.ptr_offset = 0;
  lay.meta.b_offset = lay.meta.ptr_bits;
  lay.meta.initv_offset = lay.meta.ptr_bits + lay.meta.b_bits;

  const std::size_t core = np - np % 2;
  const bool fits = lay.meta.total_bits() <= lay.wide_bits;
  const bool wants_core = n * elem_bits > opts.small_limit_bits;
  if (wants_core && core >= 2 && fits) {
    lay.small = false;
    lay.core_cells = core;
    lay.tail_begin = core * lay.pack;
  } else {
    if (n * elem_bits > kSmallFillWords * kWordBits) {
      throw std::logic_error("general array: no usable core layout");
    }
    lay.small = true;
    lay.core_cells = 0;
    lay.tail_begin = 0;
  }
  lay.tail_len = n - lay.tail_begin;
  if (lay.tail_len * elem_bits > kSmallFillWords * kWordBits) {
    throw std::logic_error("general array: tail exceeds the small-fill bound");
  }
  return lay;
}

MetaFields load_meta(const WordBuffer& storage, const GeneralLayout& lay) {
  INPLACE_EXPECTS(!lay.small);
  const std::size_t base = lay.meta_bit();
  return {storage.read_bits(base + lay.meta.ptr_offset, lay.meta.ptr_bits),
          static_cast<std::size_t>(storage.read_bits(base + lay.meta.b_offset, lay.meta.b_bits)),
          storage.read_bits(base + lay.meta.initv_offset, lay.meta.initv_bits)};
}

void store_meta(WordBuffer& storage, const GeneralLayout& lay, const MetaFields& f) {
  INPLACE_EXPECTS(!lay.small);
  const std::size_t base = lay.meta_bit();
  storage.write_bits(base + lay.meta.ptr_offset, lay.meta.ptr_bits, f.pointer);
  storage.write_bits(base + lay.meta.b_offset, lay.meta.b_bits, f.written_blocks);
  storage.write_bits(base + lay.meta.initv_offset, lay.meta.initv_bits, f.initv);
}

// Core cells are ℓ'-bit runs of the storage; a cell's pointer is its low
// ptr_bits bits, the rest of a pointer cell is unused except in the
// metadata cell.
class GeneralArray::CoreStore {
 public:
  explicit CoreStore(GeneralArray& owner) : a_(owner), lay_(owner.layout_) {}

  std::size_t cells() const { return lay_.core_cells; }
  std::uint64_t pointer(std::size_t cell) const {
    return a_.storage_.read_bits(cell * lay_.wide_bits, lay_.meta.ptr_bits);
  }
  void set_pointer(std::size_t cell, std::uint64_t target) {
    a_.storage_.write_bits(cell * lay_.wide_bits, lay_.meta.ptr_bits, target);
  }
  void copy_cell(std::size_t dst, std::size_t src) {
    a_.storage_.copy_bits(dst * lay_.wide_bits, src * lay_.wide_bits, lay_.wide_bits);
  }
  void fill_cell(std::size_t cell, Word initv) {
    a_.storage_.fill_periodic(cell * lay_.wide_bits, lay_.wide_bits, lay_.elem_bits, initv);
  }
  Word read_slot(std::size_t cell, unsigned slot) const {
    return a_.storage_.read_bits(cell * lay_.wide_bits + slot * lay_.elem_bits, lay_.elem_bits);
  }
  void write_slot(std::size_t cell, unsigned slot, Word v) {
    a_.storage_.write_bits(cell * lay_.wide_bits + slot * lay_.elem_bits, lay_.elem_bits, v);
  }
  void commit_written_blocks(std::size_t b) {
    if (2 * b == lay_.core_cells) {
      // The metadata cell is about to receive data.
      a_.saturated_ = true;
    } else {
      a_.storage_.write_bits(lay_.meta_bit() + lay_.meta.b_offset, lay_.meta.b_bits, b);
    }
  }

 private:
  GeneralArray& a_;
  const GeneralLayout& lay_;
};

GeneralArray::GeneralArray(std::size_t n, unsigned elem_bits, GeneralOptions opts)
    : layout_(plan_general_layout(n, elem_bits, opts)), storage_(n * elem_bits) {}

void GeneralArray::init(Word v) {
  INPLACE_EXPECTS((v & ~low_mask(layout_.elem_bits)) == 0);
  if (layout_.small) {
    small_fill(storage_, 0, layout_.n, layout_.elem_bits, v);
    saturated_ = true;
    return;
  }
  saturated_ = false;
  store_meta(storage_, layout_, {layout_.meta_cell(), 0, v});
  small_fill(storage_, layout_.tail_begin, layout_.tail_len, layout_.elem_bits, v);
}

Word GeneralArray::read(std::size_t i) const {
  INPLACE_EXPECTS(i < layout_.n);
  if (!in_core(i)) return storage_.read_bits(i * layout_.elem_bits, layout_.elem_bits);
  const MetaFields meta = load_meta(storage_, layout_);
  CoreStore store(const_cast<GeneralArray&>(*this));
  const Engine engine(store, meta.written_blocks, meta.initv);
  const PackedSlot at = pack_slot(i, layout_.pack);
  return engine.read(at.cell, at.slot);
}

void GeneralArray::write(std::size_t i, Word v) {
  INPLACE_EXPECTS(i < layout_.n);
  INPLACE_EXPECTS((v & ~low_mask(layout_.elem_bits)) == 0);
  if (!in_core(i)) {
    storage_.write_bits(i * layout_.elem_bits, layout_.elem_bits, v);
    return;
  }
  const MetaFields meta = load_meta(storage_, layout_);
  CoreStore store(*this);
  Engine engine(store, meta.written_blocks, meta.initv, &paths_);
  const PackedSlot at = pack_slot(i, layout_.pack);
  engine.write(at.cell, at.slot, v);
}

SpaceAccount GeneralArray::space() const {
  constexpr std::size_t kFlagBits = 1;
  return {layout_.n * layout_.elem_bits, storage_.bit_len() + kFlagBits};
}

void GeneralArray::scramble(std::uint64_t seed) {
  storage_.scramble(seed);
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  saturated_ = (rng() & 1) != 0;
}

std::vector<std::uint8_t> GeneralArray::dump() const {
  return encode_dump(layout_.elem_bits, layout_.n, saturated_, storage_.words());
}

GeneralArray GeneralArray::restore(std::span<const std::uint8_t> image, GeneralOptions opts) {
  DumpImage img = decode_dump(image);
  if (img.elem_bits > kWordBits) throw std::runtime_error("dump: element width exceeds w");
  GeneralArray a(static_cast<std::size_t>(img.n), img.elem_bits, opts);
  a.storage_.assign(img.words);
  a.saturated_ = img.flag;
  return a;
}

}  // namespace inplace
