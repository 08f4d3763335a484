#pragma once

// GeneralArray: an initializable array of any length N and any width
// 1 ≤ ℓ ≤ w that keeps exactly one bit beyond its N·ℓ data bits.
//
// Layout of the N·ℓ-bit storage:
//
//   [ core: N'' cells of ℓ' = p·ℓ bits | tail: N − p·N'' plain ℓ-bit slots ]
//
// with p = 2⌈log N / ℓ⌉ + 1, N' = ⌊N/p⌋ and N'' = N' rounded down to even.
// Element i < p·N'' lives in slot i mod p of core cell ⌊i/p⌋; the core runs
// the block-chain algorithm over ℓ'-bit cells. The tail is small enough to
// be refilled in O(1) words on every init.
//
// The last core block's first cell carries [pointer | b | initv] (LSB first).
// That block is unwritten until the written area covers the whole core, at
// which point the metadata is overwritten by data and the single extra bit
// (the saturation flag) switches the structure to a plain packed array.
//
// Arrays with N·ℓ ≤ 8w skip the core entirely and are plain packed arrays
// refilled by small_fill; their flag is set by every init.
//
// A zero-extra-bit variant cannot exist: init would have to rewrite every
// word for some prior state.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "inplace/block_chain.hpp"
#include "inplace/common.hpp"
#include "inplace/word_model.hpp"

namespace inplace {

/// Bit fields of the metadata cell, offsets relative to the cell start.
struct MetaLayout {
  unsigned ptr_offset = 0;
  unsigned ptr_bits = 0;
  unsigned b_offset = 0;
  unsigned b_bits = 0;
  unsigned initv_offset = 0;
  unsigned initv_bits = 0;

  unsigned total_bits() const { return ptr_bits + b_bits + initv_bits; }
};

struct GeneralLayout {
  std::size_t n = 0;
  unsigned elem_bits = 1;
  unsigned pack = 1;            // p
  std::size_t packed_len = 0;   // N'
  unsigned wide_bits = 1;       // ℓ'
  std::size_t leftover = 0;     // c = N − p·N'
  std::size_t core_cells = 0;   // N'' (even)
  std::size_t tail_begin = 0;   // first element served by the tail
  std::size_t tail_len = 0;
  bool small = true;            // no core: plain array + small_fill
  MetaLayout meta;

  std::size_t meta_cell() const { return core_cells - 2; }
  std::size_t meta_bit() const { return meta_cell() * wide_bits; }
};

struct GeneralOptions {
  /// Arrays of at most this many bits use the plain small-array mode.
  std::size_t small_limit_bits = kSmallFillWords * kWordBits;
};

/// Computes the static parameters. Throws std::invalid_argument for ℓ outside
/// [1, w], std::length_error if N·ℓ overflows, std::logic_error if the
/// metadata does not fit a core cell.
GeneralLayout plan_general_layout(std::size_t n, unsigned elem_bits, GeneralOptions opts = {});

struct PackedSlot {
  std::size_t cell;
  unsigned slot;
  friend bool operator==(const PackedSlot&, const PackedSlot&) = default;
};

/// Element i of the packed core: cell ⌊i/p⌋, slot i mod p.
constexpr PackedSlot pack_slot(std::size_t i, unsigned pack) {
  return {i / pack, static_cast<unsigned>(i % pack)};
}

struct MetaFields {
  std::uint64_t pointer = 0;
  std::size_t written_blocks = 0;
  Word initv = 0;
  friend bool operator==(const MetaFields&, const MetaFields&) = default;
};

MetaFields load_meta(const WordBuffer& storage, const GeneralLayout& layout);
void store_meta(WordBuffer& storage, const GeneralLayout& layout, const MetaFields& fields);

class GeneralArray {
 public:
  GeneralArray(std::size_t n, unsigned elem_bits, GeneralOptions opts = {});

  static GeneralArray build(std::size_t n, unsigned elem_bits, GeneralOptions opts = {}) {
    return GeneralArray(n, elem_bits, opts);
  }

  void init(Word v);
  Word read(std::size_t i) const;
  void write(std::size_t i, Word v);

  std::size_t size() const { return layout_.n; }
  unsigned elem_bits() const { return layout_.elem_bits; }
  /// The single extra bit: set once the storage is a plain packed array.
  bool saturated() const { return saturated_; }

  SpaceAccount space() const;
  CostLedger cost() const { return storage_.ledger(); }
  void reset_cost() { storage_.reset_ledger(); }
  /// Seeded noise in the storage and the flag.
  void scramble(std::uint64_t seed);

  const GeneralLayout& layout() const { return layout_; }
  const WordBuffer& storage() const { return storage_; }
  /// Direct storage access, bypassing the algorithm (test setup only).
  WordBuffer& raw_storage() { return storage_; }
  const WritePathCounts& write_paths() const { return paths_; }

  /// Serialized state in the LZAR dump format.
  std::vector<std::uint8_t> dump() const;
  /// Rebuilds an array from dump(). Throws std::runtime_error on a malformed
  /// image or one whose parameters disagree with the header.
  static GeneralArray restore(std::span<const std::uint8_t> image, GeneralOptions opts = {});

 private:
  class CoreStore;
  friend class CoreStore;
  using Engine = BlockChainEngine<CoreStore>;

  bool in_core(std::size_t i) const { return !saturated_ && i < layout_.tail_begin; }

  GeneralLayout layout_;
  WordBuffer storage_;
  bool saturated_ = false;
  mutable WritePathCounts paths_;
};

}  // namespace inplace
