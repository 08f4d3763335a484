#pragma once

// The block-chain engine shared by SpecialArray and the core of GeneralArray.
//
// Cells come in blocks of two (block i = cells 2i, 2i+1). Blocks [0, b) form
// the written area, [b, N/2) the unwritten area. Two blocks are chained when
// their first cells point at each other (pointer value = partner's first cell
// index) and they lie in different areas. Logical values:
//
//   written,   unchained       -> the cells themselves
//   written,   chained with u  -> (initv, initv); second cell holds Z[2u]
//   unwritten, chained with w  -> (second cell of w, own second cell)
//   unwritten, unchained       -> (initv, initv); contents arbitrary
//
// A Store supplies the cell-level primitives. A cell may consist of several
// slots of ℓ bits; reads and writes address (cell, slot).
//
//   std::size_t cells() const;                 // even
//   std::uint64_t pointer(std::size_t cell) const;
//   void set_pointer(std::size_t cell, std::uint64_t target);
//   void copy_cell(std::size_t dst, std::size_t src);
//   void fill_cell(std::size_t cell, Word initv);
//   Word read_slot(std::size_t cell, unsigned slot) const;
//   void write_slot(std::size_t cell, unsigned slot, Word v);
//   void commit_written_blocks(std::size_t b);

#include <cstddef>
#include <cstdint>
#include <optional>

#include "inplace/word_model.hpp"

namespace inplace {

/// Counts of which write path each operation took (diagnostics for tests).
struct WritePathCounts {
  std::uint64_t written_unchained = 0;
  std::uint64_t written_chained_same = 0;   // extend() handed back the block itself
  std::uint64_t written_chained_swap = 0;
  std::uint64_t unwritten_chained = 0;
  std::uint64_t unwritten_unchained_same = 0;
  std::uint64_t unwritten_unchained_link = 0;
  std::uint64_t extend_materialized = 0;     // boundary block was chained
};

/// Runs one operation against a Store with b and initv loaded into locals.
/// The engine never caches anything across operations.
template <typename Store>
class BlockChainEngine {
 public:
  BlockChainEngine(Store& store, std::size_t written_blocks, Word initv,
                   WritePathCounts* paths = nullptr)
      : store_(store), b_(written_blocks), initv_(initv), paths_(paths) {}

  std::size_t written_blocks() const { return b_; }

  /// Partner of `block` given the pointer stored in its first cell.
  std::optional<std::size_t> partner_given(std::size_t block, std::uint64_t link) const {
    if (link % 2 != 0 || link >= store_.cells()) return std::nullopt;
    const std::size_t k = static_cast<std::size_t>(link / 2);
    const bool straddles = (block < b_ && b_ <= k) || (k < b_ && b_ <= block);
    if (!straddles || store_.pointer(link) != 2 * block) return std::nullopt;
    return k;
  }

  std::optional<std::size_t> chain_with(std::size_t block) const {
    return partner_given(block, store_.pointer(2 * block));
  }

  /// Requires i < b <= j.
  void make_chain(std::size_t i, std::size_t j) {
    store_.set_pointer(2 * i, 2 * j);
    store_.set_pointer(2 * j, 2 * i);
  }

  /// Dissolves the chain of `block`, if any, by self-pointing the partner.
  void break_chain(std::size_t block) {
    if (const auto k = chain_with(block)) store_.set_pointer(2 * *k, 2 * *k);
  }

  void init_block(std::size_t block) {
    store_.fill_cell(2 * block, initv_);
    store_.fill_cell(2 * block + 1, initv_);
  }

  /// Grows the written area by one block and returns an unchained written
  /// block holding (initv, initv). If the boundary block was chained, its
  /// logical values are materialized first and its partner is recycled.
  std::size_t extend() {
    const std::size_t boundary = b_;
    INPLACE_EXPECTS(2 * boundary < store_.cells());
    const auto partner = chain_with(boundary);
    ++b_;
    store_.commit_written_blocks(b_);

    std::size_t fresh = boundary;
    if (partner) {
      fresh = *partner;
      // First cell takes Z[2·boundary] from the partner's second cell; the
      // second cell already holds Z[2·boundary+1].
      store_.copy_cell(2 * boundary, 2 * fresh + 1);
      break_chain(boundary);
      bump(&WritePathCounts::extend_materialized);
    }
    init_block(fresh);
    break_chain(fresh);
    return fresh;
  }

  Word read(std::size_t cell, unsigned slot) const {
    const std::size_t block = cell / 2;
    const auto partner = chain_with(block);
    if (block < b_) return partner ? initv_ : store_.read_slot(cell, slot);
    if (!partner) return initv_;
    return cell % 2 == 0 ? store_.read_slot(2 * *partner + 1, slot) : store_.read_slot(cell, slot);
  }

  void write(std::size_t cell, unsigned slot, Word v) {
    const std::size_t block = cell / 2;
    auto partner = chain_with(block);

    if (block < b_) {
      if (!partner) {
        bump(&WritePathCounts::written_unchained);
      } else {
        const std::size_t fresh = extend();
        if (fresh == block) {
          bump(&WritePathCounts::written_chained_same);
        } else {
          // Move the chain onto the fresh block; the first cell is rewritten
          // by make_chain, so only the second cell needs copying.
          store_.copy_cell(2 * fresh + 1, 2 * block + 1);
          make_chain(fresh, *partner);
          init_block(block);
          bump(&WritePathCounts::written_chained_swap);
        }
      }
      write_and_break(cell, slot, v);
      return;
    }

    if (partner) {
      bump(&WritePathCounts::unwritten_chained);
    } else {
      const std::size_t fresh = extend();
      if (fresh == block) {
        bump(&WritePathCounts::unwritten_unchained_same);
        write_and_break(cell, slot, v);
        return;
      }
      // The first cell of `block` becomes a pointer right away; only the
      // second cell needs the initial value.
      store_.fill_cell(2 * block + 1, initv_);
      make_chain(fresh, block);
      partner = fresh;
      bump(&WritePathCounts::unwritten_unchained_link);
    }
    if (cell % 2 == 0) {
      store_.write_slot(2 * *partner + 1, slot, v);
    } else {
      store_.write_slot(cell, slot, v);
    }
  }

 private:
  void write_and_break(std::size_t cell, unsigned slot, Word v) {
    store_.write_slot(cell, slot, v);
    break_chain(cell / 2);
  }

  void bump(std::uint64_t WritePathCounts::*field) {
    if (paths_ != nullptr) ++(paths_->*field);
  }

  Store& store_;
  std::size_t b_;
  Word initv_;
  WritePathCounts* paths_;
};

}  // namespace inplace
