#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "inplace/block_chain.hpp"
#include "inplace/common.hpp"
#include "inplace/word_model.hpp"

namespace inplace {

/// In-place initializable array for even N and ⌈log N⌉ ≤ ℓ ≤ w: one packed
/// array of N ℓ-bit cells plus two ℓ-bit registers (b and initv), so 2ℓ
/// extra bits. Every operation touches O(1) words.
class SpecialArray {
 public:
  /// Throws std::invalid_argument for odd N or ℓ outside [max(1, ⌈log N⌉), w].
  SpecialArray(std::size_t n, unsigned elem_bits);

  void init(Word v);
  Word read(std::size_t i) const;
  void write(std::size_t i, Word v);

  std::size_t size() const { return cells_.size(); }
  unsigned elem_bits() const { return cells_.elem_bits(); }
  std::size_t written_blocks() const { return written_; }
  Word initial_value() const { return initv_; }

  SpaceAccount space() const;
  CostLedger cost() const { return cells_.buffer().ledger() + registers_; }
  void reset_cost() {
    cells_.buffer().reset_ledger();
    registers_ = {};
  }
  /// Seeded noise in the cells; b and initv are left for init() to set.
  void scramble(std::uint64_t seed) { cells_.buffer().scramble(seed); }

  // Block tools, exposed for tests and the scanner.
  std::optional<std::size_t> chain_with(std::size_t block) const;
  void make_chain(std::size_t written, std::size_t unwritten);
  void break_chain(std::size_t block);
  void init_block(std::size_t block);
  std::size_t extend();

  const PackedArray& cells() const { return cells_; }
  /// Direct cell access, bypassing the algorithm (test setup only).
  PackedArray& raw_cells() { return cells_; }
  const WritePathCounts& write_paths() const { return paths_; }

 private:
  class Store;
  friend class Store;
  using Engine = BlockChainEngine<Store>;

  PackedArray cells_;
  std::size_t written_ = 0;  // b
  Word initv_ = 0;
  mutable CostLedger registers_;
  mutable WritePathCounts paths_;
};

}  // namespace inplace
