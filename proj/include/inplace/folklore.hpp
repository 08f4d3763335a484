#pragma once

#include <cstddef>
#include <cstdint>

#include "inplace/common.hpp"
#include "inplace/word_model.hpp"

namespace inplace {

/// The classic three-array initializable array. V holds values, F[i] and
/// T[F[i]] certify that i was written since the last init ("chained"), and
/// b is the size of the T stack. Uses 2ℓ(N+1) bits beyond V.
///
/// F and T hold indices in ℓ-bit cells, so ℓ ≥ ⌈log N⌉ is required.
class FolkloreArray {
 public:
  /// Throws std::invalid_argument if ℓ ∉ [max(1, ⌈log N⌉), w].
  FolkloreArray(std::size_t n, unsigned elem_bits);

  void init(Word v);
  Word read(std::size_t i) const;
  void write(std::size_t i, Word v);

  std::size_t size() const { return values_.size(); }
  unsigned elem_bits() const { return values_.elem_bits(); }
  std::size_t stack_size() const { return top_; }

  SpaceAccount space() const;
  CostLedger cost() const;
  void reset_cost();
  /// Fills V, F, T and the registers with seeded noise.
  void scramble(std::uint64_t seed);

  const PackedArray& values() const { return values_; }
  PackedArray& from_array() { return from_; }
  PackedArray& to_array() { return to_; }

 private:
  bool chained(std::size_t i) const;

  PackedArray values_;  // V
  PackedArray from_;    // F
  PackedArray to_;      // T
  std::size_t top_ = 0; // b
  Word initv_ = 0;
  mutable CostLedger registers_;
};

}  // namespace inplace
