#pragma once

// Reference variants with linear-time init.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "inplace/common.hpp"
#include "inplace/word_model.hpp"

namespace inplace {

/// Plain packed array; init rewrites every word. Zero extra bits. Serves as
/// the oracle for every other variant.
class NaiveArray {
 public:
  NaiveArray(std::size_t n, unsigned elem_bits);

  void init(Word v) { data_.fill(v); }
  Word read(std::size_t i) const { return data_.read(i); }
  void write(std::size_t i, Word v) { data_.write(i, v); }

  std::size_t size() const { return data_.size(); }
  unsigned elem_bits() const { return data_.elem_bits(); }

  SpaceAccount space() const { return {data_.buffer().bit_len(), data_.buffer().bit_len()}; }
  CostLedger cost() const { return data_.buffer().ledger(); }
  void reset_cost() { data_.buffer().reset_ledger(); }
  void scramble(std::uint64_t seed) { data_.buffer().scramble(seed); }

  const PackedArray& data() const { return data_; }
  /// All logical values, uncounted.
  std::vector<Word> snapshot() const;
  std::vector<std::uint8_t> dump() const;

 private:
  PackedArray data_;
};

/// Values plus a written-bit per element; init clears the bitmap in ⌈N/w⌉
/// word writes. N + ℓ extra bits.
class BitmapArray {
 public:
  BitmapArray(std::size_t n, unsigned elem_bits);

  void init(Word v);
  Word read(std::size_t i) const;
  void write(std::size_t i, Word v);

  std::size_t size() const { return data_.size(); }
  unsigned elem_bits() const { return data_.elem_bits(); }

  SpaceAccount space() const;
  CostLedger cost() const { return data_.buffer().ledger() + written_.ledger() + registers_; }
  void reset_cost();
  void scramble(std::uint64_t seed);

 private:
  PackedArray data_;
  WordBuffer written_;
  Word initv_ = 0;
  mutable CostLedger registers_;
};

}  // namespace inplace
