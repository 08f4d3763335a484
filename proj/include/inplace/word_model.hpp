#pragma once

// Word-RAM substrate: bit-repeat, a counted word buffer and packed
// fixed-width element arrays.

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <vector>

// Contract checks stay on in release builds; violating one is a caller bug.
#define INPLACE_EXPECTS(cond)                                                  \
  do {                                                                         \
    if (!(cond)) [[unlikely]] {                                                \
      std::fprintf(stderr, "%s:%d: contract violated: %s\n", __FILE__,         \
                   __LINE__, #cond);                                           \
      std::abort();                                                            \
    }                                                                          \
  } while (false)

namespace inplace {

using Word = std::uint64_t;
inline constexpr unsigned kWordBits = 64;

/// Largest element width a PackedArray accepts (ℓ ∈ O(w)).
inline constexpr unsigned kMaxElemBits = 4 * kWordBits;

/// Word budget of small_fill (the K in "c·ℓ ≤ K·w").
inline constexpr std::size_t kSmallFillWords = 8;

/// Mask of the low `bits` bits; bits may be 0..64.
constexpr Word low_mask(unsigned bits) {
  return bits >= kWordBits ? ~Word{0} : (Word{1} << bits) - 1;
}

/// ⌈log2 n⌉, with ceil_log2(0) = ceil_log2(1) = 0.
constexpr unsigned ceil_log2(std::uint64_t n) {
  unsigned r = 0;
  while (r < 64 && (std::uint64_t{1} << r) < n) ++r;
  return r;
}

enum class RepeatMethod { multiply, shift_doubling };

/// The comb constant 0…01 0…01 … 0…01 with ⌊word_bits/ℓ⌋ ones, one every ℓ bits.
Word comb_constant(unsigned elem_bits, unsigned word_bits = kWordBits);

/// Tiles the ℓ-bit value `v` into the ⌊word_bits/ℓ⌋ low slots of a word.
/// Bits above ℓ·⌊word_bits/ℓ⌋ are zero. `word_bits` below 64 simulates a
/// narrower machine word.
Word bit_repeat(Word v, unsigned elem_bits, unsigned word_bits = kWordBits,
                RepeatMethod method = RepeatMethod::multiply);

/// A full word whose bit t equals bit ((phase + t) mod ℓ) of `v`: the
/// periodic ℓ-bit pattern as seen from a word that starts `phase` bits into a slot.
Word periodic_word(Word v, unsigned elem_bits, unsigned phase);

/// Word-access counters. Scalar counters cover the per-structure registers
/// (b, initv) that live outside any buffer.
struct CostLedger {
  std::uint64_t word_reads = 0;
  std::uint64_t word_writes = 0;
  std::uint64_t scalar_reads = 0;
  std::uint64_t scalar_writes = 0;

  std::uint64_t word_accesses() const { return word_reads + word_writes; }

  CostLedger& operator+=(const CostLedger& o) {
    word_reads += o.word_reads;
    word_writes += o.word_writes;
    scalar_reads += o.scalar_reads;
    scalar_writes += o.scalar_writes;
    return *this;
  }
  friend CostLedger operator+(CostLedger a, const CostLedger& b) { return a += b; }
  friend CostLedger operator-(CostLedger a, const CostLedger& b) {
    a.word_reads -= b.word_reads;
    a.word_writes -= b.word_writes;
    a.scalar_reads -= b.scalar_reads;
    a.scalar_writes -= b.scalar_writes;
    return a;
  }
  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

/// Fixed-capacity bit storage in w-bit words. Every word touch goes through
/// load()/store() and is counted; peek_* accessors are uncounted and exist
/// for scanners and dumps only. Bits at or beyond bit_len() are always zero.
class WordBuffer {
 public:
  WordBuffer() = default;
  explicit WordBuffer(std::size_t bit_len);

  std::size_t bit_len() const { return bit_len_; }
  std::size_t word_count() const { return words_.size(); }

  Word load(std::size_t idx) const {
    ++ledger_.word_reads;
    return words_[idx];
  }
  void store(std::size_t idx, Word w) {
    ++ledger_.word_writes;
    words_[idx] = w;
  }

  /// Reads `width` (1..64) bits starting at bit `pos`; touches at most 2 words.
  Word read_bits(std::size_t pos, unsigned width) const;
  /// Writes the low `width` (1..64) bits of `value` at bit `pos`.
  void write_bits(std::size_t pos, unsigned width, Word value);
  /// Copies `width` bits from `src` to the non-overlapping range at `dst`.
  /// Each source and destination word is touched once.
  void copy_bits(std::size_t dst, std::size_t src, std::size_t width);
  /// Fills [pos, pos+width) with the ℓ-periodic pattern of `value`, where slot
  /// boundaries sit at multiples of `period` in the buffer's bit space.
  void fill_periodic(std::size_t pos, std::size_t width, unsigned period, Word value);

  Word peek_bits(std::size_t pos, unsigned width) const;
  std::span<const Word> words() const { return words_; }
  /// Replaces the contents; `words` must have word_count() entries. Tail bits
  /// beyond bit_len() are cleared.
  void assign(std::span<const Word> words);
  /// Overwrites every word with seeded noise (simulated uninitialized memory).
  void scramble(std::uint64_t seed);

  const CostLedger& ledger() const { return ledger_; }
  void reset_ledger() { ledger_ = {}; }

 private:
  void merge(std::size_t idx, Word mask, Word bits);

  std::vector<Word> words_;
  std::size_t bit_len_ = 0;
  mutable CostLedger ledger_;
};

/// `len` elements of ℓ bits each, element i at bits [iℓ, (i+1)ℓ).
class PackedArray {
 public:
  PackedArray() = default;
  PackedArray(std::size_t len, unsigned elem_bits);

  std::size_t size() const { return len_; }
  unsigned elem_bits() const { return elem_bits_; }

  /// Element access for ℓ ≤ w.
  Word read(std::size_t i) const {
    INPLACE_EXPECTS(i < len_ && elem_bits_ <= kWordBits);
    return buf_.read_bits(i * elem_bits_, elem_bits_);
  }
  void write(std::size_t i, Word v) {
    INPLACE_EXPECTS(i < len_ && elem_bits_ <= kWordBits);
    INPLACE_EXPECTS((v & ~low_mask(elem_bits_)) == 0);
    buf_.write_bits(i * elem_bits_, elem_bits_, v);
  }

  /// Element access for any ℓ ≤ 4w; the value is ⌈ℓ/w⌉ little-endian words.
  void read_wide(std::size_t i, std::span<Word> out) const;
  void write_wide(std::size_t i, std::span<const Word> value);

  /// Plain linear initialization: every word of the buffer is written.
  void fill(Word v);

  WordBuffer& buffer() { return buf_; }
  const WordBuffer& buffer() const { return buf_; }

 private:
  WordBuffer buf_;
  std::size_t len_ = 0;
  unsigned elem_bits_ = 1;
};

/// Sets `count` consecutive ℓ-bit slots starting at `first` to `v` in O(1)
/// word writes. Requires count·ℓ ≤ kSmallFillWords·w.
void small_fill(WordBuffer& buf, std::size_t first, std::size_t count,
                unsigned elem_bits, Word v);

/// small_fill over a whole (small) PackedArray.
void small_fill(PackedArray& a, Word v);

}  // namespace inplace
