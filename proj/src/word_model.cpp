#include "inplace/word_model.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace inplace {

Word comb_constant(unsigned elem_bits, unsigned word_bits) {
  INPLACE_EXPECTS(elem_bits >= 1 && elem_bits <= word_bits && word_bits <= kWordBits);
  const unsigned copies = word_bits / elem_bits;
  // (2^{mℓ} - 1) / (2^ℓ - 1) = Σ_{c<m} 2^{cℓ}
  return low_mask(copies * elem_bits) / low_mask(elem_bits);
}

Word bit_repeat(Word v, unsigned elem_bits, unsigned word_bits, RepeatMethod method) {
  INPLACE_EXPECTS(elem_bits >= 1 && elem_bits <= word_bits && word_bits <= kWordBits);
  INPLACE_EXPECTS((v & ~low_mask(elem_bits)) == 0);
  if (method == RepeatMethod::multiply) return v * comb_constant(elem_bits, word_bits);

  const unsigned total = (word_bits / elem_bits) * elem_bits;
  Word x = v;
  // At most log2(w) doublings.
  for (unsigned covered = elem_bits; covered < total && covered < kWordBits; covered *= 2) {
    x |= x << covered;
  }
  return x & low_mask(total);
}

Word periodic_word(Word v, unsigned elem_bits, unsigned phase) {
  INPLACE_EXPECTS(elem_bits >= 1 && elem_bits <= kWordBits && phase < elem_bits);
  const Word mask = low_mask(elem_bits);
  const Word rotated = phase == 0 ? v : ((v >> phase) | (v << (elem_bits - phase))) & mask;
  if (elem_bits == kWordBits) return rotated;
  const unsigned filled = (kWordBits / elem_bits) * elem_bits;
  Word r = bit_repeat(rotated, elem_bits);
  if (filled < kWordBits) r |= rotated << filled;
  return r;
}

// ---------------------------------------------------------------------------

WordBuffer::WordBuffer(std::size_t bit_len)
    : words_((bit_len + kWordBits - 1) / kWordBits, 0), bit_len_(bit_len) {}

void WordBuffer::merge(std::size_t idx, Word mask, Word bits) {
  if (mask == ~Word{0}) {
    store(idx, bits);
  } else {
    store(idx, (load(idx) & ~mask) | (bits & mask));
  }
}

Word WordBuffer::read_bits(std::size_t pos, unsigned width) const {
  INPLACE_EXPECTS(width >= 1 && width <= kWordBits && pos + width <= bit_len_);
  const std::size_t idx = pos / kWordBits;
  const unsigned off = pos % kWordBits;
  Word v = load(idx) >> off;
  if (off + width > kWordBits) v |= load(idx + 1) << (kWordBits - off);
  return v & low_mask(width);
}

Word WordBuffer::peek_bits(std::size_t pos, unsigned width) const {
  INPLACE_EXPECTS(width >= 1 && width <= kWordBits && pos + width <= bit_len_);
  const std::size_t idx = pos / kWordBits;
  const unsigned off = pos % kWordBits;
  Word v = words_[idx] >> off;
  if (off + width > kWordBits) v |= words_[idx + 1] << (kWordBits - off);
  return v & low_mask(width);
}

void WordBuffer::write_bits(std::size_t pos, unsigned width, Word value) {
  INPLACE_EXPECTS(width >= 1 && width <= kWordBits && pos + width <= bit_len_);
  value &= low_mask(width);
  const std::size_t idx = pos / kWordBits;
  const unsigned off = pos % kWordBits;
  const unsigned first = std::min(width, kWordBits - off);
  merge(idx, low_mask(first) << off, value << off);
  if (width > first) merge(idx + 1, low_mask(width - first), value >> first);
}

void WordBuffer::copy_bits(std::size_t dst, std::size_t src, std::size_t width) {
  INPLACE_EXPECTS(dst + width <= bit_len_ && src + width <= bit_len_);
  INPLACE_EXPECTS(dst + width <= src || src + width <= dst);

  std::size_t cached_idx = std::numeric_limits<std::size_t>::max();
  Word cached = 0;
  auto source_word = [&](std::size_t i) {
    if (i != cached_idx) {
      cached = load(i);
      cached_idx = i;
    }
    return cached;
  };

  std::size_t done = 0;
  while (done < width) {
    const std::size_t d = dst + done;
    const unsigned off = d % kWordBits;
    const unsigned chunk = static_cast<unsigned>(
        std::min<std::size_t>(kWordBits - off, width - done));
    const std::size_t s = src + done;
    const unsigned soff = s % kWordBits;
    Word v = source_word(s / kWordBits) >> soff;
    if (soff + chunk > kWordBits) v |= source_word(s / kWordBits + 1) << (kWordBits - soff);
    v &= low_mask(chunk);
    merge(d / kWordBits, low_mask(chunk) << off, v << off);
    done += chunk;
  }
}

void WordBuffer::fill_periodic(std::size_t pos, std::size_t width, unsigned period,
                               Word value) {
  INPLACE_EXPECTS(pos + width <= bit_len_);
  INPLACE_EXPECTS(period >= 1 && period <= kWordBits);
  if (width == 0) return;
  const std::size_t end = pos + width;
  for (std::size_t idx = pos / kWordBits; idx <= (end - 1) / kWordBits; ++idx) {
    const std::size_t start = idx * kWordBits;
    const Word pattern = periodic_word(value, period, static_cast<unsigned>(start % period));
    const unsigned lo = static_cast<unsigned>(std::max(pos, start) - start);
    const unsigned hi = static_cast<unsigned>(std::min(end, start + kWordBits) - start);
    merge(idx, low_mask(hi - lo) << lo, pattern);
  }
}

void WordBuffer::assign(std::span<const Word> words) {
  INPLACE_EXPECTS(words.size() == words_.size());
  std::copy(words.begin(), words.end(), words_.begin());
  if (bit_len_ % kWordBits != 0) words_.back() &= low_mask(bit_len_ % kWordBits);
}

void WordBuffer::scramble(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (auto& w : words_) w = rng();
  if (!words_.empty() && bit_len_ % kWordBits != 0) {
    words_.back() &= low_mask(bit_len_ % kWordBits);
  }
}

// ---------------------------------------------------------------------------

PackedArray::PackedArray(std::size_t len, unsigned elem_bits) : len_(len), elem_bits_(elem_bits) {
  if (elem_bits < 1 || elem_bits > kMaxElemBits) {
    throw std::invalid_argument("element width must be in [1, 4w]");
  }
  if (len > std::numeric_limits<std::size_t>::max() / elem_bits) {
    throw std::length_error("packed array bit length overflows");
  }
  buf_ = WordBuffer(len * elem_bits);
}

void PackedArray::read_wide(std::size_t i, std::span<Word> out) const {
  INPLACE_EXPECTS(i < len_);
  INPLACE_EXPECTS(out.size() == (elem_bits_ + kWordBits - 1) / kWordBits);
  const std::size_t base = i * elem_bits_;
  for (std::size_t c = 0; c < out.size(); ++c) {
    const unsigned width = std::min<unsigned>(kWordBits, elem_bits_ - c * kWordBits);
    out[c] = buf_.read_bits(base + c * kWordBits, width);
  }
}

void PackedArray::write_wide(std::size_t i, std::span<const Word> value) {
  INPLACE_EXPECTS(i < len_);
  INPLACE_EXPECTS(value.size() == (elem_bits_ + kWordBits - 1) / kWordBits);
  const std::size_t base = i * elem_bits_;
  for (std::size_t c = 0; c < value.size(); ++c) {
    const unsigned width = std::min<unsigned>(kWordBits, elem_bits_ - c * kWordBits);
    INPLACE_EXPECTS((value[c] & ~low_mask(width)) == 0);
    buf_.write_bits(base + c * kWordBits, width, value[c]);
  }
}

void PackedArray::fill(Word v) {
  INPLACE_EXPECTS(elem_bits_ <= kWordBits);
  INPLACE_EXPECTS((v & ~low_mask(elem_bits_)) == 0);
  buf_.fill_periodic(0, len_ * elem_bits_, elem_bits_, v);
}

void small_fill(WordBuffer& buf, std::size_t first, std::size_t count, unsigned elem_bits,
                Word v) {
  INPLACE_EXPECTS(elem_bits >= 1 && elem_bits <= kWordBits);
  INPLACE_EXPECTS(count * elem_bits <= kSmallFillWords * kWordBits);
  INPLACE_EXPECTS((v & ~low_mask(elem_bits)) == 0);
  buf.fill_periodic(first * elem_bits, count * elem_bits, elem_bits, v);
}

void small_fill(PackedArray& a, Word v) { small_fill(a.buffer(), 0, a.size(), a.elem_bits(), v); }

}  // namespace inplace
