#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>

#include "inplace/word_model.hpp"

namespace inplace {

/// Mutable-bit accounting. Static parameters (length, widths, layout
/// offsets) are not mutable state and are never counted.
struct SpaceAccount {
  std::size_t data_bits = 0;     // N·ℓ
  std::size_t mutable_bits = 0;  // everything the structure can change

  std::size_t extra_bits() const { return mutable_bits - data_bits; }
};

/// The interface every array variant provides: init/read/write plus
/// length, width, space accounting and word-access counters.
template <typename T>
concept InitializableArray = requires(T& a, const T& c, Word v, std::size_t i, std::uint64_t seed) {
  a.init(v);
  { c.read(i) } -> std::same_as<Word>;
  a.write(i, v);
  { c.size() } -> std::convertible_to<std::size_t>;
  { c.elem_bits() } -> std::convertible_to<unsigned>;
  { c.space() } -> std::same_as<SpaceAccount>;
  { c.cost() } -> std::same_as<CostLedger>;
  a.reset_cost();
  a.scramble(seed);
};

}  // namespace inplace
