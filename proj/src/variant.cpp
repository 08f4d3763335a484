#include "inplace/variant.hpp"

#include <stdexcept>

namespace inplace {

const std::vector<std::string>& variant_names() {
  static const std::vector<std::string> names = {"naive", "bitmap", "folklore", "special",
                                                 "general"};
  return names;
}

std::unique_ptr<AnyArray> make_variant(std::string_view name, std::size_t n, unsigned elem_bits) {
  std::string label(name);
  if (name == "naive") return std::make_unique<ArrayHandle<NaiveArray>>(label, n, elem_bits);
  if (name == "bitmap") return std::make_unique<ArrayHandle<BitmapArray>>(label, n, elem_bits);
  if (name == "folklore") return std::make_unique<ArrayHandle<FolkloreArray>>(label, n, elem_bits);
  if (name == "special") return std::make_unique<ArrayHandle<SpecialArray>>(label, n, elem_bits);
  if (name == "general") return std::make_unique<ArrayHandle<GeneralArray>>(label, n, elem_bits);
  throw std::invalid_argument("unknown variant: " + label);
}

bool variant_supports(std::string_view name, std::size_t n, unsigned elem_bits) {
  if (elem_bits < 1 || elem_bits > kWordBits) return false;
  if (name == "naive" || name == "bitmap" || name == "general") return true;
  if (name == "folklore") return elem_bits >= ceil_log2(n);
  if (name == "special") return n % 2 == 0 && elem_bits >= ceil_log2(n);
  return false;
}

}  // namespace inplace
