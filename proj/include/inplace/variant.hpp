#pragma once

// Type-erased handle over the five array variants, used by the differential
// runner and the benchmark CLI.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inplace/baselines.hpp"
#include "inplace/common.hpp"
#include "inplace/folklore.hpp"
#include "inplace/general_array.hpp"
#include "inplace/special_array.hpp"

namespace inplace {

class AnyArray {
 public:
  virtual ~AnyArray() = default;

  virtual std::string_view name() const = 0;
  virtual void init(Word v) = 0;
  virtual Word read(std::size_t i) const = 0;
  virtual void write(std::size_t i, Word v) = 0;
  virtual std::size_t size() const = 0;
  virtual unsigned elem_bits() const = 0;
  virtual SpaceAccount space() const = 0;
  virtual CostLedger cost() const = 0;
  virtual void reset_cost() = 0;
  virtual void scramble(std::uint64_t seed) = 0;
  virtual std::unique_ptr<AnyArray> clone() const = 0;

  std::size_t extra_bits() const { return space().extra_bits(); }
};

template <InitializableArray T>
class ArrayHandle final : public AnyArray {
 public:
  template <typename... Args>
  explicit ArrayHandle(std::string name, Args&&... args)
      : name_(std::move(name)), impl_(std::forward<Args>(args)...) {}

  std::string_view name() const override { return name_; }
  void init(Word v) override { impl_.init(v); }
  Word read(std::size_t i) const override { return impl_.read(i); }
  void write(std::size_t i, Word v) override { impl_.write(i, v); }
  std::size_t size() const override { return impl_.size(); }
  unsigned elem_bits() const override { return impl_.elem_bits(); }
  SpaceAccount space() const override { return impl_.space(); }
  CostLedger cost() const override { return impl_.cost(); }
  void reset_cost() override { impl_.reset_cost(); }
  void scramble(std::uint64_t seed) override { impl_.scramble(seed); }
  std::unique_ptr<AnyArray> clone() const override {
    return std::make_unique<ArrayHandle>(*this);
  }

  T& get() { return impl_; }
  const T& get() const { return impl_; }

 private:
  std::string name_;
  T impl_;
};

/// "naive", "bitmap", "folklore", "special", "general".
const std::vector<std::string>& variant_names();

/// Constructs the named variant. Throws std::invalid_argument for an unknown
/// name or parameters the variant does not support.
std::unique_ptr<AnyArray> make_variant(std::string_view name, std::size_t n, unsigned elem_bits);

/// Whether make_variant would succeed for these parameters.
bool variant_supports(std::string_view name, std::size_t n, unsigned elem_bits);

}  // namespace inplace
