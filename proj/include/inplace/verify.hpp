#pragma once

// Verification harness: operation scripts, the differential runner, the
// block-chain invariant scanner and word-access cost probes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "inplace/general_array.hpp"
#include "inplace/special_array.hpp"
#include "inplace/variant.hpp"
#include "inplace/word_model.hpp"

namespace inplace::verify {

enum class OpKind : std::uint8_t { init, read, write };

struct Op {
  OpKind kind = OpKind::init;
  std::size_t index = 0;
  Word value = 0;
  friend bool operator==(const Op&, const Op&) = default;
};

struct OpScript {
  std::size_t n = 0;
  unsigned elem_bits = 1;
  std::uint64_t seed = 0;
  std::vector<Op> ops;
};

struct ScriptParams {
  std::size_t n = 0;
  unsigned elem_bits = 1;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  double init_rate = 0.001;
  double write_share = 0.5;
  /// Share of written values drawn as small even numbers, which look like
  /// block pointers and provoke accidental chains.
  double pointer_bias = 0.3;
};

/// Seeded random script; the first op is always an init.
OpScript generate_script(const ScriptParams& params);

/// Deterministic script that drives a block-chain array of `blocks` blocks
/// through its most expensive write path (chained boundary + chained written
/// block) on every round. Index of cell c is c·stride.
OpScript worst_path_script(std::size_t n, unsigned elem_bits, std::size_t blocks,
                           std::size_t stride, std::size_t rounds, std::uint64_t seed);

/// Adversarial pre-init memory plus a script whose last op is a write that
/// takes the swap-and-materialize path with every conditional chain check
/// reading its second cell and two accidental chains to dissolve. The layout
/// is fixed relative to the block count, so the op costs the same at every N.
/// Requires blocks ≥ 8 and 2·blocks < 2^ℓ.
struct ChainStress {
  /// (cell, pointer value) pairs to plant before the first op.
  std::vector<std::pair<std::size_t, std::uint64_t>> pointers;
  OpScript script;
};
ChainStress chain_stress(std::size_t n, unsigned elem_bits, std::size_t blocks,
                         std::size_t stride);

/// Overwrites the chain pointer of a cell, bypassing the algorithm.
void plant_pointer(SpecialArray& a, std::size_t cell, std::uint64_t target);
void plant_pointer(GeneralArray& a, std::size_t cell, std::uint64_t target);

/// The obvious model of an abstract array: the last init value plus a map of
/// writes since then. Used to validate NaiveArray itself.
class MapModel {
 public:
  void init(Word v) {
    initv_ = v;
    writes_.clear();
  }
  Word read(std::size_t i) const {
    const auto it = writes_.find(i);
    return it == writes_.end() ? initv_ : it->second;
  }
  void write(std::size_t i, Word v) { writes_[i] = v; }

 private:
  Word initv_ = 0;
  std::unordered_map<std::size_t, Word> writes_;
};

struct Violation {
  std::optional<std::size_t> block;
  std::string what;
};

/// Checks the block-chain invariants of `a` against the logical contents
/// `logical` (one value per element) and the last init value.
std::vector<Violation> scan_invariants(const SpecialArray& a, std::span<const Word> logical,
                                       Word initv);
/// Same for the core of a GeneralArray, plus metadata and tail consistency.
std::vector<Violation> scan_invariants(const GeneralArray& a, std::span<const Word> logical,
                                       Word initv);
/// Dispatches on the concrete type; variants without invariants yield none.
std::vector<Violation> scan_invariants(const AnyArray& a, std::span<const Word> logical,
                                       Word initv);

struct Divergence {
  std::size_t op = 0;
  std::string variant;
  Word expected = 0;
  Word got = 0;
  std::uint64_t seed = 0;

  /// `DIVERGE op=<n> variant=<name> expect=<v> got=<v> seed=<s>`
  std::string to_string() const;
};

struct DiffReport {
  std::size_t ops_run = 0;
  std::optional<Divergence> divergence;
  std::vector<std::string> violations;  // `VIOLATION op=... variant=... ...`

  bool ok() const { return !divergence && violations.empty(); }
  /// Line-oriented failure report; empty when ok().
  std::string to_string() const;
};

struct DiffOptions {
  bool scan_every_op = false;
  /// Scramble every variant before the first op.
  std::optional<std::uint64_t> scramble_seed;
  /// Read every index on every variant after the script.
  bool final_readback = true;
};

/// Runs `script` on every variant and on a NaiveArray oracle, comparing all
/// reads. Stops at the first divergence.
DiffReport differential_run(const OpScript& script, std::span<AnyArray* const> variants,
                            DiffOptions opts = {});

struct ExhaustiveParams {
  std::size_t n = 0;
  unsigned elem_bits = 1;
  std::size_t max_length = 0;
  Word max_value = 0;  // values in [0, max_value)
  std::size_t max_index = 0;  // indices in [0, max_index); 0 means n
};

struct ExhaustiveReport {
  std::uint64_t scripts = 0;
  std::optional<std::string> failure;  // description of the first failing script
};

/// Runs every script of length 1..max_length whose first op is an init, on
/// clones of `variants` (in their current storage state) against a
/// NaiveArray. After each op all indices are compared.
ExhaustiveReport exhaustive_run(const ExhaustiveParams& params,
                                std::span<const AnyArray* const> variants);

struct OpCostStats {
  std::uint64_t max_init = 0;
  std::uint64_t max_read = 0;
  std::uint64_t max_write = 0;
  std::size_t worst_op = 0;

  std::uint64_t max_any() const;
};

/// Per-op word accesses (reads + writes) of `a` over `script`.
OpCostStats measure_op_costs(AnyArray& a, const OpScript& script);

struct CostReport {
  struct Row {
    std::size_t n;
    OpCostStats stats;
  };
  std::vector<Row> rows;
  std::uint64_t bound = 0;
  bool within_bound = true;
  bool equal_across_sizes = true;

  std::string to_string() const;
};

using VariantFactory = std::function<std::unique_ptr<AnyArray>(std::size_t n)>;
using ScriptFactory = std::function<OpScript(const AnyArray& a)>;

/// Measures the per-op maximum on each size and checks it against `bound`.
CostReport assert_constant_cost(const VariantFactory& make, std::span<const std::size_t> sizes,
                                std::uint64_t bound, const ScriptFactory& script_for);

}  // namespace inplace::verify
