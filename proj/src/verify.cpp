#include "inplace/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "inplace/baselines.hpp"

namespace inplace::verify {

OpScript generate_script(const ScriptParams& p) {
  INPLACE_EXPECTS(p.n > 0 && p.elem_bits >= 1 && p.elem_bits <= kWordBits);
  OpScript script{p.n, p.elem_bits, p.seed, {}};
  script.ops.reserve(p.length);
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> index(0, p.n - 1);
  const Word mask = low_mask(p.elem_bits);
  const std::uint64_t pointer_range = std::max<std::uint64_t>(p.n, 2);
  auto value = [&] {
    if (unit(rng) < p.pointer_bias) {
      return ((rng() % pointer_range) & ~Word{1}) & mask;
    }
    return rng() & mask;
  };

  for (std::size_t k = 0; k < p.length; ++k) {
    if (k == 0 || unit(rng) < p.init_rate) {
      script.ops.push_back({OpKind::init, 0, value()});
    } else if (unit(rng) < p.write_share) {
      const std::size_t i = index(rng);
      script.ops.push_back({OpKind::write, i, value()});
    } else {
      script.ops.push_back({OpKind::read, index(rng), 0});
    }
  }
  return script;
}

OpScript worst_path_script(std::size_t n, unsigned elem_bits, std::size_t blocks,
                           std::size_t stride, std::size_t rounds, std::uint64_t seed) {
  INPLACE_EXPECTS(blocks >= 2 && 2 * blocks * stride <= n);
  OpScript script{n, elem_bits, seed, {}};
  std::mt19937_64 rng(seed);
  const Word mask = low_mask(elem_bits);
  auto at = [&](std::size_t cell) { return cell * stride; };

  // Phase one chains blocks [0, M/2) with [M/2, M) from the top down, which
  // leaves the boundary block chained. Each write in phase two then hits a
  // chained written block while the boundary is chained too, so extend()
  // materializes the boundary and the write moves the chain.
  const std::size_t half = blocks / 2;
  for (std::size_t r = 0; r < rounds; ++r) {
    script.ops.push_back({OpKind::init, 0, rng() & mask});
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t block = blocks - 1 - k;
      script.ops.push_back({OpKind::write, at(2 * block + 1), rng() & mask});
      script.ops.push_back({OpKind::write, at(2 * block), rng() & mask});
      script.ops.push_back({OpKind::read, at(2 * block), 0});
    }
    for (std::size_t i = 0; 2 * i + 1 < half; ++i) {
      script.ops.push_back({OpKind::read, at(2 * i), 0});
      script.ops.push_back({OpKind::write, at(2 * i + 1), rng() & mask});
      script.ops.push_back({OpKind::read, at(2 * i + 1), 0});
    }
  }
  return script;
}

ChainStress chain_stress(std::size_t n, unsigned elem_bits, std::size_t blocks,
                         std::size_t stride) {
  INPLACE_EXPECTS(blocks >= 8 && 2 * blocks * stride <= n);
  INPLACE_EXPECTS(elem_bits >= kWordBits || 2 * blocks <= low_mask(elem_bits));
  // Block roles: W = 0 is written and chained with H = M-1; Q = 1 is written
  // and chained with the boundary B = 2. U, U'' hold garbage pointers at B
  // and W; initv points at U'.
  const std::size_t m = blocks;
  const std::size_t w = 0, b = 2, h = m - 1, u = m - 2, u2 = m - 3, u1 = m - 4;
  ChainStress s;
  s.pointers = {{2 * u, 2 * b}, {2 * u2, 2 * w}};
  s.script = {n, elem_bits, 0, {}};
  auto at = [&](std::size_t cell) { return cell * stride; };
  s.script.ops = {
      {OpKind::init, 0, 2 * u1},
      // Chains W with H.
      {OpKind::write, at(2 * h + 1), 1},
      // Chains Q with B; Z[2B] = 2U lands in Q's second cell.
      {OpKind::write, at(2 * b), 2 * u},
      // Written-chained W with a chained boundary: extend() materializes B,
      // whose new first cell 2U forms a chain with U; the written value 2U''
      // forms a chain with U''.
      {OpKind::write, at(2 * w), 2 * u2},
  };
  return s;
}

void plant_pointer(SpecialArray& a, std::size_t cell, std::uint64_t target) {
  a.raw_cells().write(cell, target);
}

void plant_pointer(GeneralArray& a, std::size_t cell, std::uint64_t target) {
  const GeneralLayout& lay = a.layout();
  INPLACE_EXPECTS(!lay.small && cell < lay.core_cells);
  a.raw_storage().write_bits(cell * lay.wide_bits, lay.meta.ptr_bits, target);
}

namespace {

// Read-only view of a block-chain core used by the scanner. Chain detection
// here is written out independently of the engine.
struct CoreView {
  std::size_t cells = 0;
  std::size_t written_blocks = 0;
  Word initv = 0;
  unsigned pack = 1;
  std::function<std::uint64_t(std::size_t)> pointer;
  std::function<Word(std::size_t, unsigned)> slot;
};

std::optional<std::size_t> partner_of(const CoreView& v, std::size_t block) {
  const std::uint64_t link = v.pointer(2 * block);
  if (link % 2 == 1 || link >= v.cells) return std::nullopt;
  const std::size_t other = static_cast<std::size_t>(link / 2);
  const bool block_written = block < v.written_blocks;
  const bool other_written = other < v.written_blocks;
  if (block_written == other_written) return std::nullopt;
  if (v.pointer(2 * other) != 2 * block) return std::nullopt;
  return other;
}

void scan_core(const CoreView& v, std::span<const Word> logical, Word initv,
               std::vector<Violation>& out) {
  auto fail = [&](std::optional<std::size_t> block, std::string what) {
    out.push_back({block, std::move(what)});
  };
  if (v.initv != initv) {
    fail(std::nullopt, "initv register " + std::to_string(v.initv) + " != " +
                           std::to_string(initv));
  }
  if (2 * v.written_blocks > v.cells) {
    fail(std::nullopt, "written area " + std::to_string(v.written_blocks) +
                           " exceeds " + std::to_string(v.cells / 2) + " blocks");
    return;
  }

  for (std::size_t block = 0; 2 * block < v.cells; ++block) {
    const auto partner = partner_of(v, block);
    if (partner && partner_of(v, *partner) != block) {
      fail(block, "chain is not mutual");
      continue;
    }
    const bool written = block < v.written_blocks;
    for (unsigned half = 0; half < 2; ++half) {
      const std::size_t cell = 2 * block + half;
      for (unsigned s = 0; s < v.pack; ++s) {
        Word expect = 0;
        if (written) {
          expect = partner ? initv : v.slot(cell, s);
        } else if (!partner) {
          expect = initv;
        } else {
          expect = half == 0 ? v.slot(2 * *partner + 1, s) : v.slot(cell, s);
        }
        const std::size_t element = cell * v.pack + s;
        if (logical[element] != expect) {
          fail(block, "element " + std::to_string(element) + " decodes to " +
                          std::to_string(expect) + ", model holds " +
                          std::to_string(logical[element]));
        }
      }
    }
  }
}

}  // namespace

std::vector<Violation> scan_invariants(const SpecialArray& a, std::span<const Word> logical,
                                       Word initv) {
  INPLACE_EXPECTS(logical.size() == a.size());
  const WordBuffer& buf = a.cells().buffer();
  const unsigned l = a.elem_bits();
  CoreView v;
  v.cells = a.size();
  v.written_blocks = a.written_blocks();
  v.initv = a.initial_value();
  v.pointer = [&](std::size_t c) { return buf.peek_bits(c * l, l); };
  v.slot = [&](std::size_t c, unsigned) { return buf.peek_bits(c * l, l); };
  std::vector<Violation> out;
  scan_core(v, logical, initv, out);
  return out;
}

std::vector<Violation> scan_invariants(const GeneralArray& a, std::span<const Word> logical,
                                       Word initv) {
  INPLACE_EXPECTS(logical.size() == a.size());
  const GeneralLayout& lay = a.layout();
  const WordBuffer& buf = a.storage();
  const unsigned l = lay.elem_bits;
  std::vector<Violation> out;
  auto plain = [&](std::size_t i) { return buf.peek_bits(i * l, l); };

  if (a.saturated()) {
    for (std::size_t i = 0; i < lay.n; ++i) {
      if (plain(i) != logical[i]) {
        out.push_back({std::nullopt, "saturated element " + std::to_string(i) + " holds " +
                                         std::to_string(plain(i)) + ", model holds " +
                                         std::to_string(logical[i])});
      }
    }
    return out;
  }
  if (lay.small) {
    out.push_back({std::nullopt, "small layout with the flag clear"});
    return out;
  }

  const std::size_t meta = lay.meta_bit();
  const std::uint64_t meta_ptr = buf.peek_bits(meta + lay.meta.ptr_offset, lay.meta.ptr_bits);
  CoreView v;
  v.cells = lay.core_cells;
  v.written_blocks =
      static_cast<std::size_t>(buf.peek_bits(meta + lay.meta.b_offset, lay.meta.b_bits));
  v.initv = buf.peek_bits(meta + lay.meta.initv_offset, lay.meta.initv_bits);
  v.pack = lay.pack;
  v.pointer = [&](std::size_t c) { return buf.peek_bits(c * lay.wide_bits, lay.meta.ptr_bits); };
  v.slot = [&](std::size_t c, unsigned s) { return buf.peek_bits(c * lay.wide_bits + s * l, l); };

  if (2 * v.written_blocks >= lay.core_cells) {
    out.push_back({std::nullopt, "metadata block counted as written with the flag clear"});
  } else if (meta_ptr % 2 == 1 || meta_ptr >= lay.core_cells) {
    out.push_back({lay.meta_cell() / 2, "metadata pointer field out of range"});
  }
  scan_core(v, logical.first(lay.tail_begin), initv, out);
  for (std::size_t i = lay.tail_begin; i < lay.n; ++i) {
    if (plain(i) != logical[i]) {
      out.push_back({std::nullopt, "tail element " + std::to_string(i) + " holds " +
                                       std::to_string(plain(i)) + ", model holds " +
                                       std::to_string(logical[i])});
    }
  }
  return out;
}

std::vector<Violation> scan_invariants(const AnyArray& a, std::span<const Word> logical,
                                       Word initv) {
  if (const auto* s = dynamic_cast<const ArrayHandle<SpecialArray>*>(&a)) {
    return scan_invariants(s->get(), logical, initv);
  }
  if (const auto* g = dynamic_cast<const ArrayHandle<GeneralArray>*>(&a)) {
    return scan_invariants(g->get(), logical, initv);
  }
  return {};
}

std::string Divergence::to_string() const {
  std::ostringstream os;
  os << "DIVERGE op=" << op << " variant=" << variant << " expect=" << expected << " got=" << got
     << " seed=" << seed;
  return os.str();
}

std::string DiffReport::to_string() const {
  std::ostringstream os;
  if (divergence) os << divergence->to_string() << '\n';
  for (const auto& v : violations) os << v << '\n';
  return os.str();
}

DiffReport differential_run(const OpScript& script, std::span<AnyArray* const> variants,
                            DiffOptions opts) {
  DiffReport report;
  NaiveArray oracle(script.n, script.elem_bits);
  for (AnyArray* a : variants) {
    INPLACE_EXPECTS(a->size() == script.n && a->elem_bits() == script.elem_bits);
  }
  if (opts.scramble_seed) {
    std::uint64_t seed = *opts.scramble_seed;
    oracle.scramble(seed);
    for (AnyArray* a : variants) a->scramble(++seed);
  }

  Word initv = 0;
  auto diverge = [&](std::size_t op, const AnyArray& a, Word expect, Word got) {
    report.divergence = Divergence{op, std::string(a.name()), expect, got, script.seed};
  };

  for (std::size_t k = 0; k < script.ops.size(); ++k) {
    const Op& op = script.ops[k];
    report.ops_run = k + 1;
    switch (op.kind) {
      case OpKind::init:
        initv = op.value;
        oracle.init(op.value);
        for (AnyArray* a : variants) a->init(op.value);
        break;
      case OpKind::write:
        oracle.write(op.index, op.value);
        for (AnyArray* a : variants) a->write(op.index, op.value);
        break;
      case OpKind::read: {
        const Word expect = oracle.read(op.index);
        for (AnyArray* a : variants) {
          const Word got = a->read(op.index);
          if (got != expect) {
            diverge(k, *a, expect, got);
            return report;
          }
        }
        break;
      }
    }
    if (opts.scan_every_op) {
      const std::vector<Word> logical = oracle.snapshot();
      for (AnyArray* a : variants) {
        for (const Violation& v : scan_invariants(*a, logical, initv)) {
          std::ostringstream os;
          os << "VIOLATION op=" << k << " variant=" << a->name();
          if (v.block) os << " block=" << *v.block;
          os << ' ' << v.what << " seed=" << script.seed;
          report.violations.push_back(os.str());
        }
      }
      if (!report.violations.empty()) return report;
    }
  }

  if (opts.final_readback && !script.ops.empty()) {
    for (std::size_t i = 0; i < script.n; ++i) {
      const Word expect = oracle.read(i);
      for (AnyArray* a : variants) {
        const Word got = a->read(i);
        if (got != expect) {
          diverge(script.ops.size(), *a, expect, got);
          return report;
        }
      }
    }
  }
  return report;
}

namespace {

struct DfsState {
  NaiveArray oracle;
  std::vector<std::unique_ptr<AnyArray>> arrays;

  DfsState copy() const {
    DfsState next{oracle, {}};
    next.arrays.reserve(arrays.size());
    for (const auto& a : arrays) next.arrays.push_back(a->clone());
    return next;
  }
};

std::string describe(const std::vector<Op>& path) {
  std::ostringstream os;
  for (const Op& op : path) {
    switch (op.kind) {
      case OpKind::init:
        os << "init(" << op.value << ") ";
        break;
      case OpKind::write:
        os << "write(" << op.index << ',' << op.value << ") ";
        break;
      case OpKind::read:
        os << "read(" << op.index << ") ";
        break;
    }
  }
  return os.str();
}

class Enumerator {
 public:
  Enumerator(const ExhaustiveParams& p, ExhaustiveReport& report) : p_(p), report_(report) {
    const std::size_t indices = p.max_index == 0 ? p.n : std::min(p.max_index, p.n);
    for (Word v = 0; v < p.max_value; ++v) inits_.push_back({OpKind::init, 0, v});
    for (std::size_t i = 0; i < indices; ++i) {
      for (Word v = 0; v < p.max_value; ++v) writes_.push_back({OpKind::write, i, v});
    }
  }

  void run(const DfsState& root) {
    for (const Op& op : inits_) {
      if (!step(root, op)) return;
    }
  }

 private:
  // Applies `op` to a copy of `state`, checks every index, then recurses.
  bool step(const DfsState& state, const Op& op) {
    DfsState next = state.copy();
    path_.push_back(op);
    ++report_.scripts;
    if (op.kind == OpKind::init) {
      next.oracle.init(op.value);
      for (auto& a : next.arrays) a->init(op.value);
    } else {
      next.oracle.write(op.index, op.value);
      for (auto& a : next.arrays) a->write(op.index, op.value);
    }
    for (std::size_t i = 0; i < p_.n; ++i) {
      const Word expect = next.oracle.read(i);
      for (const auto& a : next.arrays) {
        const Word got = a->read(i);
        if (got != expect) {
          std::ostringstream os;
          os << describe(path_) << "-> " << a->name() << " read(" << i << ")=" << got
             << " expected " << expect;
          report_.failure = os.str();
          return false;
        }
      }
    }
    if (path_.size() < p_.max_length) {
      for (const Op& o : inits_) {
        if (!step(next, o)) return false;
      }
      for (const Op& o : writes_) {
        if (!step(next, o)) return false;
      }
    }
    path_.pop_back();
    return true;
  }

  const ExhaustiveParams& p_;
  ExhaustiveReport& report_;
  std::vector<Op> inits_;
  std::vector<Op> writes_;
  std::vector<Op> path_;
};

}  // namespace

ExhaustiveReport exhaustive_run(const ExhaustiveParams& params,
                                std::span<const AnyArray* const> variants) {
  INPLACE_EXPECTS(params.max_value >= 1 && params.max_value - 1 <= low_mask(params.elem_bits));
  ExhaustiveReport report;
  DfsState root{NaiveArray(params.n, params.elem_bits), {}};
  for (const AnyArray* a : variants) {
    INPLACE_EXPECTS(a->size() == params.n && a->elem_bits() == params.elem_bits);
    root.arrays.push_back(a->clone());
  }
  Enumerator(params, report).run(root);
  return report;
}

std::uint64_t OpCostStats::max_any() const { return std::max({max_init, max_read, max_write}); }

OpCostStats measure_op_costs(AnyArray& a, const OpScript& script) {
  OpCostStats stats;
  for (std::size_t k = 0; k < script.ops.size(); ++k) {
    const Op& op = script.ops[k];
    a.reset_cost();
    std::uint64_t* slot = nullptr;
    switch (op.kind) {
      case OpKind::init:
        a.init(op.value);
        slot = &stats.max_init;
        break;
      case OpKind::read:
        static_cast<void>(a.read(op.index));
        slot = &stats.max_read;
        break;
      case OpKind::write:
        a.write(op.index, op.value);
        slot = &stats.max_write;
        break;
    }
    const std::uint64_t cost = a.cost().word_accesses();
    if (cost > stats.max_any()) stats.worst_op = k;
    *slot = std::max(*slot, cost);
  }
  a.reset_cost();
  return stats;
}

std::string CostReport::to_string() const {
  std::ostringstream os;
  for (const Row& r : rows) {
    os << "n=" << r.n << " init=" << r.stats.max_init << " read=" << r.stats.max_read
       << " write=" << r.stats.max_write << '\n';
  }
  os << "bound=" << bound << " within_bound=" << within_bound
     << " equal_across_sizes=" << equal_across_sizes << '\n';
  return os.str();
}

CostReport assert_constant_cost(const VariantFactory& make, std::span<const std::size_t> sizes,
                                std::uint64_t bound, const ScriptFactory& script_for) {
  CostReport report;
  report.bound = bound;
  for (const std::size_t n : sizes) {
    std::unique_ptr<AnyArray> a = make(n);
    const OpScript script = script_for(*a);
    const OpCostStats stats = measure_op_costs(*a, script);
    report.rows.push_back({n, stats});
    if (stats.max_any() > bound) report.within_bound = false;
    if (stats.max_any() != report.rows.front().stats.max_any()) report.equal_across_sizes = false;
  }
  return report;
}

}  // namespace inplace::verify
