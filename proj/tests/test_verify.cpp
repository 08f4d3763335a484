#include <gtest/gtest.h>

#include <random>

#include "inplace/verify.hpp"

using namespace inplace;
using namespace inplace::verify;

namespace {

std::vector<std::unique_ptr<AnyArray>> all_variants(std::size_t n, unsigned l) {
  std::vector<std::unique_ptr<AnyArray>> out;
  for (const std::string& name : variant_names()) {
    if (variant_supports(name, n, l)) out.push_back(make_variant(name, n, l));
  }
  return out;
}

std::vector<AnyArray*> raw(const std::vector<std::unique_ptr<AnyArray>>& v) {
  std::vector<AnyArray*> out;
  for (const auto& a : v) out.push_back(a.get());
  return out;
}

}  // namespace

TEST(MapModel, AgreesWithNaiveArray) {
  std::mt19937_64 rng(1);
  MapModel model;
  NaiveArray naive(50, 6);
  for (int step = 0; step < 20000; ++step) {
    const std::size_t i = rng() % 50;
    const Word v = rng() & 63;
    const unsigned kind = rng() % 100;
    if (step == 0 || kind < 3) {
      model.init(v);
      naive.init(v);
    } else if (kind < 50) {
      model.write(i, v);
      naive.write(i, v);
    }
    ASSERT_EQ(model.read(i), naive.read(i));
  }
}

TEST(GenerateScript, FirstOpIsInitAndDeterministic) {
  ScriptParams p;
  p.n = 100;
  p.elem_bits = 8;
  p.length = 1000;
  p.seed = 77;
  const OpScript a = generate_script(p);
  const OpScript b = generate_script(p);
  ASSERT_EQ(a.ops.size(), 1000u);
  EXPECT_EQ(a.ops.front().kind, OpKind::init);
  EXPECT_EQ(a.ops, b.ops);
  for (const Op& op : a.ops) {
    EXPECT_LT(op.index, 100u);
    EXPECT_LE(op.value, 255u);
  }
}

TEST(DifferentialRun, InitsOnlyAgree) {
  auto arrays = all_variants(16, 8);
  OpScript script{16, 8, 0, {}};
  for (Word v = 0; v < 10; ++v) script.ops.push_back({OpKind::init, 0, v});
  const DiffReport r = differential_run(script, raw(arrays));
  EXPECT_TRUE(r.ok()) << r.to_string();
}

TEST(DifferentialRun, RandomScriptsWithScanner) {
  for (const std::size_t n : {2u, 16u, 100u, 256u}) {
    for (const unsigned l : {8u, 16u}) {
      auto arrays = all_variants(n, l);
      ScriptParams p;
      p.n = n;
      p.elem_bits = l;
      p.length = 5000;
      p.seed = n + l;
      p.init_rate = 0.01;
      DiffOptions opts;
      opts.scan_every_op = true;
      opts.scramble_seed = 5;
      const DiffReport r = differential_run(generate_script(p), raw(arrays), opts);
      EXPECT_TRUE(r.ok()) << r.to_string();
    }
  }
}

TEST(DifferentialRun, ReportsDivergence) {
  // A naive array that was never initialized diverges from the oracle.
  auto liar = make_variant("naive", 8, 8);
  liar->init(1);
  OpScript script{8, 8, 42, {{OpKind::read, 3, 0}}};
  AnyArray* arrays[] = {liar.get()};
  const DiffReport r = differential_run(script, arrays, {false, std::nullopt, false});
  ASSERT_TRUE(r.divergence.has_value());
  EXPECT_EQ(r.divergence->to_string(), "DIVERGE op=0 variant=naive expect=0 got=1 seed=42");
}

TEST(DifferentialRun, BranchEqualityScript) {
  // Write block 1 first, then block 0: the second write meets a written block
  // chained with the boundary.
  auto arrays = all_variants(8, 8);
  OpScript script{8, 8, 0, {}};
  script.ops = {{OpKind::init, 0, 5}, {OpKind::write, 2, 7}, {OpKind::write, 0, 9}};
  DiffOptions opts;
  opts.scan_every_op = true;
  const DiffReport r = differential_run(script, raw(arrays), opts);
  EXPECT_TRUE(r.ok()) << r.to_string();
}

TEST(ScanInvariants, FreshInitIsClean) {
  SpecialArray a(64, 8);
  a.scramble(3);
  a.init(2);
  EXPECT_TRUE(scan_invariants(a, std::vector<Word>(64, 2), 2).empty());
  GeneralArray g(1000, 8);
  g.scramble(3);
  g.init(2);
  EXPECT_TRUE(scan_invariants(g, std::vector<Word>(1000, 2), 2).empty());
}

TEST(ScanInvariants, CorruptedPointerNamesTheBlock) {
  SpecialArray a(16, 8);
  NaiveArray oracle(16, 8);
  a.init(0);
  oracle.init(0);
  a.write(0, 12);  // block 0 is written; its first cell points at block 6
  oracle.write(0, 12);
  ASSERT_TRUE(scan_invariants(a, oracle.snapshot(), 0).empty());
  a.raw_cells().write(12, 0);  // block 6 now points back: a forged chain
  const auto v = scan_invariants(a, oracle.snapshot(), 0);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].block, std::optional<std::size_t>(0));
}

TEST(ScanInvariants, CatchesMetadataCorruption) {
  GeneralArray g(1000, 8);
  g.init(4);
  MetaFields f = load_meta(g.storage(), g.layout());
  f.initv = 5;
  store_meta(g.raw_storage(), g.layout(), f);
  EXPECT_FALSE(scan_invariants(g, std::vector<Word>(1000, 4), 4).empty());
}

TEST(Exhaustive, TwoElementsLengthFour) {
  auto arrays = all_variants(2, 2);
  std::vector<const AnyArray*> ptrs;
  for (const auto& a : arrays) ptrs.push_back(a.get());
  ExhaustiveParams p;
  p.n = 2;
  p.elem_bits = 2;
  p.max_length = 4;
  p.max_value = 4;
  const ExhaustiveReport r = exhaustive_run(p, ptrs);
  EXPECT_FALSE(r.failure.has_value()) << *r.failure;
  // 4 inits, then 4 inits + 8 writes at each later step.
  EXPECT_EQ(r.scripts, 4u * (1 + 12 + 144 + 1728));
}

TEST(Exhaustive, FourElementsOverGarbage) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto arrays = all_variants(4, 2);
    for (auto& a : arrays) a->scramble(seed);
    std::vector<const AnyArray*> ptrs;
    for (const auto& a : arrays) ptrs.push_back(a.get());
    ExhaustiveParams p;
    p.n = 4;
    p.elem_bits = 2;
    p.max_length = 4;
    p.max_value = 4;
    const ExhaustiveReport r = exhaustive_run(p, ptrs);
    EXPECT_FALSE(r.failure.has_value()) << *r.failure;
  }
}

TEST(OpCost, FolkloreWithinEight) {
  auto a = make_variant("folklore", 4096, 64);
  ScriptParams p;
  p.n = 4096;
  p.elem_bits = 64;
  p.length = 20000;
  p.seed = 1;
  a->scramble(2);
  EXPECT_LE(measure_op_costs(*a, generate_script(p)).max_any(), 8u);
}

TEST(OpCost, NaiveInitIsNotConstant) {
  const std::size_t sizes[] = {256, 4096};
  const CostReport r = assert_constant_cost(
      [](std::size_t n) { return make_variant("naive", n, 64); }, sizes, 24,
      [](const AnyArray& a) {
        return OpScript{a.size(), 64, 0, {{OpKind::init, 0, 1}}};
      });
  EXPECT_FALSE(r.equal_across_sizes);
  EXPECT_FALSE(r.within_bound);
}

TEST(OpCost, WorstPathScriptHitsExpensiveBranches) {
  SpecialArray a(256, 64);
  const OpScript s = worst_path_script(256, 64, 128, 1, 2, 3);
  for (const Op& op : s.ops) {
    if (op.kind == OpKind::init) a.init(op.value);
    if (op.kind == OpKind::write) a.write(op.index, op.value);
  }
  EXPECT_GT(a.write_paths().written_chained_swap, 0u);
  EXPECT_GT(a.write_paths().extend_materialized, 0u);
  EXPECT_GT(a.write_paths().unwritten_chained, 0u);
}

// Hand count of the stress write at ℓ = w (one word per cell, full-word stores):
// chain check of W 2, boundary check 2, copy 2, break of the boundary's
// accidental chain 3, init of Q 2, break check of Q 2, copy 2, make_chain 2,
// init of W 2, store 1, break of the written value's accidental chain 3.
TEST(ChainStress, SpecialWriteCostsHandCount) {
  for (const std::size_t n : {16u, 256u, 4096u}) {
    SpecialArray a(n, 64);
    const ChainStress s = chain_stress(n, 64, n / 2, 1);
    for (const auto& [cell, ptr] : s.pointers) plant_pointer(a, cell, ptr);
    for (const Op& op : s.script.ops) {
      a.reset_cost();
      if (op.kind == OpKind::init) a.init(op.value);
      if (op.kind == OpKind::write) a.write(op.index, op.value);
    }
    EXPECT_EQ(a.cost().word_accesses(), 23u) << n;
    EXPECT_EQ(a.write_paths().written_chained_swap, 1u);
    EXPECT_EQ(a.write_paths().extend_materialized, 1u);
  }
}

TEST(ChainStress, AgreesWithOracle) {
  for (const std::size_t n : {16u, 100u}) {
    auto a = std::make_unique<ArrayHandle<SpecialArray>>("special", n, 64);
    GeneralOptions core;
    core.small_limit_bits = 0;
    auto g = std::make_unique<ArrayHandle<GeneralArray>>("general", 3 * n, 64, core);
    const ChainStress s = chain_stress(n, 64, n / 2, 1);
    for (const auto& [cell, ptr] : s.pointers) plant_pointer(a->get(), cell, ptr);
    const GeneralLayout& lay = g->get().layout();
    const ChainStress sg = chain_stress(3 * n, 64, lay.core_cells / 2, lay.pack);
    for (const auto& [cell, ptr] : sg.pointers) plant_pointer(g->get(), cell, ptr);
    AnyArray* one[] = {a.get()};
    AnyArray* other[] = {g.get()};
    DiffOptions opts;
    opts.scan_every_op = true;
    EXPECT_TRUE(differential_run(s.script, one, opts).ok());
    EXPECT_TRUE(differential_run(sg.script, other, opts).ok());
  }
}
