#include <gtest/gtest.h>

#include <random>

#include "inplace/baselines.hpp"
#include "inplace/dump.hpp"
#include "inplace/general_array.hpp"
#include "inplace/verify.hpp"

using namespace inplace;

namespace {

GeneralOptions force_core() {
  GeneralOptions o;
  o.small_limit_bits = 0;
  return o;
}

}  // namespace

TEST(GeneralLayout, SixteenTwoBitElements) {
  const GeneralLayout lay = plan_general_layout(16, 2);
  EXPECT_EQ(lay.pack, 5u);
  EXPECT_EQ(lay.wide_bits, 10u);
  EXPECT_EQ(lay.packed_len, 3u);
  EXPECT_EQ(lay.leftover, 1u);
  EXPECT_GE(lay.wide_bits, 2 * ceil_log2(3) + 2);
}

TEST(GeneralLayout, MillionOneBitElements) {
  const GeneralLayout lay = plan_general_layout(1'000'000, 1);
  EXPECT_EQ(lay.pack, 41u);
  EXPECT_EQ(lay.wide_bits, 41u);
  EXPECT_FALSE(lay.small);
  EXPECT_EQ(lay.packed_len, 1'000'000u / 41);
  EXPECT_EQ(lay.core_cells % 2, 0u);
  EXPECT_EQ(lay.tail_begin + lay.tail_len, lay.n);
  EXPECT_LE(lay.meta.total_bits(), lay.wide_bits);
}

TEST(GeneralLayout, SingleElementIsSmall) {
  const GeneralLayout lay = plan_general_layout(1, 5);
  EXPECT_TRUE(lay.small);
  EXPECT_EQ(lay.tail_len, 1u);
}

TEST(GeneralLayout, WideCellsHoldMetadataAcrossGrid) {
  for (const std::size_t n : {1u, 2u, 3u, 5u, 16u, 17u, 100u, 1000u, 65536u, 1u << 20}) {
    for (const unsigned l : {1u, 2u, 3u, 7u, 8u, 16u, 64u}) {
      const GeneralLayout lay = plan_general_layout(n, l);
      EXPECT_EQ(lay.pack, 2 * ((ceil_log2(n) + l - 1) / l) + 1);
      EXPECT_LE(lay.tail_len * l, kSmallFillWords * kWordBits) << n << ' ' << l;
      if (!lay.small) EXPECT_LE(lay.meta.total_bits(), lay.wide_bits);
    }
  }
}

TEST(GeneralLayout, RejectsBadWidth) {
  EXPECT_THROW(plan_general_layout(10, 0), std::invalid_argument);
  EXPECT_THROW(plan_general_layout(10, 65), std::invalid_argument);
}

TEST(PackSlot, Arithmetic) {
  EXPECT_EQ(pack_slot(7, 5), (PackedSlot{1, 2}));
  EXPECT_EQ(pack_slot(0, 5), (PackedSlot{0, 0}));
}

TEST(GeneralArray, TailRead) {
  GeneralArray a(100, 8);
  a.init(0xAB);
  EXPECT_EQ(a.read(99), 0xABu);
}

TEST(GeneralArray, RoutingAtCoreBoundary) {
  GeneralArray a(1003, 8);
  const GeneralLayout& lay = a.layout();
  ASSERT_FALSE(lay.small);
  ASSERT_GT(lay.tail_len, 0u);
  a.scramble(1);
  a.init(3);
  EXPECT_EQ(a.read(lay.tail_begin - 1), 3u);
  EXPECT_EQ(a.read(lay.n - 1), 3u);
  a.write(lay.tail_begin - 1, 200);
  a.write(lay.n - 1, 201);
  EXPECT_EQ(a.read(lay.tail_begin - 1), 200u);
  EXPECT_EQ(a.read(lay.n - 1), 201u);
  EXPECT_EQ(a.read(lay.tail_begin), 3u);
}

TEST(GeneralArray, SlotsAreIndependent) {
  GeneralArray a(40, 3, force_core());
  NaiveArray oracle(40, 3);
  a.init(5);
  oracle.init(5);
  for (std::size_t i = 0; i < 40; ++i) {
    a.write(i, i % 8);
    oracle.write(i, i % 8);
    for (std::size_t j = 0; j < 40; ++j) ASSERT_EQ(a.read(j), oracle.read(j)) << i << ' ' << j;
  }
}

TEST(GeneralArray, MetadataRoundTrip) {
  GeneralArray a(1000, 8);
  const GeneralLayout& lay = a.layout();
  const MetaFields f{2 * 3, 5, 0x5A};
  store_meta(a.raw_storage(), lay, f);
  EXPECT_EQ(load_meta(a.storage(), lay), f);
}

TEST(GeneralArray, InitWritesMetadata) {
  GeneralArray a(1000, 8);
  a.scramble(9);
  a.init(0x77);
  const MetaFields f = load_meta(a.storage(), a.layout());
  EXPECT_EQ(f.written_blocks, 0u);
  EXPECT_EQ(f.initv, 0x77u);
  EXPECT_FALSE(a.saturated());
}

TEST(GeneralArray, GarbageInit) {
  for (const std::size_t n : {3u, 17u, 100u, 1000u, 4097u}) {
    for (const unsigned l : {1u, 3u, 8u, 64u}) {
      GeneralArray a(n, l);
      a.scramble(n * 131 + l);
      const Word v = 7 & low_mask(l);
      a.init(v);
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(a.read(i), v) << n << ' ' << l << ' ' << i;
    }
  }
}

TEST(GeneralArray, SaturationMatchesNaiveStorage) {
  for (const std::size_t n : {12u, 17u, 100u, 1000u}) {
    for (const unsigned l : {1u, 4u, 8u, 13u}) {
      for (const GeneralOptions opts : {GeneralOptions{}, force_core()}) {
        GeneralArray a(n, l, opts);
        NaiveArray oracle(n, l);
        a.scramble(n + l);
        a.init(0);
        oracle.init(0);
        std::mt19937_64 rng(n * l);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (const std::size_t i : order) {
          const Word v = rng() & low_mask(l);
          a.write(i, v);
          oracle.write(i, v);
        }
        ASSERT_TRUE(a.saturated()) << n << ' ' << l;
        const auto got = a.storage().words();
        const auto want = oracle.data().buffer().words();
        ASSERT_TRUE(std::equal(got.begin(), got.end(), want.begin(), want.end())) << n << ' ' << l;
      }
    }
  }
}

TEST(GeneralArray, InitClearsSaturation) {
  GeneralArray a(200, 8);
  a.init(0);
  for (std::size_t i = 0; i < 200; ++i) a.write(i, 1);
  ASSERT_TRUE(a.saturated());
  a.init(9);
  EXPECT_FALSE(a.saturated());
  for (std::size_t i = 0; i < 200; ++i) ASSERT_EQ(a.read(i), 9u);
}

TEST(GeneralArray, SmallArraysSetFlagOnInit) {
  GeneralArray a(16, 2);
  ASSERT_TRUE(a.layout().small);
  a.scramble(2);
  a.init(2);
  EXPECT_TRUE(a.saturated());
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(a.read(i), 2u);
}

TEST(GeneralArray, ForcedCoreOnTinyArray) {
  GeneralArray a(12, 4, force_core());
  ASSERT_FALSE(a.layout().small);
  NaiveArray oracle(12, 4);
  std::mt19937_64 rng(4);
  a.scramble(4);
  Word initv = 0;
  for (int step = 0; step < 20000; ++step) {
    const std::size_t i = rng() % 12;
    const Word v = rng() & 15;
    const unsigned kind = rng() % 100;
    if (step == 0 || kind < 5) {
      a.init(v);
      oracle.init(v);
      initv = v;
    } else if (kind < 55) {
      a.write(i, v);
      oracle.write(i, v);
    }
    ASSERT_EQ(a.read(i), oracle.read(i)) << step;
    ASSERT_TRUE(verify::scan_invariants(a, oracle.snapshot(), initv).empty()) << step;
  }
}

TEST(GeneralArray, ExtraBitIsOne) {
  for (const std::size_t n : {1u, 5u, 100u, 65536u}) {
    GeneralArray a(n, 7);
    EXPECT_EQ(a.space().extra_bits(), 1u);
    EXPECT_EQ(a.storage().word_count(), (n * 7 + 63) / 64);
  }
}

TEST(GeneralArray, DumpRoundTrip) {
  GeneralArray a(1000, 9);
  a.scramble(1);
  a.init(17);
  for (std::size_t i = 0; i < 1000; i += 7) a.write(i, i % 512);
  const std::vector<std::uint8_t> image = a.dump();
  EXPECT_EQ(image.size(), kDumpHeaderBytes + 8 * ((1000 * 9 + 63) / 64));
  EXPECT_EQ(image[0], 'L');
  EXPECT_EQ(image[4], kDumpVersion);
  EXPECT_EQ(image[5], 64);
  const GeneralArray b = GeneralArray::restore(image);
  EXPECT_EQ(b.saturated(), a.saturated());
  for (std::size_t i = 0; i < 1000; ++i) ASSERT_EQ(b.read(i), a.read(i));
}

TEST(GeneralArray, DumpRejectsCorruptHeader) {
  GeneralArray a(100, 8);
  a.init(1);
  std::vector<std::uint8_t> image = a.dump();
  image[0] = 'X';
  EXPECT_THROW(GeneralArray::restore(image), std::runtime_error);
  image = a.dump();
  image.pop_back();
  EXPECT_THROW(GeneralArray::restore(image), std::runtime_error);
}

TEST(GeneralArray, DumpHeaderIsLittleEndian) {
  const Word words[] = {0x0102030405060708ULL};
  const auto image = encode_dump(3, 20, true, words);
  ASSERT_EQ(image.size(), kDumpHeaderBytes + 8);
  EXPECT_EQ(image[6], 3);
  EXPECT_EQ(image[7], 0);
  EXPECT_EQ(image[8], 20);
  EXPECT_EQ(image[16], 1);
  EXPECT_EQ(image[17], 0x08);
  EXPECT_EQ(image[24], 0x01);
}
