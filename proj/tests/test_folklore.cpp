#include <gtest/gtest.h>

#include <random>

#include "inplace/baselines.hpp"
#include "inplace/folklore.hpp"

using namespace inplace;

TEST(Folklore, InitSetsEveryElement) {
  FolkloreArray a(100, 8);
  a.scramble(1);
  a.init(7);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a.read(i), 7u);
}

TEST(Folklore, InitIsTwoScalarWrites) {
  FolkloreArray a(1000, 16);
  a.reset_cost();
  a.init(3);
  const CostLedger c = a.cost();
  EXPECT_EQ(c.scalar_writes, 2u);
  EXPECT_EQ(c.word_accesses(), 0u);
}

TEST(Folklore, InitErasesWrites) {
  FolkloreArray a(10, 8);
  a.init(1);
  a.write(3, 9);
  a.init(0);
  EXPECT_EQ(a.read(3), 0u);
}

TEST(Folklore, ReadAfterWrite) {
  FolkloreArray a(10, 8);
  a.init(5);
  EXPECT_EQ(a.read(0), 5u);
  a.init(0);
  a.write(2, 9);
  EXPECT_EQ(a.read(2), 9u);
}

TEST(Folklore, AdversarialGarbage) {
  const std::size_t n = 64;
  FolkloreArray a(n, 8);
  // Every F entry points at a T slot that points back, as if all were written.
  for (std::size_t i = 0; i < n; ++i) {
    a.from_array().write(i, i);
    a.to_array().write(i, i);
  }
  a.init(1);
  for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(a.read(i), 1u);
}

TEST(Folklore, RepeatedWriteGrowsStackOnce) {
  FolkloreArray a(16, 8);
  a.init(0);
  a.write(4, 1);
  a.write(4, 2);
  EXPECT_EQ(a.stack_size(), 1u);
}

TEST(Folklore, WritingEverythingFillsStack) {
  FolkloreArray a(37, 8);
  a.scramble(2);
  a.init(0);
  for (std::size_t i = 0; i < a.size(); ++i) a.write(i, i);
  EXPECT_EQ(a.stack_size(), a.size());
}

TEST(Folklore, MatchesNaiveOracle) {
  std::mt19937_64 rng(3);
  for (unsigned l : {7u, 8u, 16u, 64u}) {
    const std::size_t n = 100;
    FolkloreArray a(n, l);
    NaiveArray oracle(n, l);
    a.scramble(rng());
    for (int step = 0; step < 20000; ++step) {
      const std::size_t i = rng() % n;
      const Word v = rng() & low_mask(l);
      const unsigned kind = rng() % 100;
      if (step == 0 || kind < 2) {
        a.init(v);
        oracle.init(v);
      } else if (kind < 50) {
        a.write(i, v);
        oracle.write(i, v);
      } else {
        ASSERT_EQ(a.read(i), oracle.read(i)) << "l=" << l << " step=" << step;
      }
    }
  }
}

TEST(Folklore, ExtraBits) {
  FolkloreArray a(1000, 10);
  EXPECT_EQ(a.space().extra_bits(), 2u * 10 * 1001);
}

TEST(Folklore, RejectsNarrowElements) {
  EXPECT_THROW(FolkloreArray(1000, 9), std::invalid_argument);
  EXPECT_NO_THROW(FolkloreArray(1024, 10));
}

TEST(Folklore, ConstantOpCost) {
  FolkloreArray a(1 << 12, 64);
  a.scramble(4);
  a.init(1);
  std::mt19937_64 rng(5);
  for (int step = 0; step < 5000; ++step) {
    const std::size_t i = rng() % a.size();
    a.reset_cost();
    if (step % 2 == 0) {
      a.write(i, rng());
    } else {
      static_cast<void>(a.read(i));
    }
    ASSERT_LE(a.cost().word_accesses(), 8u);
  }
}
