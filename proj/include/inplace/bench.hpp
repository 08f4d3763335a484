#pragma once

// Access-frequency sweeps over the array variants, reported as CSV.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "inplace/variant.hpp"

namespace inplace::bench {

struct Workload {
  std::size_t n = 1 << 16;
  unsigned elem_bits = 32;
  double access_freq = 0.01;  // (reads + writes) / n
  std::size_t inits = 1;
  double read_write_mix = 0.5;  // share of reads among accesses
  std::uint64_t seed = 1;

  /// inits + ⌈access_freq · n⌉
  std::size_t total_ops() const;
};

/// One init followed by the accesses that precede the next init. Within an
/// epoch the benchmark replays all writes, then all reads.
struct Epoch {
  Word initv = 0;
  std::vector<std::size_t> write_index;
  std::vector<Word> write_value;
  std::vector<std::size_t> read_index;
};

/// Deterministic op stream for a workload; depends only on its fields.
std::vector<Epoch> make_epochs(const Workload& w);

struct BenchRow {
  std::string variant;
  std::size_t n = 0;
  unsigned elem_bits = 0;
  double freq = 0;
  double init_ns = 0;
  double read_ns = 0;
  double write_ns = 0;
  std::uint64_t word_accesses = 0;
  std::size_t extra_bits = 0;
  std::optional<std::string> error;
};

struct TimingOptions {
  unsigned repetitions = 5;  // after one warmup round
};

/// Runs one workload on one variant: warmup, then the median per-op time of
/// each op class over the repetitions. word_accesses is the ledger total of
/// the warmup round.
BenchRow run_cell(AnyArray& a, const Workload& w, TimingOptions opts = {});

const std::vector<double>& default_freqs();

/// One row per (variant, freq); a variant that cannot be built yields an
/// error row and the sweep continues.
std::vector<BenchRow> run_sweep(const Workload& base, const std::vector<double>& freqs,
                                const std::vector<std::string>& variants,
                                TimingOptions opts = {});

/// variant,n,elem_bits,freq,init_ns,read_ns,write_ns,word_accesses,extra_bits
const std::string& csv_header();
void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);

/// Median wall time of a single init(v), from `repetitions` batches after a
/// warmup. Batches are sized so each lasts long enough to time.
double median_init_ns(AnyArray& a, Word v, unsigned repetitions = 5);

}  // namespace inplace::bench
