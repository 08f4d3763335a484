#include "inplace/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <random>

namespace inplace::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point start) {
  return std::chrono::duration<double, std::nano>(Clock::now() - start).count();
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

volatile Word g_sink = 0;

struct RoundTimes {
  double init_ns = 0;
  double read_ns = 0;
  double write_ns = 0;
};

RoundTimes run_round(AnyArray& a, const std::vector<Epoch>& epochs) {
  RoundTimes t;
  Word acc = 0;
  for (const Epoch& e : epochs) {
    auto start = Clock::now();
    a.init(e.initv);
    t.init_ns += elapsed_ns(start);

    start = Clock::now();
    for (std::size_t k = 0; k < e.write_index.size(); ++k) a.write(e.write_index[k], e.write_value[k]);
    t.write_ns += elapsed_ns(start);

    start = Clock::now();
    for (const std::size_t i : e.read_index) acc += a.read(i);
    t.read_ns += elapsed_ns(start);
  }
  g_sink = g_sink + acc;
  return t;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::size_t Workload::total_ops() const {
  return inits + static_cast<std::size_t>(std::ceil(access_freq * static_cast<double>(n)));
}

std::vector<Epoch> make_epochs(const Workload& w) {
  INPLACE_EXPECTS(w.access_freq >= 0 && w.inits >= 1 && w.n >= 1);
  const std::size_t accesses = w.total_ops() - w.inits;
  std::mt19937_64 rng(w.seed);
  std::uniform_int_distribution<std::size_t> index(0, w.n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Word mask = low_mask(w.elem_bits);

  std::vector<Epoch> epochs(w.inits);
  for (std::size_t e = 0; e < w.inits; ++e) {
    Epoch& ep = epochs[e];
    ep.initv = rng() & mask;
    // Accesses are split as evenly as possible across epochs.
    const std::size_t count = accesses / w.inits + (e < accesses % w.inits ? 1 : 0);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t i = index(rng);
      if (unit(rng) < w.read_write_mix) {
        ep.read_index.push_back(i);
      } else {
        ep.write_index.push_back(i);
        ep.write_value.push_back(rng() & mask);
      }
    }
  }
  return epochs;
}

BenchRow run_cell(AnyArray& a, const Workload& w, TimingOptions opts) {
  BenchRow row;
  row.variant = std::string(a.name());
  row.n = w.n;
  row.elem_bits = w.elem_bits;
  row.freq = w.access_freq;
  const std::vector<Epoch> epochs = make_epochs(w);
  std::size_t reads = 0;
  std::size_t writes = 0;
  for (const Epoch& e : epochs) {
    reads += e.read_index.size();
    writes += e.write_index.size();
  }

  a.reset_cost();
  run_round(a, epochs);
  row.word_accesses = a.cost().word_accesses();

  std::vector<double> init_ns;
  std::vector<double> read_ns;
  std::vector<double> write_ns;
  for (unsigned r = 0; r < std::max(1u, opts.repetitions); ++r) {
    const RoundTimes t = run_round(a, epochs);
    init_ns.push_back(t.init_ns / static_cast<double>(epochs.size()));
    read_ns.push_back(reads == 0 ? 0 : t.read_ns / static_cast<double>(reads));
    write_ns.push_back(writes == 0 ? 0 : t.write_ns / static_cast<double>(writes));
  }
  row.init_ns = median(init_ns);
  row.read_ns = median(read_ns);
  row.write_ns = median(write_ns);
  row.extra_bits = a.extra_bits();
  return row;
}

const std::vector<double>& default_freqs() {
  static const std::vector<double> freqs = {0.001, 0.01, 0.05, 0.1, 0.5, 1, 10};
  return freqs;
}

std::vector<BenchRow> run_sweep(const Workload& base, const std::vector<double>& freqs,
                                const std::vector<std::string>& variants, TimingOptions opts) {
  std::vector<BenchRow> rows;
  for (const std::string& name : variants) {
    std::unique_ptr<AnyArray> a;
    std::string error;
    try {
      a = make_variant(name, base.n, base.elem_bits);
    } catch (const std::exception& e) {
      error = e.what();
    }
    for (const double f : freqs) {
      Workload w = base;
      w.access_freq = f;
      if (!a) {
        BenchRow row;
        row.variant = name;
        row.n = w.n;
        row.elem_bits = w.elem_bits;
        row.freq = f;
        row.error = error;
        rows.push_back(std::move(row));
        continue;
      }
      rows.push_back(run_cell(*a, w, opts));
    }
  }
  return rows;
}

const std::string& csv_header() {
  static const std::string header =
      "variant,n,elem_bits,freq,init_ns,read_ns,write_ns,word_accesses,extra_bits";
  return header;
}

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << csv_header() << '\n';
  for (const BenchRow& r : rows) {
    os << r.variant << ',' << r.n << ',' << r.elem_bits << ',' << r.freq << ',';
    if (r.error) {
      os << "ERROR:" << sanitize(*r.error) << ",,,,\n";
      continue;
    }
    os << r.init_ns << ',' << r.read_ns << ',' << r.write_ns << ',' << r.word_accesses << ','
       << r.extra_bits << '\n';
  }
}

double median_init_ns(AnyArray& a, Word v, unsigned repetitions) {
  constexpr double kMinBatchNs = 200'000;
  auto start = Clock::now();
  a.init(v);
  const double once = std::max(elapsed_ns(start), 1.0);
  const std::size_t batch = std::max<std::size_t>(1, static_cast<std::size_t>(kMinBatchNs / once));

  std::vector<double> samples;
  for (unsigned r = 0; r <= repetitions; ++r) {
    start = Clock::now();
    for (std::size_t k = 0; k < batch; ++k) a.init(v);
    const double per = elapsed_ns(start) / static_cast<double>(batch);
    if (r > 0) samples.push_back(per);  // round 0 is the warmup
  }
  return median(samples);
}

}  // namespace inplace::bench
