#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "inplace/bench.hpp"
#include "inplace/general_array.hpp"
#include "inplace/variant.hpp"
#include "inplace/verify.hpp"
#include "inplace/word_model.hpp"

namespace inplace::cli {

namespace {

constexpr unsigned kSimulatedWordBits = 16;

struct Options {
  std::size_t n = 1 << 16;
  unsigned elem_bits = 32;
  std::string variant = "all";
  std::vector<double> freqs;
  std::size_t ops = 10'000;
  std::size_t inits = 1;
  std::uint64_t seed = 1;
  std::string csv_path;
  std::string dump_path;
  bool check = false;
  bool simulate_w16 = false;
  std::string value = "1100";
};

std::string to_binary(Word x, unsigned bits) {
  std::string s(bits, '0');
  for (unsigned k = 0; k < bits; ++k) {
    if ((x >> k) & 1) s[bits - 1 - k] = '1';
  }
  return s;
}

int simulate_w16(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.elem_bits > kSimulatedWordBits) {
    err << "--simulate-w16 needs --elem-bits <= 16\n";
    return kBadArgs;
  }
  if (o.value.empty() || o.value.size() > o.elem_bits ||
      o.value.find_first_not_of("01") != std::string::npos) {
    err << "--value must be a binary string of at most --elem-bits digits\n";
    return kBadArgs;
  }
  const Word v = std::stoull(o.value, nullptr, 2);
  const Word by_multiply = bit_repeat(v, o.elem_bits, kSimulatedWordBits, RepeatMethod::multiply);
  const Word by_doubling =
      bit_repeat(v, o.elem_bits, kSimulatedWordBits, RepeatMethod::shift_doubling);
  out << to_binary(by_multiply, kSimulatedWordBits) << '\n';
  if (by_multiply != by_doubling) {
    err << "multiply path " << to_binary(by_multiply, kSimulatedWordBits)
        << " != doubling path " << to_binary(by_doubling, kSimulatedWordBits) << '\n';
    return kFailed;
  }
  return kOk;
}

std::vector<std::string> selected_variants(const Options& o) {
  if (o.variant == "all") return variant_names();
  return {o.variant};
}

int run_check(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::unique_ptr<AnyArray>> owned;
  std::vector<AnyArray*> arrays;
  for (const std::string& name : selected_variants(o)) {
    if (!variant_supports(name, o.n, o.elem_bits)) {
      err << "skipping " << name << ": unsupported for n=" << o.n << " elem_bits=" << o.elem_bits
          << '\n';
      continue;
    }
    owned.push_back(make_variant(name, o.n, o.elem_bits));
    arrays.push_back(owned.back().get());
  }
  if (arrays.empty()) {
    err << "no variant supports n=" << o.n << " elem_bits=" << o.elem_bits << '\n';
    return kBadArgs;
  }

  verify::ScriptParams params;
  params.n = o.n;
  params.elem_bits = o.elem_bits;
  params.length = o.ops;
  params.seed = o.seed;
  const verify::OpScript script = verify::generate_script(params);
  verify::DiffOptions opts;
  opts.scan_every_op = true;
  opts.scramble_seed = o.seed;
  const verify::DiffReport report = verify::differential_run(script, arrays, opts);
  if (!report.ok()) {
    err << report.to_string();
    return kFailed;
  }
  out << "check ok: ops=" << report.ops_run << " variants=" << arrays.size() << '\n';
  return kOk;
}

int run_dump(const Options& o, std::ostream& out, std::ostream& err) {
  verify::ScriptParams params;
  params.n = o.n;
  params.elem_bits = o.elem_bits;
  params.length = o.ops;
  params.seed = o.seed;
  const verify::OpScript script = verify::generate_script(params);

  GeneralArray a(o.n, o.elem_bits);
  a.scramble(o.seed);
  for (const verify::Op& op : script.ops) {
    if (op.kind == verify::OpKind::init) a.init(op.value);
    if (op.kind == verify::OpKind::write) a.write(op.index, op.value);
  }
  const std::vector<std::uint8_t> image = a.dump();
  std::ofstream file(o.dump_path, std::ios::binary);
  file.write(reinterpret_cast<const char*>(image.data()),
             static_cast<std::streamsize>(image.size()));
  if (!file) {
    err << "cannot write " << o.dump_path << '\n';
    return kFailed;
  }
  out << "dump: " << image.size() << " bytes to " << o.dump_path << '\n';
  return kOk;
}

int run_bench(const Options& o, std::ostream& out, std::ostream& err) {
  bench::Workload base;
  base.n = o.n;
  base.elem_bits = o.elem_bits;
  base.inits = o.inits;
  base.seed = o.seed;
  const std::vector<double>& freqs = o.freqs.empty() ? bench::default_freqs() : o.freqs;
  const auto rows = bench::run_sweep(base, freqs, selected_variants(o));
  if (o.csv_path.empty()) {
    bench::write_csv(out, rows);
    return kOk;
  }
  std::ofstream file(o.csv_path);
  bench::write_csv(file, rows);
  if (!file) {
    err << "cannot write " << o.csv_path << '\n';
    return kFailed;
  }
  return kOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Initializable array benchmarks and checks", "inplace_bench"};
  app.add_option("--n", o.n, "Array length")->check(CLI::PositiveNumber);
  app.add_option("--elem-bits", o.elem_bits, "Element width in bits")
      ->check(CLI::Range(1u, static_cast<unsigned>(kWordBits)));
  std::vector<std::string> choices = variant_names();
  choices.push_back("all");
  app.add_option("--variant", o.variant, "Variant to run")->check(CLI::IsMember(choices));
  app.add_option("--freq", o.freqs, "Access frequency (repeatable)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--ops", o.ops, "Script length for --check and --dump");
  app.add_option("--inits", o.inits, "Inits per benchmark workload")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--csv", o.csv_path, "Write the sweep CSV here instead of stdout");
  app.add_option("--dump", o.dump_path, "Run the script on the general variant and dump it");
  app.add_flag("--check", o.check, "Differential run with the invariant scanner after every op");
  app.add_flag("--simulate-w16", o.simulate_w16, "Show bit_repeat on a 16-bit word");
  app.add_option("--value", o.value, "Binary input for --simulate-w16");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kBadArgs;
  }

  if (o.simulate_w16) return simulate_w16(o, out, err);

  try {
    int code = kOk;
    if (o.check) code = std::max(code, run_check(o, out, err));
    if (!o.dump_path.empty()) code = std::max(code, run_dump(o, out, err));
    if ((!o.check && o.dump_path.empty()) || !o.csv_path.empty()) {
      code = std::max(code, run_bench(o, out, err));
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadArgs;
  }
}

}  // namespace inplace::cli
