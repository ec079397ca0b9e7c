// SPDX-License-Identifier: Apache-2.0
#include "powersum/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "powersum/format.hpp"
#include "powersum/generators.hpp"
#include "powersum/genfun.hpp"
#include "powersum/moments.hpp"
#include "powersum/polymoment.hpp"
#include "powersum/reconstruct.hpp"
#include "powersum/roottest.hpp"

namespace powersum::cli {

namespace {

constexpr const char* kDigitsEnv = "POWERSUM_DIGITS";

struct RunConfig {
  std::string command;
  std::string seq_path;
  std::string moments_path;
  std::string out_path = "-";
  std::string roots_path;
  unsigned p_max = 0;
  double tol = 0.05;
  std::string precision = "double";
  unsigned digits = 60;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string format = "csv";

  // gen
  std::string kind;
  unsigned order = 4;
  std::string ratio = "0.7";
  std::string coeff;
  std::uint64_t start = 0;
  std::string values;
  unsigned count = 0;
  unsigned q = 1;

  // genfun
  std::optional<std::uint64_t> probe_index;

  // recover
  std::optional<unsigned> recover_order;
  bool auto_order = false;
  double tol_rel = 1e-9;
  std::optional<double> certify_tol;

  // poly
  std::string coeffs;
  std::string arithmetic = "auto";
  unsigned poly_digits = 0;
};

class Io {
 public:
  Io(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::string read(const std::string& path) {
    if (path.empty() || path == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  void write(const std::string& path, const std::string& text) {
    if (path == "-") {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output file '" + path + "'");
    f << text;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

std::optional<unsigned> digits_from_env() {
  const char* env = std::getenv(kDigitsEnv);
  if (!env) return std::nullopt;
  const double d = parse_double(env);
  if (d < 16 || d != static_cast<unsigned>(d)) throw Error(std::string(kDigitsEnv) + " must be an integer >= 16");
  return static_cast<unsigned>(d);
}

PrecisionMode precision_of(const RunConfig& cfg) {
  if (cfg.precision == "double") return PrecisionMode::double_precision();
  if (cfg.precision == "extended") {
    const unsigned digits = digits_from_env().value_or(cfg.digits);
    if (digits < 16) throw Error("invariant violated: --digits >= 16 required");
    return PrecisionMode::extended(digits);
  }
  throw Error("invariant violated: --precision must be double or extended");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int cmd_gen(const RunConfig& cfg, Io& io) {
  std::optional<SequenceSpec> seq;
  if (cfg.kind == "finite-random") {
    seq = finite_random(cfg.seed, cfg.count);
  } else if (cfg.kind == "roots-of-unity") {
    seq = roots_of_unity(cfg.order);
  } else if (cfg.kind == "geometric") {
    const Complex ratio = parse_complex(cfg.ratio);
    const Complex coeff = cfg.coeff.empty() ? ratio : parse_complex(cfg.coeff);
    seq = geometric(ratio, coeff, cfg.start);
  } else if (cfg.kind == "values") {
    seq = SequenceSpec::finite(parse_complex_list(cfg.values));
  } else {
    throw Error("invariant violated: --kind must be finite-random, roots-of-unity, geometric or values");
  }
  io.write(cfg.out_path, serialize_sequence(seq->with_q(cfg.q)));
  return kSuccess;
}

nlohmann::json table_json(const MomentTable& t) {
  nlohmann::json j;
  j["scale"] = t.normalization_scale;
  j["precision"] = t.precision.to_string();
  j["q"] = t.q;
  j["lq"] = t.lq_norm_qth_power;
  j["p_max"] = t.p_max;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : t.entries)
    rows.push_back({{"p", e.p}, {"re", e.value.real()}, {"im", e.value.imag()}, {"abs", e.abs}, {"bound", e.bound}});
  j["entries"] = rows;
  return j;
}

int cmd_moments(const RunConfig& cfg, Io& io) {
  const SequenceSpec seq = parse_sequence(io.read(cfg.seq_path));
  const MomentTable table = moment_table(seq, cfg.p_max == 0 ? 64 : cfg.p_max, precision_of(cfg));
  if (cfg.format == "json")
    io.write(cfg.out_path, dump(table_json(table)));
  else if (cfg.format == "csv")
    io.write(cfg.out_path, write_moment_csv(table));
  else
    throw Error("invariant violated: --format must be csv or json");
  return kSuccess;
}

int cmd_roottest(const RunConfig& cfg, Io& io) {
  RootTestReport report;
  if (!cfg.moments_path.empty()) {
    MomentTable table = read_moment_csv(io.read(cfg.moments_path));
    if (cfg.p_max != 0) {
      if (cfg.p_max > table.p_max) throw Error("invariant violated: --pmax exceeds the moments in the file");
      table.entries.resize(cfg.p_max);
      table.p_max = cfg.p_max;
    }
    report = verify_table(table, cfg.tol);
  } else {
    const SequenceSpec seq = parse_sequence(io.read(cfg.seq_path));
    report = verify_theorem(seq, cfg.p_max == 0 ? 256 : cfg.p_max, cfg.tol, precision_of(cfg));
  }
  io.write(cfg.out_path, dump(to_json(report)));
  if (!cfg.roots_path.empty()) io.write(cfg.roots_path, write_roots_csv(report));
  return report.pass ? kSuccess : kVerdictFail;
}

int cmd_genfun(const RunConfig& cfg, Io& io) {
  const SequenceSpec seq = parse_sequence(io.read(cfg.seq_path));
  if (cfg.probe_index) {
    const PoleProbe probe = pole_probe(seq, *cfg.probe_index, default_probe_grid());
    std::ostringstream csv;
    csv << "t,abs_f\n";
    for (const auto& [t, v] : probe.points) csv << format_double(t) << ',' << format_double(v) << '\n';
    io.write(cfg.out_path, csv.str());
    return kSuccess;
  }
  const MomentTable table = moment_table(seq, cfg.p_max == 0 ? 256 : cfg.p_max, precision_of(cfg));
  const auto rows = agreement_table(seq, table, default_disk_grid());
  io.write(cfg.out_path, write_agreement_csv(rows));
  for (const auto& r : rows)
    if (!(r.abs_diff <= r.series.tail_bound + 1e-10)) return kVerdictFail;
  return kSuccess;
}

int cmd_recover(const RunConfig& cfg, Io& io) {
  const MomentTable table = read_moment_csv(io.read(cfg.moments_path));
  std::vector<Complex> normalized;
  std::vector<Complex> raw;
  for (const auto& e : table.entries) {
    normalized.push_back(e.value);
    raw.push_back(table.raw_moment(e.p));
  }
  RecoverOptions options;
  options.tol_rel = cfg.tol_rel;
  if (cfg.recover_order && !cfg.auto_order) options.order = cfg.recover_order;
  const Recovery rec = rescale(recover(normalized, options), table.normalization_scale, raw);
  nlohmann::json j = to_json(rec);
  int status = kSuccess;
  if (cfg.certify_tol) {
    const unsigned k = std::max(1u, table.p_max / 2);
    const ZeroMomentCertificate cert = zero_moment_certificate(raw, k, *cfg.certify_tol);
    j["zero_moment_certificate"] = to_json(cert);
    if (!cert.pass) status = kVerdictFail;
  }
  io.write(cfg.out_path, dump(j));
  return status;
}

int cmd_poly(const RunConfig& cfg, Io& io) {
  const UnitIntervalPolynomial f = UnitIntervalPolynomial::parse(cfg.coeffs);
  ProbeOptions options;
  if (cfg.arithmetic == "rational")
    options.arithmetic = PolyArithmetic::Rational;
  else if (cfg.arithmetic == "extended")
    options.arithmetic = PolyArithmetic::Extended;
  else if (cfg.arithmetic == "double")
    options.arithmetic = PolyArithmetic::Double;
  else if (cfg.arithmetic != "auto")
    throw Error("invariant violated: --arithmetic must be auto, rational, extended or double");
  if (options.arithmetic == PolyArithmetic::Extended) options.digits = digits_from_env().value_or(cfg.poly_digits);
  const ConjectureReport report = conjecture_probe(f, cfg.p_max == 0 ? 64 : cfg.p_max, options);
  io.write(cfg.out_path, dump(to_json(report)));
  if (!cfg.roots_path.empty()) io.write(cfg.roots_path, write_poly_roots_csv(report));
  return report.positivity_pass ? kSuccess : kVerdictFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Power-sum moments of complex sequences and polynomials"};
  app.require_subcommand(1);
  app.add_option("--threads", cfg.threads, "OpenMP thread count (0: runtime default)");

  auto* gen = app.add_subcommand("gen", "Write a fixture sequence as JSON");
  gen->add_option("--kind", cfg.kind, "finite-random | roots-of-unity | geometric | values")->required();
  gen->add_option("--order", cfg.order, "Order m of the roots of unity");
  gen->add_option("--ratio", cfg.ratio, "Geometric ratio (complex literal)");
  gen->add_option("--coeff", cfg.coeff, "Geometric coefficient (default: ratio)");
  gen->add_option("--start", cfg.start, "First tail index");
  gen->add_option("--values", cfg.values, "Comma separated complex literals");
  gen->add_option("--count", cfg.count, "Element count for finite-random (0: 3..8)");
  gen->add_option("--seed", cfg.seed, "Seed for finite-random");
  gen->add_option("--q", cfg.q, "Declared l^q exponent");
  gen->add_option("-o,--out", cfg.out_path, "Output path ('-' for stdout)");

  auto* mom = app.add_subcommand("moments", "Moment table of a sequence");
  mom->add_option("--seq", cfg.seq_path, "Sequence JSON ('-' for stdin)");
  mom->add_option("--pmax", cfg.p_max, "Largest p (default 64)");
  mom->add_option("--precision", cfg.precision, "double | extended");
  mom->add_option("--digits", cfg.digits, "Decimal digits in extended mode");
  mom->add_option("--format", cfg.format, "csv | json");
  mom->add_option("-o,--out", cfg.out_path, "Output path");

  auto* rt = app.add_subcommand("roottest", "Compare limsup |M_p|^{1/p} with max |z_n|");
  auto* rt_seq = rt->add_option("--seq", cfg.seq_path, "Sequence JSON");
  auto* rt_mom = rt->add_option("--moments", cfg.moments_path, "Moment CSV instead of a sequence");
  rt_seq->excludes(rt_mom);
  rt->add_option("--pmax", cfg.p_max, "Largest p (default 256)");
  rt->add_option("--tol", cfg.tol, "Gap tolerance");
  rt->add_option("--precision", cfg.precision, "double | extended");
  rt->add_option("--digits", cfg.digits, "Decimal digits in extended mode");
  rt->add_option("-o,--out", cfg.out_path, "Report JSON path");
  rt->add_option("--roots", cfg.roots_path, "Per-p CSV p,root_raw,root_capped");

  auto* gf = app.add_subcommand("genfun", "Closed form vs power series of the generating function");
  gf->add_option("--seq", cfg.seq_path, "Sequence JSON");
  gf->add_option("--pmax", cfg.p_max, "Series truncation (default 256)");
  gf->add_option("--precision", cfg.precision, "double | extended");
  gf->add_option("--digits", cfg.digits, "Decimal digits in extended mode");
  gf->add_option("--probe", cfg.probe_index, "Probe |f| towards 1/z_n for this index instead");
  gf->add_option("-o,--out", cfg.out_path, "CSV path");

  auto* rc = app.add_subcommand("recover", "Recover nodes from a moment CSV");
  rc->add_option("--moments", cfg.moments_path, "Moment CSV ('-' for stdin)");
  auto* rc_order = rc->add_option("--order", cfg.recover_order, "Model order k");
  auto* rc_auto = rc->add_flag("--auto-order", cfg.auto_order, "Detect k from the Hankel rank (default)");
  rc_order->excludes(rc_auto);
  rc->add_option("--tol-rel", cfg.tol_rel, "Relative singular value threshold");
  rc->add_option("--certify", cfg.certify_tol, "Also run the zero-moment certificate at this tolerance");
  rc->add_option("-o,--out", cfg.out_path, "Recovery JSON path");

  auto* poly = app.add_subcommand("poly", "Moments of a polynomial on [0,1] vs its sup norm");
  poly->add_option("--coeffs", cfg.coeffs, "c0,c1,... ascending, complex literals a+bi")->required();
  poly->add_option("--pmax", cfg.p_max, "Largest p (default 64)");
  poly->add_option("--arithmetic", cfg.arithmetic, "auto | rational | extended | double");
  poly->add_option("--digits", cfg.poly_digits, "Digits for --arithmetic extended (0: from p_max)");
  poly->add_option("-o,--out", cfg.out_path, "Report JSON path");
  poly->add_option("--roots", cfg.roots_path, "Per-p CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  Io io(in, out);
  try {
    if (gen->parsed()) return cmd_gen(cfg, io);
    if (mom->parsed()) return cmd_moments(cfg, io);
    if (rt->parsed()) return cmd_roottest(cfg, io);
    if (gf->parsed()) return cmd_genfun(cfg, io);
    if (rc->parsed()) return cmd_recover(cfg, io);
    if (poly->parsed()) return cmd_poly(cfg, io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace powersum::cli
