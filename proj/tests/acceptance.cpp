// SPDX-License-Identifier: Apache-2.0
// Acceptance checks: one PASS/FAIL line per criterion.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "oracles.hpp"
#include "powersum/generators.hpp"
#include "powersum/genfun.hpp"
#include "powersum/moments.hpp"
#include "powersum/polymoment.hpp"
#include "powersum/reconstruct.hpp"
#include "powersum/roottest.hpp"

using namespace powersum;

namespace {

// Collects the first few failure notes of a criterion.
struct Check {
  bool ok = true;
  std::string note;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) note = what;
    ok = false;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<Complex> brute_moments(const std::vector<Complex>& z, unsigned count) {
  std::vector<Complex> m(count);
  for (unsigned p = 1; p <= count; ++p) {
    const auto v = oracle::brute_moment(z, p);
    m[p - 1] = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  return m;
}

std::vector<SequenceSpec> random_fixtures() {
  std::vector<SequenceSpec> out;
  for (std::uint64_t seed = 0; seed < 20; ++seed) out.push_back(finite_random(seed));
  return out;
}

const unsigned kUnityOrders[] = {2, 3, 4, 6, 8};

Check criterion1() {
  Check c;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto seq = finite_random(seed);
    const auto n = seq.head().size();
    c.expect(n >= 3 && n <= 8, "seed " + std::to_string(seed) + ": size out of range");
    for (const auto& z : seq.head()) c.expect(std::abs(z) >= 0.3 && std::abs(z) <= 0.95, "modulus out of range");
    const auto r256 = verify_theorem(seq, 256, 0.05);
    const auto r512 = verify_theorem(seq, 512, 0.05);
    c.expect(r256.pass && r256.gap <= 0.05, "seed " + std::to_string(seed) + ": gap " + fmt(r256.gap));
    c.expect(r512.gap <= r256.gap + 1e-9, "seed " + std::to_string(seed) + ": gap grew to " + fmt(r512.gap));
  }
  return c;
}

Check criterion2() {
  Check c;
  for (unsigned m : kUnityOrders) {
    const auto seq = roots_of_unity(m);
    const auto table = moment_table(seq, 256);
    for (const auto& e : table.entries) {
      const auto ref = oracle::brute_moment(seq.head(), e.p);
      const Complex oracle_value(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
      const Complex raw = table.raw_moment(e.p);
      if (e.p % m == 0) {
        c.expect(std::abs(oracle_value - Complex(m)) < 1e-12, "oracle disagrees at p=" + std::to_string(e.p));
        c.expect(std::abs(raw - Complex(m)) < 1e-12, "m=" + std::to_string(m) + " p=" + std::to_string(e.p));
      } else {
        c.expect(std::abs(oracle_value) < 1e-12, "oracle nonzero off subsequence");
        c.expect(std::abs(raw) < 1e-12, "m=" + std::to_string(m) + " nonzero at p=" + std::to_string(e.p));
      }
    }
    const auto report = verify_theorem(seq, 256, 0.05);
    c.expect(report.tail_window_sup == 1.0, "m=" + std::to_string(m) + ": window sup " + fmt(report.tail_window_sup));
  }
  return c;
}

Check criterion3() {
  Check c;
  auto fixtures = random_fixtures();
  for (unsigned m : kUnityOrders) fixtures.push_back(roots_of_unity(m));
  for (const auto& seq : fixtures) {
    for (unsigned q : {2u, 3u}) {
      const auto mapped = power_map(seq, q);
      for (unsigned p = 1; p <= 128; ++p) {
        const Complex lhs = moment(mapped, p);
        const Complex rhs = moment(seq, p * q);
        // Relative to the size of the summed terms, since cancelled sums can be 0.
        const double scale = std::max(std::abs(rhs), lq_stats(seq, p * q).lq_norm_qth_power);
        c.expect(std::abs(lhs - rhs) <= 1e-12 * scale,
                 "q=" + std::to_string(q) + " p=" + std::to_string(p) + ": diff " + fmt(std::abs(lhs - rhs)));
      }
    }
  }
  return c;
}

Check criterion4() {
  Check c;
  auto fixtures = random_fixtures();
  for (unsigned m : kUnityOrders) fixtures.push_back(roots_of_unity(m));
  fixtures.push_back(geometric(0.7));
  fixtures.push_back(geometric(Complex(-0.5, 0.6), Complex(0.2, 0.0), 2));
  fixtures.push_back(SequenceSpec::finite({1.0}));
  const auto grid = default_disk_grid();
  c.expect(grid.size() == 64, "grid size");
  for (const auto& seq : fixtures) {
    const auto rows = agreement_table(seq, moment_table(seq, 256), grid);
    for (const auto& r : rows)
      c.expect(r.abs_diff <= r.series.tail_bound + 1e-10, "diff " + fmt(r.abs_diff) + " > bound");
  }
  const auto one = SequenceSpec::finite({1.0});
  for (double t : default_probe_grid()) {
    const double lhs = std::abs(eval_closed(one, t)) * (1 - t);
    c.expect(std::abs(lhs - t) <= 1e-12, "pole growth at t=" + fmt(t));
  }
  return c;
}

Check criterion5() {
  Check c;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const unsigned k = 1 + seed % 6;
    const auto z = separated_nodes(seed, k);
    const auto m = brute_moments(z, 2 * k);
    const auto r = prony_recover(m, k);
    const double dist = r.nodes.size() == k ? matched_max_distance(r.nodes, z) : 1.0;
    c.expect(dist < 1e-6, "seed " + std::to_string(seed) + ": node error " + fmt(dist));
    c.expect(r.residual < 1e-8, "seed " + std::to_string(seed) + ": residual " + fmt(r.residual));
    const auto e = newton_elementary(m, k);
    for (unsigned p = 1; p <= k && r.prony_polynomial.size() == k + 1; ++p) {
      const Complex expect = (p % 2 ? -1.0 : 1.0) * e[p - 1];
      c.expect(std::abs(r.prony_polynomial[k - p] - expect) < 1e-8, "Newton/Prony mismatch");
    }
  }
  for (unsigned k = 1; k <= 8; ++k) {
    const std::vector<Complex> zeros(2 * k, 0.0);
    c.expect(recover(zeros).nodes.empty(), "zero stream k=" + std::to_string(k));
    c.expect(zero_moment_certificate(std::span(zeros).first(k), k, 1e-12).pass, "certificate k=" + std::to_string(k));
  }
  return c;
}

Check criterion6() {
  Check c;
  const auto f = UnitIntervalPolynomial::from_complex({0.0, 1.0, -1.0});
  for (unsigned p = 1; p <= 32; ++p) {
    const auto m = poly_moment(f, p, PolyArithmetic::Rational);
    const auto fp = oracle::factorial(p);
    const BigRational expect(BigInt(fp * fp), BigInt(oracle::factorial(2 * p + 1)));
    c.expect(m.exact && m.exact->re == expect && m.exact->im == 0, "x(1-x) at p=" + std::to_string(p));
  }
  const auto probe = conjecture_probe(f, 64);
  c.expect(probe.tail_window_sup >= 0.23 && probe.tail_window_sup <= 0.25,
           "window sup " + fmt(probe.tail_window_sup));
  c.expect(std::abs(probe.sup_norm - 0.25) <= 1e-15, "sup norm " + fmt(probe.sup_norm));
  const auto x = conjecture_probe(UnitIntervalPolynomial::from_complex({0.0, 1.0}), 64);
  for (const auto& s : x.roots) {
    const double expect = std::pow(static_cast<double>(s.p) + 1.0, -1.0 / s.p);
    c.expect(std::abs(s.raw - expect) <= 1e-12, "f(x)=x root at p=" + std::to_string(s.p));
  }
  return c;
}

Check criterion7() {
  Check c;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = random_polynomial(seed);
    c.expect(!f.is_zero() && f.degree() <= 5, "fixture");
    const auto r = conjecture_probe(f, 128);
    c.expect(r.tail_window_sup > 0.01, "seed " + std::to_string(seed) + ": window sup " + fmt(r.tail_window_sup));
  }
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Check criterion8() {
  Check c;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("powersum_acceptance_" + std::to_string(::getpid()));
  const std::string cli = POWERSUM_CLI_PATH;
  const std::vector<std::string> files{"seq.json", "moments.csv", "report.json", "roots.csv", "genfun.csv",
                                       "recovery.json", "poly.json", "poly_roots.csv", "tail.json",
                                       "tail_report.json"};
  std::vector<std::string> baseline;
  for (const char* threads : {"1", "2", "4"}) {
    const fs::path dir = root / threads;
    fs::create_directories(dir);
    const std::string t = " --threads " + std::string(threads) + " ";
    auto path = [&](const std::string& name) { return "'" + (dir / name).string() + "'"; };
    const std::vector<std::string> commands{
        cli + t + "gen --kind finite-random --seed 1234 -o " + path("seq.json"),
        cli + t + "moments --seq " + path("seq.json") + " --pmax 128 -o " + path("moments.csv"),
        cli + t + "roottest --seq " + path("seq.json") + " --pmax 256 -o " + path("report.json") + " --roots " +
            path("roots.csv"),
        cli + t + "genfun --seq " + path("seq.json") + " --pmax 256 -o " + path("genfun.csv"),
        cli + t + "recover --moments " + path("moments.csv") + " --auto-order -o " + path("recovery.json"),
        cli + t + "poly --coeffs '0.5,-1+0.25i,0.75i' --pmax 128 -o " + path("poly.json") + " --roots " +
            path("poly_roots.csv"),
        cli + t + "gen --kind geometric --ratio 0.6-0.2i --start 1 -o " + path("tail.json"),
        cli + t + "roottest --seq " + path("tail.json") + " --precision extended -o " + path("tail_report.json"),
    };
    for (const auto& cmd : commands) {
      const int status = std::system((cmd + " 2>/dev/null").c_str());
      c.expect(status == 0, "command failed: " + cmd);
    }
    std::vector<std::string> contents;
    for (const auto& f : files) contents.push_back(slurp(dir / f));
    for (std::size_t i = 0; i < files.size(); ++i) c.expect(!contents[i].empty(), files[i] + " empty");
    if (baseline.empty())
      baseline = contents;
    else
      for (std::size_t i = 0; i < files.size(); ++i)
        c.expect(contents[i] == baseline[i], files[i] + " differs with --threads " + threads);
  }
  // A second run with the same seed and thread count must also repeat itself.
  const fs::path again = root / "again";
  fs::create_directories(again);
  const std::string cmd = cli + " gen --kind finite-random --seed 1234 -o '" + (again / "seq.json").string() + "'";
  c.expect(std::system(cmd.c_str()) == 0 && slurp(again / "seq.json") == baseline[0], "gen not repeatable");
  fs::remove_all(root);
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"root test, 20 random finite sequences (gap <= 0.05 at 256, no growth at 512)", criterion1},
      {"root test, roots of unity m in {2,3,4,6,8} (exact cancellation, capped sup = 1)", criterion2},
      {"reduction identity M_p(z^q) = M_{pq}(z), q in {2,3}, p <= 128", criterion3},
      {"generating function closed form vs series on the disk grid; pole growth", criterion4},
      {"Prony round trip, zero streams, Newton/Prony agreement", criterion5},
      {"exact x(1-x) moments, probe window for x(1-x), roots of f(x)=x", criterion6},
      {"positivity of the window sup for 20 random polynomials", criterion7},
      {"byte-identical CLI artifacts across reruns and thread counts", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu: %s  %s%s%s\n", i + 1, c.ok ? "PASS" : "FAIL", criteria[i].first.c_str(),
                c.ok ? "" : "  -- ", c.note.c_str());
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
