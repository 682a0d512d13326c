// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance [path-to-cantor-cli]
// With the CLI path, the determinism criterion compares repeated CLI runs byte
// for byte; without it, repeated library runs are compared.
//
// Exit status is 0 when every criterion passes or fails only as listed in
// kKnownFailures (documented in the README); otherwise 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cantor/construction.hpp"
#include "cantor/dimension.hpp"
#include "cantor/io.hpp"
#include "cantor/measures.hpp"
#include "cantor/orthopoly.hpp"

using namespace cantor;

namespace {

using Clock = std::chrono::steady_clock;

const std::set<int> kKnownFailures = {10};

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct Fixture {
  GammaSpec spec = GammaSpec::parse("exp(-8*s+4)");
  std::vector<LevelSet> levels;
  double build_seconds = 0;
  Ball M;
  DimensionFunction dim{spec, 8, 256};

  Fixture() {
    const auto start = Clock::now();
    levels = build_levels(spec, 8, PrecisionContext(128, 2048));
    build_seconds = seconds_since(start);
    M = big_M(spec, 256);
  }
};

Outcome capacity_value(const Fixture& f) {
  const auto start = Clock::now();
  const Ball cap = capacity(f.spec, 200);
  const double elapsed = seconds_since(start);
  const Real expected = exp(Real(-12, 400));
  // significant digits certified: -log10(rad / value)
  const double digits = -std::log10((cap.rad() / expected).to_double() + 1e-300);
  const bool pass = cap.contains(expected) && digits >= 30 && elapsed < 1.0;
  return {pass, "Cap = " + cap.mid().to_string(36) + ", encloses e^-12 with " + fmt(digits, 4) +
                    " certified digits, " + fmt(elapsed) + " s"};
}

Outcome length_bounds(const Fixture& f) {
  std::size_t intervals = 0;
  bool pass = true;
  Bits max_bits = 0;
  for (const LevelSet& level : f.levels) {
    if (level.s == 0) continue;
    const CheckReport r = verify_length_bounds(level, f.M);
    intervals += r.samples;
    pass = pass && r.pass;
    max_bits = std::max(max_bits, level.precision_bits);
  }
  const bool m_ok = abs(f.M.mid() - Real::parse("2.34066", 64)) < Real::parse("1e-4", 64);
  pass = pass && intervals == 510 && m_ok && max_bits <= 2048 && f.build_seconds < 120;
  return {pass, std::to_string(intervals) + " intervals with delta_s < l < M delta_s, M = " + f.M.mid().to_string(12) +
                    ", max " + std::to_string(max_bits) + " bits, build " + fmt(f.build_seconds) + " s"};
}

Outcome closed_forms(const Fixture& f) {
  const Bits bits = 1024;
  const Ball one(1, bits);
  const Ball r1 = r_value(1, f.spec, bits);
  const Ball r2 = r_value(2, f.spec, bits);
  const Ball disc1 = sqrt(one - ldexp(r1, 2));
  std::vector<Ball> level1 = {ldexp(one - disc1, -1), ldexp(one + disc1, -1)};
  const Ball root = sqrt(sqr(r1) - ldexp(r2, 2));
  std::vector<Ball> level2;
  for (const Ball& u : {ldexp(-r1 - root, -1), ldexp(-r1 + root, -1)}) {
    const Ball w = sqrt(one + ldexp(u, 2));
    level2.push_back(ldexp(one - w, -1));
    level2.push_back(ldexp(one + w, -1));
  }
  std::sort(level2.begin(), level2.end(), [](const Ball& a, const Ball& b) { return a.mid() < b.mid(); });

  const auto& L1 = f.levels[1].intervals;
  const auto& L2 = f.levels[2].intervals;
  const std::vector<Ball> got1 = {L1[0].b, L1[1].a};
  const std::vector<Ball> got2 = {L2[0].b, L2[1].a, L2[2].b, L2[3].a};
  bool pass = true;
  Real worst(0, 64);
  const auto check = [&](const std::vector<Ball>& got, const std::vector<Ball>& expected, long s) {
    const Real tol = (delta_value(s + 2, f.spec, 256) / Ball(16, 256)).lower();
    for (std::size_t k = 0; k < got.size(); ++k) {
      pass = pass && got[k].overlaps(expected[k]) && got[k].rad() < tol;
      worst = max(worst, abs(got[k].mid() - expected[k].mid()));
    }
  };
  check(got1, level1, 1);
  check(got2, level2, 2);
  return {pass, "6 endpoints agree with the closed forms, max |difference| " + worst.to_string(3) +
                    ", radii < delta_{s+2}/16"};
}

Outcome exact_masses(const Fixture& f) {
  const LevelSet& L8 = f.levels[8];
  std::size_t checked = 0;
  bool pass = true;
  for (long s = 0; s <= 6; ++s) {
    for (const BasicInterval& I : f.levels[s].intervals) {
      const MeasureBounds mb = mu_interval(L8, I.a, I.b);
      pass = pass && mb.exact() && mb.lower() == Real::pow2(-s, 64);
      ++checked;
    }
  }
  return {pass, std::to_string(checked) + " basic intervals (s <= 6) have lower = upper = 2^-s at depth 8"};
}

Outcome frostman(const Fixture& f) {
  const LevelSet& L8 = f.levels[8];
  Rng upper_rng(20240501);
  const CheckReport upper = verify_frostman_upper(L8, f.dim, sample_gap_intervals(L8, 10000, upper_rng));
  Rng lower_rng(20240502);
  const CheckReport lower =
      verify_frostman_lower(L8, f.dim, f.M, sample_kernel_points(f.levels[6], f.dim, 1000, lower_rng));
  const bool pass = upper.pass && lower.pass && upper.samples == 10000 && lower.samples == 1000;
  return {pass, "mu(I) <= 8h(r): " + std::to_string(upper.samples) + " samples, " +
                    std::to_string(upper.failures.size()) + " violations, worst " + upper.worst_ratio +
                    "; h(r) <= 2M mu(B): " + std::to_string(lower.samples) + " samples, " +
                    std::to_string(lower.failures.size()) + " violations, worst " + lower.worst_ratio};
}

Outcome covers(const Fixture& f) {
  const LevelSet& L8 = f.levels[8];
  Rng rng(20240503);
  bool pass = true;
  Real min_sum(100, 64);
  std::size_t count = 0;
  for (int i = 0; i < 1000; ++i) {
    const CoverReport report = audit_cover(L8, f.dim, random_gap_cover(L8, rng));
    ++count;
    bool ok = report.pass && report.total_N == (std::uint64_t{1} << report.n);
    for (const CoverRecord& rec : report.records) ok = ok && rec.N <= (std::uint64_t{1} << (report.n - rec.q + 2));
    pass = pass && ok;
    min_sum = min(min_sum, report.sum_h.lower());
  }
  return {pass, std::to_string(count) + " random covers, min sum h(d) = " + min_sum.to_string(6) +
                    " >= 1/4, N <= 2^{n-q+2} and sum N = 2^n in every cover"};
}

Outcome hausdorff(const Fixture& f) {
  const HausdorffBracket full = hausdorff_bounds(f.levels, f.dim, f.M, 8);
  const CheckReport all = verify_hausdorff(f.levels, f.dim, f.M, 4);
  const bool pass = full.consistent && certainly_less_equal(full.upper, ldexp(f.M, -1)) && all.pass;
  return {pass, "upper " + full.upper.mid().to_string(8) + " <= M/2 = " + ldexp(f.M, -1).mid().to_string(8) +
                    "; " + std::to_string(all.samples - 1) + " restrictions (s <= 4) inside [2^{-s-3}, M 2^{-s-1}]"};
}

Outcome legendre(const Fixture& f) {
  const RecurrenceCoefficients rc = recurrence(lambda_measure(f.levels[0]), 64, PrecisionContext(256, 4096));
  Real worst(0, 64);
  for (long k = 1; k <= 64; ++k) {
    const Real expected = Real(k * k, 256) / Real(4 * (4 * k * k - 1), 256);
    worst = max(worst, abs(rc.beta[k] - expected) / expected);
    worst = max(worst, abs(rc.alpha[k - 1] - Real::parse("0.5", 64)));
  }
  const Real root = rc.root(64);
  const Real rel = abs(root - Real::parse("0.25", 64)) / Real::parse("0.25", 64);
  const bool pass = worst < Real::parse("1e-30", 64) && rel < Real::parse("0.02", 64);
  return {pass, "max relative error in alpha_k, beta_k (k <= 64) " + worst.to_string(3) + "; a_64^{-1/64} = " +
                    root.to_string(8) + " (" + (rel * Real(100, 64)).to_string(3) + "% from 1/4)"};
}

Outcome regularity(const Fixture& f) {
  const auto start = Clock::now();
  const Real floor = exp(Real(-12, 256));
  bool pass = true;
  std::string detail;
  std::optional<Real> previous;
  for (long s = 1; s <= 3; ++s) {
    const RecurrenceCoefficients rc = recurrence(lambda_measure(f.levels[s]), 64, PrecisionContext(1024, 1024));
    const RegularityDiagnostic diag = regularity_diagnostic(rc);
    bool above = true;
    for (const auto& [n, v] : diag.values) above = above && v >= floor;
    const Real& value = diag.values.back().second;
    const bool stable = diag.window_change < Real::parse("1e-2", 64);
    const bool monotone = !previous || value <= *previous;
    pass = pass && above && stable && monotone;
    previous = value;
    detail += "s=" + std::to_string(s) + ": a_64^{-1/64} = " + value.to_string(6) + ", change over last 16 " +
              diag.window_change.to_string(2) + (above ? "" : ", BELOW e^-12") + "; ";
  }
  const double elapsed = seconds_since(start);
  pass = pass && elapsed < 600;
  return {pass, detail + "non-increasing in s, " + fmt(elapsed) + " s"};
}

Outcome exponent_bound(const Fixture& f) {
  std::vector<Real> radii;
  for (long s = 1; s <= 6; ++s) radii.push_back(f.dim.delta(s).mid());
  const CheckReport report =
      verify_exponent(f.levels[8], level_endpoints(f.levels[6]), radii, Real::parse("0.25", 64));
  std::string worst_at;
  std::string exceeding;
  for (const auto& [k, v] : report.summary) {
    if (k == "worst_x") worst_at += " at x = " + v;
    if (k == "worst_r") worst_at += ", r = " + v;
    if (k == "exceeding") exceeding = v;
  }
  return {report.pass, std::to_string(report.samples) + " samples, max ratio " + report.worst_ratio + worst_at +
                           " (bound 0.25), " + exceeding + " samples above the bound"};
}

Outcome doubling(const Fixture& f) {
  Rng rng(20240504);
  const CheckReport d = verify_doubling(f.dim, sample_doubling(f.dim, 10000, rng));
  const CheckReport k = verify_knot_slopes(f.dim);
  return {d.pass && k.pass && d.samples == 10000,
          std::to_string(d.samples) + " samples of h(r) < m h(r/m), worst ratio " + d.worst_ratio +
              "; max knot slope " + k.worst_ratio + " <= 0.2"};
}

Outcome determinism(const Fixture& f, const std::string& cli) {
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / "cantor_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::string> commands = {
        "verify frostman --levels 6 --samples 2000 --seed 11",
        "verify covers --levels 6 --random 100 --seed 12",
        "regularity --level 2 --N 32 --levels 8",
        "build --levels 4",
    };
    bool pass = true;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      std::string outputs[2];
      for (int run = 0; run < 2; ++run) {
        const auto out = dir / ("run" + std::to_string(run) + "_" + std::to_string(i));
        std::filesystem::remove_all(out);
        const std::string cmd = "\"" + cli + "\" " + commands[i] + " --out \"" + out.string() + "\" >/dev/null 2>&1";
        // regularity exits 2 while the exponent bound fails; only the files are compared
        [[maybe_unused]] const int status = std::system(cmd.c_str());
        if (std::filesystem::is_directory(out)) {
          for (const auto& entry : std::filesystem::directory_iterator(out)) outputs[run] += read_file(entry.path());
        } else {
          outputs[run] = read_file(out);
        }
      }
      pass = pass && !outputs[0].empty() && outputs[0] == outputs[1];
    }
    std::filesystem::remove_all(dir);
    return {pass, std::to_string(commands.size()) + " CLI commands run twice with fixed seeds, outputs byte-identical"};
  }
  const auto run = [&] {
    Rng rng(7);
    return serialize(report_to_json(verify_frostman_upper(f.levels[6], f.dim, sample_gap_intervals(f.levels[6], 500, rng))));
  };
  return {run() == run(), "library reports repeated with a fixed seed are byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const Fixture fixture;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"capacity value", [&] { return capacity_value(fixture); }},
      {"length bounds", [&] { return length_bounds(fixture); }},
      {"closed-form oracles", [&] { return closed_forms(fixture); }},
      {"exact dyadic masses", [&] { return exact_masses(fixture); }},
      {"Frostman inequalities", [&] { return frostman(fixture); }},
      {"cover audit", [&] { return covers(fixture); }},
      {"Hausdorff bracket", [&] { return hausdorff(fixture); }},
      {"shifted-Legendre oracle", [&] { return legendre(fixture); }},
      {"regularity trend", [&] { return regularity(fixture); }},
      {"exponent bound", [&] { return exponent_bound(fixture); }},
      {"doubling and slopes", [&] { return doubling(fixture); }},
      {"determinism", [&] { return determinism(fixture, cli); }},
  };
  int passed = 0;
  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const bool known = kKnownFailures.count(id) > 0;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << id << ". " << criteria[i].first << ": " << outcome.detail
              << (!outcome.pass && known ? " (known failure, see README)" : "") << "\n";
    if (outcome.pass) ++passed;
    else if (!known) unexpected = true;
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass\n";
  return unexpected ? 1 : 0;
}
