#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cantor/construction.hpp"
#include "cantor/dimension.hpp"
#include "cantor/error.hpp"
#include "cantor/io.hpp"
#include "cantor/measures.hpp"
#include "cantor/orthopoly.hpp"

using namespace cantor;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitConfig = 4;

struct RunConfig {
  std::string gamma = "exp(-8*s+4)";
  long levels = 8;
  Bits precision_bits = PrecisionContext::kDefaultBits;
  Bits max_bits = PrecisionContext::kDefaultMaxBits;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::string out;
  std::string format = "doc";

  // command-specific
  std::string which;
  std::optional<std::size_t> random_covers;
  std::string cover_file;
  std::string interval;
  long restrict_max = 4;
  long level = 1;
  std::size_t N = 64;
  long exponent_level = 6;
  std::string exponent_bound = "0.25";
  std::string t;
  int digits = 40;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::GapCollapse:
    case ErrorCode::Breakdown:
      return kExitPrecision;
    case ErrorCode::BoundViolated:
      return kExitAssertion;
    default:
      return kExitConfig;
  }
}

PrecisionContext context(const RunConfig& cfg) { return PrecisionContext(cfg.precision_bits, cfg.max_bits); }

Bits analysis_bits(const RunConfig& cfg) { return std::max<Bits>(cfg.precision_bits, 256); }

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty()) {
    std::cout << content;
  } else {
    write_atomic(cfg.out, content);
  }
}

int emit_report(const RunConfig& cfg, const CheckReport& report) {
  emit(cfg, cfg.format == "tsv" ? report_to_tsv(report) : serialize(report_to_json(report)));
  std::cerr << report.check << ": " << (report.pass ? "pass" : "FAIL") << " (" << report.samples
            << " samples, worst ratio " << report.worst_ratio << ")\n";
  return report.pass ? kExitPass : kExitAssertion;
}

std::pair<Ball, Ball> parse_interval(const std::string& text, Bits bits) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::Config, "--interval expects lo,hi");
  return {Ball::parse(text.substr(0, comma), bits), Ball::parse(text.substr(comma + 1), bits)};
}

int cmd_build(const RunConfig& cfg) {
  const GammaSpec spec = GammaSpec::parse(cfg.gamma);
  const auto levels = build_levels(spec, cfg.levels, context(cfg));
  const Ball M = big_M(spec, analysis_bits(cfg));
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path("levels") : std::filesystem::path(cfg.out);
  std::filesystem::create_directories(dir);
  const bool tsv = cfg.format == "tsv";
  for (const LevelSet& level : levels) {
    const auto path = dir / ("level_" + std::to_string(level.s) + (tsv ? ".tsv" : ".json"));
    write_atomic(path, tsv ? level_to_tsv(level) : serialize(level_to_json(level, spec)));
    const CheckReport lengths = verify_length_bounds(level, M);
    std::cout << "s=" << level.s << " intervals=" << level.size() << " bits=" << level.precision_bits
              << " delta_s=" << level.delta.mid().to_string(12);
    for (const auto& [k, v] : lengths.summary) std::cout << " " << k << "=" << v;
    std::cout << " -> " << path.string() << "\n";
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  const GammaSpec spec = GammaSpec::parse(cfg.gamma);
  const Bits bits = analysis_bits(cfg);
  Rng rng(cfg.seed);
  const auto seed_param = std::make_pair(std::string("seed"), std::to_string(cfg.seed));

  if (cfg.which == "doubling") {
    const DimensionFunction dim(spec, cfg.levels, bits);
    const auto samples = sample_doubling(dim, cfg.samples.value_or(10000), rng);
    CheckReport report = merge_reports("doubling", {verify_doubling(dim, samples), verify_knot_slopes(dim)});
    report.parameters.push_back(seed_param);
    return emit_report(cfg, report);
  }

  const auto levels = build_levels(spec, cfg.levels, context(cfg));
  const Ball M = big_M(spec, bits);
  const DimensionFunction dim(spec, cfg.levels, bits);
  const LevelSet& deepest = levels.back();

  if (cfg.which == "lengths") {
    std::vector<CheckReport> parts;
    for (const LevelSet& level : levels) {
      parts.push_back(verify_length_bounds(level, M));
      parts.back().check = "lengths_s" + std::to_string(level.s);
      parts.push_back(verify_structure(level, level.s > 0 ? &levels[level.s - 1] : nullptr));
      parts.back().check = "structure_s" + std::to_string(level.s);
    }
    return emit_report(cfg, merge_reports("lengths", parts));
  }
  if (cfg.which == "frostman") {
    std::vector<CheckReport> parts;
    if (!cfg.interval.empty()) {
      parts.push_back(verify_frostman_upper(deepest, dim, {parse_interval(cfg.interval, bits)}));
    } else {
      const std::size_t n = cfg.samples.value_or(10000);
      parts.push_back(verify_frostman_upper(deepest, dim, sample_gap_intervals(deepest, n, rng)));
      const LevelSet& points = levels[std::max<long>(0, cfg.levels - 2)];
      parts.push_back(verify_frostman_lower(deepest, dim, M, sample_kernel_points(points, dim, n / 10, rng)));
    }
    CheckReport report = merge_reports("frostman", parts);
    report.parameters.push_back(seed_param);
    return emit_report(cfg, report);
  }
  if (cfg.which == "covers") {
    std::vector<std::vector<std::pair<Ball, Ball>>> covers;
    if (!cfg.cover_file.empty()) {
      std::ifstream in(cfg.cover_file);
      if (!in) throw Error(ErrorCode::Config, "cannot read " + cfg.cover_file);
      Json doc;
      try {
        doc = Json::parse(in);
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::Config, "cover file: " + std::string(e.what()));
      }
      covers.push_back(cover_from_json(doc, deepest.precision_bits));
    } else {
      const std::size_t n = cfg.random_covers.value_or(cfg.samples.value_or(1000));
      for (std::size_t i = 0; i < n; ++i) covers.push_back(random_gap_cover(deepest, rng));
    }
    CheckReport report = verify_covers(deepest, dim, covers);
    report.parameters.push_back(seed_param);
    return emit_report(cfg, report);
  }
  if (cfg.which == "hausdorff") return emit_report(cfg, verify_hausdorff(levels, dim, M, cfg.restrict_max));
  throw Error(ErrorCode::Config, "unknown check " + cfg.which);
}

int cmd_capacity(const RunConfig& cfg) {
  const GammaSpec spec = GammaSpec::parse(cfg.gamma);
  const auto bits = static_cast<Bits>(cfg.digits * 3.33) + 64;
  const PolarityCertificate polarity = is_nonpolar(spec, bits);
  Json doc;
  doc["gamma"] = spec.text();
  doc["nonpolar"] = polarity.nonpolar;
  doc["certificate"] = polarity.series.certificate;
  Json trace = Json::array();
  for (long s = 1; s <= cfg.levels; ++s) {
    const std::string term = capacity_partial_sum(s, spec, bits).mid().to_string(30);
    std::cout << "s=" << s << " 2^-s log(1/r_s) = " << term << "\n";
    trace.push_back({{"s", s}, {"term", term}});
  }
  doc["trace"] = std::move(trace);
  if (!polarity.nonpolar) {
    doc["capacity"] = "0";
    std::cout << "polar (capacity 0)\n";
  } else {
    const Ball cap = capacity(spec, bits);
    doc["capacity"] = cap.mid().to_string(cfg.digits);
    doc["capacity_err"] = cap.rad().to_string(6, MPFR_RNDU);
    doc["digits"] = cfg.digits;
    doc["series"] = polarity.series.value->mid().to_string(cfg.digits);
    std::cout << "capacity " << cap.mid().to_string(cfg.digits) << " +- " << cap.rad().to_string(3, MPFR_RNDU)
              << "\n";
  }
  if (!cfg.out.empty()) write_atomic(cfg.out, serialize(doc));
  return kExitPass;
}

int cmd_regularity(const RunConfig& cfg) {
  const GammaSpec spec = GammaSpec::parse(cfg.gamma);
  const long depth = std::max(cfg.levels, std::max(cfg.level, cfg.exponent_level + 2));
  const auto levels = build_levels(spec, depth, context(cfg));
  const PiecewiseUniformMeasure measure = lambda_measure(levels.at(cfg.level));
  const RecurrenceCoefficients rc =
      recurrence(measure, cfg.N, PrecisionContext(std::max<Bits>(cfg.precision_bits, 1024), cfg.max_bits));
  const RegularityDiagnostic diag = regularity_diagnostic(rc);

  // Capacity floor: E_s contains K(gamma), so every a_n^{-1/n} is at least Cap(K(gamma)).
  bool floor_ok = true;
  std::string floor_text = "polar";
  const PolarityCertificate polarity = is_nonpolar(spec, 256);
  if (polarity.nonpolar) {
    const Ball cap = capacity(spec, 256);
    floor_text = cap.mid().to_string(20);
    for (const auto& [n, v] : diag.values) floor_ok = floor_ok && v >= cap.lower();
  }

  const DimensionFunction dim(spec, depth, analysis_bits(cfg));
  std::vector<Real> radii;
  for (long s = 1; s <= cfg.exponent_level; ++s) radii.push_back(dim.delta(s).mid());
  CheckReport exponent = verify_exponent(levels.back(), level_endpoints(levels.at(cfg.exponent_level)), radii,
                                         Real::parse(cfg.exponent_bound, 64));

  Json doc = regularity_to_json(rc, diag);
  doc["capacity_floor"] = floor_text;
  doc["floor_ok"] = floor_ok;
  doc["exponent"] = report_to_json(exponent);
  const bool tsv = cfg.format == "tsv";
  emit(cfg, tsv ? regularity_to_tsv(rc, diag) : serialize(doc));
  if (!cfg.out.empty()) {
    std::ostringstream plot;
    for (const auto& [n, v] : diag.values) plot << n << " " << v.to_string(20) << "\n";
    std::filesystem::path dat(cfg.out);
    dat.replace_extension(".dat");
    write_atomic(dat, plot.str());
  }
  std::cerr << rc.measure << ": a_N^{-1/N}=" << diag.values.back().second.to_string(12)
            << " window_change=" << diag.window_change.to_string(4) << " floor " << (floor_ok ? "ok" : "VIOLATED")
            << "; exponent max ratio " << exponent.worst_ratio << (exponent.pass ? " ok" : " EXCEEDS bound") << "\n";
  return floor_ok && exponent.pass ? kExitPass : kExitAssertion;
}

int cmd_h_eval(const RunConfig& cfg) {
  const GammaSpec spec = GammaSpec::parse(cfg.gamma);
  const Bits bits = analysis_bits(cfg);
  const DimensionFunction dim(spec, cfg.levels, bits);
  const Ball t = Ball::parse(cfg.t, bits);
  if (!t.certainly_positive()) throw Error(ErrorCode::Config, "--t must be positive");
  const Ball h = dim.h(t);
  std::cout << "t " << t.mid().to_string(30) << "\n";
  if (t.upper() <= 1) {
    const Ball eta = t.is_exact() ? dim.eta(t.mid()) : -log(h) / ball_log2(bits);
    std::cout << "eta " << eta.mid().to_string(30) << "\n";
  } else {
    std::cout << "eta 0\n";
  }
  std::cout << "h " << h.mid().to_string(30) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantor-type sets K(gamma): construction, measures and certified checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--gamma", cfg.gamma, "gamma rule, e.g. exp(-8*s+4), 1/32*1^s, list(...;tail=...)");
    sub->add_option("--levels", cfg.levels, "deepest level")->check(CLI::Range(0L, 60L));
    sub->add_option("--precision-bits", cfg.precision_bits, "starting precision")->check(CLI::Range(64L, 1L << 20));
    sub->add_option("--max-bits", cfg.max_bits, "precision cap")->check(CLI::Range(64L, 1L << 22));
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--format", cfg.format, "doc or tsv")->check(CLI::IsMember({"doc", "tsv"}));
  };

  auto* build = app.add_subcommand("build", "build levels 0..levels and write one document per level");
  common(build);

  auto* verify = app.add_subcommand("verify", "run a verification pipeline");
  common(verify);
  verify->add_option("which", cfg.which, "lengths, doubling, frostman, covers or hausdorff")
      ->required()
      ->check(CLI::IsMember({"lengths", "doubling", "frostman", "covers", "hausdorff"}));
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--samples", cfg.samples, "sample count");
  verify->add_option("--random", cfg.random_covers, "number of random covers");
  verify->add_option("--cover", cfg.cover_file, "cover document: list of [lo, hi] decimal strings");
  verify->add_option("--interval", cfg.interval, "single interval lo,hi for the Frostman upper check");
  verify->add_option("--restrict-max", cfg.restrict_max, "restrictions to I_{j,s} for s up to this level");

  auto* cap = app.add_subcommand("capacity", "logarithmic capacity of K(gamma)");
  common(cap);
  cap->add_option("--digits", cfg.digits, "significant digits")->check(CLI::Range(1, 2000));

  auto* reg = app.add_subcommand("regularity", "recurrence coefficients and a_n^{-1/n} for lambda_s");
  common(reg);
  reg->add_option("--level", cfg.level, "s of the measure lambda_s")->check(CLI::Range(0L, 20L));
  reg->add_option("--N", cfg.N, "number of recurrence steps")->check(CLI::Range(2, 4096));
  reg->add_option("--exponent-level", cfg.exponent_level, "level of the exponent sample points");
  reg->add_option("--exponent-bound", cfg.exponent_bound, "flag ratios above this value");

  auto* heval = app.add_subcommand("h-eval", "print eta(t) and h(t)");
  common(heval);
  heval->add_option("--t", cfg.t, "argument t > 0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*build) return cmd_build(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*cap) return cmd_capacity(cfg);
    if (*reg) return cmd_regularity(cfg);
    if (*heval) return cmd_h_eval(cfg);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
