#include "cantor/io.hpp"

#include <fstream>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

namespace {

std::string value_text(const Real& x, Bits bits) { return x.to_string(round_trip_digits(bits)); }
std::string radius_text(const Real& r) { return r.to_string(20, MPFR_RNDU); }

Ball read_ball(const Json& doc, const std::string& key, Bits bits) {
  try {
    Real mid = Real::parse(doc.at(key).get<std::string>(), bits);
    Real rad = Real::parse(doc.at(key + "_err").get<std::string>(), 64, MPFR_RNDU);
    return Ball(std::move(mid), std::move(rad));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Config, "level document: " + std::string(e.what()));
  }
}

void write_ball(Json& doc, const std::string& key, const Ball& x, Bits bits) {
  doc[key] = value_text(x.mid(), bits);
  doc[key + "_err"] = radius_text(x.rad());
}

Json pairs_to_object(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Json out = Json::object();
  for (const auto& [k, v] : pairs) out[k] = v;
  return out;
}

}  // namespace

Json level_to_json(const LevelSet& level, const GammaSpec& spec) {
  const Bits bits = level.precision_bits;
  Json doc;
  doc["spec"] = spec.text();
  doc["s"] = level.s;
  doc["precision_bits"] = bits;
  doc["digits"] = round_trip_digits(bits);
  Json intervals = Json::array();
  for (const BasicInterval& I : level.intervals) {
    Json item;
    item["j"] = I.j;
    write_ball(item, "a", I.a, bits);
    write_ball(item, "b", I.b, bits);
    intervals.push_back(std::move(item));
  }
  doc["intervals"] = std::move(intervals);
  write_ball(doc, "r_s", level.r, std::max<Bits>(level.r.bits(), 64));
  write_ball(doc, "delta_s", level.delta, std::max<Bits>(level.delta.bits(), 64));
  return doc;
}

LevelSet level_from_json(const Json& doc) {
  LevelSet level;
  try {
    level.s = doc.at("s").get<long>();
    level.precision_bits = doc.at("precision_bits").get<Bits>();
    const Bits bits = level.precision_bits;
    for (const Json& item : doc.at("intervals")) {
      BasicInterval I;
      I.s = level.s;
      I.j = item.at("j").get<std::uint64_t>();
      I.a = read_ball(item, "a", bits);
      I.b = read_ball(item, "b", bits);
      level.intervals.push_back(std::move(I));
    }
    level.r = read_ball(doc, "r_s", bits);
    level.delta = read_ball(doc, "delta_s", bits);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Config, "level document: " + std::string(e.what()));
  }
  return level;
}

Json report_to_json(const CheckReport& report) {
  Json doc;
  doc["check"] = report.check;
  doc["parameters"] = pairs_to_object(report.parameters);
  doc["samples"] = report.samples;
  doc["worst_ratio"] = report.worst_ratio;
  doc["pass"] = report.pass;
  doc["failures"] = report.failures;
  doc["summary"] = pairs_to_object(report.summary);
  return doc;
}

std::string report_to_tsv(const CheckReport& report) {
  std::ostringstream out;
  out << "key\tvalue\n";
  out << "check\t" << report.check << "\n";
  for (const auto& [k, v] : report.parameters) out << "param." << k << "\t" << v << "\n";
  out << "samples\t" << report.samples << "\n";
  out << "worst_ratio\t" << report.worst_ratio << "\n";
  out << "pass\t" << (report.pass ? "true" : "false") << "\n";
  for (const auto& [k, v] : report.summary) out << "summary." << k << "\t" << v << "\n";
  for (const auto& f : report.failures) out << "failure\t" << f << "\n";
  return out.str();
}

Json regularity_to_json(const RecurrenceCoefficients& rc, const RegularityDiagnostic& diag) {
  const int digits = 40;
  Json doc;
  doc["measure"] = rc.measure;
  doc["precision_bits"] = rc.bits;
  doc["N"] = rc.size();
  Json rows = Json::array();
  for (std::size_t n = 1; n <= rc.size(); ++n) {
    Json row;
    row["n"] = n;
    row["alpha"] = rc.alpha[n - 1].to_string(digits);
    row["beta"] = rc.beta[n].to_string(digits);
    row["a_n"] = exp(rc.log_a(n)).to_string(digits);
    row["a_n_root"] = diag.values[n - 1].second.to_string(digits);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["beta_0"] = rc.beta[0].to_string(digits);
  doc["last_quartile_mean"] = diag.last_quartile_mean.to_string(20);
  doc["last_quartile_slope"] = diag.last_quartile_slope.to_string(20);
  doc["window_change"] = diag.window_change.to_string(20);
  doc["max_step_change"] = diag.max_step_change.to_string(20);
  return doc;
}

std::string regularity_to_tsv(const RecurrenceCoefficients& rc, const RegularityDiagnostic& diag) {
  std::ostringstream out;
  out << "n\talpha\tbeta\ta_n\ta_n_root\n";
  for (std::size_t n = 1; n <= rc.size(); ++n) {
    out << n << "\t" << rc.alpha[n - 1].to_string(30) << "\t" << rc.beta[n].to_string(30) << "\t"
        << exp(rc.log_a(n)).to_string(30) << "\t" << diag.values[n - 1].second.to_string(30) << "\n";
  }
  return out.str();
}

std::string level_to_tsv(const LevelSet& level) {
  const int digits = round_trip_digits(level.precision_bits);
  std::ostringstream out;
  out << "j\ta\ta_err\tb\tb_err\n";
  for (const BasicInterval& I : level.intervals) {
    out << I.j << "\t" << I.a.mid().to_string(digits) << "\t" << radius_text(I.a.rad()) << "\t"
        << I.b.mid().to_string(digits) << "\t" << radius_text(I.b.rad()) << "\n";
  }
  return out.str();
}

std::vector<std::pair<Ball, Ball>> cover_from_json(const Json& doc, Bits bits) {
  std::vector<std::pair<Ball, Ball>> cover;
  try {
    for (const Json& item : doc) {
      if (!item.is_array() || item.size() != 2) throw Error(ErrorCode::Config, "cover entries must be [lo, hi] pairs");
      cover.emplace_back(Ball::parse(item[0].get<std::string>(), bits), Ball::parse(item[1].get<std::string>(), bits));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Config, "cover document: " + std::string(e.what()));
  }
  return cover;
}

std::string serialize(const Json& doc) { return doc.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Config, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Config, "write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cantor
