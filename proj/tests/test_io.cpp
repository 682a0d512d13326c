#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cantor/io.hpp"
#include "test_util.hpp"

using namespace cantor;
using namespace cantor::testing;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("level documents reload within their error radii") {
  const auto& levels = default_levels();
  for (long s : {0L, 1L, 4L, 8L}) {
    const LevelSet& level = levels[s];
    const Json doc = level_to_json(level, default_gamma());
    CHECK(doc.at("spec") == default_gamma().text());
    CHECK(doc.at("digits") == round_trip_digits(level.precision_bits));
    const LevelSet back = level_from_json(Json::parse(serialize(doc)));
    REQUIRE(back.size() == level.size());
    CHECK(back.s == level.s);
    CHECK(back.precision_bits == level.precision_bits);
    for (std::size_t k = 0; k < level.size(); ++k) {
      CHECK(back.intervals[k].j == level.intervals[k].j);
      CHECK(back.intervals[k].a.mid() == level.intervals[k].a.mid());
      CHECK(back.intervals[k].b.mid() == level.intervals[k].b.mid());
      CHECK(back.intervals[k].a.rad() >= level.intervals[k].a.rad());
      CHECK(back.intervals[k].b.rad() >= level.intervals[k].b.rad());
    }
    CHECK(back.delta.overlaps(level.delta));
    CHECK(back.r.overlaps(level.r));
  }
  CHECK(error_code_of([] { level_from_json(Json::parse(R"({"s": 1})")); }) == ErrorCode::Config);
}

TEST_CASE("documents carry no binary floats") {
  const Json doc = level_to_json(default_levels()[2], default_gamma());
  for (const Json& item : doc.at("intervals")) {
    CHECK(item.at("a").is_string());
    CHECK(item.at("b_err").is_string());
  }
}

TEST_CASE("report documents") {
  CheckReport report;
  report.check = "example";
  report.parameters = {{"depth", "8"}};
  report.samples = 3;
  report.worst_ratio = "0.5";
  report.fail("x=1");
  const Json doc = report_to_json(report);
  CHECK(doc.at("check") == "example");
  CHECK(doc.at("parameters").at("depth") == "8");
  CHECK(doc.at("samples") == 3);
  CHECK(doc.at("worst_ratio") == "0.5");
  CHECK(doc.at("pass") == false);
  CHECK(doc.at("failures").size() == 1);
  const std::string tsv = report_to_tsv(report);
  CHECK(tsv.find("pass\tfalse") != std::string::npos);
}

TEST_CASE("merged reports") {
  CheckReport a, b;
  a.check = "a";
  a.samples = 2;
  a.worst_ratio = "0.25";
  b.check = "b";
  b.samples = 5;
  b.worst_ratio = "0.75";
  b.fail("bad");
  const CheckReport m = merge_reports("both", {a, b});
  CHECK(m.samples == 7);
  CHECK(!m.pass);
  CHECK(m.worst_ratio == "0.75");
  CHECK(m.failures.front() == "b: bad");
}

TEST_CASE("cover documents") {
  const auto cover = cover_from_json(Json::parse(R"([["-0.01", "0.5"], ["0.5", "1.01"]])"), 128);
  REQUIRE(cover.size() == 2);
  CHECK(cover[0].first.contains(Real::parse("-0.01", 256)));
  CHECK(error_code_of([] { cover_from_json(Json::parse(R"([["1"]])"), 64); }) == ErrorCode::Config);
}

TEST_CASE("atomic writes replace the target") {
  const auto dir = std::filesystem::temp_directory_path() / "cantor_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  CHECK(read_file(path) == "second\n");
  auto tmp = path;
  tmp += ".tmp";
  CHECK(!std::filesystem::exists(tmp));
  std::filesystem::remove_all(dir);
}

TEST_CASE("fixed seed and precision give byte-identical reports") {
  const auto run = [] {
    const auto levels = build_levels(default_gamma(), 6, PrecisionContext{});
    const DimensionFunction dim(default_gamma(), 6, 256);
    Rng rng(17);
    const auto intervals = sample_gap_intervals(levels.back(), 300, rng);
    std::vector<std::vector<std::pair<Ball, Ball>>> covers;
    for (int i = 0; i < 20; ++i) covers.push_back(random_gap_cover(levels.back(), rng));
    return serialize(level_to_json(levels.back(), default_gamma())) +
           serialize(report_to_json(verify_frostman_upper(levels.back(), dim, intervals))) +
           serialize(report_to_json(verify_covers(levels.back(), dim, covers)));
  };
  CHECK(run() == run());
}
