#include "pqcscope/loggen.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "pqcscope/zeek.hpp"

using namespace pqcscope;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* tag) {
  fs::path dir = fs::temp_directory_path() / "pqcscope_loggen_test" / tag;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint64_t parsed_records(const fs::path& p) {
  LogReader reader = LogReader::open(p.string());
  RecordView rec;
  while (reader.next(rec)) {
  }
  CHECK(reader.stats().malformed == 0);
  CHECK(reader.stats().clean_close);
  CHECK_FALSE(reader.stats().truncated);
  return reader.stats().records;
}

}  // namespace

TEST_CASE("scale_counts is the identity at scale one") {
  std::vector<std::uint64_t> counts{2030, 473, 6, 5, 2, 2};
  CHECK(scale_counts(counts, 1.0) == counts);
  CHECK(scale_counts({}, 1.0).empty());
  CHECK(scale_counts({0, 0}, 2.0) == std::vector<std::uint64_t>{0, 0});
}

TEST_CASE("scale_counts splits the rounded total by largest remainder") {
  // 9 * 0.5 rounds to 5; equal remainders hand the spare units to the
  // earliest buckets.
  CHECK(scale_counts({3, 3, 3}, 0.5) == std::vector<std::uint64_t>{2, 2, 1});
  // 10 * 0.25 rounds half away from zero to 3.
  CHECK(scale_counts({10}, 0.25) == std::vector<std::uint64_t>{3});
  CHECK(scale_counts({1, 1}, 0.25) == std::vector<std::uint64_t>{1, 0});
  CHECK(scale_counts({4, 1}, 2.0) == std::vector<std::uint64_t>{8, 2});
}

TEST_CASE("scale_counts always lands exactly on the rounded total") {
  const std::vector<std::vector<std::uint64_t>> tables{
      {2030, 473, 6, 5, 2, 2}, {1, 2, 3, 4, 5}, {7}, {1000, 1, 1, 1}};
  for (double scale : {0.1, 0.37, 0.5, 1.0, 1.5, 2.0, 9.99}) {
    for (const auto& counts : tables) {
      auto out = scale_counts(counts, scale);
      REQUIRE(out.size() == counts.size());
      std::uint64_t sum = std::accumulate(counts.begin(), counts.end(), std::uint64_t(0));
      std::uint64_t want =
          static_cast<std::uint64_t>(std::llround(static_cast<double>(sum) * scale));
      std::uint64_t got = std::accumulate(out.begin(), out.end(), std::uint64_t(0));
      CAPTURE(scale);
      CHECK(got == want);
    }
  }
  CHECK_THROWS_AS(scale_counts({1, 2}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_counts({1, 2}, -1.0), std::invalid_argument);
}

TEST_CASE("profile names round-trip") {
  for (auto name : gen_profile_names()) {
    auto p = gen_profile_from_string(name);
    REQUIRE(p.has_value());
    CHECK(to_string(*p) == name);
  }
  CHECK_FALSE(gen_profile_from_string("nonsense").has_value());
  CHECK_FALSE(gen_profile_from_string("").has_value());
}

TEST_CASE("generation is deterministic per (profile, scale, seed)") {
  GenOptions a;
  a.profile = GenProfile::Table2SshDay;
  a.seed = 42;
  a.out_dir = fresh_dir("det_a");
  auto files_a = generate(a);

  GenOptions b = a;
  b.out_dir = fresh_dir("det_b");
  auto files_b = generate(b);

  REQUIRE(files_a.size() == files_b.size());
  for (size_t i = 0; i < files_a.size(); ++i) {
    CHECK(files_a[i].records == files_b[i].records);
    CHECK(files_a[i].path.filename() == files_b[i].path.filename());
    CHECK(slurp(files_a[i].path) == slurp(files_b[i].path));
  }

  GenOptions c = a;
  c.seed = 43;
  c.out_dir = fresh_dir("det_c");
  auto files_c = generate(c);
  REQUIRE(files_c.size() == files_a.size());
  CHECK(slurp(files_c[0].path) != slurp(files_a[0].path));
}

TEST_CASE("generated logs parse cleanly and report their own record counts") {
  for (auto name : gen_profile_names()) {
    GenOptions opts;
    opts.profile = *gen_profile_from_string(name);
    opts.seed = 7;
    opts.out_dir = fresh_dir(("parse_" + std::string(name)).c_str());
    auto files = generate(opts);
    REQUIRE(!files.empty());
    for (const auto& f : files) {
      CAPTURE(std::string(name));
      CAPTURE(f.path.filename().string());
      if (f.path.extension() != ".gz" && f.path.extension() != ".log") continue;
      CHECK(parsed_records(f.path) == f.records);
    }
  }
}

TEST_CASE("the SSH day profile lands on its calibrated connection count") {
  GenOptions opts;
  opts.profile = GenProfile::Table2SshDay;
  opts.seed = 1;
  opts.out_dir = fresh_dir("cal");
  auto files = generate(opts);
  std::uint64_t total = 0;
  for (const auto& f : files) total += f.records;
  CHECK(total == 2519);

  GenOptions doubled = opts;
  doubled.scale = 2.0;
  doubled.out_dir = fresh_dir("cal2");
  std::uint64_t total2 = 0;
  for (const auto& f : generate(doubled)) total2 += f.records;
  CHECK(total2 > 5000);
  CHECK(total2 < 5100);
}

TEST_CASE("generate rejects bad scale and unwritable destinations") {
  GenOptions opts;
  opts.scale = 0.0;
  opts.out_dir = fresh_dir("bad");
  CHECK_THROWS_AS(generate(opts), std::invalid_argument);

  fs::path blocker = fresh_dir("blocked") / "file";
  std::ofstream(blocker).put('x');
  GenOptions clash;
  clash.out_dir = blocker / "sub";  // parent is a regular file
  CHECK_THROWS_AS(generate(clash), std::runtime_error);
}
