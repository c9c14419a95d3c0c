#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "latforge/verify.hpp"

using namespace latforge;

TEST_CASE("record filters") {
  CHECK(matches_filter("invariant/12/determinant", {}));
  CHECK(matches_filter("invariant/12/determinant", {"invariant/12"}));
  CHECK(matches_filter("invariant/12/determinant", {"12"}));
  CHECK_FALSE(matches_filter("invariant/12/determinant", {"1"}));
  CHECK(matches_filter("orders/k/12", {"12"}));
  CHECK(matches_filter("roots/14-26/3", {"26"}));
  CHECK_FALSE(matches_filter("roots/14-26/3", {"2"}));
  CHECK(matches_filter("spinor/-1/40", {"40", "x"}));
  CHECK_FALSE(matches_filter("catalog/3/arithmetic", {"spinor"}));
}

TEST_CASE("json lines drop runtimes on request") {
  CheckRecord r{"a/1", "forms", "somewhere", "printed", "1", "1", "pass", "", 0.25};
  CHECK(to_json_line(r, true).find("seconds") != std::string::npos);
  std::string s = to_json_line(r, false);
  CHECK(s.find("seconds") == std::string::npos);
  CHECK(json::parse(s)["status"] == "pass");
  CHECK(json::parse(s).count("note") == 0);
}

TEST_CASE("filtered run") {
  VerifyOptions opt;
  opt.filters = {"spinor/30"};
  auto rep = verify_tables(opt);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].status == "pass");
  CHECK(rep.records[0].provenance == "printed");
  CHECK(rep.records[0].computed == "f = (-1, 2)");
}

TEST_CASE("reports are reproducible and fully tagged") {
  VerifyOptions opt;
  opt.sections = {"catalog", "forms", "invariant", "spinor"};
  auto a = verify_tables(opt), b = verify_tables(opt);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(to_json_line(a.records[i], false) == to_json_line(b.records[i], false));
    CHECK(!a.records[i].ref.empty());
    CHECK(is_provenance(a.records[i].provenance));
  }
  // printed rows whose own data disagree are reported as conflicts, not passes
  auto it = std::find_if(a.records.begin(), a.records.end(),
                         [](const CheckRecord& r) { return r.id == "forms/13/order"; });
  REQUIRE(it != a.records.end());
  CHECK(it->status == "conflict");
  CHECK(a.count("fail") == 0);
}

TEST_CASE("worked example and nine cases") {
  VerifyOptions opt;
  opt.sections = {"worked-example", "nine-cases"};
  auto rep = verify_tables(opt);
  for (const auto& r : rep.records) {
    CAPTURE(r.id);
    if (r.id == "c8/II/invariant-isometric")
      CHECK(r.status == "conflict");
    else
      CHECK(r.status == "pass");
  }
  CHECK(std::any_of(rep.records.begin(), rep.records.end(), [](const CheckRecord& r) { return r.id == "nine/set"; }));
}

TEST_CASE("untagged corpora are refused") {
  auto dir = std::filesystem::temp_directory_path() / "latforge_bad_corpus";
  std::filesystem::create_directories(dir / "corpus");
  std::ofstream(dir / "corpus" / "x.json")
      << R"({"entries":[{"id":"orders/80","kind":"order","payload":{"n":80,"order":64},"ref":"r"}]})";
  VerifyOptions opt;
  opt.data_dir = dir.string();
  CHECK_THROWS_AS(verify_tables(opt), InputError);
  std::filesystem::remove_all(dir);
}
