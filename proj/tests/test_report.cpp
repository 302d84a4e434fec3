#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <string>

#include "superext/conjectures.hpp"
#include "superext/json_io.hpp"
#include "superext/report.hpp"

using namespace superext;

TEST_CASE("group forms parse to orders and factors") {
  auto const f = parse_form("S_3^3 x S_8^3 x S_17 x S_19");
  CHECK(f.symmetric);
  CHECK(f.factors == std::vector<std::size_t>{3, 3, 3, 8, 8, 8, 17, 19});
  CHECK(f.order == factorial(3) * factorial(3) * factorial(3) * factorial(8) * factorial(8) *
                       factorial(8) * factorial(17) * factorial(19));
  auto const k = parse_form("C_2^2");
  CHECK_FALSE(k.symmetric);
  CHECK(k.order == 4);
  CHECK(parse_form("C_1").symmetric);
  CHECK(parse_form("C_1").order == 1);
  CHECK_THROWS_AS(parse_form("D_4"), ParseError);
  CHECK_THROWS_AS(parse_form("S_"), std::exception);
}

TEST_CASE("shape matching uses order and factors or the small name") {
  GroupShape s;
  s.order = 144;
  s.symmetric_product = true;
  s.symmetric_factors = {3, 4};
  CHECK(shape_matches(s, parse_form("S_3 x S_4")));
  CHECK_FALSE(shape_matches(s, parse_form("S_4 x S_3 x S_2")));
  GroupShape c4;
  c4.order = 4;
  c4.small_name = "C_4";
  CHECK(shape_matches(c4, parse_form("C_4")));
  CHECK_FALSE(shape_matches(c4, parse_form("C_2^2")));
}

TEST_CASE("report rows follow Aut of the superextension") {
  auto const catalog = load_catalog();
  auto const rows = report_table(4, catalog);
  REQUIRE(rows.size() == 20);
  for (auto const& row : rows) {
    INFO(row.name());
    CHECK(row.verdict == Verdict::match);
  }
  CHECK_FALSE(any_mismatch(rows));
  auto const csv = report_to_csv(rows);
  CHECK(csv.rfind("row,r,m,k,", 0) == 0);
  CHECK(report_to_json(rows).size() == rows.size());

  // Wrong symbolic form: mismatch. Wrong Aut(S) or printed order: flagged.
  ReportRow row = rows.back();
  row.expected_lambda = "S_7";
  CHECK(detail::judge(row) == Verdict::mismatch);
  row = rows.back();
  row.printed_order = "7";
  CHECK(detail::judge(row) == Verdict::flagged);
  row = rows.back();
  row.expected_base = "C_5";
  CHECK(detail::judge(row) == Verdict::flagged);
  row = rows.back();
  row.expected_lambda.reset();
  CHECK(detail::judge(row) == Verdict::mismatch);

  CHECK_THROWS_AS(report_table(6, catalog), CapacityError);
}

TEST_CASE("catalog loading") {
  CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.json"), ParseError);
  ::setenv("SUPEREXT_CATALOG", "/tmp/elsewhere.json", 1);
  CHECK(default_catalog_path() == "/tmp/elsewhere.json");
  ::unsetenv("SUPEREXT_CATALOG");
  CHECK(default_catalog_path().ends_with("expected_catalog.json"));
}

TEST_CASE("conjecture probe up to size five") {
  auto const rep = conjecture_probe(5);
  CHECK(rep.all_hold());
  REQUIRE(rep.c1.size() == 3);
  auto const& six = rep.c1.back();
  CHECK(six.sum == 6);
  REQUIRE(six.cases.size() == 3);
  for (auto const& c : six.cases)
    CHECK(c.aut.named_form == "S_4^3 x S_5 x S_9^2 x S_14 x S_18");
  CHECK(rep.c2.size() == 10);
  for (auto const& v : rep.c2) CHECK(v.range.order == 1);

  auto const small = conjecture_probe(3);
  CHECK(small.all_hold());
  CHECK(small.c1.size() == 1);

  auto const j = conjecture_to_json(rep);
  CHECK(j.at("C1").size() == 3);
  CHECK(j.at("C2").at(0).at("range_order") == "1");
  CHECK_THROWS_AS(conjecture_probe(6), CapacityError);
}
