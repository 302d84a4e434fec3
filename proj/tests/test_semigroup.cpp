#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "superext/json_io.hpp"
#include "superext/semigroup.hpp"

using namespace superext;

namespace {

// a^i in a monogenic table sits at index i-1.
constexpr Elem pw(std::size_t i) { return static_cast<Elem>(i - 1); }

}  // namespace

TEST_CASE("monogenic tables") {
  auto const m23 = make_monogenic({2, 3});
  CHECK(m23.size() == 4);
  CHECK(m23(pw(1), pw(4)) == pw(2));  // a^5 = a^2
  CHECK(m23.label(pw(3)) == "a^3");

  auto const c4 = make_monogenic({1, 4});
  CHECK(c4(pw(2), pw(2)) == pw(4));
  CHECK(c4(pw(3), pw(3)) == pw(2));

  auto const m51 = make_monogenic({5, 1});
  CHECK(m51(pw(1), pw(5)) == pw(5));  // a^6 = a^5

  for (std::size_t r = 1; r <= 6; ++r) {
    for (std::size_t m = 1; r + m - 1 <= 8; ++m) {
      auto const t = make_monogenic({r, m});
      REQUIRE(t.size() == r + m - 1);
      REQUIRE(check_associative(t));
      REQUIRE(monogenic_generator(t) == pw(1));
      // a^(r+m) = a^r
      Elem p = pw(1);
      for (std::size_t i = 1; i < r + m; ++i) p = t(p, pw(1));
      CHECK(p == pw(r));
    }
  }
  CHECK_THROWS_AS(make_monogenic({10, 8}), CapacityError);
  CHECK_THROWS_AS(make_monogenic({0, 2}), InvalidInput);
}

TEST_CASE("associativity check detects a corrupted entry") {
  auto const c3 = make_monogenic({1, 3});
  CHECK(check_associative(c3));
  auto data = c3.data();
  data[0] = (data[0] + 1) % 3;
  OpTable const bad(3, data, {}, Validate::entries_only);
  CHECK_FALSE(check_associative(bad));
  CHECK_THROWS_AS(OpTable(3, data, {}), InvalidInput);
}

TEST_CASE("power ideals, idempotents and maximal subgroups") {
  auto const m32 = make_monogenic({3, 2});
  CHECK(power_ideal(m32, 1) == ElemSet{0, 1, 2, 3});
  CHECK(power_ideal(m32, 2) == ElemSet{pw(2), pw(3), pw(4)});
  CHECK(power_ideal(make_monogenic({5, 1}), 4) == ElemSet{pw(4), pw(5)});

  CHECK(idempotents(make_monogenic({1, 4})) == ElemSet{pw(4)});
  CHECK(idempotents(make_monogenic({2, 3})) == ElemSet{pw(3)});
  CHECK(idempotents(make_monogenic({2, 4})) == ElemSet{pw(4)});

  auto g = max_subgroup_of_monogenic({2, 3});
  CHECK(g.elements == ElemSet{pw(2), pw(3), pw(4)});
  CHECK(g.neutral == pw(3));
  g = max_subgroup_of_monogenic({1, 5});
  CHECK(g.elements.size() == 5);
  CHECK(g.neutral == pw(5));
  g = max_subgroup_of_monogenic({4, 2});
  CHECK(g.elements == ElemSet{pw(4), pw(5)});
  CHECK(g.neutral == pw(4));

  // Decreasing chain that stabilizes at C_m from k = r on.
  for (std::size_t r = 1; r <= 5; ++r) {
    for (std::size_t m = 1; r + m - 1 <= 6; ++m) {
      auto const t = make_monogenic({r, m});
      ElemSet prev = all_elements(t);
      for (std::size_t k = 2; k <= r + 2; ++k) {
        ElemSet const cur = power_ideal(t, k);
        CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
        if (k >= r) CHECK(cur == max_subgroup_of_monogenic({r, m}).elements);
        prev = cur;
      }
    }
  }
}

TEST_CASE("sub-tables and homomorphisms") {
  auto const m33 = make_monogenic({3, 3});
  auto const sq = subtable(m33, power_ideal(m33, 2));
  CHECK(sq.table.size() == 4);
  CHECK(sq.table.label(0) == "a^2");
  CHECK(check_associative(sq.table));
  CHECK_THROWS_AS(subtable(m33, ElemSet{pw(1)}), InvalidInput);

  std::vector<Elem> const id{0, 1, 2, 3, 4};
  CHECK(is_homomorphism(m33, m33, id));
  std::vector<Elem> const collapse(5, pw(3));  // a^3 is idempotent in M_{3,3}
  CHECK(is_homomorphism(m33, m33, collapse));
  std::vector<Elem> const wrong(5, pw(1));
  CHECK_FALSE(is_homomorphism(m33, m33, wrong));
}

TEST_CASE("table JSON round-trip and parse errors") {
  auto const t = make_monogenic({2, 3});
  auto const j = table_to_json(t);
  CHECK(j["size"] == 4);
  CHECK(j["labels"][0] == "a^1");
  auto const back = table_from_json(j);
  CHECK(back == t);
  CHECK(back.labels() == t.labels());

  CHECK_THROWS_AS(table_from_json(Json::parse(R"({"size":2,"table":[[0,1]]})")), ParseError);
  CHECK_THROWS_AS(table_from_json(Json::parse(R"({"size":2,"table":[[0,1],[1,7]]})")),
                  ParseError);
  CHECK_THROWS_AS(table_from_json(Json::parse(R"({"size":2,"table":[[1,0],[0,0]]})")),
                  ParseError);
  CHECK_THROWS_AS(table_from_json(Json::parse(R"({"table":[]})")), ParseError);
  auto const one = table_from_json(Json::parse(R"({"size":1,"table":[[0]]})"));
  CHECK(one.size() == 1);
}
