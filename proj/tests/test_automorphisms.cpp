#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"
#include "superext/automorphisms.hpp"
#include "superext/lambda.hpp"

using namespace superext;

namespace {

bool preserves(OpTable const& t, Perm const& p) { return is_homomorphism(t, t, p.images()); }

// x -> witness[x] carries a onto b.
bool is_isomorphism(OpTable const& a, OpTable const& b, std::vector<Elem> const& w) {
  if (w.size() != a.size() || a.size() != b.size()) return false;
  std::vector<char> hit(b.size(), 0);
  for (Elem v : w) {
    if (v >= b.size() || hit[v]) return false;
    hit[v] = 1;
  }
  return is_homomorphism(a, b, w);
}

OpTable relabel(OpTable const& t, std::vector<Elem> const& p) {
  std::size_t const n = t.size();
  std::vector<Elem> data(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) data[p[x] * n + p[y]] = p[t(x, y)];
  return OpTable(n, std::move(data), {});
}

}  // namespace

TEST_CASE("automorphism groups of small tables") {
  CHECK(automorphisms(make_monogenic({2, 3})).group.order() == 1);
  CHECK(automorphisms(make_monogenic({1, 3})).group.order() == 2);
  CHECK(automorphisms(corpus::klein()).group.order() == 6);
  CHECK(automorphisms(corpus::left_zero(6)).group.order() == 720);
  CHECK(automorphisms(corpus::null_semigroup(6)).group.order() == 120);
  CHECK(automorphisms(corpus::union_cube()).group.order() == 6);
  CHECK(automorphisms(corpus::rectangular_band()).group.order() == 12);

  auto const one = automorphisms(make_monogenic({1, 1}));
  CHECK(one.group.order() == 1);
  CHECK(one.group.degree() == 1);

  auto const l22 = build_lambda(make_monogenic({2, 2}));
  auto const res = automorphisms(l22.table);
  CHECK(res.group.order() == 2);
  auto const orb = res.group.orbits();
  REQUIRE(orb.size() == 3);
  std::vector<std::vector<std::string>> named;
  for (auto const& o : orb) {
    std::vector<std::string> v;
    for (Point p : o) v.push_back(l22.table.label(p));
    std::sort(v.begin(), v.end());
    named.push_back(v);
  }
  std::sort(named.begin(), named.end());
  CHECK(named == std::vector<std::vector<std::string>>{{"Tr", "a^1"}, {"a^2"}, {"a^3"}});
}

TEST_CASE("orders agree with the bijection oracle on the corpus") {
  for (auto const& [name, t] : corpus::tables(7)) {
    INFO(name);
    auto const res = automorphisms(t);
    CHECK(res.group.order() == oracle::count_automorphisms(t));
    CHECK(res.search_order == res.group.order());
  }
}

TEST_CASE("generators and random chain elements preserve the table") {
  std::mt19937_64 rng(11);
  for (auto [r, m] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
    auto const lam = build_lambda(make_monogenic({r, m}));
    auto const res = automorphisms(lam.table);
    for (auto const& g : res.group.generators()) REQUIRE(preserves(lam.table, g));
    for (int i = 0; i < 100; ++i) REQUIRE(preserves(lam.table, res.group.random_element(rng)));
  }
}

TEST_CASE("orbits refine idempotents and power ideals") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t r = 1; r <= n; ++r) {
      auto const lam = build_lambda(make_monogenic({r, n + 1 - r}));
      auto const orbits = automorphisms(lam.table).group.orbits();
      std::vector<ElemSet> characteristic{idempotents(lam.table)};
      for (std::size_t k = 2; k <= r + 1; ++k) characteristic.push_back(power_ideal(lam.table, k));
      for (auto const& c : characteristic) {
        for (auto const& o : orbits) {
          std::size_t inside = 0;
          for (Point p : o) inside += std::binary_search(c.begin(), c.end(), p);
          CHECK((inside == 0 || inside == o.size()));
        }
      }
    }
  }
}

TEST_CASE("isomorphism is reflexive and symmetric with verified witnesses") {
  std::vector<OpTable> tables;
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t r = 1; r <= n; ++r) tables.push_back(make_monogenic({r, n + 1 - r}));
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (std::size_t j = 0; j < tables.size(); ++j) {
      auto const ab = isomorphic(tables[i], tables[j]);
      auto const ba = isomorphic(tables[j], tables[i]);
      CHECK(ab.witness.has_value() == ba.witness.has_value());
      CHECK(ab.witness.has_value() == (i == j));
      if (ab.witness) CHECK(is_isomorphism(tables[i], tables[j], *ab.witness));
      if (!ab.witness) CHECK_FALSE(ab.invariant.empty());
    }
  }
}

TEST_CASE("isomorphism finds relabelled copies") {
  std::mt19937_64 rng(3);
  for (auto [r, m] : {std::pair<std::size_t, std::size_t>{2, 3}, {4, 1}, {3, 3}}) {
    auto const lam = build_lambda(make_monogenic({r, m}));
    std::vector<Elem> p(lam.size());
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    auto const copy = relabel(lam.table, p);
    auto const res = isomorphic(lam.table, copy);
    REQUIRE(res.witness);
    CHECK(is_isomorphism(lam.table, copy, *res.witness));
  }
  auto const c4 = make_monogenic({1, 4});
  auto const k = isomorphic(c4, corpus::klein());
  CHECK_FALSE(k.witness);

  auto const sq = subtable(make_monogenic({3, 3}), power_ideal(make_monogenic({3, 3}), 2));
  auto const w = isomorphic(sq.table, make_monogenic({2, 3}));
  REQUIRE(w.witness);
  CHECK(is_isomorphism(sq.table, make_monogenic({2, 3}), *w.witness));
}

TEST_CASE("search budget is enforced") {
  // Refinement alone settles most tables; the rectangular band needs a few branches.
  auto const band = corpus::rectangular_band();
  auto const full = automorphisms(band);
  REQUIRE(full.nodes > 3);
  CHECK_THROWS_AS(automorphisms(band, 3), ResourceError);
  CHECK(automorphisms(band, full.nodes).group.order() == 12);
}

TEST_CASE("twin classes are exactly the transposition-invariant classes") {
  auto const lam = build_lambda(make_monogenic({2, 3}));
  Structure const s(lam.table);
  for (auto const& cls : twin_classes(s)) {
    for (std::size_t i = 1; i < cls.size(); ++i) {
      CHECK(preserves(lam.table, Perm::transposition(lam.size(), cls[0], cls[i])));
    }
  }
}
