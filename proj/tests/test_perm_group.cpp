#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "superext/perm_group.hpp"

using namespace superext;

namespace {

Perm cycle(std::size_t degree, std::vector<Point> const& c) {
  std::vector<Point> img(degree);
  for (Point i = 0; i < degree; ++i) img[i] = i;
  for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  return Perm(img);
}

// Elements reachable as words of length <= depth in the generators.
std::set<std::vector<Point>> words(std::vector<Perm> const& gens, std::size_t degree,
                                   std::size_t depth) {
  std::set<std::vector<Point>> seen{Perm(degree).images()};
  std::vector<Perm> frontier{Perm(degree)};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Perm> next;
    for (auto const& e : frontier) {
      for (auto const& g : gens) {
        Perm h = e * g;
        if (seen.insert(h.images()).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("permutation basics") {
  Perm const a = cycle(4, {0, 1, 2});
  Perm const b = Perm::transposition(4, 0, 3);
  CHECK((a * b)(0) == b(a(0)));
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.element_order() == 3);
  CHECK((a * b).element_order() == 4);
  CHECK(a.first_moved() == Point{0});
  CHECK_FALSE(Perm(3).first_moved());
  CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0, 1}), InvalidInput);
}

TEST_CASE("Schreier-Sims orders agree with closure") {
  struct Case {
    std::size_t degree;
    std::vector<Perm> gens;
  };
  std::vector<Case> cases{
      {5, {cycle(5, {0, 1, 2, 3, 4}), Perm::transposition(5, 0, 1)}},          // S5
      {5, {cycle(5, {0, 1, 2}), cycle(5, {2, 3, 4})}},                         // A5
      {6, {cycle(6, {0, 1, 2, 3, 4, 5}), cycle(6, {1, 5}) * cycle(6, {2, 4})}},  // D6
      {8, {cycle(8, {0, 1, 2, 3}), cycle(8, {4, 5, 6, 7}), cycle(8, {0, 4})}},
      {7, {cycle(7, {0, 1}), cycle(7, {2, 3, 4}), cycle(7, {5, 6})}},
      {12, {cycle(12, {0, 1, 2, 3}), cycle(12, {4, 5, 6}), cycle(12, {8, 9, 10, 11})}},
      {4, {}},
  };
  for (auto const& c : cases) {
    PermGroup const g(c.degree, c.gens);
    auto const all = oracle::closure(c.gens, c.degree);
    CHECK(g.order() == all.size());
    for (auto const& e : all) CHECK(g.contains(Perm(e)));
    for (auto const& e : g.elements()) CHECK(all.count(e.images()) == 1);
  }
}

TEST_CASE("membership agrees with word search up to depth 6 on degree 12") {
  std::vector<Perm> const gens{cycle(12, {0, 1, 2, 3, 4, 5}), cycle(12, {6, 7}) * cycle(12, {0, 6}),
                               cycle(12, {8, 9, 10})};
  PermGroup const g(12, gens);
  auto const near = words(gens, 12, 6);
  for (auto const& e : near) CHECK(g.contains(Perm(e)));
  // 11 is fixed by every generator.
  CHECK_FALSE(g.contains(Perm::transposition(12, 10, 11)));
  CHECK(g.contains(Perm(12)));
  for (auto const& s : gens) CHECK(g.contains(s));
}

TEST_CASE("random chain elements are members and orbits are correct") {
  std::vector<Perm> const gens{cycle(9, {0, 1, 2}), cycle(9, {3, 4}), cycle(9, {5, 6, 7})};
  PermGroup const g(9, gens);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) CHECK(g.contains(g.random_element(rng)));
  auto const orb = g.orbits();
  REQUIRE(orb.size() == 4);
  CHECK(orb[0] == std::vector<Point>{0, 1, 2});
  CHECK(orb[3] == std::vector<Point>{8});
  CHECK(PermGroup(4).orbits().size() == 4);
}

TEST_CASE("restriction and pointwise stabilizers") {
  // S3 on {0,1,2} times S2 on {3,4}.
  PermGroup const g(5, {cycle(5, {0, 1, 2}), Perm::transposition(5, 0, 1),
                        Perm::transposition(5, 3, 4)});
  CHECK(g.order() == 12);
  std::vector<Point> const left{0, 1, 2};
  CHECK(restrict_to(g, left).order() == 6);
  CHECK(pointwise_stabilizer(g, left).order() == 2);
  std::vector<Point> const bad{0, 3};
  CHECK_THROWS_AS(restrict_to(g, bad), InvalidInput);
  CHECK(pointwise_stabilizer(g, {}).order() == 12);
  CHECK(PermGroup(5, {Perm::transposition(5, 3, 4)}).is_subgroup_of(g));
  CHECK_FALSE(g.is_subgroup_of(PermGroup(5, {Perm::transposition(5, 3, 4)})));
}

TEST_CASE("group shapes") {
  auto const s3s4 = PermGroup(7, {cycle(7, {0, 1, 2}), Perm::transposition(7, 0, 1),
                                  cycle(7, {3, 4, 5, 6}), Perm::transposition(7, 3, 4)});
  auto const sh = group_shape(s3s4);
  CHECK(sh.order == 144);
  CHECK(sh.symmetric_product);
  CHECK(sh.symmetric_factors == std::vector<std::size_t>{3, 4});
  CHECK(sh.named_form == "S_3 x S_4");

  CHECK(group_shape(PermGroup(3)).named_form == "C_1");
  auto const klein = group_shape(PermGroup(4, {Perm::transposition(4, 0, 1),
                                               Perm::transposition(4, 2, 3)}));
  CHECK(klein.small_name == "C_2^2");
  CHECK(klein.symmetric_factors == std::vector<std::size_t>{2, 2});
  CHECK(group_shape(PermGroup(4, {cycle(4, {0, 1, 2, 3})})).small_name == "C_4");
  auto const a5 = group_shape(PermGroup(5, {cycle(5, {0, 1, 2}), cycle(5, {2, 3, 4})}));
  CHECK(a5.order == 60);
  CHECK_FALSE(a5.symmetric_product);
  // S_4 acting diagonally on two copies of four points.
  auto const diag = group_shape(PermGroup(8, {cycle(8, {0, 1, 2, 3}) * cycle(8, {4, 5, 6, 7}),
                                              cycle(8, {0, 1}) * cycle(8, {4, 5})}));
  CHECK(diag.order == 24);
  CHECK(diag.symmetric_factors == std::vector<std::size_t>{4});
  CHECK(diag.named_form == "S_4");
  CHECK(render_symmetric_product({8, 3, 3, 19, 8, 3, 17, 8}) == "S_3^3 x S_8^3 x S_17 x S_19");
  CHECK(factorial(20) == BigInt("2432902008176640000"));
}

TEST_CASE("folded transposition classes agree with the plain chain") {
  // S_3 wr C_2 on two blocks of three; the block swap permutes the classes.
  std::vector<Perm> const gens{Perm::transposition(6, 0, 1), Perm::transposition(6, 1, 2),
                               Perm::transposition(6, 3, 4), Perm::transposition(6, 4, 5),
                               cycle(6, {0, 3}) * cycle(6, {1, 4}) * cycle(6, {2, 5})};
  PermGroup const folded(6, gens);
  PermGroup const plain(6, gens, {0});
  auto const all = oracle::closure(gens, 6);
  CHECK(folded.order() == 72);
  CHECK(plain.order() == 72);
  CHECK(all.size() == 72);
  std::vector<Point> img{0, 1, 2, 3, 4, 5};
  do {
    Perm const p(img);
    CHECK(folded.contains(p) == (all.count(img) == 1));
    CHECK(plain.contains(p) == folded.contains(p));
  } while (std::next_permutation(img.begin(), img.end()));
  auto const elems = folded.elements();
  CHECK(elems.size() == 72);
  for (auto const& e : elems) CHECK(all.count(e.images()) == 1);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) CHECK(all.count(folded.random_element(rng).images()) == 1);
  CHECK_THROWS_AS(folded.stabilizer_at(1), InvalidInput);

  // (0 1) with (1 2 3) does not preserve {0,1}; the plain chain is used.
  PermGroup const s4(4, {Perm::transposition(4, 0, 1), cycle(4, {1, 2, 3})});
  CHECK(s4.order() == 24);
  CHECK(s4.contains(Perm::transposition(4, 2, 3)));
}
