#pragma once

// Good shifts, auto-shifts, the kernel subgroup they induce, and the
// restriction of automorphisms to the image of a shift.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "superext/automorphisms.hpp"
#include "superext/errors.hpp"
#include "superext/perm_group.hpp"
#include "superext/semigroup.hpp"

namespace superext {

namespace detail {

inline void check_map(std::span<Elem const> s, OpTable const& t) {
  if (s.size() != t.size()) throw InvalidInput("shift must be total on the table");
  for (Elem v : s) {
    if (v >= t.size()) throw InvalidInput("shift image outside the table");
  }
}

inline ElemSet image_of(std::span<Elem const> s) {
  ElemSet img(s.begin(), s.end());
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

inline bool same_row_and_column(OpTable const& t, Elem x, Elem y) {
  for (Elem z = 0; z < t.size(); ++z) {
    if (t(x, z) != t(y, z) || t(z, x) != t(z, y)) return false;
  }
  return true;
}

}  // namespace detail

/// fibers[x] = s^{-1}(x) for every x in the image, keyed by x.
inline std::map<Elem, ElemSet> fibers_of(std::span<Elem const> s) {
  std::map<Elem, ElemSet> f;
  for (Elem x = 0; x < s.size(); ++x) f[s[x]].push_back(x);
  return f;
}

/// X·X ⊆ s(X), and equal images force equal rows and columns.
inline bool is_good_shift(std::span<Elem const> s, OpTable const& t) {
  detail::check_map(s, t);
  ElemSet const xx = product_set(t, all_elements(t), all_elements(t));
  ElemSet const img = detail::image_of(s);
  if (!std::includes(img.begin(), img.end(), xx.begin(), xx.end())) return false;
  for (auto const& [x, fiber] : fibers_of(s)) {
    for (std::size_t i = 1; i < fiber.size(); ++i) {
      if (!detail::same_row_and_column(t, fiber[0], fiber[i])) return false;
    }
  }
  return true;
}

/// A good shift commuting with every generator of `aut`.
inline bool is_auto_shift(std::span<Elem const> s, OpTable const& t,
                          PermGroup const& aut) {
  if (!is_good_shift(s, t)) throw InvalidInput("is_auto_shift: map is not a good shift");
  for (auto const& g : aut.generators()) {
    for (Elem x = 0; x < t.size(); ++x) {
      if (s[g(x)] != g(s[x])) return false;
    }
  }
  return true;
}

inline bool is_retraction(std::span<Elem const> s, OpTable const& t) {
  detail::check_map(s, t);
  for (Elem x = 0; x < t.size(); ++x) {
    if (s[s[x]] != s[x]) return false;
  }
  return is_homomorphism(t, t, s);
}

inline bool is_table_automorphism(OpTable const& t, Perm const& p) {
  return is_homomorphism(t, t, p.images());
}

/// Bijections fixing X·X pointwise and preserving every fiber, generated by
/// transpositions inside each fiber minus X·X. Each generator is checked to
/// be an automorphism.
inline PermGroup kernel_subgroup(std::span<Elem const> s, OpTable const& t) {
  if (!is_good_shift(s, t)) throw InvalidInput("kernel_subgroup: map is not a good shift");
  ElemSet const xx = product_set(t, all_elements(t), all_elements(t));
  std::vector<char> in_xx(t.size(), 0);
  for (Elem x : xx) in_xx[x] = 1;
  std::vector<Perm> gens;
  for (auto const& [x, fiber] : fibers_of(s)) {
    std::vector<Elem> free;
    for (Elem y : fiber) {
      if (!in_xx[y]) free.push_back(y);
    }
    for (std::size_t i = 1; i < free.size(); ++i) {
      Perm p = Perm::transposition(t.size(), free[i - 1], free[i]);
      if (!is_table_automorphism(t, p)) {
        throw Error("kernel_subgroup: fiber transposition is not an automorphism");
      }
      gens.push_back(std::move(p));
    }
  }
  return PermGroup(t.size(), std::move(gens));
}

/// ∏ |fiber \ excluded|! over the fibers of s.
inline BigInt fiber_factorial_product(std::span<Elem const> s, ElemSet const& excluded) {
  BigInt prod = 1;
  for (auto const& [x, fiber] : fibers_of(s)) {
    std::size_t k = 0;
    for (Elem y : fiber) k += !std::binary_search(excluded.begin(), excluded.end(), y);
    prod *= factorial(k);
  }
  return prod;
}

struct RestrictionReport {
  ElemSet sub;
  bool retraction = false;
  BigInt aut_order = 1;
  GroupShape kernel;
  BigInt kernel_formula = 1;  // ∏ |s^{-1}(x) \ sub|!
  GroupShape range;
  PermGroup range_group{0};
  PermGroup G{0};  // fiber trace + outside fiber size
  PermGroup H{0};  // G plus fiber counts per Aut(whole)-orbit
  PermGroup F{0};  // total fiber size only
  bool range_trivial = false;
  bool order_identity = false;  // |Aut| = |kernel| * |range|
  bool range_in_H = false;
  bool H_in_G = false;
  bool equal_if_retraction = true;  // R(Aut) = H = G, checked when retraction
};

namespace detail {

inline std::vector<std::uint64_t> counts_color(std::vector<std::vector<std::size_t>> const& v) {
  std::vector<std::uint64_t> c;
  for (auto const& row : v) {
    std::uint64_t h = 0x51ed;
    for (auto k : row) h = mix(h, k);
    c.push_back(h);
  }
  return c;
}

}  // namespace detail

/// Restriction of Aut(whole) to the image `sub` of an auto-shift `s`.
/// `aut`, when given, must be Aut(whole).
inline RestrictionReport restriction_report(
    OpTable const& whole, ElemSet sub, std::span<Elem const> s,
    std::optional<AutomorphismResult> aut = std::nullopt,
    unsigned long long budget = kDefaultBudget) {
  std::sort(sub.begin(), sub.end());
  if (!is_good_shift(s, whole)) throw InvalidInput("restriction_report: not a good shift");
  if (detail::image_of(s) != sub) {
    throw InvalidInput("restriction_report: shift image differs from sub");
  }
  SubTable const st = subtable(whole, sub);
  if (!aut) aut = automorphisms(whole, budget);
  if (!is_auto_shift(s, whole, aut->group)) {
    throw InvalidInput("restriction_report: shift is not an auto-shift");
  }

  RestrictionReport r;
  r.sub = sub;
  r.retraction = is_retraction(s, whole);
  r.aut_order = aut->group.order();

  PermGroup const chain(whole.size(), aut->group.generators(), sub);
  r.kernel = group_shape(chain.stabilizer_at(sub.size()));
  r.kernel_formula = fiber_factorial_product(s, sub);

  std::vector<Point> sub_points(sub.begin(), sub.end());
  r.range_group = restrict_to(aut->group, sub_points);
  r.range = group_shape(r.range_group);
  r.range_trivial = r.range.order == 1;
  r.order_identity = r.aut_order == r.kernel.order * r.range.order;

  // Per-element data over sub, on local indices.
  std::size_t const m = sub.size();
  auto const fibers = fibers_of(s);
  auto const orbits = aut->group.orbits();
  std::vector<std::size_t> orbit_of(whole.size());
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    for (Point p : orbits[i]) orbit_of[p] = i;
  }
  std::vector<Elem> restricted(m);
  std::vector<std::vector<std::size_t>> outside(m, std::vector<std::size_t>(1, 0));
  std::vector<std::vector<std::size_t>> per_orbit(m, std::vector<std::size_t>(orbits.size(), 0));
  std::vector<std::vector<std::size_t>> total(m, std::vector<std::size_t>(1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    restricted[i] = st.from_parent[s[sub[i]]];
    auto it = fibers.find(sub[i]);
    if (it == fibers.end()) continue;
    for (Elem y : it->second) {
      ++total[i][0];
      if (!st.contains_parent(y)) ++outside[i][0];
      ++per_orbit[i][orbit_of[y]];
    }
  }

  Structure g_struct(st.table);
  g_struct.unary_maps.push_back(restricted);
  g_struct.colors = detail::counts_color(outside);
  r.G = automorphisms(g_struct, budget).group;

  Structure h_struct = g_struct;
  h_struct.colors = detail::counts_color(per_orbit);
  r.H = automorphisms(h_struct, budget).group;

  Structure f_struct(st.table);
  f_struct.colors = detail::counts_color(total);
  r.F = automorphisms(f_struct, budget).group;

  r.range_in_H = r.range_group.is_subgroup_of(r.H);
  r.H_in_G = r.H.is_subgroup_of(r.G);
  if (r.retraction) {
    r.equal_if_retraction = r.range_in_H && r.H_in_G &&
                            r.range.order == r.H.order() && r.H.order() == r.G.order();
  }
  return r;
}

}  // namespace superext
