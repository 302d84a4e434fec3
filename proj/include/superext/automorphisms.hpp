#pragma once

// Automorphism groups and isomorphisms of finite semigroup tables.
//
// Search: hashed color refinement on the relation x*y = z, individualization
// along a first path, and a backtracking search for coset representatives.
// Pairs of elements whose transposition is an automorphism ("twins") are
// factored out: their classes generate a normal subgroup that is a product
// of symmetric groups, and the search only ever tries one element per class.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superext/errors.hpp"
#include "superext/perm_group.hpp"
#include "superext/semigroup.hpp"

namespace superext {

inline constexpr unsigned long long kDefaultBudget = 100'000'000ULL;

/// A table plus extra data automorphisms must respect: a coloring (kept)
/// and unary maps (commuted with).
struct Structure {
  OpTable const* table = nullptr;
  std::vector<std::uint64_t> colors;           // empty = uncolored
  std::vector<std::vector<Elem>> unary_maps;   // each of length size()

  explicit Structure(OpTable const& t) : table(&t) {}
  std::size_t size() const { return table->size(); }
  std::uint64_t color(Elem x) const { return colors.empty() ? 0 : colors[x]; }
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix(a ^ splitmix(b + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t pair_hash(std::uint64_t a, std::uint64_t b, std::uint64_t tag) {
  return splitmix(mix(a, b) + tag);
}

using Coloring = std::vector<std::uint64_t>;

inline std::size_t count_distinct(Coloring c) {
  std::sort(c.begin(), c.end());
  return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

// Sorted (color, multiplicity) list; equal for partitions related by an
// isomorphism.
inline std::vector<std::pair<std::uint64_t, std::size_t>> profile(Coloring const& c) {
  std::map<std::uint64_t, std::size_t> m;
  for (auto v : c) ++m[v];
  return {m.begin(), m.end()};
}

inline Coloring initial_coloring(Structure const& s) {
  OpTable const& t = *s.table;
  auto const depth = ideal_depths(t);
  Coloring c(t.size());
  for (Elem x = 0; x < t.size(); ++x) {
    std::uint64_t h = mix(s.color(x), t(x, x) == x ? 1 : 2);
    c[x] = mix(h, depth[x]);
  }
  return c;
}

// Colors are hash values of isomorphism-invariant data, so colorings of two
// structures can be compared directly.
inline Coloring refine(Structure const& s, Coloring c) {
  OpTable const& t = *s.table;
  std::size_t const n = t.size();
  std::size_t cells = count_distinct(c);
  std::vector<std::uint64_t> left(n), right(n), prod(n), unary(n);
  while (true) {
    std::fill(left.begin(), left.end(), 0);
    std::fill(right.begin(), right.end(), 0);
    std::fill(prod.begin(), prod.end(), 0);
    std::fill(unary.begin(), unary.end(), 0);
    for (Elem x = 0; x < n; ++x) {
      auto const row = t.row(x);
      std::uint64_t const cx = c[x];
      for (Elem y = 0; y < n; ++y) {
        Elem const z = row[y];
        left[x] += pair_hash(c[y], c[z], 1);
        right[y] += pair_hash(cx, c[z], 2);
        prod[z] += pair_hash(cx, c[y], 3);
      }
    }
    for (std::size_t k = 0; k < s.unary_maps.size(); ++k) {
      auto const& u = s.unary_maps[k];
      for (Elem x = 0; x < n; ++x) {
        unary[x] += pair_hash(c[u[x]], k, 4);
        unary[u[x]] += pair_hash(c[x], k, 5);
      }
    }
    Coloring next(n);
    for (Elem x = 0; x < n; ++x) {
      std::uint64_t h = mix(c[x], left[x]);
      h = mix(h, right[x]);
      h = mix(h, prod[x]);
      h = mix(h, c[t(x, x)]);
      next[x] = mix(h, unary[x]);
    }
    std::size_t const next_cells = count_distinct(next);
    c = std::move(next);
    if (next_cells == cells) return c;
    cells = next_cells;
  }
}

inline Coloring individualize(Coloring c, Elem x, std::size_t level) {
  c[x] = mix(c[x], 0x1d1d1d1dULL + level);
  return c;
}

inline bool is_automorphism_map(Structure const& a, Structure const& b,
                                std::vector<Elem> const& phi) {
  OpTable const& ta = *a.table;
  OpTable const& tb = *b.table;
  std::size_t const n = ta.size();
  if (tb.size() != n || phi.size() != n) return false;
  if (a.unary_maps.size() != b.unary_maps.size()) return false;
  for (Elem x = 0; x < n; ++x) {
    if (a.color(x) != b.color(phi[x])) return false;
  }
  for (std::size_t k = 0; k < a.unary_maps.size(); ++k) {
    for (Elem x = 0; x < n; ++x) {
      if (phi[a.unary_maps[k][x]] != b.unary_maps[k][phi[x]]) return false;
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      if (phi[ta(x, y)] != tb(phi[x], phi[y])) return false;
    }
  }
  return true;
}

// Whether the transposition (p q) respects colors, unary maps and every table
// entry with a factor in {p, q}; O(n).
inline bool transposition_locally_ok(Structure const& s, Elem p, Elem q) {
  OpTable const& t = *s.table;
  std::size_t const n = t.size();
  if (s.color(p) != s.color(q)) return false;
  auto tau = [&](Elem x) { return x == p ? q : x == q ? p : x; };
  for (auto const& u : s.unary_maps) {
    if (u[p] != tau(u[q]) || u[q] != tau(u[p])) return false;
    for (Elem x = 0; x < n; ++x) {
      if (x != p && x != q && u[x] != tau(u[x])) return false;
    }
  }
  // Entries with both factors in {p, q}.
  for (Elem x : {p, q}) {
    for (Elem y : {p, q}) {
      if (tau(t(x, y)) != t(tau(x), tau(y))) return false;
    }
  }
  // Entries with exactly one factor in {p, q}.
  for (Elem y = 0; y < n; ++y) {
    if (y == p || y == q) continue;
    if (tau(t(p, y)) != t(q, y)) return false;
    if (tau(t(y, p)) != t(y, q)) return false;
  }
  return true;
}

// Entries with no factor in {p, q} must avoid p and q. occ[z] counts all
// occurrences of z in the table.
inline bool outside_avoids(OpTable const& t, std::vector<std::size_t> const& occ,
                           Elem p, Elem q) {
  std::size_t const n = t.size();
  for (Elem z : {p, q}) {
    std::size_t inside = 0;
    for (Elem y = 0; y < n; ++y) {
      inside += (t(p, y) == z) + (t(q, y) == z);
      if (y != p && y != q) inside += (t(y, p) == z) + (t(y, q) == z);
    }
    if (occ[z] != inside) return false;
  }
  return true;
}

}  // namespace detail

/// Partition of the elements into classes whose every transposition is an
/// automorphism. Classes are sorted, ordered by smallest member.
inline std::vector<std::vector<Elem>> twin_classes(Structure const& s,
                                                   detail::Coloring const& refined) {
  OpTable const& t = *s.table;
  std::size_t const n = t.size();
  std::vector<std::size_t> occ(n, 0);
  for (Elem v : t.data()) ++occ[v];
  std::map<std::uint64_t, std::vector<Elem>> cells;
  for (Elem x = 0; x < n; ++x) cells[refined[x]].push_back(x);
  std::vector<std::vector<Elem>> classes;
  for (auto& [color, cell] : cells) {
    std::vector<std::vector<Elem>> local;
    for (Elem x : cell) {
      bool placed = false;
      for (auto& cls : local) {
        Elem const rep = cls.front();
        if (detail::transposition_locally_ok(s, rep, x) &&
            detail::outside_avoids(t, occ, rep, x)) {
          cls.push_back(x);
          placed = true;
          break;
        }
      }
      if (!placed) local.push_back({x});
    }
    for (auto& cls : local) classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

inline std::vector<std::vector<Elem>> twin_classes(Structure const& s) {
  return twin_classes(s, detail::refine(s, detail::initial_coloring(s)));
}

struct AutomorphismResult {
  PermGroup group{0};
  BigInt search_order = 1;   // product formula from the search tree
  std::vector<std::vector<Elem>> twins;
  std::vector<Elem> base;    // individualized points of the first path
  unsigned long long nodes = 0;
};

namespace detail {

class Searcher {
 public:
  Searcher(Structure const& a, unsigned long long budget)
      : a_(a), budget_(budget), n_(a.size()) {
    Coloring root = refine(a_, initial_coloring(a_));
    twins_ = twin_classes(a_, root);
    twin_of_.assign(n_, 0);
    for (std::size_t i = 0; i < twins_.size(); ++i) {
      for (Elem x : twins_[i]) twin_of_[x] = i;
    }
    build_first_path(std::move(root));
  }

  std::vector<std::vector<Elem>> const& twins() const { return twins_; }
  std::vector<Elem> const& base() const { return base_; }
  unsigned long long nodes() const { return nodes_; }

  std::optional<std::vector<Elem>> find_isomorphism(Structure const& b) {
    Coloring root = refine(b, initial_coloring(b));
    if (profile(root) != profiles_[0]) return std::nullopt;
    auto const b_twins = twin_classes(b, root);
    std::vector<std::size_t> b_twin_of(b.size(), 0);
    for (std::size_t i = 0; i < b_twins.size(); ++i) {
      for (Elem x : b_twins[i]) b_twin_of[x] = i;
    }
    return descend(b, b_twin_of, root, 0);
  }

  AutomorphismResult automorphisms() {
    std::vector<Perm> gens;
    std::vector<std::vector<Elem>> gen_images;
    BigInt order = 1;
    std::size_t const k = base_.size();
    for (auto const& [color, size] : profiles_[k]) order *= factorial(size);
    for (std::size_t lv = k; lv-- > 0;) {
      Elem const b = base_[lv];
      auto const cell = cell_of(paths_[lv], paths_[lv][b]);
      std::vector<char> fixed(n_, 0);
      for (std::size_t i = 0; i < lv; ++i) fixed[base_[i]] = 1;
      UnionFind orbit(n_);
      merge_orbits(orbit, gen_images, fixed);
      std::vector<char> failed(n_, 0);
      for (Elem c : cell) {
        if (orbit.find(c) == orbit.find(b) || failed[orbit.find(c)]) continue;
        Coloring q = refine(a_, individualize(paths_[lv], c, lv));
        tick();
        std::optional<std::vector<Elem>> phi;
        if (profile(q) == profiles_[lv + 1]) phi = descend(a_, twin_of_, q, lv + 1);
        if (phi) {
          gen_images.push_back(*phi);
          merge_orbits(orbit, gen_images, fixed);
        } else {
          failed[orbit.find(c)] = 1;
        }
      }
      std::size_t orbit_size = 0;
      for (Elem c : cell) orbit_size += orbit.find(c) == orbit.find(b);
      order *= orbit_size;
    }
    for (auto const& img : gen_images) gens.emplace_back(img);
    for (auto const& cls : twins_) {
      for (std::size_t i = 1; i < cls.size(); ++i) {
        gens.push_back(Perm::transposition(n_, cls[i - 1], cls[i]));
      }
    }
    AutomorphismResult r;
    r.group = PermGroup(n_, std::move(gens));
    r.search_order = order;
    r.twins = twins_;
    r.base = base_;
    r.nodes = nodes_;
    return r;
  }

 private:
  struct UnionFind {
    std::vector<Elem> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
      std::iota(parent.begin(), parent.end(), Elem{0});
    }
    Elem find(Elem x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    }
    void unite(Elem a, Elem b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  };

  void tick() {
    if (++nodes_ > budget_) {
      throw ResourceError("automorphism search exceeded its node budget of " +
                              std::to_string(budget_) + " nodes",
                          nodes_);
    }
  }

  void merge_orbits(UnionFind& uf, std::vector<std::vector<Elem>> const& gens,
                    std::vector<char> const& fixed) const {
    for (auto const& g : gens) {
      bool ok = true;
      for (Elem x = 0; x < n_ && ok; ++x) ok = !fixed[x] || g[x] == x;
      if (!ok) continue;
      for (Elem x = 0; x < n_; ++x) uf.unite(x, g[x]);
    }
    for (auto const& cls : twins_) {
      Elem first = static_cast<Elem>(-1);
      for (Elem x : cls) {
        if (fixed[x]) continue;
        if (first == static_cast<Elem>(-1)) first = x;
        else uf.unite(first, x);
      }
    }
  }

  static std::vector<Elem> cell_of(Coloring const& c, std::uint64_t color) {
    std::vector<Elem> out;
    for (Elem x = 0; x < c.size(); ++x) {
      if (c[x] == color) out.push_back(x);
    }
    return out;
  }

  bool twin_pure(std::vector<Elem> const& cell) const {
    return std::all_of(cell.begin(), cell.end(),
                       [&](Elem x) { return twin_of_[x] == twin_of_[cell.front()]; });
  }

  // Smallest element of the smallest cell that is not inside one twin class;
  // ties go to the smaller color.
  std::optional<Elem> choose_target(Coloring const& c) const {
    std::map<std::uint64_t, std::vector<Elem>> cells;
    for (Elem x = 0; x < n_; ++x) cells[c[x]].push_back(x);
    std::optional<std::pair<std::size_t, std::uint64_t>> best;
    Elem pick = 0;
    for (auto const& [color, cell] : cells) {
      if (cell.size() < 2 || twin_pure(cell)) continue;
      auto key = std::make_pair(cell.size(), color);
      if (!best || key < *best) {
        best = key;
        pick = cell.front();
      }
    }
    if (!best) return std::nullopt;
    return pick;
  }

  void build_first_path(Coloring root) {
    paths_.push_back(std::move(root));
    profiles_.push_back(profile(paths_.back()));
    while (auto x = choose_target(paths_.back())) {
      std::size_t const lv = base_.size();
      base_.push_back(*x);
      cell_colors_.push_back(paths_.back()[*x]);
      paths_.push_back(refine(a_, individualize(paths_.back(), *x, lv)));
      profiles_.push_back(profile(paths_.back()));
      tick();
    }
  }

  std::optional<std::vector<Elem>> leaf_map(Structure const& b, Coloring const& q) const {
    Coloring const& leaf = paths_.back();
    std::map<std::uint64_t, std::vector<Elem>> ca, cb;
    for (Elem x = 0; x < n_; ++x) {
      ca[leaf[x]].push_back(x);
      cb[q[x]].push_back(x);
    }
    std::vector<Elem> phi(n_);
    for (auto const& [color, cell] : ca) {
      auto const& other = cb[color];
      if (other.size() != cell.size()) return std::nullopt;
      for (std::size_t i = 0; i < cell.size(); ++i) phi[cell[i]] = other[i];
    }
    if (!is_automorphism_map(a_, b, phi)) return std::nullopt;
    return phi;
  }

  std::optional<std::vector<Elem>> descend(Structure const& b,
                                           std::vector<std::size_t> const& b_twin_of,
                                           Coloring const& p, std::size_t lv) {
    if (lv == base_.size()) return leaf_map(b, p);
    std::vector<char> tried_class(n_, 0);
    for (Elem d = 0; d < n_; ++d) {
      if (p[d] != cell_colors_[lv]) continue;
      if (tried_class[b_twin_of[d]]) continue;
      tried_class[b_twin_of[d]] = 1;
      Coloring q = refine(b, individualize(p, d, lv));
      tick();
      if (profile(q) != profiles_[lv + 1]) continue;
      if (auto phi = descend(b, b_twin_of, q, lv + 1)) return phi;
    }
    return std::nullopt;
  }

  Structure const& a_;
  unsigned long long budget_;
  unsigned long long nodes_ = 0;
  std::size_t n_;
  std::vector<std::vector<Elem>> twins_;
  std::vector<std::size_t> twin_of_;
  std::vector<Elem> base_;
  std::vector<std::uint64_t> cell_colors_;
  std::vector<Coloring> paths_;
  std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> profiles_;
};

}  // namespace detail

/// Full automorphism group of a structure. The order is computed twice,
/// from the search tree and from the stabilizer chain, and must agree.
inline AutomorphismResult automorphisms(Structure const& s,
                                        unsigned long long budget = kDefaultBudget) {
  detail::Searcher searcher(s, budget);
  AutomorphismResult r = searcher.automorphisms();
  if (r.group.order() != r.search_order) {
    throw Error("automorphism search and stabilizer chain disagree on the order");
  }
  return r;
}

inline AutomorphismResult automorphisms(OpTable const& t,
                                        unsigned long long budget = kDefaultBudget) {
  return automorphisms(Structure(t), budget);
}

struct IsomorphismResult {
  std::optional<std::vector<Elem>> witness;  // witness[x] in B for x in A
  std::string invariant;                     // why not, when there is no witness
  unsigned long long nodes = 0;
};

inline IsomorphismResult isomorphic(Structure const& a, Structure const& b,
                                    unsigned long long budget = kDefaultBudget) {
  IsomorphismResult r;
  OpTable const& ta = *a.table;
  OpTable const& tb = *b.table;
  if (ta.size() != tb.size()) {
    r.invariant = "size " + std::to_string(ta.size()) + " vs " + std::to_string(tb.size());
    return r;
  }
  if (auto ia = idempotents(ta).size(), ib = idempotents(tb).size(); ia != ib) {
    r.invariant = "idempotent count " + std::to_string(ia) + " vs " + std::to_string(ib);
    return r;
  }
  if (ideal_chain_profile(ta) != ideal_chain_profile(tb)) {
    auto render = [](std::vector<std::size_t> const& v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "]";
    };
    r.invariant = "ideal chain " + render(ideal_chain_profile(ta)) + " vs " +
                  render(ideal_chain_profile(tb));
    return r;
  }
  if (a.unary_maps.size() != b.unary_maps.size()) {
    r.invariant = "different number of unary maps";
    return r;
  }
  detail::Searcher searcher(a, budget);
  auto const pa = detail::profile(detail::refine(a, detail::initial_coloring(a)));
  auto const pb = detail::profile(detail::refine(b, detail::initial_coloring(b)));
  if (pa != pb) {
    r.invariant = "refinement signature: " + std::to_string(pa.size()) + " vs " +
                  std::to_string(pb.size()) + " cells or differing cell colors";
    r.nodes = searcher.nodes();
    return r;
  }
  r.witness = searcher.find_isomorphism(b);
  r.nodes = searcher.nodes();
  if (!r.witness) r.invariant = "exhaustive search found no isomorphism";
  return r;
}

inline IsomorphismResult isomorphic(OpTable const& a, OpTable const& b,
                                    unsigned long long budget = kDefaultBudget) {
  return isomorphic(Structure(a), Structure(b), budget);
}

}  // namespace superext
