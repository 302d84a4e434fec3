#pragma once

// Permutation groups with a stabilizer chain (deterministic Schreier-Sims).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "superext/errors.hpp"

namespace superext {

using BigInt = boost::multiprecision::cpp_int;
using Point = std::uint32_t;

inline BigInt factorial(std::size_t k) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

/// A permutation of {0..degree-1} stored as its image array.
/// Products read left to right: (a * b)(x) = b(a(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), Point{0});
  }
  explicit Perm(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (Point p : img_) {
      if (p >= img_.size() || seen[p]) {
        throw InvalidInput("permutation images must form a bijection");
      }
      seen[p] = 1;
    }
  }

  static Perm transposition(std::size_t degree, Point a, Point b) {
    Perm p(degree);
    std::swap(p.img_[a], p.img_[b]);
    return p;
  }

  std::size_t degree() const { return img_.size(); }
  Point operator()(Point x) const { return img_[x]; }
  std::vector<Point> const& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != i) return false;
    }
    return true;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
    return r;
  }

  friend Perm operator*(Perm const& a, Perm const& b) {
    Perm r;
    r.img_.resize(a.img_.size());
    for (std::size_t i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  std::optional<Point> first_moved() const {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != i) return static_cast<Point>(i);
    }
    return std::nullopt;
  }

  std::size_t element_order() const {
    std::vector<char> seen(img_.size(), 0);
    std::size_t ord = 1;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (Point p = static_cast<Point>(i); !seen[p]; p = img_[p]) {
        seen[p] = 1;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  friend bool operator==(Perm const&, Perm const&) = default;
  friend auto operator<=>(Perm const&, Perm const&) = default;

 private:
  std::vector<Point> img_;
};

/// A permutation group from generators, with a base and strong generating
/// set computed on construction. Base points supplied in `base_prefix` come
/// first, in the given order, even when their basic orbits are trivial.
///
/// Without a base prefix, transposition generators whose classes every other
/// generator permutes blockwise are folded into T = ∏ Sym(class), which is then
/// normal. The chain is built for the induced action on classes only, each
/// element carrying a lift to the full degree. Aut groups with large twin
/// classes stay small this way.
class PermGroup {
 public:
  // Stored chain points (transversals and inverses) before giving up.
  static constexpr std::size_t kMaxChainPoints = std::size_t{1} << 27;

  explicit PermGroup(std::size_t degree) : degree_(degree), quotient_degree_(degree) {}

  PermGroup(std::size_t degree, std::vector<Perm> generators,
            std::vector<Point> base_prefix = {})
      : degree_(degree), quotient_degree_(degree) {
    for (auto& g : generators) {
      if (g.degree() != degree_) throw InvalidInput("generator degree mismatch");
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
    std::vector<Elt> chain_gens;
    if (base_prefix.empty() && fold_transpositions()) {
      for (auto const& g : gens_) {
        Elt e{*induced(g), g};
        if (!e.q.is_identity()) chain_gens.push_back(std::move(e));
      }
    } else {
      for (auto const& g : gens_) chain_gens.push_back({g, Perm()});
    }
    std::vector<char> used(quotient_degree_, 0);
    for (Point b : base_prefix) {
      if (b >= degree_) throw InvalidInput("base point out of range");
      if (used[b]) throw InvalidInput("repeated base point");
      used[b] = 1;
      add_level(b);
    }
    schreier_sims(chain_gens);
  }

  std::size_t degree() const { return degree_; }
  std::vector<Perm> const& generators() const { return gens_; }

  BigInt order() const {
    BigInt o = folded_order_;
    for (auto const& l : levels_) o *= l.orbit.size();
    return o;
  }

  bool is_trivial() const { return gens_.empty(); }

  bool contains(Perm const& g) const {
    if (g.degree() != degree_) return false;
    Elt e;
    if (folded()) {
      auto q = induced(g);
      if (!q) return false;
      e.q = std::move(*q);
    } else {
      e.q = g;
    }
    auto [residue, level] = strip(std::move(e), 0);
    return level == levels_.size() && residue.q.is_identity();
  }

  // Subgroup of the elements fixing the first `level` points of the base
  // prefix pointwise. Needs a group built with a base prefix.
  PermGroup stabilizer_at(std::size_t level) const {
    if (folded()) throw InvalidInput("stabilizer_at needs a group built with a base prefix");
    if (level >= levels_.size()) return PermGroup(degree_);
    std::vector<Point> rest;
    std::vector<Perm> gens;
    for (std::size_t i = level; i < levels_.size(); ++i) rest.push_back(levels_[i].base);
    for (auto const& e : levels_[level].gens) gens.push_back(e.q);
    return PermGroup(degree_, std::move(gens), rest);
  }

  // Uniform random element: one transversal element per level.
  template <typename Rng>
  Perm random_element(Rng& rng) const {
    Perm g(degree_);
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      std::uniform_int_distribution<std::size_t> pick(0, it->orbit.size() - 1);
      Point const p = it->orbit[pick(rng)];
      g = g * it->transversal[it->slot[p]].full();
    }
    if (folded()) {
      std::vector<Point> img(degree_);
      std::iota(img.begin(), img.end(), Point{0});
      for (auto const& c : classes_) {
        auto shuffled = c;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = shuffled[i];
      }
      g = Perm(std::move(img)) * g;
    }
    return g;
  }

  // All elements; for small groups only.
  std::vector<Perm> elements(std::size_t limit = 100000) const {
    if (order() > limit) throw CapacityError("group too large to enumerate");
    std::vector<Perm> out{Perm(degree_)};
    for (auto const& c : classes_) {
      std::vector<Perm> next;
      auto perm = c;
      do {
        std::vector<Point> img(degree_);
        std::iota(img.begin(), img.end(), Point{0});
        for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = perm[i];
        Perm const t(std::move(img));
        for (auto const& e : out) next.push_back(e * t);
      } while (std::next_permutation(perm.begin(), perm.end()));
      out = std::move(next);
    }
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      std::vector<Perm> next;
      for (auto const& g : out) {
        for (Point p : it->orbit) next.push_back(g * it->transversal[it->slot[p]].full());
      }
      out = std::move(next);
    }
    return out;
  }

  // Orbit partition of the natural action, each orbit sorted, ordered by
  // smallest member.
  std::vector<std::vector<Point>> orbits() const {
    std::vector<Point> parent(degree_);
    std::iota(parent.begin(), parent.end(), Point{0});
    auto find = [&](Point x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto const& g : gens_) {
      for (Point x = 0; x < degree_; ++x) {
        Point a = find(x), b = find(g(x));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::map<Point, std::vector<Point>> by_root;
    for (Point x = 0; x < degree_; ++x) by_root[find(x)].push_back(x);
    std::vector<std::vector<Point>> out;
    for (auto& [root, orb] : by_root) out.push_back(std::move(orb));
    return out;
  }

  bool is_subgroup_of(PermGroup const& other) const {
    return std::all_of(gens_.begin(), gens_.end(),
                       [&](Perm const& g) { return other.contains(g); });
  }

 private:
  // A chain element: its action on the chain's points, and in folded mode a
  // lift to the full degree.
  struct Elt {
    Perm q;
    Perm lift;

    Perm const& full() const { return lift.degree() ? lift : q; }
    friend Elt operator*(Elt const& a, Elt const& b) {
      return {a.q * b.q, a.lift.degree() ? a.lift * b.lift : Perm()};
    }
    Elt inverse() const { return {q.inverse(), lift.degree() ? lift.inverse() : Perm()}; }
  };

  struct Level {
    Point base;
    std::vector<Elt> gens;          // strong generators fixing earlier base points
    std::vector<Point> orbit;
    std::vector<std::size_t> slot;  // point -> index into transversal, or npos
    std::vector<Elt> transversal;   // u_p with u_p(base) = p
    std::vector<Elt> inverse;
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool folded() const { return !block_.empty(); }

  // Classes of the transposition generators, kept when every generator
  // permutes them blockwise.
  bool fold_transpositions() {
    std::vector<Point> parent(degree_);
    std::iota(parent.begin(), parent.end(), Point{0});
    auto find = [&](Point x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool any = false;
    for (auto const& g : gens_) {
      auto const moved = transposed_pair(g);
      if (!moved) continue;
      Point a = find(moved->first), b = find(moved->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
      any = true;
    }
    if (!any) return false;
    std::map<Point, std::vector<Point>> by_root;
    for (Point x = 0; x < degree_; ++x) by_root[find(x)].push_back(x);
    std::vector<std::vector<Point>> all;
    for (auto& [root, c] : by_root) all.push_back(std::move(c));
    block_.assign(degree_, 0);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (Point x : all[i]) block_[x] = static_cast<Point>(i);
    quotient_degree_ = all.size();
    for (auto const& g : gens_) {
      if (!induced(g)) {
        block_.clear();
        quotient_degree_ = degree_;
        return false;
      }
    }
    for (auto& c : all) {
      if (c.size() < 2) continue;
      folded_order_ *= factorial(c.size());
      classes_.push_back(std::move(c));
    }
    return true;
  }

  static std::optional<std::pair<Point, Point>> transposed_pair(Perm const& g) {
    std::vector<Point> moved;
    for (Point x = 0; x < g.degree(); ++x) {
      if (g(x) != x) {
        moved.push_back(x);
        if (moved.size() > 2) return std::nullopt;
      }
    }
    if (moved.size() != 2) return std::nullopt;
    return std::make_pair(moved[0], moved[1]);
  }

  // The permutation of blocks induced by g, if g maps blocks onto blocks.
  std::optional<Perm> induced(Perm const& g) const {
    std::vector<Point> img(quotient_degree_, static_cast<Point>(-1));
    std::vector<std::size_t> size(quotient_degree_, 0), image_size(quotient_degree_, 0);
    for (Point x = 0; x < degree_; ++x) {
      Point const b = block_[x], c = block_[g(x)];
      if (img[b] == static_cast<Point>(-1)) img[b] = c;
      if (img[b] != c) return std::nullopt;
      ++size[b];
      ++image_size[c];
    }
    for (std::size_t b = 0; b < quotient_degree_; ++b) {
      if (size[b] != image_size[img[b]]) return std::nullopt;
    }
    return Perm(std::move(img));
  }

  Elt identity() const {
    return {Perm(quotient_degree_), folded() ? Perm(degree_) : Perm()};
  }

  void add_level(Point b) {
    Level l;
    l.base = b;
    levels_.push_back(std::move(l));
  }

  void rebuild_orbit(Level& l) {
    stored_ -= 2 * l.transversal.size() * (quotient_degree_ + (folded() ? degree_ : 0));
    l.orbit.assign(1, l.base);
    l.slot.assign(quotient_degree_, npos);
    l.transversal.assign(1, identity());
    l.inverse.assign(1, identity());
    l.slot[l.base] = 0;
    for (std::size_t i = 0; i < l.orbit.size(); ++i) {
      Point const p = l.orbit[i];
      for (auto const& s : l.gens) {
        Point const q = s.q(p);
        if (l.slot[q] != npos) continue;
        Elt u = l.transversal[l.slot[p]] * s;
        l.slot[q] = l.transversal.size();
        l.inverse.push_back(u.inverse());
        l.transversal.push_back(std::move(u));
        l.orbit.push_back(q);
      }
    }
    stored_ += 2 * l.transversal.size() * (quotient_degree_ + (folded() ? degree_ : 0));
    if (stored_ > kMaxChainPoints) {
      throw CapacityError("stabilizer chain exceeds " + std::to_string(kMaxChainPoints) +
                          " stored points (degree " + std::to_string(degree_) + ")");
    }
  }

  std::pair<Elt, std::size_t> strip(Elt g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      if (g.q.is_identity()) return {std::move(g), levels_.size()};
      Level const& l = levels_[i];
      Point const q = g.q(l.base);
      if (l.slot[q] == npos) return {std::move(g), i};
      g = g * l.inverse[l.slot[q]];
    }
    return {std::move(g), levels_.size()};
  }

  static bool fixes_all(Perm const& g, std::span<Point const> pts) {
    return std::all_of(pts.begin(), pts.end(), [&](Point p) { return g(p) == p; });
  }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (auto const& l : levels_) b.push_back(l.base);
    return b;
  }

  void schreier_sims(std::vector<Elt> const& gens) {
    for (auto const& g : gens) {
      auto const b = base();
      if (fixes_all(g.q, b)) add_level(*g.q.first_moved());
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      auto const b = base();
      std::span<Point const> prefix(b.data(), i);
      for (auto const& g : gens) {
        if (fixes_all(g.q, prefix)) levels_[i].gens.push_back(g);
      }
      rebuild_orbit(levels_[i]);
    }
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool restarted = false;
      Level& l = levels_[static_cast<std::size_t>(i)];
      for (std::size_t oi = 0; !restarted && oi < l.orbit.size(); ++oi) {
        Point const p = l.orbit[oi];
        for (std::size_t si = 0; si < l.gens.size(); ++si) {
          Elt const& s = l.gens[si];
          Elt h = l.transversal[l.slot[p]] * s * l.inverse[l.slot[s.q(p)]];
          if (h.q.is_identity()) continue;
          auto [y, j] = strip(std::move(h), static_cast<std::size_t>(i) + 1);
          if (j < levels_.size() || !y.q.is_identity()) {
            if (j == levels_.size()) add_level(*y.q.first_moved());
            for (std::size_t lv = static_cast<std::size_t>(i) + 1; lv <= j; ++lv) {
              levels_[lv].gens.push_back(y);
              rebuild_orbit(levels_[lv]);
            }
            i = static_cast<std::ptrdiff_t>(j);
            restarted = true;
            break;
          }
        }
      }
      if (!restarted) --i;
    }
  }

  std::size_t degree_;
  std::size_t quotient_degree_;
  std::vector<Perm> gens_;
  std::vector<Point> block_;                  // point -> class, folded mode only
  std::vector<std::vector<Point>> classes_;   // folded classes of size >= 2
  BigInt folded_order_ = 1;
  std::size_t stored_ = 0;
  std::vector<Level> levels_;
};

/// Orbit partition of the natural action.
inline std::vector<std::vector<Point>> orbits(PermGroup const& g) {
  return g.orbits();
}

/// Group restricted to an invariant subset, on local indices 0..|subset|-1.
inline PermGroup restrict_to(PermGroup const& g, std::span<Point const> subset) {
  std::vector<Point> local(g.degree(), static_cast<Point>(-1));
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<Point>(i);
  std::vector<Perm> gens;
  for (auto const& s : g.generators()) {
    std::vector<Point> img(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      Point const q = local[s(subset[i])];
      if (q == static_cast<Point>(-1)) {
        throw InvalidInput("restrict_to: subset is not invariant");
      }
      img[i] = q;
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup(subset.size(), std::move(gens));
}

/// Elements fixing every point of `points`.
inline PermGroup pointwise_stabilizer(PermGroup const& g,
                                      std::vector<Point> const& points) {
  PermGroup const chain(g.degree(), g.generators(), points);
  return chain.stabilizer_at(points.size());
}

// ---------------------------------------------------------------------------

/// Structural description of a permutation group.
struct GroupShape {
  BigInt order = 1;
  std::optional<std::string> named_form;
  // Set when the group is exactly all class-wise permutations (natural action).
  std::vector<std::vector<Point>> classes;
  bool symmetric_product = false;
  std::vector<std::size_t> symmetric_factors;  // degrees >= 2, ascending
  std::optional<std::string> small_name;       // order <= 8
};

namespace detail {

inline std::string render_symmetric_product(std::vector<std::size_t> const& degrees) {
  if (degrees.empty()) return "C_1";
  std::string out;
  for (std::size_t i = 0; i < degrees.size();) {
    std::size_t j = i;
    while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
    if (!out.empty()) out += " x ";
    out += "S_" + std::to_string(degrees[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::optional<std::string> small_group_name(PermGroup const& g) {
  if (g.order() > 8) return std::nullopt;
  auto const elems = g.elements();
  std::size_t const n = elems.size();
  bool abelian = true;
  for (auto const& a : g.generators()) {
    for (auto const& b : g.generators()) {
      if (a * b != b * a) abelian = false;
    }
  }
  std::size_t exponent = 1;
  std::size_t involutions = 0;
  for (auto const& e : elems) {
    std::size_t const o = e.element_order();
    exponent = std::lcm(exponent, o);
    if (o == 2) ++involutions;
  }
  auto cyclic = [](std::size_t k) { return "C_" + std::to_string(k); };
  switch (n) {
    case 1: return "C_1";
    case 2: case 3: case 5: case 7: return cyclic(n);
    case 4: return exponent == 4 ? "C_4" : "C_2^2";
    case 6: return abelian ? "C_6" : "S_3";
    case 8:
      if (abelian) {
        if (exponent == 8) return "C_8";
        if (exponent == 4) return "C_4 x C_2";
        return "C_2^3";
      }
      return involutions == 5 ? "D_4" : "Q_8";
    default: return std::nullopt;
  }
}

}  // namespace detail

/// Order always; a symmetric-product form when the group is exactly
/// the product of the symmetric groups on its orbits (or on `hint_classes`).
inline GroupShape group_shape(
    PermGroup const& g,
    std::optional<std::vector<std::vector<Point>>> hint_classes = std::nullopt) {
  GroupShape s;
  s.order = g.order();
  auto classes = hint_classes ? *hint_classes : g.orbits();
  BigInt prod = 1;
  for (auto const& c : classes) prod *= factorial(c.size());
  if (prod == s.order) {
    bool all_in = true;
    for (auto const& c : classes) {
      for (std::size_t i = 0; i < c.size() && all_in; ++i) {
        for (std::size_t j = i + 1; j < c.size() && all_in; ++j) {
          all_in = g.contains(Perm::transposition(g.degree(), c[i], c[j]));
        }
      }
    }
    if (all_in) {
      s.symmetric_product = true;
      for (auto const& c : classes) {
        if (c.size() >= 2) {
          s.symmetric_factors.push_back(c.size());
          s.classes.push_back(c);
        }
      }
      std::sort(s.symmetric_factors.begin(), s.symmetric_factors.end());
    }
  }
  if (!s.symmetric_product && s.order > 1) {
    // Faithful and full on one orbit: isomorphic to S_k, though not in its natural action.
    for (auto const& o : g.orbits()) {
      if (factorial(o.size()) != s.order) continue;
      if (restrict_to(g, o).order() != s.order) continue;
      s.symmetric_product = true;
      s.symmetric_factors = {o.size()};
      break;
    }
  }
  s.small_name = detail::small_group_name(g);
  if (s.small_name) {
    s.named_form = s.small_name;
  } else if (s.symmetric_product) {
    s.named_form = detail::render_symmetric_product(s.symmetric_factors);
  }
  return s;
}

inline std::string render_symmetric_product(std::vector<std::size_t> degrees) {
  std::sort(degrees.begin(), degrees.end());
  return detail::render_symmetric_product(degrees);
}

}  // namespace superext
