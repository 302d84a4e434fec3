#pragma once

// Names for maximal linked families on up to five points.
//
// Points are numbered 1..n in names. Rendering map (ASCII, stable):
//
//   principal <a^i>                        base label, e.g. "a^3"
//   n=3  all 2-subsets                     "Tr"
//   n=4  2-subsets of X\{i}                "Tr_i"
//        <X\{i}, {i,x}>                    "Sq_i"
//   n=5  all sets of size >= 3             "O"
//        <{i,j}, 3-sets meeting {i,j} once>   "T_ij"       (i<j)
//        <{i,j},{i,k},{j,k}>               "Tr_ijk"     (i<j<k)
//        <X\{i}, {i,x}>                    "L^i"
//        <{n,i},{n,j},{n,k},{i,j,k}>       "D^n_ijk"    (i<j<k)
//        <{i,j},{i,k}, 3-sets A with A meeting {i,j,k} in {i} or {j,k}>
//                                          "L^i_jk"     (j<k)

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superext/errors.hpp"
#include "superext/setfam.hpp"

namespace superext {

enum class LabelKind {
  principal,
  triangle,      // Tr, Tr_i, Tr_ijk
  square,        // Sq_i
  theta,         // T_ij
  lambda,        // L^i
  diamond,       // D^n_ijk
  lambda_pair,   // L^i_jk
  circle,        // O
};

struct PaperLabel {
  LabelKind kind = LabelKind::principal;
  std::vector<unsigned> indices;  // 1-based; superscript first where present

  friend bool operator==(PaperLabel const&, PaperLabel const&) = default;
};

namespace detail {

inline SubsetCode code_of(std::vector<unsigned> const& one_based) {
  std::uint32_t b = 0;
  for (unsigned i : one_based) b |= std::uint32_t{1} << (i - 1);
  return SubsetCode(b);
}

inline LinkedFamily family_of(unsigned n, std::vector<std::vector<unsigned>> const& sets) {
  std::vector<SubsetCode> codes;
  for (auto const& s : sets) codes.push_back(code_of(s));
  return minimize(codes, GroundSet(n));
}

inline std::vector<unsigned> others(unsigned n, std::vector<unsigned> const& excluded) {
  std::vector<unsigned> out;
  for (unsigned i = 1; i <= n; ++i) {
    if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) out.push_back(i);
  }
  return out;
}

// Every named family on n points, in a fixed order.
inline std::vector<std::pair<PaperLabel, LinkedFamily>> label_catalog(unsigned n) {
  std::vector<std::pair<PaperLabel, LinkedFamily>> out;
  for (unsigned i = 1; i <= n; ++i) {
    out.push_back({{LabelKind::principal, {i}}, family_of(n, {{i}})});
  }
  if (n == 3) {
    out.push_back({{LabelKind::triangle, {}}, family_of(3, {{1, 2}, {1, 3}, {2, 3}})});
  } else if (n == 4) {
    for (unsigned i = 1; i <= 4; ++i) {
      auto const r = others(4, {i});
      out.push_back({{LabelKind::triangle, {i}},
                     family_of(4, {{r[0], r[1]}, {r[0], r[2]}, {r[1], r[2]}})});
    }
    for (unsigned i = 1; i <= 4; ++i) {
      auto const r = others(4, {i});
      out.push_back({{LabelKind::square, {i}},
                     family_of(4, {r, {i, r[0]}, {i, r[1]}, {i, r[2]}})});
    }
  } else if (n == 5) {
    std::vector<std::vector<unsigned>> triples;
    for (unsigned i = 1; i <= 5; ++i)
      for (unsigned j = i + 1; j <= 5; ++j)
        for (unsigned k = j + 1; k <= 5; ++k) triples.push_back({i, j, k});
    out.push_back({{LabelKind::circle, {}}, family_of(5, triples)});
    for (unsigned i = 1; i <= 5; ++i) {
      for (unsigned j = i + 1; j <= 5; ++j) {
        std::vector<std::vector<unsigned>> sets{{i, j}};
        for (auto const& t : triples) {
          auto hits = std::count(t.begin(), t.end(), i) + std::count(t.begin(), t.end(), j);
          if (hits == 1) sets.push_back(t);
        }
        out.push_back({{LabelKind::theta, {i, j}}, family_of(5, sets)});
      }
    }
    for (auto const& t : triples) {
      out.push_back({{LabelKind::triangle, t},
                     family_of(5, {{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}})});
    }
    for (unsigned i = 1; i <= 5; ++i) {
      auto const r = others(5, {i});
      std::vector<std::vector<unsigned>> sets{r};
      for (unsigned x : r) sets.push_back({i, x});
      out.push_back({{LabelKind::lambda, {i}}, family_of(5, sets)});
    }
    for (unsigned m = 1; m <= 5; ++m) {
      for (auto const& t : triples) {
        if (std::find(t.begin(), t.end(), m) != t.end()) continue;
        out.push_back({{LabelKind::diamond, {m, t[0], t[1], t[2]}},
                       family_of(5, {{m, t[0]}, {m, t[1]}, {m, t[2]}, t})});
      }
    }
    for (unsigned i = 1; i <= 5; ++i) {
      auto const r = others(5, {i});
      for (std::size_t a = 0; a < r.size(); ++a) {
        for (std::size_t b = a + 1; b < r.size(); ++b) {
          unsigned const j = r[a], k = r[b];
          auto const rest = others(5, {i, j, k});
          out.push_back({{LabelKind::lambda_pair, {i, j, k}},
                         family_of(5, {{i, j},
                                       {i, k},
                                       {i, rest[0], rest[1]},
                                       {j, k, rest[0]},
                                       {j, k, rest[1]}})});
        }
      }
    }
  }
  return out;
}

inline std::string digits(std::vector<unsigned> const& v, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < v.size(); ++i) s += std::to_string(v[i]);
  return s;
}

}  // namespace detail

/// ASCII rendering; principal families use the base label of their point.
inline std::string render(PaperLabel const& l, GroundSet const& ground) {
  auto const& v = l.indices;
  switch (l.kind) {
    case LabelKind::principal: return ground.label(v.at(0) - 1);
    case LabelKind::triangle: return v.empty() ? "Tr" : "Tr_" + detail::digits(v, 0);
    case LabelKind::square: return "Sq_" + detail::digits(v, 0);
    case LabelKind::theta: return "T_" + detail::digits(v, 0);
    case LabelKind::lambda: return "L^" + std::to_string(v.at(0));
    case LabelKind::diamond:
      return "D^" + std::to_string(v.at(0)) + "_" + detail::digits(v, 1);
    case LabelKind::lambda_pair:
      return "L^" + std::to_string(v.at(0)) + "_" + detail::digits(v, 1);
    case LabelKind::circle: return "O";
  }
  return "?";
}

/// Labels for every family of a universe on 1..5 points, in universe order.
/// Throws if the naming is not a bijection onto the universe.
inline std::vector<PaperLabel> paper_labels(FamilyUniverse const& u) {
  unsigned const n = u.ground().size();
  if (n < 1 || n > 5) throw InvalidInput("labels exist only for 1..5 points");
  std::vector<std::optional<PaperLabel>> slots(u.size());
  for (auto& [label, family] : detail::label_catalog(n)) {
    auto const idx = u.find(family);
    if (!idx || slots[*idx]) throw Error("label catalog does not match the universe");
    slots[*idx] = label;
  }
  std::vector<PaperLabel> out;
  for (auto& s : slots) {
    if (!s) throw Error("label catalog misses a family");
    out.push_back(*s);
  }
  return out;
}

inline std::vector<std::string> rendered_labels(FamilyUniverse const& u) {
  std::vector<std::string> out;
  for (auto const& l : paper_labels(u)) out.push_back(render(l, u.ground()));
  return out;
}

}  // namespace superext
