#pragma once

// Brute-force reference implementations, used only by tests. Nothing here
// shares code with the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "superext/perm_group.hpp"
#include "superext/semigroup.hpp"

namespace oracle {

using Antichain = std::vector<std::uint32_t>;  // ascending subset codes

inline Antichain minimal_of(std::vector<std::uint32_t> const& fam) {
  Antichain out;
  for (auto a : fam) {
    bool minimal = true;
    for (auto b : fam) {
      if (b != a && (b & a) == b) minimal = false;
    }
    if (minimal) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Members of the upfamily generated by `gens` on n points.
inline std::vector<std::uint32_t> upclose(std::vector<std::uint32_t> const& gens, unsigned n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 1; c < (1U << n); ++c) {
    for (auto g : gens) {
      if ((g & c) == g) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

inline bool linked(std::vector<std::uint32_t> const& fam) {
  for (auto a : fam)
    for (auto b : fam)
      if ((a & b) == 0) return false;
  return true;
}

/// Every maximal linked upfamily on n <= 4 points, found by scanning all
/// families of non-empty subsets and testing maximality by extension.
inline std::set<Antichain> all_mlf(unsigned n) {
  std::uint32_t const subsets = (1U << n) - 1;  // codes 1..2^n-1
  std::vector<std::vector<std::uint32_t>> linked_up;
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << subsets); ++pick) {
    std::vector<std::uint32_t> fam;
    for (std::uint32_t i = 0; i < subsets; ++i) {
      if ((pick >> i) & 1U) fam.push_back(i + 1);
    }
    bool up = true;
    for (auto a : fam) {
      for (std::uint32_t c = 1; c <= subsets && up; ++c) {
        if ((a & c) == a && !std::binary_search(fam.begin(), fam.end(), c)) up = false;
      }
    }
    if (up && linked(fam)) linked_up.push_back(std::move(fam));
  }
  std::set<Antichain> out;
  for (auto const& f : linked_up) {
    bool maximal = true;
    for (auto const& g : linked_up) {
      if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.insert(minimal_of(f));
  }
  return out;
}

/// 𝒜∗ℬ = < ∪_{a∈A} a·B_a : A ∈ 𝒜, B_a ∈ ℬ >, over minimal sets of 𝒜 and ℬ.
inline Antichain star_by_selection(Antichain const& A, Antichain const& B,
                                   superext::OpTable const& t) {
  unsigned const n = static_cast<unsigned>(t.size());
  auto times = [&](unsigned a, std::uint32_t set) {
    std::uint32_t out = 0;
    for (unsigned x = 0; x < n; ++x) {
      if ((set >> x) & 1U) out |= 1U << t(a, x);
    }
    return out;
  };
  std::vector<std::uint32_t> gens;
  for (auto amin : A) {
    std::vector<unsigned> pts;
    for (unsigned x = 0; x < n; ++x) {
      if ((amin >> x) & 1U) pts.push_back(x);
    }
    std::vector<std::size_t> choice(pts.size(), 0);
    while (true) {
      std::uint32_t u = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) u |= times(pts[i], B[choice[i]]);
      gens.push_back(u);
      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == B.size()) choice[i++] = 0;
      if (i == choice.size()) break;
    }
  }
  return minimal_of(upclose(gens, n));
}

/// Number of bijections preserving the table, by trying all of them.
inline std::size_t count_automorphisms(superext::OpTable const& t) {
  std::vector<superext::Elem> p(t.size());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (superext::Elem x = 0; x < t.size() && ok; ++x) {
      for (superext::Elem y = 0; y < t.size() && ok; ++y) {
        ok = p[t(x, y)] == t(p[x], p[y]);
      }
    }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Every element of the group generated by `gens`, by breadth-first closure.
inline std::set<std::vector<superext::Point>> closure(
    std::vector<superext::Perm> const& gens, std::size_t degree) {
  std::vector<superext::Point> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<superext::Point>> seen{id};
  std::vector<std::vector<superext::Point>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<superext::Point>> next;
    for (auto const& e : frontier) {
      for (auto const& g : gens) {
        std::vector<superext::Point> h(degree);
        for (std::size_t x = 0; x < degree; ++x) h[x] = g(e[x]);
        if (seen.insert(h).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace oracle
