#pragma once

// Finite semigroups given by multiplication tables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "superext/errors.hpp"

namespace superext {

using Elem = std::uint32_t;
using ElemSet = std::vector<Elem>;  // sorted ascending, no duplicates

inline constexpr std::size_t kMaxMonogenic = 16;

class OpTable;
bool check_associative(OpTable const& t);

enum class Validate {
  full,          // entries in range and associativity
  entries_only,  // entries in range
};

/// table[x * size + y] = x·y.
class OpTable {
 public:
  OpTable() = default;

  OpTable(std::size_t size, std::vector<Elem> table,
          std::vector<std::string> labels, Validate v = Validate::full)
      : size_(size), table_(std::move(table)), labels_(std::move(labels)) {
    if (table_.size() != size_ * size_) {
      throw InvalidInput("operation table must have size^2 entries");
    }
    if (labels_.empty()) {
      for (std::size_t i = 0; i < size_; ++i) labels_.push_back(std::to_string(i));
    }
    if (labels_.size() != size_) {
      throw InvalidInput("operation table needs one label per element");
    }
    for (Elem e : table_) {
      if (e >= size_) throw InvalidInput("operation table entry out of range");
    }
    if (v == Validate::full && !check_associative(*this)) {
      throw InvalidInput("operation table is not associative");
    }
  }

  std::size_t size() const { return size_; }
  Elem operator()(Elem x, Elem y) const { return table_[x * size_ + y]; }
  std::span<Elem const> row(Elem x) const {
    return {table_.data() + x * size_, size_};
  }
  std::vector<Elem> const& data() const { return table_; }
  std::vector<std::string> const& labels() const { return labels_; }
  std::string const& label(Elem x) const { return labels_[x]; }

  friend bool operator==(OpTable const& a, OpTable const& b) {
    return a.size_ == b.size_ && a.table_ == b.table_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<Elem> table_;
  std::vector<std::string> labels_;
};

// Full triple scan up to 200 elements; beyond that, 2*10^6 seeded samples.
inline bool check_associative(OpTable const& t) {
  std::size_t const n = t.size();
  if (n <= 200) {
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        Elem const xy = t(x, y);
        for (Elem z = 0; z < n; ++z) {
          if (t(xy, z) != t(x, t(y, z))) return false;
        }
      }
    }
    return true;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
  for (int i = 0; i < 2'000'000; ++i) {
    Elem const x = pick(rng), y = pick(rng), z = pick(rng);
    if (t(t(x, y), z) != t(x, t(y, z))) return false;
  }
  return true;
}

struct MonogenicSpec {
  std::size_t r = 1;  // index
  std::size_t m = 1;  // period

  std::size_t order() const { return r + m - 1; }
  // Exponent of a^i·a^j.
  std::size_t reduce(std::size_t e) const {
    return e <= order() ? e : r + (e - r) % m;
  }
  friend bool operator==(MonogenicSpec, MonogenicSpec) = default;
};

// Element i is a^(i+1); the generator is element 0.
inline OpTable make_monogenic(MonogenicSpec spec) {
  if (spec.r < 1 || spec.m < 1) throw InvalidInput("index and period must be >= 1");
  std::size_t const n = spec.order();
  if (n > kMaxMonogenic) {
    throw CapacityError("monogenic semigroup of order " + std::to_string(n) +
                        " exceeds 16");
  }
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) {
    labels.push_back("a^" + std::to_string(i));
    for (std::size_t j = 1; j <= n; ++j) {
      table[(i - 1) * n + (j - 1)] = static_cast<Elem>(spec.reduce(i + j) - 1);
    }
  }
  return OpTable(n, std::move(table), std::move(labels));
}

inline ElemSet all_elements(OpTable const& t) {
  ElemSet s(t.size());
  for (Elem i = 0; i < t.size(); ++i) s[i] = i;
  return s;
}

// S·A for a subset A.
inline ElemSet product_set(OpTable const& t, ElemSet const& left,
                           ElemSet const& right) {
  std::vector<char> hit(t.size(), 0);
  for (Elem x : left) {
    for (Elem y : right) hit[t(x, y)] = 1;
  }
  ElemSet out;
  for (Elem z = 0; z < t.size(); ++z) {
    if (hit[z]) out.push_back(z);
  }
  return out;
}

/// S^{·k}: all k-fold products.
inline ElemSet power_ideal(OpTable const& t, std::size_t k) {
  if (k < 1) throw InvalidInput("power_ideal: k must be >= 1");
  ElemSet const all = all_elements(t);
  ElemSet cur = all;
  for (std::size_t i = 1; i < k; ++i) {
    ElemSet next = product_set(t, all, cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

/// depth[x] = the largest k with x in S^{·k}, capped where the chain stabilizes.
inline std::vector<std::size_t> ideal_depths(OpTable const& t) {
  std::vector<std::size_t> depth(t.size(), 1);
  ElemSet const all = all_elements(t);
  ElemSet cur = all;
  for (std::size_t k = 2; k <= t.size() + 1; ++k) {
    ElemSet next = product_set(t, all, cur);
    for (Elem x : next) depth[x] = k;
    if (next == cur) break;
    cur = std::move(next);
  }
  return depth;
}

inline std::vector<std::size_t> ideal_chain_profile(OpTable const& t) {
  std::vector<std::size_t> sizes;
  ElemSet const all = all_elements(t);
  ElemSet cur = all;
  sizes.push_back(cur.size());
  while (true) {
    ElemSet next = product_set(t, all, cur);
    if (next == cur) break;
    sizes.push_back(next.size());
    cur = std::move(next);
  }
  return sizes;
}

inline ElemSet idempotents(OpTable const& t) {
  ElemSet out;
  for (Elem e = 0; e < t.size(); ++e) {
    if (t(e, e) == e) out.push_back(e);
  }
  return out;
}

struct MaxSubgroup {
  ElemSet elements;
  Elem neutral;
};

// C_m = {a^r, ..., a^(r+m-1)} with neutral a^n, n the multiple of m in range.
inline MaxSubgroup max_subgroup_of_monogenic(MonogenicSpec spec) {
  if (spec.r < 1 || spec.m < 1) throw InvalidInput("index and period must be >= 1");
  MaxSubgroup g{};
  for (std::size_t e = spec.r; e < spec.r + spec.m; ++e) {
    g.elements.push_back(static_cast<Elem>(e - 1));
    if (e % spec.m == 0) g.neutral = static_cast<Elem>(e - 1);
  }
  return g;
}

/// Returns the generating element if `t` is monogenic.
inline std::optional<Elem> monogenic_generator(OpTable const& t) {
  for (Elem a = 0; a < t.size(); ++a) {
    std::vector<char> seen(t.size(), 0);
    std::size_t count = 0;
    Elem p = a;
    while (!seen[p]) {
      seen[p] = 1;
      ++count;
      p = t(p, a);
    }
    if (count == t.size()) return a;
  }
  return std::nullopt;
}

/// Restriction of a table to a closed subset, with index maps both ways.
struct SubTable {
  OpTable table;
  std::vector<Elem> to_parent;    // local -> parent
  std::vector<Elem> from_parent;  // parent -> local, or npos
  static constexpr Elem npos = static_cast<Elem>(-1);

  bool contains_parent(Elem p) const { return from_parent[p] != npos; }
};

inline SubTable subtable(OpTable const& t, ElemSet const& subset) {
  SubTable s;
  s.to_parent = subset;
  s.from_parent.assign(t.size(), SubTable::npos);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= t.size()) throw InvalidInput("subtable: element out of range");
    s.from_parent[subset[i]] = static_cast<Elem>(i);
  }
  std::size_t const n = subset.size();
  std::vector<Elem> data(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(t.label(subset[i]));
    for (std::size_t j = 0; j < n; ++j) {
      Elem const p = t(subset[i], subset[j]);
      if (s.from_parent[p] == SubTable::npos) {
        throw InvalidInput("subtable: subset is not closed under the operation");
      }
      data[i * n + j] = s.from_parent[p];
    }
  }
  s.table = OpTable(n, std::move(data), std::move(labels), Validate::entries_only);
  return s;
}

/// True iff phi(x·y) = phi(x)·phi(y) for all x, y.
inline bool is_homomorphism(OpTable const& src, OpTable const& dst,
                            std::span<Elem const> phi) {
  if (phi.size() != src.size()) return false;
  for (Elem v : phi) {
    if (v >= dst.size()) return false;
  }
  for (Elem x = 0; x < src.size(); ++x) {
    for (Elem y = 0; y < src.size(); ++y) {
      if (phi[src(x, y)] != dst(phi[x], phi[y])) return false;
    }
  }
  return true;
}

}  // namespace superext
