#pragma once

// Ground-set combinatorics: subsets as bit codes, upfamilies stored by their
// minimal sets, and enumeration of all maximal linked families on n points.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "superext/errors.hpp"

namespace superext {

inline constexpr unsigned kMaxGround = 16;     // SubsetCode width
inline constexpr unsigned kMaxEnumGround = 7;  // enumeration / upset masks

struct SubsetCode {
  std::uint32_t bits = 0;

  constexpr SubsetCode() = default;
  constexpr explicit SubsetCode(std::uint32_t b) : bits(b) {}

  static SubsetCode of(std::initializer_list<unsigned> points) {
    std::uint32_t b = 0;
    for (auto p : points) b |= std::uint32_t{1} << p;
    return SubsetCode(b);
  }

  constexpr bool empty() const { return bits == 0; }
  constexpr unsigned size() const { return std::popcount(bits); }
  constexpr bool has(unsigned point) const { return (bits >> point) & 1U; }
  constexpr bool subset_of(SubsetCode other) const {
    return (bits & ~other.bits) == 0;
  }
  constexpr bool meets(SubsetCode other) const {
    return (bits & other.bits) != 0;
  }
  constexpr SubsetCode complement(unsigned n) const {
    return SubsetCode(~bits & full_mask(n));
  }
  static constexpr std::uint32_t full_mask(unsigned n) {
    return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  }

  std::vector<unsigned> points() const {
    std::vector<unsigned> out;
    for (std::uint32_t b = bits; b != 0; b &= b - 1) {
      out.push_back(static_cast<unsigned>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr auto operator<=>(SubsetCode, SubsetCode) = default;
};

class GroundSet {
 public:
  explicit GroundSet(unsigned n) : n_(n) { validate(); }
  GroundSet(unsigned n, std::vector<std::string> labels)
      : n_(n), labels_(std::move(labels)) {
    validate();
  }

  unsigned size() const { return n_; }
  bool has_labels() const { return !labels_.empty(); }

  // Display name of a point; unlabeled grounds use a^1, a^2, ...
  std::string label(unsigned point) const {
    if (!labels_.empty()) return labels_.at(point);
    return "a^" + std::to_string(point + 1);
  }

 private:
  void validate() const {
    if (n_ < 1 || n_ > kMaxGround) {
      throw CapacityError("ground set size " + std::to_string(n_) +
                          " outside 1.." + std::to_string(kMaxGround));
    }
    if (!labels_.empty()) {
      if (labels_.size() != n_) {
        throw InvalidInput("ground set labels must have exactly n entries");
      }
      auto sorted = labels_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidInput("ground set labels must be distinct");
      }
    }
  }

  unsigned n_;
  std::vector<std::string> labels_;
};

/// Membership bitmap of a whole upfamily over the 2^n subsets, n <= 7.
/// Bit number c is set iff the subset with code c belongs to the family.
struct UpsetMask {
  std::array<std::uint64_t, 2> w{0, 0};

  bool test(std::uint32_t c) const { return (w[c >> 6] >> (c & 63)) & 1U; }
  void set(std::uint32_t c) { w[c >> 6] |= std::uint64_t{1} << (c & 63); }
  bool any() const { return (w[0] | w[1]) != 0; }
  unsigned count() const {
    return std::popcount(w[0]) + std::popcount(w[1]);
  }

  UpsetMask& operator|=(UpsetMask const& o) {
    w[0] |= o.w[0];
    w[1] |= o.w[1];
    return *this;
  }
  friend UpsetMask operator|(UpsetMask a, UpsetMask const& b) { return a |= b; }
  friend UpsetMask operator&(UpsetMask a, UpsetMask const& b) {
    a.w[0] &= b.w[0];
    a.w[1] &= b.w[1];
    return a;
  }
  friend UpsetMask operator~(UpsetMask a) {
    a.w[0] = ~a.w[0];
    a.w[1] = ~a.w[1];
    return a;
  }
  // Shift toward higher subset codes; s in [1, 64].
  friend UpsetMask shift_up(UpsetMask const& a, unsigned s) {
    UpsetMask r;
    if (s == 64) {
      r.w[1] = a.w[0];
    } else {
      r.w[0] = a.w[0] << s;
      r.w[1] = (a.w[1] << s) | (a.w[0] >> (64 - s));
    }
    return r;
  }
  friend bool operator==(UpsetMask const&, UpsetMask const&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (unsigned k = 0; k < 2; ++k) {
      for (std::uint64_t b = w[k]; b != 0; b &= b - 1) {
        f(static_cast<std::uint32_t>(k * 64 + std::countr_zero(b)));
      }
    }
  }
};

/// An upfamily on {0..n-1} represented by its antichain of minimal sets.
/// Minimal sets are kept sorted ascending by code, so two families are equal
/// iff their encodings are equal.
class LinkedFamily {
 public:
  LinkedFamily() = default;

  // Takes an antichain already in canonical order; checked.
  LinkedFamily(unsigned n, std::vector<SubsetCode> minimal_sets)
      : n_(n), sets_(std::move(minimal_sets)) {
    if (n_ < 1 || n_ > kMaxGround) {
      throw CapacityError("family ground size out of range");
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (sets_[i].empty() || (sets_[i].bits >> n_) != 0) {
        throw InvalidInput("minimal set outside ground or empty");
      }
      if (i > 0 && !(sets_[i - 1] < sets_[i])) {
        throw InvalidInput("minimal sets must be strictly ascending");
      }
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      for (std::size_t j = 0; j < sets_.size(); ++j) {
        if (i != j && sets_[i].subset_of(sets_[j])) {
          throw InvalidInput("minimal sets must form an antichain");
        }
      }
    }
  }

  unsigned ground_size() const { return n_; }
  std::span<SubsetCode const> minimal_sets() const { return sets_; }

  bool contains(SubsetCode c) const {
    return std::any_of(sets_.begin(), sets_.end(),
                       [c](SubsetCode m) { return m.subset_of(c); });
  }

  UpsetMask upset() const {
    if (n_ > kMaxEnumGround) {
      throw CapacityError("upset masks support at most 7 points");
    }
    UpsetMask m;
    std::uint32_t const total = std::uint32_t{1} << n_;
    for (std::uint32_t c = 1; c < total; ++c) {
      if (contains(SubsetCode(c))) m.set(c);
    }
    return m;
  }

  friend bool operator==(LinkedFamily const&, LinkedFamily const&) = default;
  friend auto operator<=>(LinkedFamily const& a, LinkedFamily const& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.sets_.begin(), a.sets_.end(), b.sets_.begin(), b.sets_.end());
  }

 private:
  unsigned n_ = 1;
  std::vector<SubsetCode> sets_;
};

namespace detail {

// Minimal members of an upset given as a mask; ascending by code.
inline std::vector<SubsetCode> minimal_members(UpsetMask const& in,
                                               unsigned n) {
  // lacks[i]: codes in [0, 128) without bit i.
  static auto const lacks = [] {
    std::array<UpsetMask, kMaxEnumGround> t{};
    for (unsigned i = 0; i < kMaxEnumGround; ++i) {
      for (std::uint32_t c = 0; c < 128; ++c) {
        if (((c >> i) & 1U) == 0) t[i].set(c);
      }
    }
    return t;
  }();
  UpsetMask nonmin;
  for (unsigned i = 0; i < n; ++i) {
    nonmin |= shift_up(in & lacks[i], 1U << i);
  }
  std::vector<SubsetCode> out;
  (in & ~nonmin).for_each([&](std::uint32_t c) { out.emplace_back(c); });
  return out;
}

}  // namespace detail

inline LinkedFamily family_from_upset(UpsetMask const& m, unsigned n) {
  return LinkedFamily(n, detail::minimal_members(m, n));
}

// Inclusion-minimal members of the upfamily generated by `sets`.
inline LinkedFamily minimize(std::span<SubsetCode const> sets,
                             GroundSet const& ground) {
  if (sets.empty()) throw InvalidInput("minimize: empty generating list");
  unsigned const n = ground.size();
  std::vector<SubsetCode> v(sets.begin(), sets.end());
  for (auto s : v) {
    if (s.empty()) throw InvalidInput("minimize: empty subset");
    if ((s.bits >> n) != 0) throw InvalidInput("minimize: point outside ground");
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<SubsetCode> out;
  for (auto s : v) {
    bool const absorbed = std::any_of(v.begin(), v.end(), [s](SubsetCode t) {
      return t != s && t.subset_of(s);
    });
    if (!absorbed) out.push_back(s);
  }
  return LinkedFamily(n, std::move(out));
}

inline bool contains(LinkedFamily const& family, SubsetCode c) {
  return family.contains(c);
}

inline bool is_linked(std::span<SubsetCode const> sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i; j < sets.size(); ++j) {
      if (!sets[i].meets(sets[j])) return false;
    }
  }
  return true;
}

inline bool is_linked(LinkedFamily const& family) {
  return is_linked(family.minimal_sets());
}

// Self-duality criterion: exactly one of C and its complement belongs.
inline bool is_maximal_linked(LinkedFamily const& family) {
  unsigned const n = family.ground_size();
  if (!is_linked(family)) return false;
  std::uint32_t const total = std::uint32_t{1} << n;
  for (std::uint32_t c = 0; c < total; ++c) {
    SubsetCode const s(c);
    if (family.contains(s) == family.contains(s.complement(n))) return false;
  }
  return true;
}

inline LinkedFamily principal_family(unsigned n, unsigned point) {
  if (point >= n) throw InvalidInput("principal_family: point outside ground");
  return LinkedFamily(n, {SubsetCode(std::uint32_t{1} << point)});
}

/// λf: the family generated by the images of the minimal sets under f.
/// `f[i]` is the image of point i in a ground of `target_n` points.
inline LinkedFamily map_family(std::span<unsigned const> f, unsigned target_n,
                               LinkedFamily const& family) {
  if (f.size() != family.ground_size()) {
    throw InvalidInput("map_family: map must be total on the source ground");
  }
  std::vector<SubsetCode> images;
  images.reserve(family.minimal_sets().size());
  for (auto m : family.minimal_sets()) {
    std::uint32_t img = 0;
    for (unsigned p : m.points()) {
      if (f[p] >= target_n) throw InvalidInput("map_family: image outside target");
      img |= std::uint32_t{1} << f[p];
    }
    images.emplace_back(img);
  }
  return minimize(images, GroundSet(target_n));
}

class FamilyUniverse {
 public:
  FamilyUniverse(GroundSet ground, std::vector<LinkedFamily> families)
      : ground_(std::move(ground)), families_(std::move(families)) {}

  GroundSet const& ground() const { return ground_; }
  std::size_t size() const { return families_.size(); }
  std::vector<LinkedFamily> const& families() const { return families_; }
  LinkedFamily const& operator[](std::size_t i) const { return families_[i]; }

  // Position of a family in canonical order.
  std::optional<std::size_t> find(LinkedFamily const& f) const {
    auto it = std::lower_bound(families_.begin(), families_.end(), f);
    if (it == families_.end() || *it != f) return std::nullopt;
    return static_cast<std::size_t>(it - families_.begin());
  }

  std::size_t index_of(LinkedFamily const& f) const {
    auto i = find(f);
    if (!i) throw InvalidInput("family is not in this universe");
    return *i;
  }

  std::size_t principal_index(unsigned point) const {
    return index_of(principal_family(ground_.size(), point));
  }

 private:
  GroundSet ground_;
  std::vector<LinkedFamily> families_;
};

namespace detail {

// Backtracking over complementary pairs (C, X\C), smaller side first.
// Every consistent partial assignment extends to a maximal linked family,
// so the search never dead-ends; each leaf is one family.
class MlfEnumerator {
 public:
  explicit MlfEnumerator(unsigned n) : n_(n) {
    std::uint32_t const total = std::uint32_t{1} << n;
    up_.resize(total);
    down_.resize(total);
    for (std::uint32_t c = 0; c < total; ++c) {
      for (std::uint32_t d = 0; d < total; ++d) {
        if ((c & ~d) == 0) up_[c].set(d);
        if ((d & ~c) == 0) down_[c].set(d);
      }
    }
    full_ = total - 1;
    // The pair (empty, X) is settled up front: X is always a member.
    for (std::uint32_t c = 1; c + 1 < total; ++c) {
      std::uint32_t const comp = full_ & ~c;
      int const pc = std::popcount(c);
      int const pcomp = std::popcount(comp);
      if (pc < pcomp || (pc == pcomp && c < comp)) pairs_.push_back(c);
    }
    std::stable_sort(pairs_.begin(), pairs_.end(),
                     [](std::uint32_t a, std::uint32_t b) {
                       return std::popcount(a) < std::popcount(b);
                     });
  }

  template <typename Emit>
  void run(Emit&& emit) const {
    UpsetMask in = up_[full_];
    UpsetMask out = down_[0];
    recurse(0, in, out, emit);
  }

 private:
  template <typename Emit>
  void recurse(std::size_t idx, UpsetMask const& in, UpsetMask const& out,
               Emit& emit) const {
    while (idx < pairs_.size() &&
           (in.test(pairs_[idx]) || in.test(full_ & ~pairs_[idx]))) {
      ++idx;
    }
    if (idx == pairs_.size()) {
      emit(in);
      return;
    }
    std::uint32_t const c = pairs_[idx];
    std::uint32_t const comp = full_ & ~c;
    for (std::uint32_t chosen : {c, comp}) {
      UpsetMask const in2 = in | up_[chosen];
      UpsetMask const out2 = out | down_[full_ & ~chosen];
      if (!(in2 & out2).any()) recurse(idx + 1, in2, out2, emit);
    }
  }

  unsigned n_;
  std::uint32_t full_ = 0;
  std::vector<UpsetMask> up_;
  std::vector<UpsetMask> down_;
  std::vector<std::uint32_t> pairs_;
};

inline void check_enum_range(unsigned n) {
  if (n < 1 || n > kMaxEnumGround) {
    throw CapacityError("enumeration supports 1 <= n <= 7, got " +
                        std::to_string(n));
  }
}

}  // namespace detail

/// Number of maximal linked families on n points without materializing them.
inline std::uint64_t count_mlf(unsigned n) {
  detail::check_enum_range(n);
  std::uint64_t count = 0;
  detail::MlfEnumerator(n).run([&](UpsetMask const&) { ++count; });
  return count;
}

/// All maximal linked families on the ground, in canonical order.
inline FamilyUniverse enumerate_mlf(GroundSet const& ground) {
  unsigned const n = ground.size();
  detail::check_enum_range(n);
  std::vector<LinkedFamily> families;
  detail::MlfEnumerator(n).run([&](UpsetMask const& in) {
    families.push_back(family_from_upset(in, n));
  });
  std::sort(families.begin(), families.end());
  return FamilyUniverse(ground, std::move(families));
}

// ---------------------------------------------------------------------------
// Text encoding: {a^1,a^2}|{a^1,a^3}|{a^2,a^3}

inline std::string encode_text(LinkedFamily const& family,
                               GroundSet const& ground) {
  std::string out;
  bool first_set = true;
  for (auto m : family.minimal_sets()) {
    if (!first_set) out += '|';
    first_set = false;
    out += '{';
    bool first_pt = true;
    for (unsigned p : m.points()) {
      if (!first_pt) out += ',';
      first_pt = false;
      out += ground.label(p);
    }
    out += '}';
  }
  return out;
}

inline LinkedFamily decode_text(std::string_view text, GroundSet const& ground) {
  std::vector<SubsetCode> sets;
  std::size_t pos = 0;
  auto fail = [&](std::string const& why) -> ParseError {
    return ParseError("family text: " + why + " at offset " +
                      std::to_string(pos));
  };
  while (pos < text.size()) {
    if (text[pos] != '{') throw fail("expected '{'");
    auto const close = text.find('}', pos);
    if (close == std::string_view::npos) throw fail("unterminated set");
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    std::uint32_t bits = 0;
    while (!body.empty()) {
      auto const comma = body.find(',');
      std::string_view name = body.substr(0, comma);
      bool found = false;
      for (unsigned p = 0; p < ground.size(); ++p) {
        if (ground.label(p) == name) {
          bits |= std::uint32_t{1} << p;
          found = true;
          break;
        }
      }
      if (!found) throw fail("unknown point '" + std::string(name) + "'");
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    sets.emplace_back(bits);
    pos = close + 1;
    if (pos < text.size()) {
      if (text[pos] != '|') throw fail("expected '|'");
      ++pos;
    }
  }
  if (sets.empty()) throw fail("no sets");
  LinkedFamily family;
  try {
    family = minimize(sets, ground);
  } catch (InvalidInput const& e) {
    throw fail(e.what());
  }
  if (family.minimal_sets().size() != sets.size()) {
    throw fail("sets are not a canonical antichain");
  }
  return family;
}

}  // namespace superext
