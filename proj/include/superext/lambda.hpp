#pragma once

// The superextension λ(S) of a finite semigroup as an operation table,
// induced homomorphisms, and the shift maps A -> a*A and A -> e*A.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "superext/errors.hpp"
#include "superext/labels.hpp"
#include "superext/semigroup.hpp"
#include "superext/setfam.hpp"
#include "superext/shifts.hpp"

namespace superext {

inline constexpr std::size_t kMaxLambdaBase = 5;
inline constexpr std::size_t kMaxLambdaBasePerf = 6;

namespace detail {

// pre[a][c] = code of a^{-1}C = {x : a·x ∈ C}.
inline std::vector<std::vector<std::uint32_t>> preimage_table(OpTable const& base) {
  std::size_t const n = base.size();
  std::uint32_t const total = std::uint32_t{1} << n;
  std::vector<std::vector<std::uint32_t>> pre(n, std::vector<std::uint32_t>(total, 0));
  for (Elem a = 0; a < n; ++a) {
    for (std::uint32_t c = 0; c < total; ++c) {
      std::uint32_t bits = 0;
      for (Elem x = 0; x < n; ++x) {
        if ((c >> base(a, x)) & 1U) bits |= std::uint32_t{1} << x;
      }
      pre[a][c] = bits;
    }
  }
  return pre;
}

inline std::size_t worker_count(std::size_t work_rows) {
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  if (char const* env = std::getenv("SUPEREXT_THREADS")) {
    long const cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) threads = std::min<std::size_t>(threads, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(1, std::min(threads, work_rows / 64 + 1));
}

}  // namespace detail

/// 𝒜∗ℬ by the membership criterion: C ∈ 𝒜∗ℬ iff {a : a^{-1}C ∈ ℬ} ∈ 𝒜.
inline LinkedFamily star(LinkedFamily const& a, LinkedFamily const& b, OpTable const& base) {
  std::size_t const n = base.size();
  if (a.ground_size() != n || b.ground_size() != n) {
    throw InvalidInput("star: family ground size differs from the base");
  }
  std::uint32_t const total = std::uint32_t{1} << n;
  std::vector<char> member(total, 0);
  for (std::uint32_t c = 1; c < total; ++c) {
    std::uint32_t sel = 0;
    for (Elem x = 0; x < n; ++x) {
      std::uint32_t pre = 0;
      for (Elem y = 0; y < n; ++y) {
        if ((c >> base(x, y)) & 1U) pre |= std::uint32_t{1} << y;
      }
      if (b.contains(SubsetCode(pre))) sel |= std::uint32_t{1} << x;
    }
    member[c] = a.contains(SubsetCode(sel));
  }
  std::vector<SubsetCode> minimal;
  for (std::uint32_t c = 1; c < total; ++c) {
    if (!member[c]) continue;
    bool is_min = true;
    for (std::uint32_t rest = c; rest && is_min; rest &= rest - 1) {
      std::uint32_t const without = c & ~(rest & (~rest + 1));
      if (member[without]) is_min = false;
    }
    if (is_min) minimal.emplace_back(c);
  }
  return LinkedFamily(static_cast<unsigned>(n), std::move(minimal));
}

struct LambdaSemigroup {
  OpTable base;
  FamilyUniverse universe{GroundSet(1), {}};
  OpTable table;
  std::vector<Elem> embed;  // base element -> principal family index

  std::size_t size() const { return table.size(); }
  LinkedFamily const& family(Elem x) const { return universe[x]; }
};

struct BuildOptions {
  bool perf = false;  // allow a six-element base
};

inline LambdaSemigroup build_lambda(OpTable const& base, BuildOptions opt = {}) {
  std::size_t const n = base.size();
  std::size_t const cap = opt.perf ? kMaxLambdaBasePerf : kMaxLambdaBase;
  if (n < 1 || n > cap) {
    throw CapacityError("superextension tables need 1 <= |S| <= " + std::to_string(cap) +
                        (opt.perf ? "" : " (6 with the performance flag)"));
  }
  GroundSet ground(static_cast<unsigned>(n), base.labels());
  FamilyUniverse universe = enumerate_mlf(ground);
  std::size_t const size = universe.size();
  std::uint32_t const total = std::uint32_t{1} << n;

  std::vector<std::uint64_t> masks(size);
  std::unordered_map<std::uint64_t, Elem> index;
  index.reserve(size * 2);
  for (std::size_t i = 0; i < size; ++i) {
    masks[i] = universe[i].upset().w[0];
    index.emplace(masks[i], static_cast<Elem>(i));
  }
  auto const pre = detail::preimage_table(base);
  // sel[b * total + c] = {a : a^{-1}C ∈ ℬ} as a subset code.
  std::vector<std::uint8_t> sel(size * total);
  for (std::size_t b = 0; b < size; ++b) {
    for (std::uint32_t c = 0; c < total; ++c) {
      std::uint32_t bits = 0;
      for (Elem a = 0; a < n; ++a) {
        if ((masks[b] >> pre[a][c]) & 1U) bits |= std::uint32_t{1} << a;
      }
      sel[b * total + c] = static_cast<std::uint8_t>(bits);
    }
  }

  std::vector<Elem> data(size * size);
  auto work = [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t a = row_begin; a < row_end; ++a) {
      std::uint64_t const am = masks[a];
      for (std::size_t b = 0; b < size; ++b) {
        std::uint8_t const* s = &sel[b * total];
        std::uint64_t prod = 0;
        for (std::uint32_t c = 0; c < total; ++c) prod |= ((am >> s[c]) & 1U) << c;
        auto it = index.find(prod);
        if (it == index.end()) throw Error("star product left the universe");
        data[a * size + b] = it->second;
      }
    }
  };
  std::size_t const workers = detail::worker_count(size);
  if (workers == 1) {
    work(0, size);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    std::size_t const chunk = (size + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(std::min(size, w * chunk), std::min(size, (w + 1) * chunk));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<std::string> labels;
  if (n <= 5) {
    labels = rendered_labels(universe);
  } else {
    for (std::size_t i = 0; i < size; ++i) labels.push_back(encode_text(universe[i], ground));
  }
  LambdaSemigroup lam;
  lam.base = base;
  lam.table = OpTable(size, std::move(data), std::move(labels), Validate::entries_only);
  for (Elem x = 0; x < n; ++x) {
    lam.embed.push_back(static_cast<Elem>(universe.principal_index(x)));
  }
  lam.universe = std::move(universe);
  return lam;
}

/// λφ for a homomorphism φ between the bases; verified on the λ-tables.
inline std::vector<Elem> lambda_hom(std::span<Elem const> phi, LambdaSemigroup const& src,
                                    LambdaSemigroup const& dst) {
  if (!is_homomorphism(src.base, dst.base, phi)) {
    throw InvalidInput("lambda_hom: map is not a homomorphism of the bases");
  }
  std::vector<unsigned> f(phi.begin(), phi.end());
  unsigned const target_n = static_cast<unsigned>(dst.base.size());
  std::vector<Elem> out(src.size());
  for (Elem x = 0; x < src.size(); ++x) {
    out[x] = static_cast<Elem>(dst.universe.index_of(map_family(f, target_n, src.family(x))));
  }
  if (!is_homomorphism(src.table, dst.table, out)) {
    throw Error("lambda_hom: induced map is not a homomorphism");
  }
  return out;
}

/// Elements of λ(S) lying in λ(P) for a subset P of S: every minimal set
/// inside P.
inline ElemSet lambda_of_points(LambdaSemigroup const& lam, ElemSet const& points) {
  std::uint32_t mask = 0;
  for (Elem p : points) mask |= std::uint32_t{1} << p;
  ElemSet out;
  for (Elem x = 0; x < lam.size(); ++x) {
    auto const sets = lam.family(x).minimal_sets();
    if (std::all_of(sets.begin(), sets.end(),
                    [&](SubsetCode c) { return (c.bits & ~mask) == 0; })) {
      out.push_back(x);
    }
  }
  return out;
}

/// λ(S^{·k}) as a subset of λ(S).
inline ElemSet lambda_power(LambdaSemigroup const& lam, std::size_t k) {
  return lambda_of_points(lam, power_ideal(lam.base, k));
}

/// λ(S^{·k}) as a table carrying the labels of λ(S).
inline SubTable lambda_power_table(LambdaSemigroup const& lam, std::size_t k) {
  return subtable(lam.table, lambda_power(lam, k));
}

/// A map of a (sub)table into itself with its fibers and verdicts.
struct ShiftAnalysis {
  SubTable source;          // the table the map acts on, inside λ(S)
  std::vector<Elem> map;    // local -> local
  ElemSet image;            // local
  std::map<Elem, ElemSet> fibers;  // local image element -> local preimage
  bool good_shift = false;
  bool retraction = false;

  std::string label(Elem local) const { return source.table.label(local); }
};

namespace detail {

inline ShiftAnalysis left_multiplication(LambdaSemigroup const& lam, std::size_t k,
                                         Elem principal) {
  ShiftAnalysis s;
  s.source = lambda_power_table(lam, k);
  for (Elem parent : s.source.to_parent) {
    Elem const y = lam.table(principal, parent);
    if (!s.source.contains_parent(y)) throw Error("shift leaves its source");
    s.map.push_back(s.source.from_parent[y]);
  }
  s.image = image_of(s.map);
  s.fibers = fibers_of(s.map);
  s.good_shift = is_good_shift(s.map, s.source.table);
  s.retraction = is_retraction(s.map, s.source.table);
  return s;
}

inline Elem generator_of(LambdaSemigroup const& lam) {
  auto g = monogenic_generator(lam.base);
  if (!g) throw InvalidInput("shift analysis needs a monogenic base");
  return *g;
}

}  // namespace detail

/// σ̄_k: A -> a*A on λ(M^{·k}), landing in λ(M^{·(k+1)}).
inline ShiftAnalysis shift_analysis(LambdaSemigroup const& lam, std::size_t k = 1) {
  if (k < 1) throw InvalidInput("shift_analysis: k must be >= 1");
  Elem const a = detail::generator_of(lam);
  return detail::left_multiplication(lam, k, lam.embed[a]);
}

/// ρ̄: A -> e*A on λ(M^{·k}), e the idempotent of the maximal subgroup.
inline ShiftAnalysis retraction_analysis(LambdaSemigroup const& lam, std::size_t k = 1) {
  if (k < 1) throw InvalidInput("retraction_analysis: k must be >= 1");
  detail::generator_of(lam);
  auto const e = idempotents(lam.base);
  if (e.size() != 1) throw Error("monogenic base with several idempotents");
  return detail::left_multiplication(lam, k, lam.embed[e[0]]);
}

/// Fibers as label sets, keyed by the label of the image element.
inline std::map<std::string, std::vector<std::string>> fiber_labels(ShiftAnalysis const& s) {
  std::map<std::string, std::vector<std::string>> out;
  for (auto const& [x, fiber] : s.fibers) {
    auto& v = out[s.label(x)];
    for (Elem y : fiber) v.push_back(s.label(y));
    std::sort(v.begin(), v.end());
  }
  return out;
}

}  // namespace superext
