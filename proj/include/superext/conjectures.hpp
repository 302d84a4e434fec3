#pragma once

// Per-case probes of two conjectured patterns:
//   C1  r, s >= 3 and r+m = s+n  =>  Aut(λ(M_{r,m})) ≅ Aut(λ(M_{s,n}))
//   C2  r >= 2  =>  restriction Aut(λ(M)) -> Aut(λ(M^{·2})) has trivial range
// Groups are compared by order and symmetric-product shape. Verdicts only.

#include <map>
#include <string>
#include <vector>

#include "superext/automorphisms.hpp"
#include "superext/json_io.hpp"
#include "superext/lambda.hpp"
#include "superext/perm_group.hpp"
#include "superext/semigroup.hpp"

namespace superext {

struct ProbeCase {
  std::size_t r = 0, m = 0;
  GroupShape aut;
};

struct C1Verdict {
  std::size_t sum = 0;  // r + m
  std::vector<ProbeCase> cases;
  bool holds = true;
};

struct C2Verdict {
  std::size_t r = 0, m = 0;
  GroupShape range;
  bool holds = false;
};

struct ConjectureReport {
  std::size_t max_size = 0;
  std::vector<C1Verdict> c1;
  std::vector<C2Verdict> c2;

  bool all_hold() const {
    for (auto const& v : c1) {
      if (!v.holds) return false;
    }
    for (auto const& v : c2) {
      if (!v.holds) return false;
    }
    return true;
  }
};

inline bool same_shape(GroupShape const& a, GroupShape const& b) {
  if (a.order != b.order) return false;
  if (a.symmetric_product != b.symmetric_product) return false;
  if (a.symmetric_product) return a.symmetric_factors == b.symmetric_factors;
  return a.small_name == b.small_name;
}

/// max_size <= 5 by default, 6 with `perf`.
inline ConjectureReport conjecture_probe(std::size_t max_size, bool perf = false,
                                         unsigned long long budget = kDefaultBudget) {
  std::size_t const cap = perf ? kMaxLambdaBasePerf : kMaxLambdaBase;
  if (max_size > cap) {
    throw CapacityError("conjecture probe covers sizes up to " + std::to_string(cap));
  }
  ConjectureReport rep;
  rep.max_size = max_size;
  std::map<std::size_t, C1Verdict> by_sum;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (std::size_t r = 2; r <= n; ++r) {
      std::size_t const m = n + 1 - r;
      LambdaSemigroup const lam = build_lambda(make_monogenic({r, m}), {.perf = perf});
      AutomorphismResult const aut = automorphisms(lam.table, budget);
      if (r >= 3) {
        auto& v = by_sum[r + m];
        v.sum = r + m;
        v.cases.push_back({r, m, group_shape(aut.group)});
      }
      auto const sub = lambda_power(lam, 2);
      std::vector<Point> pts(sub.begin(), sub.end());
      C2Verdict c2{r, m, group_shape(restrict_to(aut.group, pts)), false};
      c2.holds = c2.range.order == 1;
      rep.c2.push_back(std::move(c2));
    }
  }
  for (auto& [sum, v] : by_sum) {
    for (auto const& c : v.cases) v.holds = v.holds && same_shape(c.aut, v.cases.front().aut);
    rep.c1.push_back(std::move(v));
  }
  return rep;
}

inline Json conjecture_to_json(ConjectureReport const& rep) {
  Json c1 = Json::array();
  for (auto const& v : rep.c1) {
    Json cases = Json::array();
    for (auto const& c : v.cases) {
      cases.push_back({{"r", c.r},
                       {"m", c.m},
                       {"order", to_decimal(c.aut.order)},
                       {"shape", c.aut.named_form.value_or("not a symmetric product")}});
    }
    c1.push_back({{"r_plus_m", v.sum}, {"cases", cases}, {"holds", v.holds}});
  }
  Json c2 = Json::array();
  for (auto const& v : rep.c2) {
    c2.push_back({{"r", v.r},
                  {"m", v.m},
                  {"range_order", to_decimal(v.range.order)},
                  {"holds", v.holds}});
  }
  return Json{{"max_size", rep.max_size}, {"C1", c1}, {"C2", c2}};
}

}  // namespace superext
