#pragma once

// The summary table of Aut(λ(M_{r,m}^{·k})) for small monogenic semigroups,
// checked against the bundled expected-values catalog.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superext/automorphisms.hpp"
#include "superext/json_io.hpp"
#include "superext/lambda.hpp"
#include "superext/perm_group.hpp"
#include "superext/semigroup.hpp"

#ifndef SUPEREXT_DATA_DIR
#define SUPEREXT_DATA_DIR "data"
#endif

namespace superext {

inline std::string default_catalog_path() {
  if (char const* env = std::getenv("SUPEREXT_CATALOG")) return env;
  return std::string(SUPEREXT_DATA_DIR) + "/expected_catalog.json";
}

inline Json load_catalog(std::string const& path = default_catalog_path()) {
  return read_json_file(path);
}

/// A group form such as "S_3^3 x S_8 x S_17" or "C_2^2".
struct ExpectedForm {
  std::string text;
  bool symmetric = false;
  std::vector<std::size_t> factors;  // symmetric degrees >= 2, ascending
  BigInt order = 1;
};

inline ExpectedForm parse_form(std::string const& text) {
  ExpectedForm f;
  f.text = text;
  std::size_t pos = 0;
  bool any_cyclic = false;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == 'x')) ++pos;
    if (pos >= text.size()) break;
    char const kind = text[pos];
    if ((kind != 'S' && kind != 'C') || pos + 1 >= text.size() || text[pos + 1] != '_') {
      throw ParseError("group form: cannot read '" + text + "'");
    }
    pos += 2;
    std::size_t used = 0;
    std::size_t const base = std::stoul(text.substr(pos), &used);
    pos += used;
    std::size_t exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      exp = std::stoul(text.substr(pos), &used);
      pos += used;
    }
    for (std::size_t i = 0; i < exp; ++i) {
      if (kind == 'S') {
        f.order *= factorial(base);
        if (base >= 2) f.factors.push_back(base);
      } else {
        f.order *= base;
        any_cyclic = any_cyclic || base > 1;
      }
    }
  }
  f.symmetric = !any_cyclic;
  std::sort(f.factors.begin(), f.factors.end());
  return f;
}

/// Order plus either the symmetric-product factors or the small-group name.
inline bool shape_matches(GroupShape const& s, ExpectedForm const& f) {
  if (s.order != f.order) return false;
  if (s.small_name && *s.small_name == f.text) return true;
  return f.symmetric && s.symmetric_product && s.symmetric_factors == f.factors;
}

inline std::string shape_text(GroupShape const& s) {
  if (s.named_form) return *s.named_form;
  return "order " + s.order.str();
}

enum class Verdict { match, mismatch, flagged };

inline char const* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::flagged: return "paper-entry-flagged";
  }
  return "?";
}

struct ReportRow {
  std::size_t r = 0, m = 0, k = 1;
  std::size_t size = 0;         // |M^{·k}|
  std::size_t lambda_size = 0;  // |λ(M^{·k})|
  GroupShape aut_base;
  GroupShape aut_lambda;
  std::optional<std::string> expected_base;
  std::optional<std::string> expected_lambda;
  std::optional<std::string> printed_order;
  Verdict verdict = Verdict::mismatch;
  std::string note;

  std::string name() const {
    std::string s = "M" + std::to_string(r) + std::to_string(m);
    if (k > 1) s += "^" + std::to_string(k);
    return s;
  }
};

namespace detail {

inline Json const* find_row(Json const& catalog, std::size_t r, std::size_t m, std::size_t k) {
  for (auto const& row : catalog.at("table")) {
    if (row.at("r") == r && row.at("m") == m && row.at("k") == k) return &row;
  }
  return nullptr;
}

inline Verdict judge(ReportRow& row) {
  if (!row.expected_lambda || !row.expected_base) {
    row.note = "no catalog entry";
    return Verdict::mismatch;
  }
  if (!shape_matches(row.aut_lambda, parse_form(*row.expected_lambda))) {
    row.note = "Aut(lambda(S)) differs from " + *row.expected_lambda;
    return Verdict::mismatch;
  }
  // The verdict follows Aut(λ(S)); disagreements elsewhere in the row flag it.
  Verdict v = Verdict::match;
  if (row.printed_order && BigInt(*row.printed_order) != row.aut_lambda.order) {
    row.note = "printed order " + *row.printed_order + " disagrees with the symbolic form";
    v = Verdict::flagged;
  }
  if (!shape_matches(row.aut_base, parse_form(*row.expected_base))) {
    if (!row.note.empty()) row.note += "; ";
    row.note += "printed Aut(S) " + *row.expected_base + ", computed " + shape_text(row.aut_base);
    v = Verdict::flagged;
  }
  return v;
}

}  // namespace detail

struct ReportOptions {
  unsigned long long budget = kDefaultBudget;
};

/// One row per (r, m, k) with r+m-1 <= max_size and 1 <= k <= r.
inline std::vector<ReportRow> report_table(std::size_t max_size, Json const& catalog,
                                           ReportOptions opt = {}) {
  if (max_size < 1 || max_size > kMaxLambdaBase) {
    throw CapacityError("report table covers sizes 1.." + std::to_string(kMaxLambdaBase));
  }
  std::vector<ReportRow> rows;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (std::size_t r = 1; r <= n; ++r) {
      std::size_t const m = n + 1 - r;
      OpTable const base = make_monogenic({r, m});
      LambdaSemigroup const lam = build_lambda(base);
      for (std::size_t k = 1; k <= r; ++k) {
        ReportRow row;
        row.r = r;
        row.m = m;
        row.k = k;
        SubTable const sb = subtable(base, power_ideal(base, k));
        SubTable const sl = lambda_power_table(lam, k);
        row.size = sb.table.size();
        row.lambda_size = sl.table.size();
        row.aut_base = group_shape(automorphisms(sb.table, opt.budget).group);
        row.aut_lambda = group_shape(automorphisms(sl.table, opt.budget).group);
        if (Json const* e = detail::find_row(catalog, r, m, k)) {
          row.expected_base = e->at("aut_base").get<std::string>();
          row.expected_lambda = e->at("aut_lambda").get<std::string>();
          row.printed_order = e->at("printed_order").get<std::string>();
        }
        row.verdict = detail::judge(row);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline Json report_to_json(std::vector<ReportRow> const& rows) {
  Json out = Json::array();
  for (auto const& r : rows) {
    Json j{{"row", r.name()},
           {"r", r.r},
           {"m", r.m},
           {"k", r.k},
           {"size", r.size},
           {"lambda_size", r.lambda_size},
           {"aut_base", shape_text(r.aut_base)},
           {"aut_base_order", to_decimal(r.aut_base.order)},
           {"aut_lambda", shape_text(r.aut_lambda)},
           {"aut_lambda_order", to_decimal(r.aut_lambda.order)},
           {"verdict", verdict_name(r.verdict)}};
    j["expected_lambda"] = r.expected_lambda ? Json(*r.expected_lambda) : Json();
    j["printed_order"] = r.printed_order ? Json(*r.printed_order) : Json();
    if (!r.note.empty()) j["note"] = r.note;
    out.push_back(std::move(j));
  }
  return out;
}

inline std::string report_to_csv(std::vector<ReportRow> const& rows) {
  std::string out =
      "row,r,m,k,size,lambda_size,aut_base,aut_lambda,aut_lambda_order,printed_order,verdict\n";
  for (auto const& r : rows) {
    out += r.name() + ',' + std::to_string(r.r) + ',' + std::to_string(r.m) + ',' +
           std::to_string(r.k) + ',' + std::to_string(r.size) + ',' +
           std::to_string(r.lambda_size) + ',' + shape_text(r.aut_base) + ',' +
           shape_text(r.aut_lambda) + ',' + to_decimal(r.aut_lambda.order) + ',' +
           r.printed_order.value_or("") + ',' + verdict_name(r.verdict) + '\n';
  }
  return out;
}

inline bool any_mismatch(std::vector<ReportRow> const& rows) {
  return std::any_of(rows.begin(), rows.end(),
                     [](ReportRow const& r) { return r.verdict == Verdict::mismatch; });
}

}  // namespace superext
