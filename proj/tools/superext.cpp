// Command-line front end: enumeration, table construction, automorphism
// groups, isomorphism tests and the summary table.
//
// Exit codes: 0 ok, 1 mismatch, 2 capacity or budget exhausted, 3 parse error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "superext/automorphisms.hpp"
#include "superext/conjectures.hpp"
#include "superext/json_io.hpp"
#include "superext/lambda.hpp"
#include "superext/report.hpp"

using namespace superext;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitParse = 3;

struct Common {
  bool perf = false;
  unsigned long long budget = kDefaultBudget;
  std::string out;
  std::string format = "json";
};

void emit(Common const& c, std::string const& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(c.out, text);
  }
}

int cmd_lambda_count(Common const& c, unsigned n) {
  unsigned const cap = c.perf ? 7 : 6;
  if (n < 1 || n > cap) {
    throw CapacityError("lambda-count: n must be in 1.." + std::to_string(cap) +
                        (c.perf ? "" : " (7 with --perf)"));
  }
  auto const t0 = std::chrono::steady_clock::now();
  auto const count = count_mlf(n);
  double const secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("lambda(%u) = %llu  (%.3f s)\n", n, static_cast<unsigned long long>(count), secs);
  return 0;
}

int cmd_build(Common const& c, std::size_t r, std::size_t m, std::size_t k) {
  if (r < 1 || m < 1) throw InvalidInput("build: r and m must be >= 1");
  if (k < 1 || k > r) throw InvalidInput("build: k must be in 1..r");
  LambdaSemigroup const lam = build_lambda(make_monogenic({r, m}), {.perf = c.perf});
  SubTable const st = lambda_power_table(lam, k);
  emit(c, table_to_json(st.table).dump() + "\n");
  if (!c.out.empty()) {
    std::printf("wrote %zu-element table to %s\n", st.table.size(), c.out.c_str());
  }
  return 0;
}

int cmd_aut(Common const& c, std::string const& file) {
  OpTable const t = table_from_json(read_json_file(file));
  AutomorphismResult const res = automorphisms(t, c.budget);
  GroupShape const s = group_shape(res.group);
  Json gens = Json::array();
  for (auto const& g : res.group.generators()) gens.push_back(perm_to_json(g));
  Json orbits = Json::array();
  for (auto const& o : res.group.orbits()) {
    if (o.size() < 2) continue;
    Json names = Json::array();
    for (Point p : o) names.push_back(t.label(p));
    orbits.push_back(names);
  }
  Json out{{"size", t.size()},
           {"order", to_decimal(s.order)},
           {"named_form", s.named_form ? Json(*s.named_form) : Json()},
           {"generators", gens},
           {"orbits", orbits},
           {"nodes", res.nodes}};
  emit(c, out.dump(1) + "\n");
  return 0;
}

int cmd_report(Common const& c, std::size_t max_size, std::string const& catalog_path) {
  Json const catalog = load_catalog(catalog_path.empty() ? default_catalog_path() : catalog_path);
  auto const rows = report_table(max_size, catalog, {.budget = c.budget});
  if (c.format == "csv") {
    emit(c, report_to_csv(rows));
  } else {
    emit(c, report_to_json(rows).dump(1) + "\n");
  }
  std::size_t flagged = 0, bad = 0;
  for (auto const& r : rows) {
    flagged += r.verdict == Verdict::flagged;
    bad += r.verdict == Verdict::mismatch;
    if (r.verdict != Verdict::match) {
      std::fprintf(stderr, "%s: %s (%s)\n", r.name().c_str(), verdict_name(r.verdict),
                   r.note.c_str());
    }
  }
  std::fprintf(stderr, "%zu rows, %zu mismatch, %zu flagged\n", rows.size(), bad, flagged);
  return any_mismatch(rows) ? kExitMismatch : 0;
}

int cmd_iso(Common const& c, std::string const& fa, std::string const& fb) {
  OpTable const a = table_from_json(read_json_file(fa));
  OpTable const b = table_from_json(read_json_file(fb));
  IsomorphismResult const res = isomorphic(a, b, c.budget);
  Json out;
  if (res.witness) {
    Json w = Json::object();
    for (Elem x = 0; x < a.size(); ++x) w[a.label(x)] = b.label((*res.witness)[x]);
    out = {{"isomorphic", true}, {"witness", perm_to_json(Perm(*res.witness))}, {"by_label", w}};
  } else {
    out = {{"isomorphic", false}, {"invariant", res.invariant}};
  }
  emit(c, out.dump(1) + "\n");
  return res.witness ? 0 : kExitMismatch;
}

int cmd_conjectures(Common const& c, std::size_t max_size) {
  ConjectureReport const rep = conjecture_probe(max_size, c.perf, c.budget);
  emit(c, conjecture_to_json(rep).dump(1) + "\n");
  std::size_t c1 = 0, c2 = 0;
  for (auto const& v : rep.c1) {
    c1 += v.holds;
    if (!v.holds) std::fprintf(stderr, "C1 r+m=%zu: groups differ\n", v.sum);
  }
  for (auto const& v : rep.c2) {
    c2 += v.holds;
    if (!v.holds) {
      std::fprintf(stderr, "C2 M%zu%zu: range order %s\n", v.r, v.m,
                   to_decimal(v.range.order).c_str());
    }
  }
  std::fprintf(stderr, "C1 holds in %zu of %zu cases, C2 in %zu of %zu\n", c1, rep.c1.size(), c2,
               rep.c2.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superextensions of finite semigroups"};
  app.require_subcommand(1);
  Common c;
  app.add_flag("--perf", c.perf, "enable the larger tiers (6-point bases, n = 7 counts)");
  app.add_option("--budget", c.budget, "node budget for automorphism searches");

  unsigned count_n = 0;
  auto* count = app.add_subcommand("lambda-count", "number of maximal linked families on n points");
  count->add_option("n", count_n)->required();

  std::size_t r = 0, m = 0, k = 1;
  auto* build = app.add_subcommand("build", "lambda(M_{r,m}^k) as a JSON table");
  build->add_option("r", r)->required();
  build->add_option("m", m)->required();
  build->add_option("k", k);
  build->add_option("--out", c.out);

  std::string table_file;
  auto* aut = app.add_subcommand("aut", "automorphism group of a JSON table");
  aut->add_option("table", table_file)->required()->check(CLI::ExistingFile);
  aut->add_option("--out", c.out);

  std::size_t max_size = 5;
  std::string catalog;
  auto* report = app.add_subcommand("report-table", "summary table against the catalog");
  report->add_option("max_size", max_size);
  report->add_option("--out", c.out);
  report->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--catalog", catalog);

  std::string file_a, file_b;
  auto* iso = app.add_subcommand("iso", "isomorphism test of two JSON tables");
  iso->add_option("a", file_a)->required()->check(CLI::ExistingFile);
  iso->add_option("b", file_b)->required()->check(CLI::ExistingFile);
  iso->add_option("--out", c.out);

  std::size_t probe_size = 5;
  auto* probe = app.add_subcommand("conjectures", "per-case verdicts for the two patterns");
  probe->add_option("max_size", probe_size);
  probe->add_option("--out", c.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*count) return cmd_lambda_count(c, count_n);
    if (*build) return cmd_build(c, r, m, k);
    if (*aut) return cmd_aut(c, table_file);
    if (*report) return cmd_report(c, max_size, catalog);
    if (*iso) return cmd_iso(c, file_a, file_b);
    if (*probe) return cmd_conjectures(c, probe_size);
  } catch (ParseError const& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (CapacityError const& e) {
    std::fprintf(stderr, "capacity: %s\n", e.what());
    return kExitCapacity;
  } catch (ResourceError const& e) {
    std::fprintf(stderr, "budget exhausted after %llu nodes: %s\n", e.nodes(), e.what());
    return kExitCapacity;
  } catch (Error const& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitMismatch;
  }
  return 0;
}
