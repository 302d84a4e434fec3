#pragma once

// JSON formats for tables, families and permutations.
//
//   table:  {"size": 4, "labels": ["a^1", ...], "table": [[...], ...]}
//   family: {"n": 3, "minimal_sets": [[0,1],[0,2],[1,2]]}
//   perm:   [images...]

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "superext/errors.hpp"
#include "superext/perm_group.hpp"
#include "superext/semigroup.hpp"
#include "superext/setfam.hpp"

namespace superext {

using Json = nlohmann::json;

inline Json table_to_json(OpTable const& t) {
  Json rows = Json::array();
  for (Elem x = 0; x < t.size(); ++x) {
    auto const r = t.row(x);
    rows.push_back(std::vector<Elem>(r.begin(), r.end()));
  }
  return Json{{"size", t.size()}, {"labels", t.labels()}, {"table", rows}};
}

inline OpTable table_from_json(Json const& j) {
  try {
    auto const size = j.at("size").get<std::size_t>();
    auto labels = j.contains("labels") ? j.at("labels").get<std::vector<std::string>>()
                                       : std::vector<std::string>{};
    auto const& rows = j.at("table");
    if (!rows.is_array() || rows.size() != size) throw ParseError("table: expected size rows");
    std::vector<Elem> data;
    data.reserve(size * size);
    for (auto const& row : rows) {
      if (!row.is_array() || row.size() != size) throw ParseError("table: ragged row");
      for (auto const& v : row) data.push_back(v.get<Elem>());
    }
    return OpTable(size, std::move(data), std::move(labels));
  } catch (Json::exception const& e) {
    throw ParseError(std::string("table: ") + e.what());
  } catch (InvalidInput const& e) {
    throw ParseError(std::string("table: ") + e.what());
  }
}

inline Json family_to_json(LinkedFamily const& f) {
  Json sets = Json::array();
  for (auto m : f.minimal_sets()) sets.push_back(m.points());
  return Json{{"n", f.ground_size()}, {"minimal_sets", sets}};
}

inline LinkedFamily family_from_json(Json const& j) {
  try {
    auto const n = j.at("n").get<unsigned>();
    if (n < 1 || n > kMaxGround) throw ParseError("family: n out of range");
    std::vector<SubsetCode> sets;
    for (auto const& s : j.at("minimal_sets")) {
      std::uint32_t bits = 0;
      for (auto const& p : s) {
        auto const i = p.get<unsigned>();
        if (i >= n) throw ParseError("family: point index out of range");
        bits |= std::uint32_t{1} << i;
      }
      sets.emplace_back(bits);
    }
    if (sets.empty()) throw ParseError("family: no minimal sets");
    LinkedFamily f = minimize(sets, GroundSet(n));
    if (f.minimal_sets().size() != sets.size()) {
      throw ParseError("family: minimal sets are not an antichain");
    }
    return f;
  } catch (Json::exception const& e) {
    throw ParseError(std::string("family: ") + e.what());
  } catch (InvalidInput const& e) {
    throw ParseError(std::string("family: ") + e.what());
  }
}

inline Json perm_to_json(Perm const& p) { return p.images(); }

inline Perm perm_from_json(Json const& j) {
  try {
    return Perm(j.get<std::vector<Point>>());
  } catch (Json::exception const& e) {
    throw ParseError(std::string("perm: ") + e.what());
  } catch (InvalidInput const& e) {
    throw ParseError(std::string("perm: ") + e.what());
  }
}

inline std::string to_decimal(BigInt const& v) { return v.str(); }

inline Json read_json_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (Json::exception const& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_text_file(std::string const& path, std::string const& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace superext
