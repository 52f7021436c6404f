#pragma once

// JSON forms of the library's objects. Sets are ascending arrays of residues;
// a set always travels with an explicit n.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubefree/construction.hpp"
#include "cubefree/detection.hpp"
#include "cubefree/oracle.hpp"
#include "cubefree/search.hpp"

namespace cubefree {

using Json = nlohmann::json;

inline Json to_json(const ResidueSet& s) { return Json(s.elements()); }

inline Json to_json(const GeneratorMultiset& g) { return Json(g.elements()); }

inline Json to_json(const CubeWitness& w) {
  return Json{{"generators", to_json(w.generators)}, {"cube", to_json(w.cube)}};
}

inline Json to_json(const BlockVector& bv) {
  Json blocks = Json::array();
  for (auto [first, last] : bv.blocks()) blocks.push_back(Json::array({first, last}));
  return Json{{"d", bv.d}, {"lengths", bv.lengths}, {"total", bv.total}, {"layer_ranges", blocks}};
}

inline Json to_json(const SearchCertificate& c) {
  return Json{{"mode", to_string(c.mode)},      {"optimum", c.optimum},       {"witness", to_json(c.witness)},
              {"explored", c.explored},         {"elapsed_ms", c.elapsed_ms}, {"stats", c.stats}};
}

inline Json to_json(const KeylemmaReport& r) {
  return Json{{"k", r.k},
              {"x", r.x},
              {"space_size", r.space_size},
              {"checked", r.checked},
              {"half_sum", r.half_sum},
              {"disjoint_zeros", r.disjoint_zeros},
              {"counterexample_count", r.counterexample_count},
              {"counterexamples", r.counterexamples}};
}

/// A set from a JSON array of integers; each must be a residue of ctx.
inline ResidueSet residue_set_from_json(const GroupContext& ctx, const Json& j) {
  if (!j.is_array()) throw ArgumentError("expected a JSON array of residues");
  ResidueSet s(ctx);
  for (const Json& v : j) {
    if (!v.is_number_integer()) throw ArgumentError("set entries must be integers");
    const auto x = v.get<std::int64_t>();
    ctx.check(x);
    s.insert(static_cast<Residue>(x));
  }
  return s;
}

/// Integers from "1,2,3" (spaces allowed, empty string = no values).
inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) {
      if (text.find_first_not_of(" \t,") == std::string::npos) continue;
      throw ArgumentError("empty entry in list '" + text + "'");
    }
    const auto e = item.find_last_not_of(" \t");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ArgumentError("not an integer: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

/// Reads a JSON array from `arg` if it names an existing file, else parses a comma list.
inline Json list_argument(const std::string& arg) {
  std::ifstream file(arg);
  if (file) {
    try {
      return Json::parse(file);
    } catch (const Json::parse_error& e) {
      throw ArgumentError("cannot parse " + arg + ": " + e.what());
    }
  }
  return Json(parse_int_list(arg));
}

inline ResidueSet parse_set_argument(const GroupContext& ctx, const std::string& arg) {
  return residue_set_from_json(ctx, list_argument(arg));
}

}  // namespace cubefree
