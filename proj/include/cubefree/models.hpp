#pragma once

// Solver models for "largest d-cube-free set": a 0/1 LP in CPLEX LP format,
// a DIMACS CNF for the decision version, and a checker for solver output.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubefree/search.hpp"

namespace cubefree {

inline std::string lp_variable(Residue v) { return "x" + std::to_string(v); }

/// maximize sum x_v subject to sum_{v in K} x_v <= |K| - 1 for every cube set K.
inline std::string export_lp(const CoverModel& model) {
  std::ostringstream out;
  const Residue m = model.ctx.modulus();
  out << "\\ largest " << model.d << "-cube-free subset of Z_" << m << " (n=" << model.ctx.n() << ", patterns="
      << (model.patterns == CubePatterns::kAll ? "all" : "conc2") << ", constraints=" << model.cubes.size() << ")\n";
  out << "Maximize\n obj:";
  for (Residue v = 0; v < m; ++v) out << (v ? " + " : " ") << lp_variable(v);
  out << "\nSubject To\n";
  std::size_t row = 0;
  for (const ResidueSet& k : model.cubes) {
    out << " c" << row++ << ":";
    bool first = true;
    k.for_each([&](Residue v) {
      out << (first ? " " : " + ") << lp_variable(v);
      first = false;
    });
    out << " <= " << k.size() - 1 << "\n";
  }
  out << "Binary\n";
  for (Residue v = 0; v < m; ++v) out << " " << lp_variable(v) << "\n";
  out << "End\n";
  return out.str();
}

/// DIMACS CNF: variable v+1 means "v in A". One clause per cube set, plus a
/// sequential counter stating that at most 2^n - target residues are left out.
inline std::string export_cnf(const CoverModel& model, std::uint64_t target) {
  const std::uint64_t m = model.ctx.modulus();
  if (target > m) throw RangeError("target exceeds 2^n");
  std::vector<std::vector<std::int64_t>> clauses;
  for (const ResidueSet& k : model.cubes) {
    std::vector<std::int64_t> c;
    k.for_each([&](Residue v) { c.push_back(-static_cast<std::int64_t>(v) - 1); });
    clauses.push_back(std::move(c));
  }
  // y_i = "residue i is left out" is the literal -x_i; bound their number by r.
  const std::uint64_t r = m - target;
  std::int64_t vars = static_cast<std::int64_t>(m);
  if (r == 0) {
    for (std::uint64_t i = 0; i < m; ++i) clauses.push_back({static_cast<std::int64_t>(i) + 1});
  } else if (r < m) {
    // s[i][j] (j < r): at least j+1 of y_0..y_i are true.
    std::vector<std::vector<std::int64_t>> s(m, std::vector<std::int64_t>(r));
    for (auto& row : s)
      for (auto& v : row) v = ++vars;
    auto y = [](std::uint64_t i) { return -static_cast<std::int64_t>(i) - 1; };
    clauses.push_back({-y(0), s[0][0]});
    for (std::uint64_t j = 1; j < r; ++j) clauses.push_back({-s[0][j]});
    for (std::uint64_t i = 1; i < m; ++i) {
      clauses.push_back({-y(i), s[i][0]});
      clauses.push_back({-s[i - 1][0], s[i][0]});
      for (std::uint64_t j = 1; j < r; ++j) {
        clauses.push_back({-y(i), -s[i - 1][j - 1], s[i][j]});
        clauses.push_back({-s[i - 1][j], s[i][j]});
      }
      clauses.push_back({-y(i), -s[i - 1][r - 1]});
    }
  }
  std::ostringstream out;
  out << "c largest cube-free set, decision version\n";
  out << "c n=" << model.ctx.n() << " d=" << model.d << " target=" << target << "\n";
  out << "c variable v+1 <=> residue v in A\n";
  out << "p cnf " << vars << " " << clauses.size() << "\n";
  for (const auto& c : clauses) {
    for (std::int64_t lit : c) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

struct SolutionCheck {
  bool feasible = false;
  std::uint64_t objective = 0;
  ResidueSet chosen;
  std::vector<std::size_t> violated;       // indices into model.cubes
  std::vector<std::string> problems;       // unparseable lines, unknown names, non-binary values
};

/// Reads "name value" lines (blank lines and '#' comments ignored); names are
/// x<residue>. Missing variables count as 0. Values are rounded to 0/1 with a 1e-6 tolerance.
inline SolutionCheck validate_solution(const CoverModel& model, const std::string& text) {
  SolutionCheck check{false, 0, ResidueSet(model.ctx), {}, {}};
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    double value = 0;
    if (!(ls >> name)) continue;
    if (!(ls >> value)) {
      check.problems.push_back("line " + std::to_string(lineno) + ": expected '<name> <value>'");
      continue;
    }
    if (name.size() < 2 || name[0] != 'x' || name.find_first_not_of("0123456789", 1) != std::string::npos) {
      check.problems.push_back("line " + std::to_string(lineno) + ": unknown variable " + name);
      continue;
    }
    const unsigned long v = std::stoul(name.substr(1));
    if (v >= model.ctx.modulus()) {
      check.problems.push_back("line " + std::to_string(lineno) + ": unknown variable " + name);
      continue;
    }
    if (std::abs(value - 1.0) <= 1e-6) {
      check.chosen.insert(static_cast<Residue>(v));
    } else if (std::abs(value) > 1e-6) {
      check.problems.push_back("line " + std::to_string(lineno) + ": non-binary value for " + name);
    }
  }
  for (std::size_t i = 0; i < model.cubes.size(); ++i)
    if (model.cubes[i].is_subset_of(check.chosen)) check.violated.push_back(i);
  check.objective = check.chosen.size();
  check.feasible = check.violated.empty() && check.problems.empty();
  return check;
}

}  // namespace cubefree
