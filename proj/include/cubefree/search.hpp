#pragma once

// Exact extremal searches over subsets of Z_{2^n}.
//
// All cube-containment questions are turned into a covering model first:
// the distinct cube sets Sigma*S (|S| = d), with every set that contains
// another one dropped. A set A is d-cube-free iff it contains none of the
// remaining cube sets.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cubefree/construction.hpp"
#include "cubefree/counting.hpp"
#include "cubefree/detection.hpp"
#include "cubefree/enumerate.hpp"
#include "cubefree/group.hpp"
#include "cubefree/sumset.hpp"

namespace cubefree {

inline constexpr std::uint64_t kDefaultSearchBudget = 1'000'000'000;

/// Budget from CUBEFREE_BUDGET when set, else `fallback`.
inline std::uint64_t budget_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("CUBEFREE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return fallback;
}

enum class CubePatterns { kAll, kConc2 };

/// Covering model: maximise |A| subject to A containing no listed cube set.
struct CoverModel {
  GroupContext ctx;
  std::size_t d;
  CubePatterns patterns;
  std::vector<ResidueSet> cubes;  // inclusion-minimal, sorted by (size, elements)
  std::uint64_t generated = 0;    // cube sets before deduplication

  /// First listed cube set inside A, if any.
  const ResidueSet* violated_by(const ResidueSet& a) const {
    for (const ResidueSet& c : cubes)
      if (c.is_subset_of(a)) return &c;
    return nullptr;
  }
};

namespace detail {

inline void keep_minimal(std::vector<ResidueSet>& sets) {
  std::sort(sets.begin(), sets.end(), [](const ResidueSet& a, const ResidueSet& b) {
    const auto sa = a.size(), sb = b.size();
    return sa != sb ? sa < sb : lex_less(a, b);
  });
  // Kept sets bucketed by their smallest element: a kept subset of K has its minimum inside K.
  std::unordered_map<Residue, std::vector<std::size_t>> by_min;
  std::vector<ResidueSet> kept;
  for (ResidueSet& s : sets) {
    bool dominated = false;
    s.for_each([&](Residue e) {
      if (dominated) return;
      auto it = by_min.find(e);
      if (it == by_min.end()) return;
      for (std::size_t j : it->second)
        if (kept[j].is_subset_of(s)) {
          dominated = true;
          break;
        }
    });
    if (dominated) continue;
    by_min[*s.min()].push_back(kept.size());
    kept.push_back(std::move(s));
  }
  sets = std::move(kept);
}

}  // namespace detail

/// Distinct inclusion-minimal cube sets. `kConc2` restricts to Sigma*{x,x,x} and Sigma*{x,3x,y} (d = 3).
inline CoverModel build_cover_model(const GroupContext& ctx, std::size_t d, CubePatterns patterns,
                                    std::uint64_t budget = kDefaultSearchBudget) {
  if (d < 1) throw ArgumentError("cube dimension must be >= 1");
  if (patterns == CubePatterns::kConc2 && d != 3) throw ArgumentError("conc2 patterns describe 3-cubes");
  const Residue m = ctx.modulus();
  const std::uint64_t space =
      patterns == CubePatterns::kAll ? multiset_count(m, d) : std::uint64_t{m} * m + m;
  if (space > budget)
    throw CapacityError("cube enumeration needs " + std::to_string(space) + " generator multisets, budget " +
                            std::to_string(budget),
                        space, budget);
  std::unordered_set<ResidueSet, ResidueSetHash> distinct;
  CoverModel model{ctx, d, patterns, {}, 0};
  auto add = [&](std::span<const Residue> gens) {
    ++model.generated;
    distinct.insert(projective_cube(ctx, gens));
  };
  if (patterns == CubePatterns::kAll) {
    for (NonDecreasingSequences seq(0, m - 1, d); seq.valid(); seq.next()) add(seq.current());
  } else {
    for (Residue x = 0; x < m; ++x) {
      const Residue xxx[] = {x, x, x};
      add(xxx);
      const Residue x3 = (3 * x) & ctx.mask();
      for (Residue y = 0; y < m; ++y) {
        const Residue g[] = {x, x3, y};
        add(g);
      }
    }
  }
  model.cubes.assign(distinct.begin(), distinct.end());
  detail::keep_minimal(model.cubes);
  return model;
}

enum class SearchMode { kExhaustive, kBranchAndBound, kLayerUnions, kMinSchur };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::kExhaustive:
      return "exhaustive";
    case SearchMode::kBranchAndBound:
      return "branch_and_bound";
    case SearchMode::kLayerUnions:
      return "layer_unions";
    case SearchMode::kMinSchur:
      return "min_schur_exhaustive";
  }
  return "?";
}

struct SearchCertificate {
  SearchMode mode;
  std::uint64_t optimum;
  ResidueSet witness;
  std::uint64_t explored;
  double elapsed_ms;
  std::map<std::string, std::uint64_t> stats;
};

struct SearchOptions {
  bool symmetry = false;  // fix residue 1 under the odd-unit action
  std::uint64_t budget = kDefaultSearchBudget;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::uint64_t universe_mask(const GroupContext& ctx) {
  return ctx.modulus() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ctx.modulus()) - 1;
}

inline std::uint64_t odd_mask(const GroupContext& ctx) {
  return universe_mask(ctx) & 0xAAAAAAAAAAAAAAAAULL;
}

inline void check_small(const GroupContext& ctx, const char* what) {
  if (ctx.n() > 6) throw CapacityError(std::string(what) + " supports n <= 6", ctx.n(), 6);
}

// Branch-and-bound for the largest set avoiding every cube set of a model.
class MaxCubeFree {
 public:
  MaxCubeFree(const CoverModel& model, const SearchOptions& opts, bool value_order = false)
      : ctx_(model.ctx), universe_(universe_mask(ctx_)), budget_(opts.budget), symmetry_(opts.symmetry) {
    const Residue m = ctx_.modulus();
    touching_.resize(m);
    for (const ResidueSet& c : model.cubes) {
      const std::uint64_t cm = c.mask();
      if (std::popcount(cm) == 1) {
        always_out_ |= cm;
        continue;
      }
      for (Residue v = 0; v < m; ++v)
        if ((cm >> v) & 1U) touching_[v].push_back(cm);
    }
    // L_1 first, then L_2, ..., each by value; 0 last.
    if (value_order) {
      for (Residue x = 0; x < m; ++x) order_.push_back(x);
    } else {
      for (unsigned layer = 1; layer <= ctx_.n() + 1; ++layer)
        layer_set(layer, ctx_).for_each([&](Residue x) { order_.push_back(x); });
    }
  }

  std::optional<std::uint64_t> run(std::uint64_t incumbent_size, std::uint64_t incumbent) {
    best_size_ = incumbent_size;
    best_ = incumbent;
    found_better_ = false;
    dfs(0, 0, always_out_);
    return found_better_ ? std::optional<std::uint64_t>(best_) : std::nullopt;
  }

  std::uint64_t best_size() const noexcept { return best_size_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void dfs(std::size_t idx, std::uint64_t chosen, std::uint64_t excluded) {
    if (++nodes_ > budget_)
      throw CapacityError("branch-and-bound exceeded its node budget of " + std::to_string(budget_), nodes_,
                          budget_);
    const std::uint64_t undecided = universe_ & ~(chosen | excluded);
    const auto bound = static_cast<std::uint64_t>(std::popcount(chosen) + std::popcount(undecided));
    if (bound <= best_size_) return;
    if (undecided == 0) {
      best_size_ = static_cast<std::uint64_t>(std::popcount(chosen));
      best_ = chosen;
      found_better_ = true;
      return;
    }
    while (!((undecided >> order_[idx]) & 1U)) ++idx;
    const Residue v = order_[idx];
    const std::uint64_t bit = std::uint64_t{1} << v;

    // Include v: no cube set may become fully chosen; a cube set with a
    // single remaining undecided member forces that member out.
    std::uint64_t forced = 0;
    bool ok = true;
    const std::uint64_t with_v = chosen | bit;
    for (std::uint64_t cm : touching_[v]) {
      const std::uint64_t rest = cm & ~with_v;
      if (rest == 0) {
        ok = false;
        break;
      }
      if (rest & excluded) continue;
      if (std::popcount(rest) == 1) forced |= rest;
    }
    if (ok) dfs(idx + 1, with_v, excluded | forced);

    std::uint64_t out = excluded | bit;
    // Every cube-free set meeting L_1 has an image under the odd units that contains 1.
    if (symmetry_ && v == 1) out |= odd_mask(ctx_);
    dfs(idx + 1, chosen, out);
  }

  GroupContext ctx_;
  std::uint64_t universe_;
  std::uint64_t budget_;
  bool symmetry_;
  std::uint64_t always_out_ = 0;
  std::vector<std::vector<std::uint64_t>> touching_;
  std::vector<Residue> order_;
  std::uint64_t best_size_ = 0;
  std::uint64_t best_ = 0;
  bool found_better_ = false;
  std::uint64_t nodes_ = 0;
};

inline SearchCertificate emit_cube_free(SearchCertificate cert, std::size_t d) {
  if (cert.witness.size() != cert.optimum || !is_d_cube_free(cert.witness, d))
    throw std::logic_error("search witness " + cert.witness.to_string() + " is not a d-cube-free set of size " +
                           std::to_string(cert.optimum));
  return cert;
}

}  // namespace detail

/// Largest d-cube-free subset by branch-and-bound over residues in layer order
/// (L_1 first), bounding by |chosen| + |undecided|. Requires n <= 6.
inline SearchCertificate max_cube_free_exact(const GroupContext& ctx, std::size_t d, const SearchOptions& opts = {}) {
  detail::check_small(ctx, "max_cube_free_exact");
  detail::Stopwatch clock;
  const CoverModel model = build_cover_model(ctx, d, CubePatterns::kAll, opts.budget);
  detail::MaxCubeFree bnb(model, opts);
  bnb.run(0, 0);
  SearchCertificate cert{SearchMode::kBranchAndBound, bnb.best_size(), ResidueSet::from_mask(ctx, 0), bnb.nodes(),
                         0.0, {{"cube_sets", model.cubes.size()}}};
  // With the optimum fixed, an include-first pass in value order stops at the
  // lexicographically smallest maximiser.
  if (bnb.best_size() > 0) {
    detail::MaxCubeFree again(model, opts, true);
    const auto best = again.run(bnb.best_size() - 1, 0);
    cert.witness = ResidueSet::from_mask(ctx, *best);
    cert.explored += again.nodes();
  }
  cert.elapsed_ms = clock.ms();
  return detail::emit_cube_free(std::move(cert), d);
}

/// Largest d-cube-free subset by enumerating all 2^(2^n) subsets. Requires n <= 4.
inline SearchCertificate max_cube_free_exhaustive(const GroupContext& ctx, std::size_t d) {
  if (ctx.n() > 4) throw CapacityError("exhaustive subset enumeration supports n <= 4", ctx.n(), 4);
  detail::Stopwatch clock;
  const CoverModel model = build_cover_model(ctx, d, CubePatterns::kAll);
  std::vector<std::uint64_t> masks;
  for (const ResidueSet& c : model.cubes) masks.push_back(c.mask());
  const std::uint64_t total = std::uint64_t{1} << ctx.modulus();
  std::uint64_t best = 0, best_size = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto sz = static_cast<std::uint64_t>(std::popcount(a));
    if (sz <= best_size && a != 0) continue;
    bool free = true;
    for (std::uint64_t c : masks)
      if ((c & a) == c) {
        free = false;
        break;
      }
    if (free && (sz > best_size || a == 0)) {
      best = a;
      best_size = sz;
    }
  }
  SearchCertificate cert{SearchMode::kExhaustive, best_size, ResidueSet::from_mask(ctx, best), total, clock.ms(),
                         {{"cube_sets", model.cubes.size()}}};
  return detail::emit_cube_free(std::move(cert), d);
}

/// Largest d-cube-free union of layers. Unions are tested in decreasing
/// order of size; the first cube-free one is the optimum.
inline SearchCertificate max_cube_free_layer_unions(const GroupContext& ctx, std::size_t d) {
  if (d < 1) throw ArgumentError("cube dimension must be >= 1");
  if (ctx.n() > 20) throw CapacityError("layer-union search supports n <= 20", ctx.n(), 20);
  detail::Stopwatch clock;
  const unsigned layers = ctx.n() + 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> unions;  // (size, layer mask)
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << layers); ++mask) {
    std::uint64_t size = 0;
    for (unsigned i = 1; i <= layers; ++i)
      if ((mask >> (i - 1)) & 1U) size += layer_size(i, ctx);
    unions.emplace_back(size, mask);
  }
  std::sort(unions.begin(), unions.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::uint64_t tested = 0;
  for (const auto& [size, mask] : unions) {
    ++tested;
    ResidueSet a = layer_union(mask, ctx);
    if (!is_d_cube_free(a, d)) continue;
    SearchCertificate cert{SearchMode::kLayerUnions, size, std::move(a), tested, clock.ms(),
                           {{"layer_mask", mask}, {"unions", unions.size()}}};
    return detail::emit_cube_free(std::move(cert), d);
  }
  throw std::logic_error("the empty union is always cube-free");
}

/// Minimum number of Schur triples over all subsets of size m. Requires n <= 6.
/// With symmetry, only sets containing 1 (and, when m <= 2^{n-1}, sets of even residues) are visited.
inline SearchCertificate min_schur_exhaustive(const GroupContext& ctx, std::uint64_t m, const SearchOptions& opts = {}) {
  detail::check_small(ctx, "min_schur_exhaustive");
  const Residue size = ctx.modulus();
  if (m > size) throw RangeError("cardinality exceeds 2^n");
  detail::Stopwatch clock;

  struct Pass {
    std::uint64_t fixed;  // always included
    std::uint64_t pool;   // free positions
    std::uint64_t pick;   // how many free positions to pick
  };
  std::vector<Pass> passes;
  const std::uint64_t all = detail::universe_mask(ctx);
  if (opts.symmetry && m >= 1) {
    passes.push_back({2, all & ~std::uint64_t{2}, m - 1});
    const std::uint64_t evens = all & ~detail::odd_mask(ctx);
    if (m <= static_cast<std::uint64_t>(std::popcount(evens))) passes.push_back({0, evens, m});
  } else {
    passes.push_back({0, all, m});
  }
  std::uint64_t space = 0;
  for (const Pass& p : passes) space += binomial(static_cast<std::uint64_t>(std::popcount(p.pool)), p.pick);
  if (space > opts.budget)
    throw CapacityError("min-Schur enumeration needs " + std::to_string(space) + " subsets, budget " +
                            std::to_string(opts.budget),
                        space, opts.budget);

  // Residues of each pool, so that a dense k-subset index maps onto them.
  auto schur = [&](std::uint64_t a) {
    std::uint64_t neg = 0;
    for (std::uint64_t w = a; w; w &= w - 1) {
      const auto x = static_cast<Residue>(std::countr_zero(w));
      neg |= std::uint64_t{1} << ((size - x) & (size - 1));
    }
    std::uint64_t total = 0;
    for (std::uint64_t w = a; w; w &= w - 1) {
      const auto z = static_cast<Residue>(std::countr_zero(w));
      const std::uint64_t rot =
          z == 0 ? neg : (((neg << z) | (neg >> (size - z))) & all);  // z - A
      total += static_cast<std::uint64_t>(std::popcount(a & rot));
    }
    return total;
  };

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max(), best_set = 0, minimisers = 0, visited = 0;
  for (const Pass& p : passes) {
    std::vector<Residue> slots;
    for (std::uint64_t w = p.pool; w; w &= w - 1) slots.push_back(static_cast<Residue>(std::countr_zero(w)));
    const auto nslots = static_cast<unsigned>(slots.size());
    auto visit = [&](std::uint64_t dense) {
      std::uint64_t a = p.fixed;
      for (std::uint64_t w = dense; w; w &= w - 1) a |= std::uint64_t{1} << slots[std::countr_zero(w)];
      ++visited;
      const std::uint64_t st = schur(a);
      if (st < best) {
        best = st;
        best_set = a;
        minimisers = 0;
      }
      if (st == best) ++minimisers;
    };
    if (p.pick == 0) {
      visit(0);
      continue;
    }
    if (p.pick > nslots) continue;
    std::uint64_t dense = (p.pick == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << p.pick) - 1;
    do visit(dense);
    while (next_combination(dense, nslots));
  }

  ResidueSet witness = ResidueSet::from_mask(ctx, best_set);
  const ResidueSet centred = centred_set(m, ctx);
  const std::uint64_t centred_st = count_schur_triples(centred);
  if (centred_st == best) witness = centred;
  if (count_schur_triples(witness) != best || witness.size() != m)
    throw std::logic_error("min-Schur witness does not attain the reported optimum");
  SearchCertificate cert{SearchMode::kMinSchur, best, std::move(witness), visited, clock.ms(),
                         {{"centred_st", centred_st},
                          {"centred_attains", centred_st == best ? 1U : 0U},
                          {"minimisers_visited", minimisers}}};
  return cert;
}

}  // namespace cubefree
