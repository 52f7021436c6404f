#pragma once

// The acceptance checks: each one reruns a statement about cube-free sets,
// Schur triples or zero-sum collections on a finite range of instances and
// reports the first failing instance.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubefree/construction.hpp"
#include "cubefree/counting.hpp"
#include "cubefree/detection.hpp"
#include "cubefree/oracle.hpp"
#include "cubefree/reference.hpp"
#include "cubefree/search.hpp"

namespace cubefree {

enum class ClaimLevel { kSmoke, kDesk };
enum class Fault { kNone, kConstructCd };

struct ClaimOptions {
  ClaimLevel level = ClaimLevel::kDesk;
  std::uint64_t seed = 20240611;
  Fault fault = Fault::kNone;
};

struct ClaimResult {
  int id = 0;
  std::string name;
  std::string statement;
  bool passed = false;
  std::uint64_t instances = 0;
  std::string detail;
  std::string counterexample;  // first failing instance, empty if none
  double elapsed_ms = 0;
  double limit_ms = 0;
};

namespace detail {

struct ClaimContext {
  const ClaimOptions& opts;
  std::mt19937_64 rng;
  ClaimResult& out;

  bool desk() const { return opts.level == ClaimLevel::kDesk; }

  ResidueSet construct(std::uint64_t d, const GroupContext& ctx) const {
    ResidueSet c = construct_cd(d, ctx);
    if (opts.fault == Fault::kConstructCd) {
      // Injected bug: also take the smallest residue that should be missing.
      ResidueSet missing = c.complement();
      if (auto x = missing.min()) c.insert(*x);
    }
    return c;
  }

  // Keeps the first failing instance.
  void fail(const std::string& instance) {
    if (out.counterexample.empty()) out.counterexample = instance;
    out.passed = false;
  }

  ResidueSet random_set(const GroupContext& ctx, std::uint64_t size) {
    std::vector<Residue> all(ctx.modulus());
    std::iota(all.begin(), all.end(), Residue{0});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    return ResidueSet::from(ctx, all);
  }

  ResidueSet random_density_set(const GroupContext& ctx, double lo, double hi) {
    std::uniform_real_distribution<double> p(lo, hi);
    std::bernoulli_distribution coin(p(rng));
    ResidueSet s(ctx);
    for (Residue x = 0; x < ctx.modulus(); ++x)
      if (coin(rng)) s.insert(x);
    return s;
  }
};

inline std::string describe(const ResidueSet& a) {
  return "n=" + std::to_string(a.context().n()) + " A=" + a.to_string();
}

// Table of C_d at n = 12 as explicit layer lists.
inline void check_construction_table(ClaimContext& c) {
  const GroupContext ctx(12);
  const std::vector<std::pair<std::uint64_t, std::vector<unsigned>>> rows = {
      {2, {1}},          {3, {1, 3}},       {4, {1, 2}},          {5, {1, 2, 4}},
      {6, {1, 2, 4, 6}}, {7, {1, 2, 4, 5}}, {8, {1, 2, 3}},       {9, {1, 2, 3, 5}},
      {26, {1, 2, 3, 4, 6, 7, 8, 10, 11}}};
  for (const auto& [d, layers] : rows) {
    ++c.out.instances;
    std::uint64_t mask = 0;
    for (unsigned l : layers) mask |= std::uint64_t{1} << (l - 1);
    if (!(c.construct(d, ctx) == layer_union(mask, ctx))) c.fail("d=" + std::to_string(d) + " n=12");
  }
  ++c.out.instances;
  if (block_vector(26).lengths != std::vector<unsigned>{5, 4, 3}) c.fail("block vector of 26");
  c.out.detail = "9 rows at n=12";
}

inline void check_two_cube_free_max(ClaimContext& c) {
  for (auto [n, expect] : {std::pair{3u, 4ull}, std::pair{4u, 8ull}}) {
    const GroupContext ctx(n);
    const auto bnb = max_cube_free_exact(ctx, 2);
    const auto all = max_cube_free_exhaustive(ctx, 2);
    c.out.instances += all.explored;
    if (bnb.optimum != expect || all.optimum != expect)
      c.fail("n=" + std::to_string(n) + " d=2: branch-and-bound " + std::to_string(bnb.optimum) + ", exhaustive " +
             std::to_string(all.optimum) + ", expected " + std::to_string(expect));
  }
  c.out.detail = "optima 4 (n=3) and 8 (n=4), both methods";
}

// Sets above (1 - 2^-l) 2^n contain Sigma*{x,...,x,y} with 2^l - 1 copies of x.
inline void check_homogeneous_threshold(ClaimContext& c) {
  const std::uint64_t samples = c.desk() ? 10'000 : 500;
  for (auto [n, ell] : {std::pair{3u, 1u}, std::pair{4u, 1u}, std::pair{4u, 2u}, std::pair{5u, 2u}}) {
    const GroupContext ctx(n);
    const std::uint64_t m = ctx.modulus();
    const std::uint64_t threshold = m - (m >> ell);
    auto test = [&](const ResidueSet& a) {
      ++c.out.instances;
      if (!find_homogeneous_cube(a, ell)) c.fail(describe(a) + " l=" + std::to_string(ell));
    };
    if (n <= 4) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits)
        if (static_cast<std::uint64_t>(std::popcount(bits)) > threshold) test(ResidueSet::from_mask(ctx, bits));
    } else {
      std::uniform_int_distribution<std::uint64_t> size(threshold + 1, m);
      for (std::uint64_t i = 0; i < samples; ++i) test(c.random_set(ctx, size(c.rng)));
    }
  }
  c.out.detail = "exhaustive at n<=4, " + std::to_string(samples) + " random sets at n=5";
}

// Sets above (1 - 1/(2^l - 1)) 2^n contain x, 2x, ..., (2^l - 1)x.
inline void check_multiple_run_threshold(ClaimContext& c) {
  for (unsigned n = 1; n <= 4; ++n) {
    const GroupContext ctx(n);
    const std::uint64_t m = ctx.modulus();
    for (unsigned ell = 1; ell <= 2; ++ell) {
      const std::uint64_t run = (std::uint64_t{1} << ell) - 1;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
        const auto size = static_cast<std::uint64_t>(std::popcount(bits));
        if (size * run <= (run - 1) * m) continue;
        ++c.out.instances;
        const ResidueSet a = ResidueSet::from_mask(ctx, bits);
        if (!find_multiple_run(a, run)) c.fail(describe(a) + " run=" + std::to_string(run));
      }
    }
  }
  c.out.detail = "exhaustive, n<=4, runs of length 1 and 3";
}

inline void check_cd_free_and_maximal(ClaimContext& c) {
  const unsigned top = c.desk() ? 7 : 5;
  for (std::uint64_t d = 1; d <= 5; ++d)
    for (unsigned n = std::max(1u, min_exponent(d)); n <= top; ++n) {
      const GroupContext ctx(n);
      const ResidueSet cd = c.construct(d, ctx);
      ++c.out.instances;
      const std::string tag = "d=" + std::to_string(d) + " n=" + std::to_string(n);
      if (auto w = find_d_cube(cd, d)) {
        c.fail(tag + ": C_d contains the cube of " + w->generators.to_string());
        continue;
      }
      cd.complement().for_each([&](Residue x) {
        ResidueSet bigger = cd;
        bigger.insert(x);
        ++c.out.instances;
        if (is_d_cube_free(bigger, d)) c.fail(tag + ": C_d + {" + std::to_string(x) + "} is still cube-free");
      });
    }
  c.out.detail = "d<=5, n<=" + std::to_string(top);
}

inline void check_layer_union_optimum(ClaimContext& c) {
  const unsigned top = c.desk() ? 10 : 6;
  for (unsigned n = 1; n <= top; ++n)
    for (std::uint64_t d = 1; d <= n; ++d) {
      const GroupContext ctx(n);
      const auto cert = max_cube_free_layer_unions(ctx, d);
      ++c.out.instances;
      const std::uint64_t expect = cd_size(d, ctx);
      if (cert.optimum != expect)
        c.fail("n=" + std::to_string(n) + " d=" + std::to_string(d) + ": best layer union " +
               std::to_string(cert.optimum) + " vs |C_d| = " + std::to_string(expect));
    }
  c.out.detail = "all d<=n<=" + std::to_string(top);
}

inline void check_schur_minimum(ClaimContext& c) {
  for (auto [n, optimum, sets] : {std::tuple{3u, 12ull, 56ull}, std::tuple{4u, 24ull, 11440ull}}) {
    const GroupContext ctx(n);
    const std::uint64_t m = (ctx.modulus() >> 1) + 1;
    const auto cert = min_schur_exhaustive(ctx, m);
    c.out.instances += cert.explored;
    if (cert.optimum != optimum || cert.explored != sets || cert.stats.at("centred_attains") != 1)
      c.fail("n=" + std::to_string(n) + ": minimum " + std::to_string(cert.optimum) + " over " +
             std::to_string(cert.explored) + " sets");
  }
  c.out.detail = "M = 2^(n-1)+1 at n=3,4";
}

inline void check_three_cube_free_max(ClaimContext& c) {
  const unsigned top = c.desk() ? 5 : 4;
  for (unsigned n = 3; n <= top; ++n) {
    const GroupContext ctx(n);
    SearchOptions opts;
    opts.symmetry = n >= 5;
    opts.budget = budget_from_env(kDefaultSearchBudget);
    const auto cert = max_cube_free_exact(ctx, 3, opts);
    c.out.instances += cert.explored;
    const std::uint64_t expect = 5 * (ctx.modulus() / 8);
    if (cert.optimum != expect)
      c.fail("n=" + std::to_string(n) + ": optimum " + std::to_string(cert.optimum) + ", expected " +
             std::to_string(expect));
  }
  c.out.detail = "n=3.." + std::to_string(top) + " by branch-and-bound";
}

inline void check_disjoint_zero_sums(ClaimContext& c) {
  std::vector<std::pair<unsigned, std::size_t>> cases = {{1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}};
  if (c.desk()) cases.insert(cases.end(), {{3, 0}, {3, 1}});
  for (auto [k, x] : cases) {
    const auto report = keylemma_verify_all(k, x, budget_from_env(kDefaultKeylemmaBudget));
    c.out.instances += report.checked;
    if (report.counterexample_count > 0) {
      std::string inst = "k=" + std::to_string(k) + " x=" + std::to_string(x);
      if (!report.counterexamples.empty())
        inst += " C=" + ResidueCollection(k, report.counterexamples.front()).to_string();
      c.fail(inst);
    }
  }
  c.out.detail = c.desk() ? "k=1 (x<=1), k=2 (x<=2), k=3 (x<=1)" : "k=1 (x<=1), k=2 (x<=2)";
}

inline void check_half_sum_exists(ClaimContext& c) {
  const auto report = alon_freiman_verify_all(2);
  c.out.instances = report.checked;
  if (report.checked != 1716) c.fail("checked " + std::to_string(report.checked) + " multisets, expected 1716");
  if (!report.failures.empty()) c.fail("C=" + ResidueCollection(2, report.failures.front()).to_string());
  c.out.detail = "all multisets of 7 non-zero residues mod 8";
}

// Random collections without a 2^k sub-sum, and one random valid site of each
// applicable compression type.
inline void check_compressions(ClaimContext& c) {
  const std::uint64_t target = c.desk() ? 10'000 : 500;
  std::uint64_t sites[3] = {0, 0, 0};
  std::uniform_int_distribution<unsigned> pick_k(1, 4);
  std::bernoulli_distribution unit_bias(0.45);
  std::uint64_t attempts = 0;
  while (sites[0] + sites[1] + sites[2] < target && attempts < 1000 * target) {
    ++attempts;
    const unsigned k = pick_k(c.rng);
    const Residue mod = Residue{1} << (k + 1), half = Residue{1} << k;
    std::uniform_int_distribution<std::size_t> pick_size(2, half + 2);
    std::uniform_int_distribution<Residue> pick_res(1, mod - 1);
    std::vector<Residue> e(pick_size(c.rng));
    for (Residue& v : e) v = unit_bias(c.rng) ? (c.rng() & 1 ? 1 : mod - 1) : pick_res(c.rng);
    // Plant type 2 / type 3 shapes some of the time; they are rare otherwise.
    const unsigned shape = static_cast<unsigned>(c.rng() % 3);
    if (shape == 1 && e.size() >= 3) {
      const Residue t = pick_res(c.rng);
      e[0] = mod - t;
      e[1] = e[2] = (half + mod - t) & (mod - 1);
    } else if (shape == 2 && k >= 2) {
      // u, v in range plus 2^(k-1) units of one sign, then a few random extras.
      const Residue lo = 3 * (half / 4);
      std::uniform_int_distribution<Residue> pick_uv(lo, half - 1);
      const Residue unit = c.rng() & 1 ? 1 : mod - 1;
      e.assign(half / 2 + 2 + c.rng() % 3, unit);
      e[0] = pick_uv(c.rng);
      e[1] = pick_uv(c.rng);
      for (std::size_t i = 2 + half / 2; i < e.size(); ++i) e[i] = pick_res(c.rng);
    }
    if (std::find(e.begin(), e.end(), Residue{0}) != e.end()) continue;
    const ResidueCollection coll(k, e);
    if (half_sum_subset(coll)) continue;  // outside the statement's hypothesis

    std::vector<CompressionSite> valid;
    for (std::size_t i = 0; i < coll.size(); ++i) valid.push_back(Type1Site{i});
    for (Residue t = 1; t < mod; ++t) valid.push_back(Type2Site{t});
    for (std::size_t i = 0; i < coll.size(); ++i)
      for (std::size_t j = i + 1; j < coll.size(); ++j) valid.push_back(Type3Site{i, j});
    std::erase_if(valid, [&](const CompressionSite& s) {
      try {
        compress(coll, s);
        return false;
      } catch (const InapplicableError&) {
        return true;
      }
    });
    if (valid.empty()) continue;
    // Prefer the rarer types so that each gets exercised.
    std::vector<CompressionSite> rare;
    for (const auto& s : valid)
      if (s.index() != 0) rare.push_back(s);
    const auto& pool = (!rare.empty() && c.rng() % 2) ? rare : valid;
    const CompressionSite site = pool[c.rng() % pool.size()];
    const ResidueCollection after = compress(coll, site);
    ++sites[site.index()];
    ++c.out.instances;

    const ResidueSet before_sum = coll.iterated_sumset(), after_sum = after.iterated_sumset();
    const std::string tag = "type " + std::to_string(site.index() + 1) + " on " + coll.to_string();
    if (site.index() == 0 ? !(after_sum == before_sum) : !after_sum.is_subset_of(before_sum))
      c.fail(tag + ": iterated sumset " + before_sum.to_string() + " -> " + after_sum.to_string());
    const std::size_t parts_before = max_disjoint_zero_sets(coll), parts_after = max_disjoint_zero_sets(after);
    std::size_t slack = 0;
    if (site.index() == 0) slack = residue_abs(coll[std::get<Type1Site>(site).index], k) - 1;
    if (parts_before + slack < parts_after)
      c.fail(tag + ": disjoint zero-sum parts " + std::to_string(parts_before) + " -> " + std::to_string(parts_after));
  }
  if (sites[0] + sites[1] + sites[2] < target) c.fail("only found " + std::to_string(c.out.instances) + " valid sites");
  c.out.detail = "sites by type: " + std::to_string(sites[0]) + "/" + std::to_string(sites[1]) + "/" +
                 std::to_string(sites[2]) + ", k<=4";
}

inline void check_detection_agrees(ClaimContext& c) {
  auto compare = [&](const ResidueSet& a, std::size_t d) {
    ++c.out.instances;
    const auto fast = find_d_cube(a, d);
    const auto slow = reference::find_d_cube(a, d);
    const bool same = fast ? (slow && std::ranges::equal(fast->generators.elements(), *slow)) : !slow;
    if (!same) c.fail(describe(a) + " d=" + std::to_string(d));
  };
  const GroupContext small(3);
  for (std::uint64_t bits = 0; bits < 256; ++bits)
    for (std::size_t d = 1; d <= 3; ++d) compare(ResidueSet::from_mask(small, bits), d);
  const std::uint64_t samples = c.desk() ? 1000 : 50;
  const GroupContext ctx(5);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const ResidueSet a = c.random_density_set(ctx, 0.3, 0.95);
    for (std::size_t d = 1; d <= 4; ++d) compare(a, d);
  }
  c.out.detail = "all sets at n=3 (d<=3), " + std::to_string(samples) + " random sets at n=5 (d<=4)";
}

inline void check_schur_lower_bound(ClaimContext& c) {
  auto test = [&](const ResidueSet& a) {
    ++c.out.instances;
    const std::uint64_t st = count_schur_triples(a);
    const std::uint64_t f = schur_lower_bound(layer_profile(a), a.context());
    if (st < f) c.fail(describe(a) + ": ST=" + std::to_string(st) + " < f=" + std::to_string(f));
  };
  for (unsigned n = 3; n <= 4; ++n) {
    const GroupContext ctx(n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << ctx.modulus()); ++bits)
      test(ResidueSet::from_mask(ctx, bits));
  }
  const std::uint64_t samples = c.desk() ? 100'000 : 2'000;
  const GroupContext big(8);
  for (std::uint64_t i = 0; i < samples; ++i) test(c.random_density_set(big, 0.0, 1.0));
  c.out.detail = "exhaustive at n=3,4, " + std::to_string(samples) + " random sets at n=8";
}

struct ClaimEntry {
  int id;
  const char* name;
  const char* statement;
  double limit_s;
  void (*run)(ClaimContext&);
};

inline const std::vector<ClaimEntry>& claim_entries() {
  static const std::vector<ClaimEntry> entries = {
      {1, "construction_table", "C_d equals the listed layer unions at n=12 (d=2..9, 26)", 1,
       check_construction_table},
      {2, "two_cube_free_max", "largest 2-cube-free set has size 2^(n-1) at n=3,4", 10, check_two_cube_free_max},
      {3, "homogeneous_cube_threshold",
       "|A| > (1-2^-l)2^n forces Sigma*{x,...,x,y} with 2^l-1 copies of x", 300, check_homogeneous_threshold},
      {4, "multiple_run_threshold", "|A| > (1-1/(2^l-1))2^n forces x,2x,...,(2^l-1)x in A", 120,
       check_multiple_run_threshold},
      {5, "cd_cube_free_and_maximal", "C_d is d-cube-free and adding any residue creates a d-cube", 300,
       check_cd_free_and_maximal},
      {6, "layer_union_optimum", "largest d-cube-free layer union has size |C_d|", 600, check_layer_union_optimum},
      {7, "schur_minimum", "min ST over sets of size 2^(n-1)+1 is 3*2^(n-1)", 120, check_schur_minimum},
      {8, "three_cube_free_max", "largest 3-cube-free set has size (5/8)2^n", 1200, check_three_cube_free_max},
      {9, "disjoint_zero_sums",
       "2^k+x non-zero residues mod 2^(k+1): a sub-sum equals 2^k or x+1 disjoint zero sums exist", 900,
       check_disjoint_zero_sums},
      {10, "half_sum_exists", "every 7 non-zero residues mod 8 have a sub-sum equal to 4", 1, check_half_sum_exists},
      {11, "compressions", "compressions keep or shrink C* and control disjoint zero sums", 300, check_compressions},
      {12, "detection_agrees_with_naive", "find_d_cube matches naive multiset enumeration", 300,
       check_detection_agrees},
      {13, "schur_lower_bound", "ST(A) >= f(layer profile of A)", 300, check_schur_lower_bound},
  };
  return entries;
}

}  // namespace detail

inline ClaimResult run_claim(int id, const ClaimOptions& opts) {
  const auto& entries = detail::claim_entries();
  auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& s) { return s.id == id; });
  if (it == entries.end()) throw ArgumentError("no check with id " + std::to_string(id));
  ClaimResult r;
  r.id = it->id;
  r.name = it->name;
  r.statement = it->statement;
  r.passed = true;
  r.limit_ms = it->limit_s * 1000.0;
  detail::ClaimContext ctx{opts, std::mt19937_64(opts.seed + static_cast<std::uint64_t>(id)), r};
  const auto start = std::chrono::steady_clock::now();
  try {
    it->run(ctx);
  } catch (const CapacityError& e) {
    r.passed = false;
    r.detail = std::string("budget exceeded: ") + e.what();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  // Time limits are part of the desk criteria; smoke runs use reduced ranges.
  if (opts.level == ClaimLevel::kDesk && r.elapsed_ms > r.limit_ms) {
    r.passed = false;
    r.detail += " (over time limit)";
  }
  return r;
}

inline std::vector<int> claim_ids() {
  std::vector<int> ids;
  for (const auto& s : detail::claim_entries()) ids.push_back(s.id);
  return ids;
}

inline std::vector<ClaimResult> run_claims(const ClaimOptions& opts) {
  std::vector<ClaimResult> out;
  for (int id : claim_ids()) out.push_back(run_claim(id, opts));
  return out;
}

}  // namespace cubefree
