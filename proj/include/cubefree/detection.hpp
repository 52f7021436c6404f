#pragma once

// Deciding whether a set A in Z_{2^n} contains a projective d-cube, and
// producing witnesses.
//
// The search walks non-decreasing generator sequences g_1 <= g_2 <= ...
// drawn from A. With P the iterated sumset of the generators chosen so far,
// the next generator g must satisfy P + g within A, i.e. g lies in the
// intersection of A - p over p in P. That candidate set is maintained
// incrementally: when P grows to P', only the new elements of P' need to be
// intersected in. Ascending candidate order makes the first witness found
// the lexicographically smallest one.
//
// Two reductions keep desk-scale instances cheap:
//  * if A is invariant under translation by 2^t, cube containment only
//    depends on generators mod 2^t, so the search runs in Z_{2^t};
//  * if A is invariant under multiplication by odd residues, any cube can be
//    rescaled so that a generator of minimal 2-adic valuation v equals 2^v.
//    This is used for existence checks only, since rescaling does not
//    preserve the lexicographic order of witnesses.

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubefree/group.hpp"
#include "cubefree/sumset.hpp"

namespace cubefree {

struct CubeWitness {
  GeneratorMultiset generators;
  ResidueSet cube;

  std::size_t dimension() const noexcept { return generators.size(); }
};

/// Builds a witness and checks that its cube lies inside `host`.
inline CubeWitness make_witness(GeneratorMultiset generators, const ResidueSet& host) {
  ResidueSet cube = projective_cube(generators);
  if (!cube.is_subset_of(host))
    throw std::logic_error("witness " + generators.to_string() + " has cube " + cube.to_string() +
                           " outside the searched set");
  return CubeWitness{std::move(generators), std::move(cube)};
}

namespace detail {

using Word = std::uint64_t;

// Rotation x -> x + a on a bit vector of length m (a power of two).
inline void rotate_into(std::span<const Word> src, Residue a, Residue m, std::span<Word> dst) {
  a &= m - 1;
  if (m <= 64) {
    const Word w = src[0];
    Word out = a == 0 ? w : ((w << a) | (w >> (m - a)));
    if (m < 64) out &= (Word{1} << m) - 1;
    dst[0] = out;
    return;
  }
  const std::size_t nw = src.size();
  std::fill(dst.begin(), dst.end(), 0);
  const std::size_t q = a / 64;
  const unsigned r = a % 64;
  for (std::size_t i = 0; i < nw; ++i) {
    const Word w = src[i];
    if (!w) continue;
    dst[(i + q) % nw] |= w << r;
    if (r) dst[(i + q + 1) % nw] |= w >> (64 - r);
  }
}

// Depth-first search for d generators whose cube lies in a fixed set.
class CubeSearcher {
 public:
  CubeSearcher(const ResidueSet& host, std::size_t d)
      : ctx_(host.context()),
        m_(ctx_.modulus()),
        nw_(host.words().size()),
        d_(d),
        host_(host.words().begin(), host.words().end()),
        pool_((d + 2) * 2 * nw_ + nw_, 0) {
    // A - q for every q, when the table stays small.
    if (std::uint64_t{m_} * nw_ <= (std::uint64_t{1} << 21)) {
      shifts_.assign(std::size_t{m_} * nw_, 0);
      for (Residue q = 0; q < m_; ++q)
        rotate_into(host_, static_cast<Residue>((m_ - q) & (m_ - 1)), m_,
                    std::span<Word>(shifts_).subspan(std::size_t{q} * nw_, nw_));
    }
  }

  // Lexicographically smallest non-decreasing generator sequence, if any.
  std::optional<std::vector<Residue>> find_canonical() {
    chosen_.clear();
    std::span<Word> p = level_p(0);
    std::fill(p.begin(), p.end(), 0);
    p[0] = 1;  // {0}
    std::span<Word> cand = level_cand(0);
    std::copy(host_.begin(), host_.end(), cand.begin());
    if (d_ == 0) return chosen_;
    if (dfs(0, 0)) return chosen_;
    return std::nullopt;
  }

  // Existence check under the unit-rescaling reduction. Only valid when the
  // host set is invariant under multiplication by odd residues.
  bool exists_anchored() {
    if (d_ == 0) return true;
    if (host_[0] & 1U) return true;  // 0 in A: {0,...,0}
    for (unsigned v = 0; v < ctx_.n(); ++v) {
      const Residue anchor = Residue{1} << v;
      if (!test(host_, anchor)) continue;
      chosen_.assign(1, anchor);
      std::span<Word> p = level_p(1);
      std::fill(p.begin(), p.end(), 0);
      set(p, 0);
      set(p, anchor);
      std::span<Word> cand = level_cand(1);
      std::span<const Word> sh = shifted_host(anchor);
      const Residue step = anchor;
      for (std::size_t i = 0; i < nw_; ++i) cand[i] = host_[i] & sh[i];
      // Remaining generators are multiples of 2^v.
      for (Residue x = 0; x < m_; ++x)
        if (x % step != 0 && test(cand, x)) reset(cand, x);
      if (d_ == 1 || dfs(1, 0)) return true;
    }
    return false;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::span<Word> level_p(std::size_t depth) { return std::span<Word>(pool_).subspan(depth * 2 * nw_, nw_); }
  std::span<Word> level_cand(std::size_t depth) {
    return std::span<Word>(pool_).subspan(depth * 2 * nw_ + nw_, nw_);
  }
  std::span<Word> scratch() { return std::span<Word>(pool_).subspan((d_ + 2) * 2 * nw_, nw_); }

  static bool test(std::span<const Word> s, Residue x) { return (s[x / 64] >> (x % 64)) & 1U; }
  static void set(std::span<Word> s, Residue x) { s[x / 64] |= Word{1} << (x % 64); }
  static void reset(std::span<Word> s, Residue x) { s[x / 64] &= ~(Word{1} << (x % 64)); }

  std::span<const Word> shifted_host(Residue q) {
    if (!shifts_.empty()) return std::span<const Word>(shifts_).subspan(std::size_t{q} * nw_, nw_);
    std::span<Word> tmp = scratch();
    rotate_into(host_, static_cast<Residue>((m_ - q) & (m_ - 1)), m_, tmp);
    return tmp;
  }

  // depth = number of generators already chosen; level_p/cand(depth) are valid.
  bool dfs(std::size_t depth, Residue start) {
    ++nodes_;
    std::span<Word> p = level_p(depth);
    std::span<Word> cand = level_cand(depth);
    std::span<Word> np = level_p(depth + 1);
    std::span<Word> nc = level_cand(depth + 1);
    for (std::size_t wi = start / 64; wi < nw_; ++wi) {
      Word w = cand[wi];
      if (wi == start / 64) w &= ~Word{0} << (start % 64);
      while (w) {
        const Residue a = static_cast<Residue>(wi * 64 + std::countr_zero(w));
        w &= w - 1;
        chosen_.push_back(a);
        if (depth + 1 == d_) return true;
        // P' = P u (P + a); candidates must also absorb the new sums.
        rotate_into(p, a, m_, np);
        std::copy(cand.begin(), cand.end(), nc.begin());
        bool alive = false;
        for (std::size_t i = 0; i < nw_; ++i) {
          Word fresh = np[i] & ~p[i];
          np[i] |= p[i];
          while (fresh) {
            const Residue q = static_cast<Residue>(i * 64 + std::countr_zero(fresh));
            fresh &= fresh - 1;
            std::span<const Word> sh = shifted_host(q);
            for (std::size_t j = 0; j < nw_; ++j) nc[j] &= sh[j];
          }
        }
        for (std::size_t j = a / 64; j < nw_ && !alive; ++j) {
          Word x = nc[j];
          if (j == a / 64) x &= ~Word{0} << (a % 64);
          alive = x != 0;
        }
        if (alive && dfs(depth + 1, a)) return true;
        chosen_.pop_back();
      }
    }
    return false;
  }

  GroupContext ctx_;
  Residue m_;
  std::size_t nw_;
  std::size_t d_;
  std::vector<Word> host_;
  std::vector<Word> shifts_;
  std::vector<Word> pool_;
  std::vector<Residue> chosen_;
  std::uint64_t nodes_ = 0;
};

// Smallest t with A + 2^t = A (t = 0 for the empty and the full set).
inline unsigned translation_period(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  for (unsigned t = 0; t < ctx.n(); ++t)
    if (a.shifted(Residue{1} << t) == a) return t;
  return ctx.n();
}

// A restricted to [0, 2^t), viewed inside Z_{2^t}.
inline ResidueSet restrict_to(const ResidueSet& a, unsigned t) {
  const GroupContext small(t);
  ResidueSet out(small);
  a.for_each([&](Residue x) {
    if (x < small.modulus()) out.insert(x);
  });
  return out;
}

}  // namespace detail

/// Lexicographically smallest sorted multiset S of size d with Sigma*S inside A.
inline std::optional<CubeWitness> find_d_cube(const ResidueSet& a, std::size_t d) {
  if (d < 1) throw ArgumentError("cube dimension must be >= 1");
  if (a.empty()) return std::nullopt;
  const GroupContext& ctx = a.context();
  std::optional<std::vector<Residue>> gens;
  const unsigned t = detail::translation_period(a);
  if (t == 0) {
    gens = std::vector<Residue>(d, 0);  // A is the whole group
  } else {
    const ResidueSet reduced = t < ctx.n() ? detail::restrict_to(a, t) : a;
    detail::CubeSearcher search(reduced, d);
    if (is_unit_invariant(reduced) && !search.exists_anchored()) return std::nullopt;
    gens = search.find_canonical();
  }
  if (!gens) return std::nullopt;
  return make_witness(GeneratorMultiset(ctx, std::move(*gens)), a);
}

inline bool is_d_cube_free(const ResidueSet& a, std::size_t d) {
  if (d < 1) throw ArgumentError("cube dimension must be >= 1");
  if (a.empty()) return true;
  const GroupContext& ctx = a.context();
  const unsigned t = detail::translation_period(a);
  if (t == 0) return false;
  const ResidueSet reduced = t < ctx.n() ? detail::restrict_to(a, t) : a;
  detail::CubeSearcher search(reduced, d);
  if (is_unit_invariant(reduced)) return !search.exists_anchored();
  return !search.find_canonical().has_value();
}

/// The generator pair of a degenerate cube Sigma*{x,...,x,y} with 2^l - 1 copies of x.
struct HomogeneousCube {
  Residue x;
  Residue y;
  unsigned ell;

  GeneratorMultiset generators(const GroupContext& ctx) const {
    std::vector<Residue> g((std::size_t{1} << ell) - 1, x);
    g.push_back(y);
    return GeneratorMultiset(ctx, std::move(g));
  }
};

/// Smallest x with {x, 2x, ..., m x} inside A. x = 0 qualifies whenever 0 is in A.
inline std::optional<Residue> find_multiple_run(const ResidueSet& a, std::uint64_t m) {
  if (m < 1) throw ArgumentError("run length must be >= 1");
  const GroupContext& ctx = a.context();
  for (Residue x = 0; x < ctx.modulus(); ++x) {
    bool ok = true;
    std::uint64_t v = 0;
    for (std::uint64_t j = 1; j <= m && ok; ++j) {
      v = (v + x) & ctx.mask();
      ok = a.contains(static_cast<Residue>(v));
    }
    if (ok) return x;
  }
  return std::nullopt;
}

/// (x, y) with {x, ..., (2^l - 1) x} and {y, y + x, ..., y + (2^l - 1) x} inside A.
/// Smallest x first, then smallest y.
inline std::optional<HomogeneousCube> find_homogeneous_cube(const ResidueSet& a, unsigned ell) {
  if (ell < 1 || ell > 20) throw ArgumentError("ell must lie in [1, 20]");
  const GroupContext& ctx = a.context();
  const std::uint64_t copies = (std::uint64_t{1} << ell) - 1;
  for (Residue x = 0; x < ctx.modulus(); ++x) {
    ResidueSet ys = a;
    bool ok = true;
    std::uint64_t v = 0;
    for (std::uint64_t j = 1; j <= copies && ok; ++j) {
      v = (v + x) & ctx.mask();
      ok = a.contains(static_cast<Residue>(v));
      ys &= a.shifted(ctx.reduce(-static_cast<std::int64_t>(v)));
    }
    if (!ok) continue;
    if (auto y = ys.min()) return HomogeneousCube{x, *y, ell};
  }
  return std::nullopt;
}

/// A 3-cube of the special form Sigma*{x,x,x} or Sigma*{x,3x,y} inside A.
/// Scans x upwards and prefers {x,x,x} for the same x; y is the smallest valid.
inline std::optional<CubeWitness> find_conc2_pattern(const ResidueSet& a) {
  const GroupContext& ctx = a.context();
  for (Residue x = 0; x < ctx.modulus(); ++x) {
    const Residue x2 = ctx.reduce(2 * std::int64_t{x});
    const Residue x3 = ctx.reduce(3 * std::int64_t{x});
    const Residue x4 = ctx.reduce(4 * std::int64_t{x});
    if (!a.contains(x) || !a.contains(x3)) continue;
    if (a.contains(x2)) return make_witness(GeneratorMultiset(ctx, {x, x, x}), a);
    if (!a.contains(x4)) continue;
    ResidueSet ys = a;
    for (Residue s : {x, x3, x4}) ys &= a.shifted(ctx.reduce(-static_cast<std::int64_t>(s)));
    if (auto y = ys.min()) return make_witness(GeneratorMultiset(ctx, {x, x3, *y}), a);
  }
  return std::nullopt;
}

}  // namespace cubefree
