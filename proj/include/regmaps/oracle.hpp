#pragma once

// Brute-force census for small q.  PGL(2,q) is listed element by element,
// generating triples of involutions are found by closure tests, orbits are
// taken under PGammaL(2,q), and duality properties are decided by searching
// the whole automorphism group.  No trace conditions are used.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "regmaps/enumerate.hpp"
#include "regmaps/field.hpp"
#include "regmaps/projective.hpp"

namespace regmaps {

struct OracleOptions {
  std::int64_t cap = 13;
  int jobs = 1;
  /// Permute the element list before use; results must not change.
  std::optional<std::uint64_t> shuffle_seed;
};

class ExplicitGroup {
 public:
  ExplicitGroup(const FieldCtx& ctx, std::vector<ProjElement> elements) : ctx_(&ctx), elements_(std::move(elements)) {
    index_.reserve(elements_.size() * 2);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      index_.emplace(elements_[i], static_cast<int>(i));
      const bool psl = in_psl2q(ctx, elements_[i]) == PslClass::psl;
      in_psl_.push_back(psl);
      psl_order_ += psl ? 1 : 0;
      const bool invol = !is_proj_identity(ctx, elements_[i]) && trace(ctx, elements_[i].rep()).is_zero();
      if (invol) involutions_.push_back(static_cast<int>(i));
    }
  }

  const FieldCtx& ctx() const { return *ctx_; }
  /// All of PGL(2,q).
  const std::vector<ProjElement>& elements() const { return elements_; }
  const ProjElement& at(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  bool in_psl(int i) const { return in_psl_[static_cast<std::size_t>(i)]; }
  std::int64_t psl_order() const { return psl_order_; }
  /// Involutions of PGL(2,q), in element order.
  const std::vector<int>& involutions() const { return involutions_; }

  std::vector<int> psl_elements() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (in_psl_[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  int find(const ProjElement& x) const {
    const auto it = index_.find(x);
    if (it == index_.end()) throw ValidationError("element outside PGL(2,q)");
    return it->second;
  }
  int mul(int a, int b) const { return find(proj_mul(*ctx_, at(a), at(b))); }

  int order(int a) const {
    int acc = a, n = 1;
    while (!is_proj_identity(*ctx_, at(acc))) {
      acc = mul(acc, a);
      ++n;
    }
    return n;
  }

 private:
  const FieldCtx* ctx_;
  std::vector<ProjElement> elements_;
  std::unordered_map<ProjElement, int, ProjElementHash> index_;
  std::vector<bool> in_psl_;
  std::vector<int> involutions_;
  std::int64_t psl_order_ = 0;
};

inline std::vector<Fel> gfq_elements(const FieldCtx& ctx) {
  std::vector<Fel> out{ctx.zero()};
  for (std::int64_t i = 0; i < ctx.q() - 1; ++i) out.push_back(Fel::from_log(static_cast<std::int32_t>(i * (ctx.q() + 1))));
  return out;
}

inline ExplicitGroup build_group(const FieldCtx& ctx, const OracleOptions& opts = {}) {
  if (ctx.q() > opts.cap)
    throw PreconditionError("q=" + std::to_string(ctx.q()) + " exceeds the oracle cap " + std::to_string(opts.cap));
  const std::vector<Fel> f = gfq_elements(ctx);
  std::vector<ProjElement> elems;
  for (Fel b : f)
    for (Fel c : f)
      for (Fel d : f) {
        const Mat2 m{ctx.one(), b, c, d};
        if (!det(ctx, m).is_zero()) elems.push_back(proj(ctx, m));
      }
  for (Fel c : f)
    for (Fel d : f)
      if (!c.is_zero()) elems.push_back(proj(ctx, Mat2{ctx.zero(), ctx.one(), c, d}));
  if (opts.shuffle_seed) {
    std::mt19937_64 rng(*opts.shuffle_seed);
    std::shuffle(elems.begin(), elems.end(), rng);
  }
  return ExplicitGroup(ctx, std::move(elems));
}

// The group keeps a pointer to its field.
ExplicitGroup build_group(FieldCtx&&, const OracleOptions& = {}) = delete;

/// Number of involutions in PSL(2,q).
inline std::int64_t psl_involution_count(std::int64_t q) { return q % 4 == 1 ? q * (q + 1) / 2 : q * (q - 1) / 2; }

/// Order of the subgroup generated by `gens`.
inline std::int64_t generated_order(const ExplicitGroup& g, const std::vector<int>& gens,
                                    std::int64_t stop_above = -1) {
  std::vector<char> seen(g.elements().size(), 0);
  const int id = g.find(proj_identity(g.ctx()));
  std::vector<int> queue{id};
  seen[static_cast<std::size_t>(id)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int s : gens) {
      const int v = g.mul(queue[head], s);
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
      if (stop_above >= 0 && static_cast<std::int64_t>(queue.size()) > stop_above)
        return static_cast<std::int64_t>(queue.size());
    }
  }
  return static_cast<std::int64_t>(queue.size());
}

/// True iff a and b generate PSL(2,q).  A subgroup with more than half the
/// elements is the whole group.
inline bool generates_psl(const ExplicitGroup& g, int a, int b) {
  return generated_order(g, {a, b}, g.psl_order() / 2) > g.psl_order() / 2;
}

struct OracleTriple {
  int x = 0, y = 0, z = 0;
  int k = 0, l = 0;
  auto key() const { return std::tuple{x, y, z}; }
};

/// One involution from each PGL(2,q)-class: inside PSL(2,q) and outside it.
inline std::vector<int> involution_class_reps(const ExplicitGroup& g) {
  std::vector<int> out;
  for (bool want_psl : {true, false}) {
    for (int i : g.involutions()) {
      if (g.in_psl(i) == want_psl) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

/// Triples (x, y, z) of involutions with x y = y x, x != y, rotations YZ and
/// ZX of hyperbolic type generating PSL(2,q).  x runs over class
/// representatives only; every orbit still meets this set.
inline std::vector<OracleTriple> all_triples(const ExplicitGroup& g, const OracleOptions& opts = {}) {
  std::vector<OracleTriple> out;
  for (int x : involution_class_reps(g)) {
    std::vector<int> ys;
    for (int y : g.involutions())
      if (y != x && g.mul(x, y) == g.mul(y, x)) ys.push_back(y);

    const auto work = [&g, x](int y) {
      std::vector<OracleTriple> found;
      for (int z : g.involutions()) {
        const int r = g.mul(y, z), s = g.mul(z, x);
        if (!g.in_psl(r) || !g.in_psl(s)) continue;
        const int k = g.order(r), l = g.order(s);
        if (!is_hyperbolic(k, l) || !generates_psl(g, r, s)) continue;
        found.push_back({x, y, z, k, l});
      }
      return found;
    };
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, opts.jobs));
    std::vector<std::vector<OracleTriple>> per_y(ys.size());
    for (std::size_t start = 0; start < ys.size(); start += jobs) {
      std::vector<std::future<std::vector<OracleTriple>>> batch;
      for (std::size_t i = start; i < std::min(ys.size(), start + jobs); ++i)
        batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, work, ys[i]));
      for (std::size_t i = 0; i < batch.size(); ++i) per_y[start + i] = batch[i].get();
    }
    for (auto& v : per_y) out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// Elements (A, j) of PGammaL(2,q) with A in PGL(2,q) and 0 <= j < e.
inline std::vector<SemilinearAuto> pgaml_elements(const ExplicitGroup& g) {
  std::vector<SemilinearAuto> out;
  for (int j = 0; j < g.ctx().e(); ++j)
    for (const ProjElement& a : g.elements()) out.push_back({a, j});
  return out;
}

inline int apply_index(const ExplicitGroup& g, const SemilinearAuto& f, int t) {
  return g.find(apply_auto(g.ctx(), f, g.at(t)));
}

struct OracleClass {
  OracleTriple rep;
  std::size_t orbit_size = 0;
  GroupKind group = GroupKind::psl;
  SymFlags flags;
};

/// Orbit representatives under PGammaL(2,q).  Since x is pinned to a class
/// representative, two triples are equivalent iff an element of Stab(x)
/// maps one to the other.
inline std::vector<OracleClass> orbit_count(const ExplicitGroup& g, const std::vector<OracleTriple>& triples) {
  const std::vector<SemilinearAuto> all = pgaml_elements(g);
  std::map<int, std::vector<SemilinearAuto>> stab;
  std::unordered_set<std::int64_t> seen;
  const auto n = static_cast<std::int64_t>(g.elements().size());
  const auto code = [n](int x, int y, int z) { return (std::int64_t{x} * n + y) * n + z; };
  std::vector<OracleClass> out;
  for (const OracleTriple& t : triples) {
    if (seen.count(code(t.x, t.y, t.z))) continue;
    auto it = stab.find(t.x);
    if (it == stab.end()) {
      std::vector<SemilinearAuto> s;
      for (const SemilinearAuto& f : all)
        if (apply_index(g, f, t.x) == t.x) s.push_back(f);
      it = stab.emplace(t.x, std::move(s)).first;
    }
    std::size_t size = 0;
    for (const SemilinearAuto& f : it->second) {
      if (seen.insert(code(t.x, apply_index(g, f, t.y), apply_index(g, f, t.z))).second) ++size;
    }
    OracleClass c;
    c.rep = t;
    c.orbit_size = size;
    c.group = g.in_psl(t.x) ? GroupKind::psl : GroupKind::pgl;
    out.push_back(c);
  }
  return out;
}

/// Self-duality and Petrie self-duality by search over all of PGammaL(2,q);
/// Moebius regularity by x R^(k/2) x = R^(k/2) y.
inline SymFlags classify_by_definition(const ExplicitGroup& g, const OracleTriple& t) {
  const FieldCtx& ctx = g.ctx();
  const ProjElement &X = g.at(t.x), &Y = g.at(t.y), &Z = g.at(t.z);
  const ProjElement XY = proj_mul(ctx, X, Y);
  SymFlags flags;
  for (const SemilinearAuto& f : pgaml_elements(g)) {
    if (!(apply_auto(ctx, f, Z) == Z)) continue;
    const ProjElement fx = apply_auto(ctx, f, X), fy = apply_auto(ctx, f, Y);
    if (!flags.sd && fx == Y && fy == X) {
      flags.sd = true;
      flags.sd_witness = f;
    }
    if (!flags.sp && fx == XY && fy == Y) {
      flags.sp = true;
      flags.sp_witness = f;
    }
  }
  if (t.k % 2 == 0) {
    const ProjElement h = proj_pow(ctx, proj_mul(ctx, Y, Z), t.k / 2);
    flags.mr = proj_mul(ctx, proj_mul(ctx, X, h), X) == proj_mul(ctx, h, Y);
  }
  return flags;
}

inline std::vector<OracleClass> oracle_classes(const FieldCtx& ctx, const OracleOptions& opts = {}) {
  const ExplicitGroup g = build_group(ctx, opts);
  std::vector<OracleClass> classes = orbit_count(g, all_triples(g, opts));
  for (OracleClass& c : classes) c.flags = classify_by_definition(g, c.rep);
  return classes;
}

// ---------------------------------------------------------------------------
// Comparison with the trace-based census

struct DiffEntry {
  int k = 0, l = 0;
  std::string what;  // "total", a bucket name, or "group:psl" / "group:pgl"
  int expected = 0;  // trace-based census
  int actual = 0;    // oracle
};

struct DiffReport {
  std::int64_t q = 0;
  std::vector<DiffEntry> entries;
  bool empty() const { return entries.empty(); }
};

using TypeTally = std::map<std::pair<int, int>, std::map<std::string, int>>;

namespace detail {

inline void tally(TypeTally& t, int k, int l, GroupKind group, const SymFlags& flags) {
  auto& row = t[{k, l}];
  ++row["total"];
  ++row[to_string(bucket_of(flags))];
  ++row[std::string("group:") + to_string(group)];
}

}  // namespace detail

inline TypeTally tally_oracle(const std::vector<OracleClass>& classes) {
  TypeTally t;
  for (const OracleClass& c : classes) detail::tally(t, c.rep.k, c.rep.l, c.group, c.flags);
  return t;
}

inline TypeTally tally_enumerate(const std::vector<MapClass>& classes) {
  TypeTally t;
  for (const MapClass& c : classes)
    if (c.group != GroupKind::subgroup) detail::tally(t, c.signature.k, c.signature.l, c.group, c.flags);
  return t;
}

inline DiffReport diff_tallies(std::int64_t q, const TypeTally& expected, const TypeTally& actual) {
  DiffReport report;
  report.q = q;
  std::map<std::pair<int, int>, std::map<std::string, std::pair<int, int>>> merged;
  for (const auto& [kl, row] : expected)
    for (const auto& [what, n] : row) merged[kl][what].first = n;
  for (const auto& [kl, row] : actual)
    for (const auto& [what, n] : row) merged[kl][what].second = n;
  for (const auto& [kl, row] : merged)
    for (const auto& [what, counts] : row)
      if (counts.first != counts.second) report.entries.push_back({kl.first, kl.second, what, counts.first, counts.second});
  return report;
}

inline DiffReport diff_against_enumerate(const FieldCtx& ctx, const std::vector<OracleClass>& oracle,
                                         const std::vector<MapClass>& enumerated) {
  return diff_tallies(ctx.q(), tally_enumerate(enumerated), tally_oracle(oracle));
}

inline DiffReport diff_against_enumerate(const FieldCtx& ctx, const OracleOptions& opts = {}) {
  return diff_against_enumerate(ctx, oracle_classes(ctx, opts), enumerate_maps(ctx));
}

}  // namespace regmaps
