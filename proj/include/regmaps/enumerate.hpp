#pragma once

// Census of regular maps on PSL(2,q): trace signatures up to the action of
// PGammaL(2,q), filtered to those whose rotation group is all of PSL(2,q).

#include <algorithm>
#include <array>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regmaps/field.hpp"
#include "regmaps/projective.hpp"
#include "regmaps/symmetry.hpp"
#include "regmaps/triples.hpp"

namespace regmaps {

/// {p} together with every k >= 3 such that 2k divides q - 1 or q + 1.
inline std::vector<int> admissible_orders(const FieldCtx& ctx) {
  std::vector<int> out;
  const std::int64_t q = ctx.q();
  for (int k = 3; k <= q + 1; ++k) {
    if (k == ctx.p() || ((q - 1) % (2 * k) == 0 || (q + 1) % (2 * k) == 0)) out.push_back(k);
  }
  return out;
}

inline std::vector<std::pair<int, int>> hyperbolic_pairs(const std::vector<int>& orders) {
  std::vector<std::pair<int, int>> out;
  for (int k : orders)
    for (int l : orders)
      if (is_hyperbolic(k, l)) out.emplace_back(k, l);
  return out;
}

namespace detail {

inline std::vector<std::optional<Fel>> roots_for_side(const FieldCtx& ctx, int k) {
  if (k == ctx.p()) return {std::nullopt};
  std::vector<std::optional<Fel>> out;
  for (const RootTrace& rt : ctx.omegas_for_order(k)) out.emplace_back(rt.xi);
  return out;
}

inline Fel trace_d(const FieldCtx& ctx, const MapSignature& s) {
  return ctx.sub(ctx.add(ctx.mul(s.omega_k, s.omega_k), ctx.mul(s.omega_l, s.omega_l)), ctx.from_int(4));
}

}  // namespace detail

/// All signatures of type (k, l), one per choice of omega on each side.
/// Signatures with D = 0 are reducible and dropped (noted in `warnings`);
/// (5,5) pairs that collapse to A5 are dropped as well.
inline std::vector<MapSignature> raw_signatures(const FieldCtx& ctx, int k, int l,
                                                std::vector<std::string>* warnings = nullptr) {
  std::vector<MapSignature> out;
  for (const auto& xk : detail::roots_for_side(ctx, k)) {
    for (const auto& xl : detail::roots_for_side(ctx, l)) {
      MapSignature s = make_signature(ctx, xk, xl);
      if (s.family == Family::kl && detail::trace_d(ctx, s).is_zero()) {
        if (warnings)
          warnings->push_back("q=" + std::to_string(ctx.q()) + " (" + std::to_string(k) + "," + std::to_string(l) +
                              "): omega_k=" + ctx.power_notation(s.omega_k) +
                              " omega_l=" + ctx.power_notation(s.omega_l) + " has D = 0, skipped");
        continue;
      }
      if (k == 5 && l == 5 && ctx.p() != 5 && a5_collapse(ctx, *xk, *xl)) continue;
      out.push_back(std::move(s));
    }
  }
  return out;
}

struct SignatureOrbit {
  MapSignature canonical;
  std::vector<MapSignature> members;
};

/// Orbit key: the least Frobenius image of (omega_k^2, omega_l^2).  Squares
/// absorb the sign ambiguity of the lifted generators.
inline std::pair<int, int> orbit_key(const FieldCtx& ctx, const MapSignature& s) {
  const Fel a = ctx.mul(s.omega_k, s.omega_k);
  const Fel b = ctx.mul(s.omega_l, s.omega_l);
  std::pair<int, int> best{a.log(), b.log()};
  for (int j = 1; j < ctx.e(); ++j)
    best = std::min(best, std::pair{ctx.frobenius(a, j).log(), ctx.frobenius(b, j).log()});
  return best;
}

/// Partitions signatures into orbits; each orbit's canonical member is its
/// least signature.  Orbits are returned in order of canonical member.
inline std::vector<SignatureOrbit> canonicalize(const FieldCtx& ctx, const std::vector<MapSignature>& sigs) {
  std::map<std::tuple<int, int, int, int, int>, SignatureOrbit> orbits;
  for (const MapSignature& s : sigs) {
    const auto [a, b] = orbit_key(ctx, s);
    auto& o = orbits[{s.k, s.l, static_cast<int>(s.family), a, b}];
    o.members.push_back(s);
  }
  std::vector<SignatureOrbit> out;
  for (auto& [key, o] : orbits) {
    std::sort(o.members.begin(), o.members.end());
    o.canonical = o.members.front();
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(),
            [](const SignatureOrbit& x, const SignatureOrbit& y) { return x.canonical < y.canonical; });
  return out;
}

/// Kind of the full group <X, Y, Z>.  For psl and pgl the rotation group
/// <R, S> is PSL(2,q); subgroup means it is a proper subgroup.
enum class GroupKind { psl, pgl, subgroup };

inline const char* to_string(GroupKind g) {
  switch (g) {
    case GroupKind::psl: return "psl";
    case GroupKind::pgl: return "pgl";
    case GroupKind::subgroup: return "subgroup";
  }
  return "?";
}

inline bool lies_in_proper_subfield(const FieldCtx& ctx, const MapSignature& s) {
  const Fel a = ctx.mul(s.omega_k, s.omega_k);
  const Fel b = ctx.mul(s.omega_l, s.omega_l);
  for (int r = 2; r <= ctx.e(); ++r) {
    if (ctx.e() % r != 0) continue;
    const int d = ctx.e() / r;
    if (ctx.in_subfield(a, d) && ctx.in_subfield(b, d)) return true;
  }
  return false;
}

inline GroupKind group_filter(const FieldCtx& ctx, const MapSignature& s, const GenTriple& t) {
  if (lies_in_proper_subfield(ctx, s)) return GroupKind::subgroup;
  if (s.k == 5 && s.l == 5 && ctx.p() != 5 && s.family == Family::kl && s.omega_k != s.omega_l)
    return GroupKind::subgroup;
  switch (in_psl2q(ctx, t.frame.Z)) {
    case PslClass::psl: return GroupKind::psl;
    case PslClass::pgl_only: return GroupKind::pgl;
    case PslClass::not_over_gfq: break;
  }
  throw ValidationError("generator Z is not defined over GF(q) in the rational frame");
}

struct MapClass {
  MapSignature signature;
  std::vector<MapSignature> orbit;
  GenTriple triple;
  GroupKind group = GroupKind::psl;
  SymFlags flags;
};

enum class Bucket { none, sd_only, sp_only, sd_sp, sp_mr, sd_sp_mr };

inline constexpr std::array<Bucket, 6> kAllBuckets{Bucket::none,  Bucket::sd_only, Bucket::sp_only,
                                                   Bucket::sd_sp, Bucket::sp_mr,   Bucket::sd_sp_mr};

inline const char* to_string(Bucket b) {
  switch (b) {
    case Bucket::none: return "none";
    case Bucket::sd_only: return "sd_only";
    case Bucket::sp_only: return "sp_only";
    case Bucket::sd_sp: return "sd_sp";
    case Bucket::sp_mr: return "sp_mr";
    case Bucket::sd_sp_mr: return "sd_sp_mr";
  }
  return "?";
}

inline Bucket bucket_of(const SymFlags& f) {
  if (f.mr && !f.sp) throw ValidationError("Moebius regular map that is not self-Petrie-dual");
  if (f.mr) return f.sd ? Bucket::sd_sp_mr : Bucket::sp_mr;
  if (f.sd && f.sp) return Bucket::sd_sp;
  if (f.sd) return Bucket::sd_only;
  if (f.sp) return Bucket::sp_only;
  return Bucket::none;
}

struct EnumerateOptions {
  ClassifyMode mode = ClassifyMode::conditions;
  /// Also return classes whose rotation group is a proper subgroup.
  bool include_subgroups = false;
  std::vector<std::string>* warnings = nullptr;
};

/// All map classes for GF(q), sorted by (k, l, canonical signature).
inline std::vector<MapClass> enumerate_maps(const FieldCtx& ctx, const EnumerateOptions& opts = {}) {
  std::vector<MapClass> out;
  for (const auto& [k, l] : hyperbolic_pairs(admissible_orders(ctx))) {
    for (SignatureOrbit& orbit : canonicalize(ctx, raw_signatures(ctx, k, l, opts.warnings))) {
      MapClass c;
      c.signature = orbit.canonical;
      c.orbit = std::move(orbit.members);
      c.triple = build_triple(ctx, c.signature);
      c.group = group_filter(ctx, c.signature, c.triple);
      if (c.group == GroupKind::subgroup && !opts.include_subgroups) continue;
      c.flags = classify(ctx, c.signature, c.triple, opts.mode);
      out.push_back(std::move(c));
    }
  }
  return out;
}

struct CensusRow {
  std::int64_t q = 0;
  int maps = 0;
  int none = 0;
  int sd_only = 0;
  int sp_only = 0;
  int sd_sp = 0;
  int sp_mr = 0;
  int sd_sp_mr = 0;

  int& operator[](Bucket b) {
    switch (b) {
      case Bucket::none: return none;
      case Bucket::sd_only: return sd_only;
      case Bucket::sp_only: return sp_only;
      case Bucket::sd_sp: return sd_sp;
      case Bucket::sp_mr: return sp_mr;
      case Bucket::sd_sp_mr: return sd_sp_mr;
    }
    throw std::logic_error("unknown bucket");
  }
  int bucket_sum() const { return none + sd_only + sp_only + sd_sp + sp_mr + sd_sp_mr; }
  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

inline CensusRow census_row(std::int64_t q, const std::vector<MapClass>& classes) {
  CensusRow row;
  row.q = q;
  for (const MapClass& c : classes) {
    if (c.group == GroupKind::subgroup) continue;
    ++row.maps;
    ++row[bucket_of(c.flags)];
  }
  return row;
}

inline CensusRow census(const FieldCtx& ctx, ClassifyMode mode = ClassifyMode::conditions) {
  return census_row(ctx.q(), enumerate_maps(ctx, {mode, false, nullptr}));
}

/// Odd prime powers 5 <= q <= q_max.
inline std::vector<std::int64_t> census_fields(std::int64_t q_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 5; q <= q_max; q += 2)
    if (odd_prime_power(q)) out.push_back(q);
  return out;
}

/// Census rows for every field up to q_max, computed on up to `jobs` threads.
/// The result order does not depend on scheduling.
inline std::vector<CensusRow> census_table(std::int64_t q_max, ClassifyMode mode = ClassifyMode::conditions,
                                           int jobs = 1) {
  const std::vector<std::int64_t> qs = census_fields(q_max);
  std::vector<CensusRow> rows(qs.size());
  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < qs.size(); start += workers) {
    std::vector<std::future<CensusRow>> batch;
    for (std::size_t i = start; i < std::min(qs.size(), start + workers); ++i)
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 [q = qs[i], mode] { return census(ctx_for_q(q), mode); }));
    for (std::size_t i = 0; i < batch.size(); ++i) rows[start + i] = batch[i].get();
  }
  return rows;
}

}  // namespace regmaps
