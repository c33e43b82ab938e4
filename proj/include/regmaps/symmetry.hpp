#pragma once

// Self-duality, self-Petrie-duality and Moebius regularity, decided both from
// trace conditions on the signature and by direct search for a semilinear
// automorphism that realizes them.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regmaps/field.hpp"
#include "regmaps/projective.hpp"
#include "regmaps/triples.hpp"

namespace regmaps {

/// Field twists j for which an involutory (A, j) can exist: 0 and e/2.
inline std::vector<int> involution_twists(const FieldCtx& ctx) {
  std::vector<int> out{0};
  if (ctx.e() % 2 == 0) out.push_back(ctx.e() / 2);
  return out;
}

namespace detail {

inline std::int64_t twist_power(const FieldCtx& ctx, int j) { return ipow(ctx.p(), j); }

inline bool divides(std::int64_t k, std::int64_t n) { return n % k == 0; }

}  // namespace detail

inline bool sd_condition(const FieldCtx& ctx, const MapSignature& sig) {
  if (sig.k != sig.l) return false;
  switch (sig.family) {
    case Family::pp: return true;
    case Family::kp:
    case Family::pl: return false;
    case Family::kl:
      for (int j : involution_twists(ctx)) {
        const Fel w = ctx.frobenius(sig.omega_k, j);
        if (sig.omega_l == w || sig.omega_l == ctx.neg(w)) return true;
      }
      return false;
  }
  return false;
}

inline bool sp_condition(const FieldCtx& ctx, const MapSignature& sig) {
  const Elem four{ctx, 4};
  switch (sig.family) {
    case Family::pp: return false;
    case Family::kp: {
      const Elem xi{ctx, *sig.xi_k}, w{ctx, sig.omega_k};
      for (int j : involution_twists(ctx)) {
        const std::int64_t r = detail::twist_power(ctx, j);
        const Elem lhs = w.pow(r + 1);
        for (const Elem s : {lhs, -lhs}) {
          if (detail::divides(sig.k, r + 1) && s == four * xi.pow(r + 1)) return true;
          if (detail::divides(sig.k, r - 1) && s == four * xi.pow(r - 1)) return true;
        }
      }
      return false;
    }
    case Family::pl: {
      if (ctx.e() % 2 != 0) return false;
      const std::int64_t r = detail::twist_power(ctx, ctx.e() / 2);
      const Elem w{ctx, sig.omega_l};
      return w * w == -(w.pow(2 * r));
    }
    case Family::kl: {
      const Elem wk{ctx, sig.omega_k}, wl{ctx, sig.omega_l};
      const Elem D = wk * wk + wl * wl - four;
      if (wl * wl == -D) return true;
      if (ctx.e() % 2 != 0) return false;
      const std::int64_t r = detail::twist_power(ctx, ctx.e() / 2);
      return wl.pow(2 * r) == -D && (detail::divides(sig.k, r - 1) || detail::divides(sig.k, r + 1));
    }
  }
  return false;
}

inline bool mr_condition(const FieldCtx& ctx, const MapSignature& sig) {
  if (sig.k % 2 != 0) return false;
  const Elem wk{ctx, sig.omega_k}, wl{ctx, sig.omega_l}, four{ctx, 4};
  switch (sig.family) {
    case Family::kp: return (wk * wk + four).is_zero();
    case Family::kl: return wk * wk + Elem{ctx, 2} * wl * wl == four;
    default: return false;
  }
}

/// X R^(k/2) X = R^(k/2) Y, checked on the matrices.
inline bool mr_direct(const FieldCtx& ctx, const GenTriple& t, int k) {
  if (k % 2 != 0) throw PreconditionError("mr_direct requires even k");
  const ProjElement h = proj_pow(ctx, t.R, k / 2);
  return proj_mul(ctx, proj_mul(ctx, t.X, h), t.X) == proj_mul(ctx, h, t.Y);
}

/// Searches for (A, j), A over GF(q) and j in {0, e/2}, with f(src_i) = dst_i.
/// Matrices are taken in a frame where they are defined over GF(q).
inline std::optional<SemilinearAuto> find_semilinear(const FieldCtx& ctx,
                                                     const std::array<std::pair<ProjElement, ProjElement>, 3>& images) {
  for (int j : involution_twists(ctx)) {
    std::array<Mat2, 3> P, N;
    std::array<Fel, 3> root;
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i) {
      P[i] = frobenius(ctx, images[i].first.rep(), j);
      N[i] = images[i].second.rep();
      const auto s = ctx.sqrt(ctx.div(det(ctx, P[i]), det(ctx, N[i])));
      ok = s.has_value();
      if (ok) root[i] = *s;
    }
    if (!ok) continue;
    // A P A^-1 ~ N with A P = lambda N A forces lambda^2 = det P / det N.
    for (int signs = 0; signs < 8; ++signs) {
      std::vector<std::vector<Fel>> rows;
      for (std::size_t i = 0; i < 3; ++i) {
        const Fel lambda = (signs >> i) & 1 ? ctx.neg(root[i]) : root[i];
        append_intertwining_rows(ctx, P[i], N[i], lambda, rows);
      }
      const auto basis = detail::nullspace(ctx, rows, 4);
      std::vector<std::vector<Fel>> candidates = basis;
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b) {
          std::vector<Fel> sum(4);
          for (int c = 0; c < 4; ++c) sum[c] = ctx.add(basis[a][c], basis[b][c]);
          candidates.push_back(std::move(sum));
        }
      for (const auto& v : candidates) {
        const Mat2 A{v[0], v[1], v[2], v[3]};
        if (det(ctx, A).is_zero()) continue;
        const SemilinearAuto f{proj(ctx, A), j};
        if (!over_gfq(ctx, f.A)) continue;
        bool all = true;
        for (const auto& [src, dst] : images) all = all && apply_auto(ctx, f, src) == dst;
        if (all) return f;
      }
    }
  }
  return std::nullopt;
}

/// An involution with X <-> Y and Z fixed, in the triple's rational frame.
inline std::optional<SemilinearAuto> find_duality_witness(const FieldCtx& ctx, const GenTriple& t) {
  const RationalFrame& f = t.frame;
  return find_semilinear(ctx, {{{f.X, f.Y}, {f.Y, f.X}, {f.Z, f.Z}}});
}

/// An involution with X -> XY and Y, Z fixed, in the triple's rational frame.
inline std::optional<SemilinearAuto> find_petrie_witness(const FieldCtx& ctx, const GenTriple& t) {
  const RationalFrame& f = t.frame;
  return find_semilinear(ctx, {{{f.X, proj_mul(ctx, f.X, f.Y)}, {f.Y, f.Y}, {f.Z, f.Z}}});
}

struct SymFlags {
  bool sd = false;
  bool sp = false;
  bool mr = false;
  std::optional<SemilinearAuto> sd_witness;
  std::optional<SemilinearAuto> sp_witness;
};

enum class ClassifyMode {
  conditions,  // trace conditions only
  validate,    // also search witnesses and throw on disagreement
};

inline SymFlags classify(const FieldCtx& ctx, const MapSignature& sig, const GenTriple& t,
                         ClassifyMode mode = ClassifyMode::conditions) {
  SymFlags flags{sd_condition(ctx, sig), sp_condition(ctx, sig), mr_condition(ctx, sig), std::nullopt, std::nullopt};
  if (mode == ClassifyMode::conditions) return flags;

  const std::string where = "q=" + std::to_string(ctx.q()) + " (" + std::to_string(sig.k) + "," +
                            std::to_string(sig.l) + ") " + to_string(sig.family);
  if (sig.k == sig.l) flags.sd_witness = find_duality_witness(ctx, t);
  flags.sp_witness = find_petrie_witness(ctx, t);
  if (flags.sd_witness.has_value() != flags.sd) throw ValidationError("duality witness disagrees with condition at " + where);
  if (flags.sp_witness.has_value() != flags.sp) throw ValidationError("Petrie witness disagrees with condition at " + where);
  const bool mr = sig.k % 2 == 0 && mr_direct(ctx, t, sig.k);
  if (mr != flags.mr) throw ValidationError("Moebius check disagrees with condition at " + where);
  for (const auto& w : {flags.sd_witness, flags.sp_witness})
    if (w && !is_involution(ctx, *w)) throw ValidationError("witness is not an involution at " + where);
  return flags;
}

}  // namespace regmaps
