#pragma once

// Explicit generating involutions (X, Y, Z) and rotations R = YZ, S = ZX for
// the four families of regular maps on PSL(2,q):
//   pp : type (p, p)
//   kp : type (k, p), gcd(k, p) = 1
//   pl : type (p, l), gcd(l, p) = 1
//   kl : type (k, l), gcd(kl, p) = 1
//
// The matrices are written over GF(q^2).  When xi is not in GF(q) they are
// not defined over GF(q), so each triple also carries a rational frame: a
// basis change after which X, Y, Z have entries in GF(q) up to scalars.
// Semilinear automorphisms are only meaningful in that frame.

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "regmaps/field.hpp"
#include "regmaps/projective.hpp"

namespace regmaps {

enum class Family { pp, kp, pl, kl };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::pp: return "pp";
    case Family::kp: return "kp";
    case Family::pl: return "pl";
    case Family::kl: return "kl";
  }
  return "?";
}

/// Trace data of one map candidate.  On a side of order p the root is
/// absent and omega is 2, the trace of a unipotent element.
struct MapSignature {
  Family family = Family::kl;
  int k = 0;
  int l = 0;
  std::optional<Fel> xi_k;
  std::optional<Fel> xi_l;
  Fel omega_k;
  Fel omega_l;

  /// Total order used for canonical representatives and output ordering.
  auto key() const {
    const auto opt = [](const std::optional<Fel>& f) { return f ? f->log() : -2; };
    return std::tuple{k, l, static_cast<int>(family), omega_k.log(), omega_l.log(), opt(xi_k), opt(xi_l)};
  }
  friend bool operator==(const MapSignature& a, const MapSignature& b) { return a.key() == b.key(); }
  friend bool operator<(const MapSignature& a, const MapSignature& b) { return a.key() < b.key(); }
};

inline bool is_hyperbolic(int k, int l) { return k * l > 2 * (k + l); }

/// Basis change C (columns are the new basis vectors) and the generators
/// C^-1 M C, each defined over GF(q) up to a scalar.
struct RationalFrame {
  Mat2 basis;
  ProjElement X, Y, Z;
};

struct GenTriple {
  ProjElement X, Y, Z;
  ProjElement R, S;
  std::optional<Fel> alpha;
  std::optional<Fel> eta;
  std::optional<Fel> beta;
  Fel D;  // omega_k^2 + omega_l^2 - 4
  RationalFrame frame;
};

// ---------------------------------------------------------------------------
// Validation

/// Checks the defining relations; returns the first failure, or nullopt.
inline std::optional<std::string> validate_triple(const FieldCtx& ctx, const GenTriple& t, int k, int l) {
  const auto sq_is_one = [&](const ProjElement& m) { return is_proj_identity(ctx, proj_mul(ctx, m, m)); };
  const ProjElement XY = proj_mul(ctx, t.X, t.Y);
  const std::array<std::pair<const char*, const ProjElement*>, 4> invols{
      {{"X", &t.X}, {"Y", &t.Y}, {"Z", &t.Z}, {"XY", &XY}}};
  for (const auto& [name, m] : invols) {
    if (is_proj_identity(ctx, *m)) return std::string(name) + " is the identity";
    if (!sq_is_one(*m)) return std::string(name) + "^2 != 1";
  }
  const ProjElement YZ = proj_mul(ctx, t.Y, t.Z);
  const ProjElement ZX = proj_mul(ctx, t.Z, t.X);
  const int cap = default_order_cap(ctx);
  const auto order_or_zero = [&](const ProjElement& m) {
    try {
      return proj_order(ctx, m, cap);
    } catch (const ValidationError&) {
      return 0;
    }
  };
  if (order_or_zero(YZ) != k) return "order(YZ) != k";
  if (order_or_zero(ZX) != l) return "order(ZX) != l";
  if (!(t.R == YZ)) return "R != YZ";
  if (!(t.S == ZX)) return "S != ZX";
  return std::nullopt;
}

namespace detail {

inline Mat2 m2(Fel a, Fel b, Fel c, Fel d) { return {a, b, c, d}; }

inline int half_root_order(const FieldCtx& ctx, Fel xi, const char* which) {
  if (xi.is_zero()) throw PreconditionError(std::string(which) + " must be nonzero");
  const std::int64_t n = ctx.mult_order(xi);
  if (n % 2 != 0 || n < 6) throw PreconditionError(std::string(which) + " must have even order 2k with k >= 3");
  const int k = static_cast<int>(n / 2);
  if (k % ctx.p() == 0) throw PreconditionError(std::string(which) + ": k must be coprime to p");
  return k;
}

inline Fel omega_of(const FieldCtx& ctx, Fel xi) { return ctx.add(xi, ctx.inv(xi)); }

inline Mat2 inverse_mat(const FieldCtx& ctx, const Mat2& m) { return scale(ctx, adjugate(ctx, m), ctx.inv(det(ctx, m))); }

inline Mat2 conjugate_into(const FieldCtx& ctx, const Mat2& basis, const Mat2& m) {
  return mat_mul(ctx, inverse_mat(ctx, basis), mat_mul(ctx, m, basis));
}

inline std::optional<Mat2> det_one(const FieldCtx& ctx, const Mat2& m) {
  const auto s = ctx.sqrt(det(ctx, m));
  if (!s) return std::nullopt;
  return scale(ctx, m, ctx.inv(*s));
}

}  // namespace detail

/// Finds a basis in which the group generated by the triple is defined over
/// GF(q).  The identity basis is kept whenever it already works.
inline RationalFrame rational_frame(const FieldCtx& ctx, const ProjElement& X, const ProjElement& Y,
                                    const ProjElement& Z) {
  if (over_gfq(ctx, X) && over_gfq(ctx, Y) && over_gfq(ctx, Z)) return {identity_mat(ctx), X, Y, Z};

  const auto r = detail::det_one(ctx, proj_mul(ctx, Y, Z).rep());
  const auto s = detail::det_one(ctx, proj_mul(ctx, Z, X).rep());
  if (!r || !s) throw ValidationError("rotation determinant is not a square in GF(q^2)");
  // {I, R, S, RS} spans a GF(q)-form of M_2 (traces are in GF(q)); an element
  // of it with an eigenvalue in GF(q) has an eigenvector generating that form.
  const std::array<Mat2, 4> span{identity_mat(ctx), *r, *s, mat_mul(ctx, *r, *s)};
  std::vector<Fel> coeffs;
  for (int i = 0; i < ctx.p(); ++i) coeffs.push_back(ctx.from_int(i));
  for (std::int64_t i = 1; i < ctx.q() - 1 && coeffs.size() < 16; ++i)
    coeffs.push_back(ctx.pow(ctx.generator(), i * (ctx.q() + 1)));

  const std::size_t n = coeffs.size();
  for (std::size_t idx = 1; idx < n * n * n * n; ++idx) {
    std::size_t rest = idx;
    Mat2 u{ctx.zero(), ctx.zero(), ctx.zero(), ctx.zero()};
    for (const Mat2& b : span) {
      const Fel c = coeffs[rest % n];
      rest /= n;
      const Mat2 term = scale(ctx, b, c);
      u = {ctx.add(u.a, term.a), ctx.add(u.b, term.b), ctx.add(u.c, term.c), ctx.add(u.d, term.d)};
    }
    const Fel tr = trace(ctx, u);
    const Fel disc = ctx.sub(ctx.mul(tr, tr), ctx.mul(ctx.from_int(4), det(ctx, u)));
    if (!ctx.in_gfq(disc) || !ctx.is_square_gfq(disc)) continue;
    const Fel lambda = ctx.div(ctx.add(tr, *ctx.sqrt(disc)), ctx.from_int(2));
    const Mat2 shifted{ctx.sub(u.a, lambda), u.b, u.c, ctx.sub(u.d, lambda)};
    std::array<Fel, 2> v{};
    if (!shifted.a.is_zero() || !shifted.b.is_zero()) {
      v = {shifted.b, ctx.neg(shifted.a)};
    } else if (!shifted.c.is_zero() || !shifted.d.is_zero()) {
      v = {shifted.d, ctx.neg(shifted.c)};
    } else {
      continue;
    }
    for (const Mat2* gen : {&*r, &*s}) {
      const std::array<Fel, 2> w{ctx.add(ctx.mul(gen->a, v[0]), ctx.mul(gen->b, v[1])),
                                 ctx.add(ctx.mul(gen->c, v[0]), ctx.mul(gen->d, v[1]))};
      const Mat2 basis{v[0], w[0], v[1], w[1]};
      if (det(ctx, basis).is_zero()) continue;
      RationalFrame frame{basis, proj(ctx, detail::conjugate_into(ctx, basis, X.rep())),
                          proj(ctx, detail::conjugate_into(ctx, basis, Y.rep())),
                          proj(ctx, detail::conjugate_into(ctx, basis, Z.rep()))};
      if (over_gfq(ctx, frame.X) && over_gfq(ctx, frame.Y) && over_gfq(ctx, frame.Z)) return frame;
    }
  }
  throw ValidationError("no rational frame found; traces are not in GF(q)");
}

namespace detail {

inline GenTriple finish(const FieldCtx& ctx, GenTriple t, int k, int l) {
  if (auto diag = validate_triple(ctx, t, k, l)) throw ValidationError("generating triple invalid: " + *diag);
  t.frame = rational_frame(ctx, t.X, t.Y, t.Z);
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructors

/// Type (p, p): X = -a[[1,0],[2,-1]], Y = -a[[1,-1],[0,-1]], Z = a[[1,0],[0,-1]], a^2 = -1.
inline GenTriple triple_pp(const FieldCtx& ctx) {
  const Elem a{ctx, ctx.alpha()}, one{ctx, 1}, two{ctx, 2}, zero{ctx, 0};
  GenTriple t;
  t.alpha = a;
  t.X = proj(ctx, scale(ctx, detail::m2(one, zero, two, -one), -a));
  t.Y = proj(ctx, scale(ctx, detail::m2(one, -one, zero, -one), -a));
  t.Z = proj(ctx, scale(ctx, detail::m2(one, zero, zero, -one), a));
  t.R = proj_mul(ctx, t.Y, t.Z);
  t.S = proj_mul(ctx, t.Z, t.X);
  t.D = ctx.from_int(4);
  return detail::finish(ctx, std::move(t), ctx.p(), ctx.p());
}

/// Type (k, p) from a primitive 2k-th root xi:
/// X = ea[[-w, -2xi],[2/xi, w]], Y = -a[[0, xi],[1/xi, 0]], Z = a[[0,1],[1,0]],
/// with e = 1/(xi - 1/xi) and w = xi + 1/xi.
inline GenTriple triple_kp(const FieldCtx& ctx, Fel xi_k) {
  const int k = detail::half_root_order(ctx, xi_k, "xi_k");
  const Elem xi{ctx, xi_k}, a{ctx, ctx.alpha()}, one{ctx, 1}, two{ctx, 2}, zero{ctx, 0};
  const Elem w = xi + xi.inv();
  if (!ctx.in_gfq(w)) throw PreconditionError("omega_k is not in GF(q)");
  const Elem eta = (xi - xi.inv()).inv();
  GenTriple t;
  t.alpha = a;
  t.eta = eta;
  t.X = proj(ctx, scale(ctx, detail::m2(-w, -(two * xi), two * xi.inv(), w), eta * a));
  t.Y = proj(ctx, scale(ctx, detail::m2(zero, xi, xi.inv(), zero), -a));
  t.Z = proj(ctx, scale(ctx, detail::m2(zero, one, one, zero), a));
  t.R = proj_mul(ctx, t.Y, t.Z);
  t.S = proj_mul(ctx, t.Z, t.X);
  t.D = w * w;
  return detail::finish(ctx, std::move(t), k, ctx.p());
}

/// Type (p, l) from a primitive 2l-th root xi_l, w = xi_l + 1/xi_l:
/// X = a[[0, 1/w],[w, 0]], Y = -a[[1,0],[0,-1]], Z = a[[1,1],[0,-1]].
inline GenTriple triple_pl(const FieldCtx& ctx, Fel xi_l) {
  const int l = detail::half_root_order(ctx, xi_l, "xi_l");
  const Elem xi{ctx, xi_l}, a{ctx, ctx.alpha()}, one{ctx, 1}, zero{ctx, 0};
  const Elem w = xi + xi.inv();
  if (!ctx.in_gfq(w)) throw PreconditionError("omega_l is not in GF(q)");
  if (w.is_zero()) throw PreconditionError("omega_l = 0 leaves X undefined");
  GenTriple t;
  t.alpha = a;
  t.X = proj(ctx, scale(ctx, detail::m2(zero, w.inv(), w, zero), a));
  t.Y = proj(ctx, scale(ctx, detail::m2(one, zero, zero, -one), -a));
  t.Z = proj(ctx, scale(ctx, detail::m2(one, one, zero, -one), a));
  t.R = proj_mul(ctx, t.Y, t.Z);
  t.S = proj_mul(ctx, t.Z, t.X);
  t.D = w * w;
  return detail::finish(ctx, std::move(t), ctx.p(), l);
}

/// The (5,5) rotation pair degenerates to A5 exactly when the two trace
/// parameters differ.
inline bool a5_collapse(const FieldCtx& ctx, Fel xi_k, Fel xi_l) {
  if (ctx.p() == 5) throw PreconditionError("a5_collapse requires p != 5");
  if (ctx.mult_order(xi_k) != 10 || ctx.mult_order(xi_l) != 10)
    throw PreconditionError("a5_collapse requires type (5,5)");
  return detail::omega_of(ctx, xi_k) != detail::omega_of(ctx, xi_l);
}

/// Same criterion in product form: omega_k * omega_l = +-1.
inline bool a5_collapse_by_product(const FieldCtx& ctx, Fel xi_k, Fel xi_l) {
  if (ctx.p() == 5) throw PreconditionError("a5_collapse requires p != 5");
  if (ctx.mult_order(xi_k) != 10 || ctx.mult_order(xi_l) != 10)
    throw PreconditionError("a5_collapse requires type (5,5)");
  const Fel prod = ctx.mul(detail::omega_of(ctx, xi_k), detail::omega_of(ctx, xi_l));
  return prod == ctx.one() || prod == ctx.neg(ctx.one());
}

struct KlOptions {
  /// Build (5,5) triples whose rotations only generate A5.
  bool allow_a5_collapse = false;
};

/// Type (k, l) with D = w_k^2 + w_l^2 - 4, b^2 = -1/D, e = 1/(xi_k - 1/xi_k):
/// X = eb[[D, D w_l xi_k],[-w_l/xi_k, -D]], Y = b[[0, xi_k D],[1/xi_k, 0]],
/// Z = b[[0, D],[1, 0]], R = diag(xi_k, 1/xi_k), S = e[[-w_l/xi_k, -D],[1, w_l xi_k]].
inline GenTriple triple_kl(const FieldCtx& ctx, Fel xi_k, Fel xi_l, KlOptions opts = {}) {
  const int k = detail::half_root_order(ctx, xi_k, "xi_k");
  const int l = detail::half_root_order(ctx, xi_l, "xi_l");
  const Elem xi{ctx, xi_k}, zero{ctx, 0}, one{ctx, 1}, four{ctx, 4};
  const Elem wk = xi + xi.inv();
  const Elem wl = Elem{ctx, xi_l} + Elem{ctx, xi_l}.inv();
  if (!ctx.in_gfq(wk) || !ctx.in_gfq(wl)) throw PreconditionError("omega_k, omega_l must lie in GF(q)");
  const Elem D = wk * wk + wl * wl - four;
  if (D.is_zero()) throw PreconditionError("D = 0: degenerate (reducible) signature");
  if (k == 5 && l == 5 && ctx.p() != 5 && !opts.allow_a5_collapse && a5_collapse(ctx, xi_k, xi_l))
    throw PreconditionError("type (5,5) signature collapses to A5");
  const Elem beta{ctx, *ctx.sqrt(ctx.neg(ctx.inv(D)))};
  const Elem eta = (xi - xi.inv()).inv();
  GenTriple t;
  t.eta = eta;
  t.beta = beta;
  t.D = D;
  t.X = proj(ctx, scale(ctx, detail::m2(D, D * wl * xi, -(wl * xi.inv()), -D), eta * beta));
  t.Y = proj(ctx, scale(ctx, detail::m2(zero, xi * D, xi.inv(), zero), beta));
  t.Z = proj(ctx, scale(ctx, detail::m2(zero, D, one, zero), beta));
  t.R = proj(ctx, detail::m2(xi, zero, zero, xi.inv()));
  t.S = proj(ctx, scale(ctx, detail::m2(-(wl * xi.inv()), -D, one, wl * xi), eta));
  return detail::finish(ctx, std::move(t), k, l);
}

/// (R^-1 S)^3 = 1, the extra relation that makes a (5,5) rotation group A5.
inline bool a5_relation_holds(const FieldCtx& ctx, const GenTriple& t) {
  const ProjElement m = proj_mul(ctx, proj_inverse(ctx, t.R), t.S);
  return is_proj_identity(ctx, proj_pow(ctx, m, 3));
}

inline GenTriple build_triple(const FieldCtx& ctx, const MapSignature& sig, KlOptions opts = {}) {
  switch (sig.family) {
    case Family::pp: return triple_pp(ctx);
    case Family::kp: return triple_kp(ctx, sig.xi_k.value());
    case Family::pl: return triple_pl(ctx, sig.xi_l.value());
    case Family::kl: return triple_kl(ctx, sig.xi_k.value(), sig.xi_l.value(), opts);
  }
  throw std::logic_error("unknown family");
}

/// Signature for a side of order p (root absent) or coprime order (root given).
inline MapSignature make_signature(const FieldCtx& ctx, std::optional<Fel> xi_k, std::optional<Fel> xi_l) {
  MapSignature s;
  const Fel two = ctx.from_int(2);
  s.xi_k = xi_k;
  s.xi_l = xi_l;
  s.k = xi_k ? detail::half_root_order(ctx, *xi_k, "xi_k") : ctx.p();
  s.l = xi_l ? detail::half_root_order(ctx, *xi_l, "xi_l") : ctx.p();
  s.omega_k = xi_k ? detail::omega_of(ctx, *xi_k) : two;
  s.omega_l = xi_l ? detail::omega_of(ctx, *xi_l) : two;
  s.family = xi_k ? (xi_l ? Family::kl : Family::kp) : (xi_l ? Family::pl : Family::pp);
  return s;
}

}  // namespace regmaps
