#pragma once

// 2x2 matrices over GF(q^2) modulo scalars, and the semilinear action
// T -> A phi_j(T) A^-1 of PGammaL(2,q).

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regmaps/field.hpp"

namespace regmaps {

struct Mat2 {
  Fel a, b, c, d;  // row-major

  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

inline Mat2 identity_mat(const FieldCtx& ctx) { return {ctx.one(), ctx.zero(), ctx.zero(), ctx.one()}; }

inline Mat2 mat_mul(const FieldCtx& ctx, const Mat2& x, const Mat2& y) {
  return {ctx.add(ctx.mul(x.a, y.a), ctx.mul(x.b, y.c)), ctx.add(ctx.mul(x.a, y.b), ctx.mul(x.b, y.d)),
          ctx.add(ctx.mul(x.c, y.a), ctx.mul(x.d, y.c)), ctx.add(ctx.mul(x.c, y.b), ctx.mul(x.d, y.d))};
}

inline Fel det(const FieldCtx& ctx, const Mat2& m) { return ctx.sub(ctx.mul(m.a, m.d), ctx.mul(m.b, m.c)); }
inline Fel trace(const FieldCtx& ctx, const Mat2& m) { return ctx.add(m.a, m.d); }

inline Mat2 scale(const FieldCtx& ctx, const Mat2& m, Fel s) {
  return {ctx.mul(m.a, s), ctx.mul(m.b, s), ctx.mul(m.c, s), ctx.mul(m.d, s)};
}

/// Adjugate; equals det * inverse.
inline Mat2 adjugate(const FieldCtx& ctx, const Mat2& m) { return {m.d, ctx.neg(m.b), ctx.neg(m.c), m.a}; }

inline Mat2 frobenius(const FieldCtx& ctx, const Mat2& m, int j) {
  return {ctx.frobenius(m.a, j), ctx.frobenius(m.b, j), ctx.frobenius(m.c, j), ctx.frobenius(m.d, j)};
}

/// A projective class, stored with its first nonzero entry (order a,b,c,d)
/// scaled to 1.
class ProjElement {
 public:
  ProjElement() = default;

  static ProjElement from(const FieldCtx& ctx, const Mat2& m) {
    if (det(ctx, m).is_zero()) throw PreconditionError("singular matrix has no projective class");
    Fel lead = m.a;
    for (Fel f : {m.a, m.b, m.c, m.d}) {
      if (!f.is_zero()) {
        lead = f;
        break;
      }
    }
    ProjElement out;
    out.rep_ = scale(ctx, m, ctx.inv(lead));
    return out;
  }

  const Mat2& rep() const { return rep_; }

  friend bool operator==(const ProjElement&, const ProjElement&) = default;
  friend auto operator<=>(const ProjElement&, const ProjElement&) = default;

 private:
  Mat2 rep_;
};

struct ProjElementHash {
  std::size_t operator()(const ProjElement& x) const noexcept {
    const Mat2& m = x.rep();
    std::size_t h = 1469598103934665603ull;
    for (Fel f : {m.a, m.b, m.c, m.d}) h = (h ^ static_cast<std::size_t>(f.log() + 1)) * 1099511628211ull;
    return h;
  }
};

inline ProjElement proj(const FieldCtx& ctx, const Mat2& m) { return ProjElement::from(ctx, m); }
inline ProjElement proj_identity(const FieldCtx& ctx) { return proj(ctx, identity_mat(ctx)); }

inline ProjElement proj_mul(const FieldCtx& ctx, const ProjElement& x, const ProjElement& y) {
  return proj(ctx, mat_mul(ctx, x.rep(), y.rep()));
}

inline ProjElement proj_inverse(const FieldCtx& ctx, const ProjElement& x) { return proj(ctx, adjugate(ctx, x.rep())); }

inline ProjElement proj_pow(const FieldCtx& ctx, const ProjElement& x, std::int64_t n) {
  ProjElement base = n < 0 ? proj_inverse(ctx, x) : x;
  std::int64_t k = n < 0 ? -n : n;
  ProjElement acc = proj_identity(ctx);
  while (k > 0) {
    if (k & 1) acc = proj_mul(ctx, acc, base);
    base = proj_mul(ctx, base, base);
    k >>= 1;
  }
  return acc;
}

inline bool is_proj_identity(const FieldCtx& ctx, const ProjElement& x) {
  const Mat2& m = x.rep();
  return m.b.is_zero() && m.c.is_zero() && m.a == ctx.one() && m.d == ctx.one();
}

/// Least n >= 1 with x^n = 1; throws ValidationError if none is <= cap.
inline int proj_order(const FieldCtx& ctx, const ProjElement& x, int cap) {
  if (cap < 1) throw PreconditionError("order cap must be >= 1");
  ProjElement acc = x;
  for (int n = 1; n <= cap; ++n) {
    if (is_proj_identity(ctx, acc)) return n;
    acc = proj_mul(ctx, acc, x);
  }
  throw ValidationError("projective order exceeds cap " + std::to_string(cap));
}

inline int default_order_cap(const FieldCtx& ctx) { return static_cast<int>(ctx.q() + 1); }

/// tr^2/det, the conjugation- and scaling-invariant of a projective class.
inline Fel trace_invariant(const FieldCtx& ctx, const ProjElement& x) {
  const Fel t = trace(ctx, x.rep());
  return ctx.div(ctx.mul(t, t), det(ctx, x.rep()));
}

/// The pair (A, j) acting by T -> A phi_j(T) A^-1, with phi_j(x) = x^(p^j).
struct SemilinearAuto {
  ProjElement A;
  int j = 0;

  friend bool operator==(const SemilinearAuto&, const SemilinearAuto&) = default;
};

inline SemilinearAuto identity_auto(const FieldCtx& ctx) { return {proj_identity(ctx), 0}; }

inline ProjElement apply_auto(const FieldCtx& ctx, const SemilinearAuto& f, const ProjElement& t) {
  const Mat2 twisted = frobenius(ctx, t.rep(), f.j);
  return proj(ctx, mat_mul(ctx, mat_mul(ctx, f.A.rep(), twisted), adjugate(ctx, f.A.rep())));
}

/// g after f: (B, j)(A, i) = (B phi_j(A), i + j mod 2e).
inline SemilinearAuto compose_autos(const FieldCtx& ctx, const SemilinearAuto& g, const SemilinearAuto& f) {
  const Mat2 m = mat_mul(ctx, g.A.rep(), frobenius(ctx, f.A.rep(), g.j));
  return {proj(ctx, m), (f.j + g.j) % (2 * ctx.e())};
}

/// True iff f acts trivially on matrices defined over GF(q).
inline bool is_identity_auto(const FieldCtx& ctx, const SemilinearAuto& f) {
  return is_proj_identity(ctx, f.A) && f.j % ctx.e() == 0;
}

inline bool is_involution(const FieldCtx& ctx, const SemilinearAuto& f) {
  return !is_identity_auto(ctx, f) && is_identity_auto(ctx, compose_autos(ctx, f, f));
}

/// The four entry equations for (A, j) to square to the identity, with r = p^j:
/// a^(r+1) = d^(r+1), b c^r = c b^r, a b^r + b d^r = 0, c a^r + d c^r = 0.
inline bool check_invoabcd(const FieldCtx& ctx, const Mat2& A, int j) {
  if (!(j == 0 || (ctx.e() % 2 == 0 && 2 * j == ctx.e())))
    throw PreconditionError("check_invoabcd: j must be 0 or e/2");
  const auto r = [&](Fel x) { return ctx.frobenius(x, j); };
  const Fel a = A.a, b = A.b, c = A.c, d = A.d;
  return ctx.mul(a, r(a)) == ctx.mul(d, r(d)) && ctx.mul(b, r(c)) == ctx.mul(c, r(b)) &&
         ctx.add(ctx.mul(a, r(b)), ctx.mul(b, r(d))).is_zero() && ctx.add(ctx.mul(c, r(a)), ctx.mul(d, r(c))).is_zero();
}

enum class PslClass { psl, pgl_only, not_over_gfq };

inline const char* to_string(PslClass c) {
  switch (c) {
    case PslClass::psl: return "psl";
    case PslClass::pgl_only: return "pgl";
    case PslClass::not_over_gfq: return "not_over_gfq";
  }
  return "?";
}

inline bool over_gfq(const FieldCtx& ctx, const ProjElement& x) {
  const Mat2& m = x.rep();
  return ctx.in_gfq(m.a) && ctx.in_gfq(m.b) && ctx.in_gfq(m.c) && ctx.in_gfq(m.d);
}

/// The canonical representative already has a unit entry, so it is over
/// GF(q) iff some scalar multiple is.
inline PslClass in_psl2q(const FieldCtx& ctx, const ProjElement& x) {
  if (!over_gfq(ctx, x)) return PslClass::not_over_gfq;
  return ctx.is_square_gfq(det(ctx, x.rep())) ? PslClass::psl : PslClass::pgl_only;
}

namespace detail {

/// Basis of the right null space of a row-major matrix with `cols` columns.
inline std::vector<std::vector<Fel>> nullspace(const FieldCtx& ctx, std::vector<std::vector<Fel>> rows, int cols) {
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Fel inv = ctx.inv(rows[rank][col]);
    for (Fel& v : rows[rank]) v = ctx.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      const Fel f = rows[i][col];
      for (int c = 0; c < cols; ++c) rows[i][c] = ctx.sub(rows[i][c], ctx.mul(f, rows[rank][c]));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<std::vector<Fel>> basis;
  for (int free = 0; free < cols; ++free) {
    bool is_pivot = false;
    for (int pc : pivot_col) is_pivot = is_pivot || pc == free;
    if (is_pivot) continue;
    std::vector<Fel> v(cols, ctx.zero());
    v[free] = ctx.one();
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = ctx.neg(rows[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// Rows of the linear conditions A*P - lambda*N*A = 0 on the entries (a,b,c,d) of A.
inline void append_intertwining_rows(const FieldCtx& ctx, const Mat2& P, const Mat2& N, Fel lambda,
                                     std::vector<std::vector<Fel>>& rows) {
  const std::array<std::array<Fel, 2>, 2> p{{{P.a, P.b}, {P.c, P.d}}};
  const std::array<std::array<Fel, 2>, 2> n{{{N.a, N.b}, {N.c, N.d}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      std::vector<Fel> row(4, ctx.zero());
      // (A P)_ij = sum_k A_ik P_kj
      for (int k = 0; k < 2; ++k) row[2 * i + k] = ctx.add(row[2 * i + k], p[k][j]);
      // (N A)_ij = sum_k N_ik A_kj
      for (int k = 0; k < 2; ++k) row[2 * k + j] = ctx.sub(row[2 * k + j], ctx.mul(lambda, n[i][k]));
      rows.push_back(std::move(row));
    }
  }
}

}  // namespace regmaps
