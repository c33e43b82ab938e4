#include <gtest/gtest.h>

#include <random>

#include "regmaps/oracle.hpp"
#include "regmaps/projective.hpp"

namespace regmaps {
namespace {

Mat2 diag(Fel a, Fel d) { return {a, Fel{}, Fel{}, d}; }

Mat2 random_invertible(const FieldCtx& ctx, std::mt19937_64& rng, bool over_q) {
  const std::int64_t n = ctx.group_order();
  std::uniform_int_distribution<std::int64_t> pick(-1, over_q ? ctx.q() - 2 : n - 1);
  const auto el = [&] {
    const std::int64_t i = pick(rng);
    if (i < 0) return Fel{};
    return Fel::from_log(static_cast<std::int32_t>(over_q ? i * (ctx.q() + 1) : i));
  };
  for (;;) {
    const Mat2 m{el(), el(), el(), el()};
    if (!det(ctx, m).is_zero()) return m;
  }
}

TEST(Projective, CanonicalForm) {
  const FieldCtx ctx(7, 1);
  const Mat2 m{ctx.from_int(3), ctx.from_int(1), ctx.from_int(2), ctx.from_int(5)};
  const ProjElement x = proj(ctx, m);
  EXPECT_EQ(x.rep().a, ctx.one());
  EXPECT_EQ(x, proj(ctx, scale(ctx, m, ctx.generator())));
  EXPECT_THROW(proj(ctx, Mat2{ctx.one(), ctx.one(), ctx.one(), ctx.one()}), PreconditionError);
}

TEST(Projective, GroupLawsOnPsl25) {
  const FieldCtx ctx(5, 1);
  const ExplicitGroup g = build_group(ctx);
  const auto psl = g.psl_elements();
  ASSERT_EQ(psl.size(), 60U);
  const ProjElement id = proj_identity(ctx);
  for (int a : psl) {
    EXPECT_EQ(proj_mul(ctx, id, g.at(a)), g.at(a));
    EXPECT_EQ(proj_mul(ctx, g.at(a), proj_inverse(ctx, g.at(a))), id);
    for (int b : psl) {
      EXPECT_TRUE(g.in_psl(g.mul(a, b)));
      for (int c : {psl[3], psl[17], psl[42]})
        EXPECT_EQ(proj_mul(ctx, proj_mul(ctx, g.at(a), g.at(b)), g.at(c)),
                  proj_mul(ctx, g.at(a), proj_mul(ctx, g.at(b), g.at(c))));
    }
  }
}

TEST(Projective, OrderExamples) {
  const FieldCtx ctx(3, 2);
  EXPECT_EQ(proj_order(ctx, proj_identity(ctx), 10), 1);
  for (int k : {4, 5}) {
    for (Fel xi : ctx.primitive_2k_roots(k))
      EXPECT_EQ(proj_order(ctx, proj(ctx, diag(xi, ctx.inv(xi))), default_order_cap(ctx)), k);
  }
  const Mat2 t{ctx.one(), ctx.generator(), ctx.from_int(2), ctx.neg(ctx.one())};
  EXPECT_EQ(proj_order(ctx, proj(ctx, t), 10), 2);
  EXPECT_THROW(proj_order(ctx, proj(ctx, diag(ctx.generator(), ctx.one())), 10), ValidationError);
  EXPECT_THROW(proj_order(ctx, proj_identity(ctx), 0), PreconditionError);
}

TEST(Projective, TraceZeroIsInvolution) {
  const FieldCtx ctx(5, 2);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Mat2 m = random_invertible(ctx, rng, false);
    m.d = ctx.neg(m.a);
    if (det(ctx, m).is_zero()) continue;
    EXPECT_EQ(proj_order(ctx, proj(ctx, m), 2), 2);
  }
}

TEST(Projective, ApplyAutoExamples) {
  const FieldCtx ctx(3, 2);
  std::mt19937_64 rng(11);
  const ProjElement t = proj(ctx, random_invertible(ctx, rng, false));
  EXPECT_EQ(apply_auto(ctx, identity_auto(ctx), t), t);
  const ProjElement a = proj(ctx, random_invertible(ctx, rng, false));
  EXPECT_EQ(apply_auto(ctx, {a, 0}, t), proj_mul(ctx, proj_mul(ctx, a, t), proj_inverse(ctx, a)));
  for (int j = 0; j < 4; ++j) {
    const ProjElement img = apply_auto(ctx, {a, j}, t);
    EXPECT_EQ(trace_invariant(ctx, img), ctx.frobenius(trace_invariant(ctx, t), j));
  }
}

TEST(Projective, ComposeAutos) {
  const FieldCtx ctx(3, 2);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const SemilinearAuto f{proj(ctx, random_invertible(ctx, rng, false)), i % 4};
    const SemilinearAuto g{proj(ctx, random_invertible(ctx, rng, false)), (i / 4) % 4};
    EXPECT_EQ(compose_autos(ctx, f, identity_auto(ctx)), f);
    const ProjElement t = proj(ctx, random_invertible(ctx, rng, false));
    EXPECT_EQ(apply_auto(ctx, compose_autos(ctx, g, f), t), apply_auto(ctx, g, apply_auto(ctx, f, t)));
  }
  const ProjElement a = proj(ctx, random_invertible(ctx, rng, false));
  const ProjElement b = proj(ctx, random_invertible(ctx, rng, false));
  EXPECT_EQ(compose_autos(ctx, {a, 0}, {b, 0}), (SemilinearAuto{proj_mul(ctx, a, b), 0}));
  const SemilinearAuto h{a, 1};
  EXPECT_EQ(compose_autos(ctx, h, h), (SemilinearAuto{proj(ctx, mat_mul(ctx, a.rep(), frobenius(ctx, a.rep(), 1))), 2}));
}

TEST(Projective, InvolutionExamples) {
  const FieldCtx ctx(7, 1);
  EXPECT_FALSE(is_involution(ctx, identity_auto(ctx)));
  const Mat2 t{ctx.one(), ctx.one(), ctx.from_int(2), ctx.neg(ctx.one())};
  EXPECT_TRUE(is_involution(ctx, {proj(ctx, t), 0}));
  EXPECT_TRUE(check_invoabcd(ctx, diag(ctx.one(), ctx.neg(ctx.one())), 0));
  EXPECT_TRUE(check_invoabcd(ctx, Mat2{ctx.zero(), ctx.one(), ctx.from_int(2), ctx.zero()}, 0));
  EXPECT_THROW(check_invoabcd(ctx, t, 1), PreconditionError);
  EXPECT_THROW(check_invoabcd(FieldCtx(3, 3), t, 1), PreconditionError);
}

TEST(Projective, InvolutionsActAsInvolutions) {
  const FieldCtx ctx(3, 2);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    // B phi(B)^-1 composed with phi gives an involution with twist e/2.
    const Mat2 b = random_invertible(ctx, rng, true);
    const Mat2 twisted = frobenius(ctx, b, 1);
    const SemilinearAuto f{proj(ctx, mat_mul(ctx, b, adjugate(ctx, twisted))), 1};
    ASSERT_TRUE(is_involution(ctx, f));
    const ProjElement t = proj(ctx, random_invertible(ctx, rng, true));
    EXPECT_EQ(apply_auto(ctx, f, apply_auto(ctx, f, t)), t);
  }
}

TEST(Projective, LemmasAgreeOnRandomMatrices) {
  for (int q : {5, 9, 25}) {
    const FieldCtx ctx = ctx_for_q(q);
    std::mt19937_64 rng(static_cast<std::uint64_t>(q));
    for (int i = 0; i < 500; ++i) {
      for (int j : {0, ctx.e() / 2}) {
        if (j != 0 && ctx.e() % 2 != 0) continue;
        const Mat2 a = random_invertible(ctx, rng, true);
        const SemilinearAuto f{proj(ctx, a), j};
        if (is_identity_auto(ctx, f)) continue;
        EXPECT_EQ(is_involution(ctx, f), check_invoabcd(ctx, a, j));
      }
    }
  }
}

TEST(Projective, PslMembership) {
  const FieldCtx ctx(7, 1);
  EXPECT_EQ(in_psl2q(ctx, proj_identity(ctx)), PslClass::psl);
  const Fel nonsq = ctx.from_int(3);
  ASSERT_FALSE(ctx.is_square_gfq(nonsq));
  EXPECT_EQ(in_psl2q(ctx, proj(ctx, diag(nonsq, ctx.one()))), PslClass::pgl_only);
  EXPECT_EQ(in_psl2q(ctx, proj(ctx, diag(ctx.generator(), ctx.one()))), PslClass::not_over_gfq);
  // Scalars from GF(q^2) do not change the class.
  const Mat2 m{ctx.from_int(2), ctx.one(), ctx.one(), ctx.one()};
  EXPECT_EQ(in_psl2q(ctx, proj(ctx, scale(ctx, m, ctx.generator()))), in_psl2q(ctx, proj(ctx, m)));
  EXPECT_STREQ(to_string(PslClass::pgl_only), "pgl");
}

TEST(Projective, PslCountsOverAllClasses) {
  for (int q : {5, 7, 9, 11}) {
    const FieldCtx ctx = ctx_for_q(q);
    const ExplicitGroup g = build_group(ctx);
    EXPECT_EQ(static_cast<std::int64_t>(g.elements().size()), q * (q * q - 1));
    EXPECT_EQ(g.psl_order(), q * (q * q - 1) / 2);
  }
}

TEST(Projective, Nullspace) {
  const FieldCtx ctx(7, 1);
  const Fel one = ctx.one(), two = ctx.from_int(2), z = ctx.zero();
  const auto basis = detail::nullspace(ctx, {{one, two, z, z}, {z, z, one, one}}, 4);
  ASSERT_EQ(basis.size(), 2U);
  for (const auto& v : basis) {
    EXPECT_EQ(ctx.add(v[0], ctx.mul(two, v[1])), z);
    EXPECT_EQ(ctx.add(v[2], v[3]), z);
  }
}

}  // namespace
}  // namespace regmaps
