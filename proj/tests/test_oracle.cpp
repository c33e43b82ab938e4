#include <gtest/gtest.h>

#include <set>

#include "regmaps/oracle.hpp"
#include "regmaps/report.hpp"

namespace regmaps {
namespace {

TEST(Oracle, GroupOrders) {
  for (auto [q, order] : {std::pair{5, 60}, {7, 168}, {9, 360}}) {
    const FieldCtx ctx = ctx_for_q(q);
    const ExplicitGroup g = build_group(ctx);
    EXPECT_EQ(g.psl_order(), order);
    EXPECT_EQ(static_cast<std::int64_t>(g.psl_elements().size()), order);
  }
}

TEST(Oracle, CapIsEnforced) {
  const FieldCtx ctx(17, 1);
  EXPECT_THROW(build_group(ctx), PreconditionError);
  EXPECT_NO_THROW(build_group(ctx, {17, 1, {}}));
}

TEST(Oracle, InvolutionCounts) {
  for (int q : {5, 7, 9, 11, 13}) {
    const FieldCtx ctx = ctx_for_q(q);
    const ExplicitGroup g = build_group(ctx);
    std::int64_t psl = 0;
    for (int i : g.involutions()) psl += g.in_psl(i);
    EXPECT_EQ(psl, psl_involution_count(q)) << q;
    EXPECT_EQ(static_cast<std::int64_t>(g.involutions().size()), q * q);
  }
}

TEST(Oracle, TripleTypes) {
  const auto types = [](int q) {
    const FieldCtx ctx = ctx_for_q(q);
    const ExplicitGroup g = build_group(ctx);
    std::set<std::pair<int, int>> out;
    for (const OracleTriple& t : all_triples(g)) out.insert({t.k, t.l});
    return out;
  };
  EXPECT_EQ(types(5), (std::set<std::pair<int, int>>{{5, 5}}));
  EXPECT_EQ(types(7), (std::set<std::pair<int, int>>{{3, 7}, {4, 7}, {7, 3}, {7, 4}, {7, 7}}));
}

TEST(Oracle, OrbitCounts) {
  for (auto [q, n] : {std::pair{5, 1}, {7, 5}, {9, 3}, {11, 16}, {13, 33}}) {
    const FieldCtx ctx = ctx_for_q(q);
    const ExplicitGroup g = build_group(ctx);
    const auto classes = orbit_count(g, all_triples(g));
    EXPECT_EQ(static_cast<int>(classes.size()), n) << q;
    const std::size_t gamma = g.elements().size() * static_cast<std::size_t>(ctx.e());
    for (const OracleClass& c : classes) EXPECT_EQ(gamma % c.orbit_size, 0U);
  }
}

TEST(Oracle, ClassifyByDefinition) {
  const auto q5 = oracle_classes(FieldCtx(5, 1));
  ASSERT_EQ(q5.size(), 1U);
  EXPECT_TRUE(q5[0].flags.sd);
  EXPECT_FALSE(q5[0].flags.sp);
  EXPECT_FALSE(q5[0].flags.mr);

  std::map<Bucket, int> buckets;
  for (const OracleClass& c : oracle_classes(ctx_for_q(13))) ++buckets[bucket_of(c.flags)];
  EXPECT_EQ(buckets[Bucket::none], 26);
  EXPECT_EQ(buckets[Bucket::sd_only], 4);
  EXPECT_EQ(buckets[Bucket::sp_only], 2);
  EXPECT_EQ(buckets[Bucket::sd_sp], 1);
  EXPECT_EQ(buckets[Bucket::sp_mr], 0);
}

TEST(Oracle, SpMrAtQ17) {
  int sp_mr = 0;
  for (const OracleClass& c : oracle_classes(FieldCtx(17, 1), {17, 4, {}})) {
    sp_mr += c.flags.sp && c.flags.mr;
    // Never coded: Moebius regular maps come out self-Petrie-dual.
    if (c.flags.mr) { EXPECT_TRUE(c.flags.sp); }
  }
  EXPECT_EQ(sp_mr, 2);
}

TEST(Oracle, EmptyDiffs) {
  for (int q : {5, 7, 9, 11, 13}) {
    const DiffReport d = diff_against_enumerate(ctx_for_q(q), {13, 2, {}});
    EXPECT_TRUE(d.empty()) << to_json(d).dump();
  }
}

TEST(Oracle, ShuffledInputGivesSameCensus) {
  const FieldCtx ctx(11, 1);
  const TypeTally plain = tally_oracle(oracle_classes(ctx));
  for (std::uint64_t seed : {1ULL, 99ULL}) EXPECT_EQ(tally_oracle(oracle_classes(ctx, {13, 1, seed})), plain);
}

TEST(Oracle, PerTypeMultiplicityAtQ7) {
  for (const auto& [kl, row] : tally_oracle(oracle_classes(FieldCtx(7, 1)))) EXPECT_EQ(row.at("total"), 1);
}

TEST(Oracle, FaultInjectionIsReported) {
  const FieldCtx ctx(11, 1);
  const auto oracle = oracle_classes(ctx);
  auto classes = enumerate_maps(ctx);
  auto it = std::find_if(classes.begin(), classes.end(), [](const MapClass& c) { return !c.flags.sp; });
  ASSERT_NE(it, classes.end());
  it->flags.sp = true;
  const DiffReport d = diff_against_enumerate(ctx, oracle, classes);
  ASSERT_FALSE(d.empty());
  bool named = false;
  for (const DiffEntry& e : d.entries) named = named || (e.k == it->signature.k && e.l == it->signature.l);
  EXPECT_TRUE(named);
}

TEST(Oracle, A5SubgroupOrder) {
  for (int q : {9, 11}) {
    const FieldCtx ctx = ctx_for_q(q);
    const ExplicitGroup g = build_group(ctx);
    const auto ws = ctx.omegas_for_order(5);
    const GenTriple t = triple_kl(ctx, ws[0].xi, ws[1].xi, {true});
    const int r = g.find(proj_mul(ctx, t.frame.Y, t.frame.Z));
    const int s = g.find(proj_mul(ctx, t.frame.Z, t.frame.X));
    EXPECT_EQ(generated_order(g, {r, s}), 60) << q;
    EXPECT_FALSE(generates_psl(g, r, s));
  }
}

}  // namespace
}  // namespace regmaps
