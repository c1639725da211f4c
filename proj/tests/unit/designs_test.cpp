#include <gtest/gtest.h>

#include <set>

#include "pgld/designs.hpp"
#include "pgld/error.hpp"
#include "support/oracles.hpp"

namespace pgld {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

Orbit pgl_orbit(const Field& f, const Block& b) {
  return orbit_of_block(f, group_generators(f, GroupKind::PGL), b, GroupKind::PGL);
}

TEST(Blocks, Examples) {
  const Field f7 = Field::make(7, 1);
  EXPECT_EQ(to_string(build_block(f7, {Family::SubgroupZero, 2})), "0,1,2,4");
  EXPECT_EQ(to_string(build_block(f7, {Family::SubgroupZeroInf, 3})), "0,1,6,inf");
  EXPECT_EQ(to_string(build_block(Field::make(5, 1), {Family::SubgroupOnly, 1})), "1,2,3,4");
  EXPECT_EQ(code_of([&] { build_block(f7, {Family::SubgroupOnly, 2}); }), ErrorCode::KTooSmall);
  EXPECT_EQ(code_of([&] { build_block(f7, {Family::SubgroupOnly, 4}); }), ErrorCode::BadResidueIndex);
  EXPECT_EQ(build_block(f7, {Family::SubgroupOnly, 2}, false).size(), 3u);
  EXPECT_EQ(parse_family("subgroup0inf"), Family::SubgroupZeroInf);
  EXPECT_FALSE(parse_family("other"));
}

TEST(Designs, VerifyExamples) {
  const Field f5 = Field::make(5, 1);
  const Orbit o5 = pgl_orbit(f5, build_block(f5, {Family::SubgroupOnly, 1}));
  EXPECT_EQ(verify_design(o5, f5), (DesignParams{3, 6, 4, 3, 15}));

  const Field f9 = Field::make(3, 2);
  const Orbit o9 = pgl_orbit(f9, build_block(f9, {Family::SubgroupOnly, 2}));
  EXPECT_EQ(verify_design(o9, f9), (DesignParams{3, 10, 4, 1, 30}));

  const Orbit whole{{Block::make(projective_line(f9))}, GroupKind::PGL};
  EXPECT_EQ(verify_design(whole, f9), (DesignParams{3, 10, 10, 1, 1}));
}

TEST(Designs, NotADesignIsReported) {
  const Field f5 = Field::make(5, 1);
  const Orbit partial{{parse_block(f5, "0,1,2"), parse_block(f5, "0,1,3")}, GroupKind::PGL};
  EXPECT_EQ(code_of([&] { verify_design(partial, f5); }), ErrorCode::NotADesign);
}

TEST(Designs, LambdaFromStabilizer) {
  EXPECT_EQ(lambda_from_stabilizer(4, 8), 3u);
  EXPECT_EQ(lambda_from_stabilizer(4, 24), 1u);
  EXPECT_EQ(lambda_from_stabilizer(4, 12), 2u);
  EXPECT_EQ(code_of([] { lambda_from_stabilizer(4, 5); }), ErrorCode::NonIntegralLambda);
}

// Triple counting against a scan of every block for every triple.
TEST(DesignsExhaustive, CountAgreesWithScan) {
  oracle::Rng rng(0x7c0d);
  for (const Field& f : oracle::fields_up_to(16)) {
    const auto gens = group_generators(f, GroupKind::PGL);
    for (int t = 0; t < 4; ++t) {
      const Block b = oracle::random_block(f, 3 + rng() % std::min<std::uint32_t>(f.q() - 1, 5), rng);
      const Orbit o = orbit_of_block(f, gens, b, GroupKind::PGL);
      const auto counts = oracle::triple_counts(f, o.blocks);
      ASSERT_EQ(counts.size(), 1u) << "not a 3-design";
      const DesignParams d = verify_design(o, f, 3, 1 + t);
      ASSERT_EQ(d.lambda, *counts.begin());
      ASSERT_EQ(d.lambda * binomial(f.q() + 1, 3), o.size() * binomial(b.size(), 3));
    }
  }
}

TEST(Predict, SubgroupOnly) {
  const auto p5 = predict_subgroup_only(Field::make(5, 1), 4);
  EXPECT_EQ(p5.type, SubgroupType::dihedral(5, 4));
  EXPECT_EQ(p5.lambda, 3u);
  const auto p9 = predict_subgroup_only(Field::make(3, 2), 4);
  EXPECT_EQ(p9.type, SubgroupType::pgl_sub(3, 1));
  EXPECT_EQ(p9.lambda, 1u);
  const auto p13 = predict_subgroup_only(Field::make(13, 1), 6);
  EXPECT_EQ(p13.type, SubgroupType::dihedral(13, 6));
  EXPECT_EQ(p13.lambda, 10u);
  EXPECT_EQ(code_of([] { predict_subgroup_only(Field::make(7, 1), 3); }), ErrorCode::KTooSmall);
  EXPECT_EQ(code_of([] { predict_subgroup_only(Field::make(7, 1), 4); }), ErrorCode::BadResidueIndex);
}

TEST(Predict, SubgroupZero) {
  const auto p7 = predict_subgroup_zero(Field::make(7, 1), 3);
  EXPECT_EQ(p7.type, SubgroupType::alternating4(7));
  EXPECT_EQ(p7.lambda, 2u);
  const auto p13 = predict_subgroup_zero(Field::make(13, 1), 4);
  EXPECT_EQ(p13.type, SubgroupType::cyclic(13, 4));
  EXPECT_EQ(p13.lambda, 15u);
  const auto p9 = predict_subgroup_zero(Field::make(3, 2), 8);
  EXPECT_EQ(p9.type, SubgroupType::semidirect(3, 2, 8));
  EXPECT_EQ(p9.lambda, 7u);
}

TEST(Predict, SubgroupZeroInf) {
  EXPECT_EQ(predict_subgroup_zero_inf(Field::make(7, 1), 2).lambda, 3u);
  EXPECT_EQ(predict_subgroup_zero_inf(Field::make(3, 2), 2).lambda, 1u);
  EXPECT_EQ(predict_subgroup_zero_inf(Field::make(13, 1), 6).lambda, 28u);
  EXPECT_FALSE(predict_subgroup_zero_inf(Field::make(13, 1), 6).type);
}

// The case split is decided by plain divisibility of q, independently of
// the predictor's own prime-power test.
TEST(Predict, CasesAreExclusiveAndExhaustive) {
  for (const Field& f : oracle::fields_up_to(128)) {
    const std::uint64_t q = f.q();
    for (std::uint64_t k : f.unit_divisors()) {
      if (k >= 4) {
        const auto pr = predict_subgroup_only(f, k);
        const bool subfield = q % (k - 1) == 0;
        ASSERT_EQ(pr.lambda, subfield ? 1 : (k - 1) * (k - 2) / 2) << "q=" << q << " k=" << k;
        ASSERT_EQ(pr.lambda * pr.stab_order, k * (k - 1) * (k - 2));
      }
      if (k >= 3) {
        const auto pr = predict_subgroup_zero(f, k);
        const std::uint64_t expected = k == 3 ? 2 : q % (k + 1) == 0 ? k - 1 : (k + 1) * (k - 1);
        ASSERT_EQ(pr.lambda, expected) << "q=" << q << " k=" << k;
        ASSERT_EQ(pr.lambda * pr.stab_order, (k + 1) * k * (k - 1));
        ASSERT_EQ(pr.type->order, pr.stab_order);
        if (k == 3) ASSERT_NE(f.p(), 3u);
      }
      if (k >= 2) {
        const auto pr = predict_subgroup_zero_inf(f, k);
        const std::uint64_t expected =
            q % (k + 1) == 0 ? 1 : (k == 2 || k == 4) ? k + 1 : (k + 2) * (k + 1) / 2;
        ASSERT_EQ(pr.lambda, expected) << "q=" << q << " k=" << k;
        ASSERT_EQ(pr.lambda * pr.stab_order, (k + 2) * (k + 1) * k);
      }
    }
  }
}

TEST(Witness, SubfieldMap) {
  const Field f9 = Field::make(3, 2);
  const Moebius w = witness_subfield_map(f9, 2);
  const FieldElement beta = f9.power(f9.theta(), 2);
  EXPECT_EQ(beta.code, 6u);  // 2x
  EXPECT_EQ(apply(f9, w, ProjPoint::finite(beta)), ProjPoint::infinity());
  for (auto x : f9.power_subgroup(2)) {
    const ProjPoint y = apply(f9, w, ProjPoint::finite(x));
    EXPECT_TRUE(y.is_infinity() || f9.is_in_subfield(y.value(), 1));
  }
  EXPECT_TRUE(check_subfield_image(f9, 2));
  EXPECT_TRUE(check_subfield_image(Field::make(5, 2), 4));
  EXPECT_TRUE(check_subfield_image(Field::make(3, 4), 20));
  EXPECT_TRUE(check_subfield_image(Field::make(3, 4), 8));
  EXPECT_EQ(code_of([] { witness_subfield_map(Field::make(13, 1), 2); }), ErrorCode::PreconditionFailed);
  EXPECT_EQ(code_of([] { witness_subfield_map(Field::make(2, 4), 3); }), ErrorCode::PreconditionFailed);
}

TEST(Witness, SubfieldMapLandsInStabilizerCoset) {
  // The witness carries the block onto GF(p^m) u {inf}, whose stabilizer is
  // PGL(2,p^m); conjugating back gives the block's stabilizer.
  for (auto [p, n, r] : {std::tuple{3u, 2u, 2u}, {5u, 2u, 4u}, {3u, 4u, 20u}, {3u, 4u, 8u}, {7u, 2u, 6u}}) {
    const Field f = Field::make(p, n);
    const Block b = build_block(f, {Family::SubgroupOnly, r});
    const Block img = image(f, witness_subfield_map(f, r), b);
    const std::uint64_t k = (f.q() - 1) / r;
    ASSERT_EQ(img.size(), k);
    EXPECT_TRUE(img.contains(ProjPoint::infinity()));
    for (auto pt : img.points()) {
      if (!pt.is_infinity()) {
        std::uint32_t m = 0;
        for (std::uint64_t pm = 1; pm < k - 1; pm *= p) ++m;
        EXPECT_TRUE(f.is_in_subfield(pt.value(), m));
      }
    }
  }
}

TEST(Witness, A4Map) {
  const Field f7 = Field::make(7, 1);
  const Moebius w = witness_a4_map(f7, 2);
  EXPECT_EQ(w, make_moebius(f7, 1, -1, 5, -1));
  auto at = [&](std::uint32_t x) { return apply(f7, w, ProjPoint::finite({x})); };
  EXPECT_EQ(at(0), ProjPoint::finite({1}));
  EXPECT_EQ(at(1), ProjPoint::finite({0}));
  EXPECT_EQ(at(2), ProjPoint::finite({4}));
  EXPECT_EQ(at(4), ProjPoint::finite({2}));
  const Block b = build_block(f7, {Family::SubgroupZero, 2});
  EXPECT_EQ(image(f7, compose(f7, w, w), b), b);
  EXPECT_TRUE(check_a4_witness(f7, 2));
  EXPECT_TRUE(check_a4_witness(Field::make(13, 1), 4));
  EXPECT_EQ(code_of([&] { witness_a4_map(f7, 1); }), ErrorCode::PreconditionFailed);

  // Every k = 3 case up to 81: the witness lies in the computed stabilizer.
  for (const Field& f : oracle::fields_up_to(81)) {
    if ((f.q() - 1) % 3 != 0) continue;
    const std::uint64_t r = (f.q() - 1) / 3;
    if (!check_a4_witness(f, r)) ADD_FAILURE() << f.describe();
    const Block blk = build_block(f, {Family::SubgroupZero, r});
    EXPECT_EQ(image(f, witness_a4_map(f, r), blk), blk) << f.describe();
  }
}

TEST(Witness, RemarkEquivalence) {
  for (std::uint32_t n : {2u, 4u, 6u}) {
    const Field f = Field::make(2, n);
    const std::uint64_t r = (f.q() - 1) / 3;
    EXPECT_TRUE(check_remark_equivalence(f, r)) << f.describe();
    const FieldElement w = f.power(f.theta(), static_cast<std::int64_t>(r));
    const Block a = Block::make({ProjPoint::finite(f.zero()), ProjPoint::finite(f.one()), ProjPoint::finite(w),
                                 ProjPoint::infinity()});
    const Block b = build_block(f, {Family::SubgroupZero, r});
    // Same orbit, so the two families give the same design.
    if (f.q() <= 16) EXPECT_TRUE(pgl_orbit(f, a).contains(b));
  }
  EXPECT_EQ(code_of([] { check_remark_equivalence(Field::make(7, 1), 2); }), ErrorCode::PreconditionFailed);
  EXPECT_EQ(code_of([] { check_remark_equivalence(Field::make(2, 4), 1); }), ErrorCode::PreconditionFailed);
}

TEST(Arithmetic, SubfieldDivisibility) {
  EXPECT_TRUE(check_subfield_divisibility(Field::make(3, 2), 4, Family::SubgroupOnly));
  EXPECT_TRUE(check_subfield_divisibility(Field::make(3, 2), 8, Family::SubgroupZero));
  EXPECT_TRUE(check_subfield_divisibility(Field::make(3, 4), 80, Family::SubgroupZero));
  EXPECT_EQ(code_of([] { check_subfield_divisibility(Field::make(13, 1), 4, Family::SubgroupOnly); }),
            ErrorCode::PreconditionFailed);
  EXPECT_EQ(prime_power_exponent(27, 3), 3u);
  EXPECT_FALSE(prime_power_exponent(12, 2));
  EXPECT_FALSE(prime_power_exponent(1, 2));
}

TEST(Arithmetic, Simplicity) {
  const Field f5 = Field::make(5, 1);
  const Orbit o = pgl_orbit(f5, build_block(f5, {Family::SubgroupOnly, 1}));
  EXPECT_TRUE(check_simplicity(o.blocks));
  std::vector<Block> dup = o.blocks;
  dup.push_back(o.blocks.front());
  EXPECT_FALSE(check_simplicity(dup));
}

// Parameters do not depend on which primitive element defines the blocks.
TEST(Designs, ThetaIndependence) {
  for (const Field& f : oracle::fields_up_to(32)) {
    FieldElement other = f.theta();
    for (std::uint32_t c = f.theta().code + 1; c < f.q(); ++c) {
      if (oracle::order_by_iteration(f, {c}) == f.q() - 1) {
        other = {c};
        break;
      }
    }
    if (other == f.theta()) continue;
    const Field g = f.with_primitive(other);
    for (std::uint64_t r : f.unit_divisors()) {
      for (Family fam : {Family::SubgroupOnly, Family::SubgroupZero, Family::SubgroupZeroInf}) {
        const std::uint64_t k = (f.q() - 1) / r;
        if (k < min_k(fam)) continue;
        const auto a = verify_design(pgl_orbit(f, build_block(f, {fam, r})), f);
        const auto b = verify_design(pgl_orbit(g, build_block(g, {fam, r})), g);
        ASSERT_EQ(a, b) << f.describe() << " " << family_name(fam) << " r=" << r;
      }
    }
  }
}

}  // namespace
}  // namespace pgld
