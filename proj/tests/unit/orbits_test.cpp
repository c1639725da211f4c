#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "pgld/designs.hpp"
#include "pgld/error.hpp"
#include "support/oracles.hpp"

namespace pgld {
namespace {

Block points(const Field& f, std::initializer_list<const char*> text) {
  std::vector<ProjPoint> pts;
  for (const char* t : text) pts.push_back(parse_point(f, t));
  return Block::make(pts);
}

std::vector<Block> all_k_subsets(const Field& f, std::size_t k) {
  const auto line = projective_line(f);
  std::vector<Block> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    std::vector<ProjPoint> pts;
    for (auto i : idx) pts.push_back(line[i]);
    out.push_back(Block::make(pts));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == line.size() - k + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

TEST(Block, CanonicalAndText) {
  const Field f = Field::make(7, 1);
  const Block b = points(f, {"inf", "4", "0", "2"});
  EXPECT_EQ(to_string(b), "0,2,4,inf");
  EXPECT_EQ(parse_block(f, "0,2,4,inf"), b);
  EXPECT_TRUE(b.contains(ProjPoint::infinity()));
  EXPECT_FALSE(b.contains(ProjPoint::finite({1})));
  EXPECT_THROW(points(f, {"1", "1"}), Error);
  EXPECT_THROW(Block::make({}), Error);
}

TEST(Orbit, SpecExamples) {
  const Field f5 = Field::make(5, 1);
  const auto gens5 = group_generators(f5, GroupKind::PGL);
  const Block b5 = points(f5, {"1", "2", "3", "4"});
  EXPECT_EQ(orbit_of_block(f5, gens5, b5, GroupKind::PGL).size(), 15u);
  const std::vector<Moebius> id{identity()};
  EXPECT_EQ(orbit_of_block(f5, id, b5, GroupKind::PGL).blocks, std::vector<Block>{b5});

  const Field f9 = Field::make(3, 2);
  const auto sub = f9.power_subgroup(2);
  std::vector<ProjPoint> pts;
  for (auto x : sub) pts.push_back(ProjPoint::finite(x));
  const Orbit o9 = orbit_of_block(f9, group_generators(f9, GroupKind::PGL), Block::make(pts), GroupKind::PGL);
  EXPECT_EQ(o9.size(), 30u);
  EXPECT_TRUE(orbit_closed_under(f9, o9, group_generators(f9, GroupKind::PGL)));
}

TEST(Orbit, BudgetIsEnforced) {
  const Field f = Field::make(13, 1);
  const Block b = points(f, {"0", "1", "3", "7", "9"});
  EXPECT_THROW(orbit_of_block(f, group_generators(f, GroupKind::PGL), b, GroupKind::PGL, {1, 10}), Error);
}

TEST(Stabilizer, SpecExamples) {
  const Field f5 = Field::make(5, 1);
  const auto g5 = enumerate_group(f5, GroupKind::PGL);
  const Stabilizer s5 = stabilizer_of_block(f5, g5, points(f5, {"1", "2", "3", "4"}));
  EXPECT_EQ(s5.order(), 8u);
  EXPECT_TRUE(check_stabilizer(f5, s5));
  const auto lengths = point_orbit_lengths(f5, s5);
  EXPECT_EQ(lengths, (std::vector<std::uint64_t>{2, 4}));
  EXPECT_TRUE(block_is_union_of_orbits(f5, s5));

  const Field f7 = Field::make(7, 1);
  const Stabilizer s7 = stabilizer_of_block(f7, enumerate_group(f7, GroupKind::PGL), points(f7, {"0", "1", "2", "4"}));
  EXPECT_EQ(s7.order(), 12u);

  const Block whole = Block::make(projective_line(f5));
  EXPECT_EQ(stabilizer_of_block(f5, g5, whole).elements, g5);
}

TEST(Stabilizer, CheckRejectsNonSubgroups) {
  const Field f = Field::make(5, 1);
  const Block b = points(f, {"1", "2", "3", "4"});
  Stabilizer s = stabilizer_of_block(f, enumerate_group(f, GroupKind::PGL), b);
  Stabilizer missing = s;
  missing.elements.pop_back();
  EXPECT_FALSE(check_stabilizer(f, missing));
  Stabilizer wrong = s;
  wrong.elements.push_back(make_moebius(f, 1, 1, 0, 1));
  std::sort(wrong.elements.begin(), wrong.elements.end());
  EXPECT_FALSE(check_stabilizer(f, wrong));
}

TEST(Stabilizer, PointOrbitLengthsSubfieldCase) {
  const Field f9 = Field::make(3, 2);
  const Block b = build_block(f9, {Family::SubgroupOnly, 2});
  const Stabilizer s = stabilizer_of_block(f9, enumerate_group(f9, GroupKind::PGL), b);
  const auto lengths = point_orbit_lengths(f9, s);
  EXPECT_EQ(std::count(lengths.begin(), lengths.end(), 4u), 1);
  const Stabilizer trivial{b, {identity()}};
  EXPECT_EQ(point_orbit_lengths(f9, trivial), std::vector<std::uint64_t>(10, 1));
}

TEST(Stabilizer, Divisibility) {
  EXPECT_TRUE(check_divisibility(8, 4));
  EXPECT_TRUE(check_divisibility(1, 7));
  EXPECT_TRUE(check_divisibility(72, 9));
  EXPECT_FALSE(check_divisibility(5, 4));
}

TEST(PslOrbit, LiftsToPgl) {
  const Field f5 = Field::make(5, 1);
  const Block b5 = points(f5, {"1", "2", "3", "4"});
  const Orbit gamma5 = orbit_of_block(f5, group_generators(f5, GroupKind::PSL), b5, GroupKind::PSL);
  EXPECT_EQ(gamma5.size(), 15u);
  const Orbit lifted5 = psl_orbit_to_pgl(f5, gamma5);
  EXPECT_EQ(lifted5.group, GroupKind::PGL);
  EXPECT_EQ(lifted5.blocks, orbit_of_block(f5, group_generators(f5, GroupKind::PGL), b5, GroupKind::PGL).blocks);

  const Field f13 = Field::make(13, 1);
  const Block b13 = build_block(f13, {Family::SubgroupZero, 3});
  const Orbit gamma13 = orbit_of_block(f13, group_generators(f13, GroupKind::PSL), b13, GroupKind::PSL);
  const Orbit lifted13 = psl_orbit_to_pgl(f13, gamma13);
  EXPECT_EQ(lifted13.size(), 546u);
  EXPECT_EQ(lifted13.blocks,
            orbit_of_block(f13, group_generators(f13, GroupKind::PGL), b13, GroupKind::PGL).blocks);

  const Field f8 = Field::make(2, 3);
  const Block b8 = build_block(f8, {Family::SubgroupZeroInf, 1});
  const Orbit gamma8 = orbit_of_block(f8, group_generators(f8, GroupKind::PSL), b8, GroupKind::PSL);
  const Orbit lifted8 = psl_orbit_to_pgl(f8, gamma8);
  EXPECT_EQ(lifted8.blocks, gamma8.blocks);
  EXPECT_EQ(lifted8.group, GroupKind::PGL);
}

// Closure, stabilizer and the identity |G_B| |G(B)| = |G| against the
// brute-force oracles on random blocks, q <= 49.
TEST(OrbitExhaustive, AgreesWithGroupImages) {
  oracle::Rng rng(0x0b17);
  for (const Field& f : oracle::fields_up_to(49)) {
    const auto group = enumerate_group(f, GroupKind::PGL);
    const auto gens = group_generators(f, GroupKind::PGL);
    const int trials = f.q() <= 13 ? 12 : 3;
    for (int t = 0; t < trials; ++t) {
      const std::size_t k = 1 + rng() % std::min<std::uint32_t>(f.q() + 1, 6);
      const Block b = oracle::random_block(f, k, rng);
      const Stabilizer s = stabilizer_of_block(f, group, b);
      ASSERT_EQ(s.order(), oracle::stabilizer_order_by_group(f, group, b));
      ASSERT_TRUE(check_stabilizer(f, s));
      ASSERT_TRUE(block_is_union_of_orbits(f, s));
      const auto lengths = point_orbit_lengths(f, s);
      ASSERT_EQ(std::accumulate(lengths.begin(), lengths.end(), std::uint64_t{0}), f.q() + 1u);
      if (f.q() <= 13) {
        const Orbit o = orbit_of_block(f, gens, b, GroupKind::PGL);
        const auto expected = oracle::orbit_by_group(f, group, b);
        ASSERT_EQ(o.size(), expected.size());
        for (const auto& blk : o.blocks) ASSERT_TRUE(expected.count(blk.points()));
        ASSERT_TRUE(check_orbit_stabilizer(o.size(), s.order(), group.size()));
      }
    }
  }
}

TEST(OrbitExhaustive, DivisibilityOverAllOrbits) {
  for (const Field& f : oracle::fields_up_to(13)) {
    const auto group = enumerate_group(f, GroupKind::PGL);
    const auto gens = group_generators(f, GroupKind::PGL);
    for (std::size_t k = 3; k <= std::min<std::size_t>(6, f.q() + 1); ++k) {
      std::set<Block> seen;
      std::uint64_t covered = 0;
      for (const Block& b : all_k_subsets(f, k)) {
        if (seen.count(b)) continue;
        const Orbit o = orbit_of_block(f, gens, b, GroupKind::PGL);
        seen.insert(o.blocks.begin(), o.blocks.end());
        covered += o.size();
        const Stabilizer s = stabilizer_of_block(f, group, b);
        ASSERT_TRUE(check_divisibility(s.order(), k)) << f.describe() << " " << to_string(b);
        ASSERT_TRUE(check_orbit_stabilizer(o.size(), s.order(), group.size()));
      }
      ASSERT_EQ(covered, binomial(f.q() + 1, k));
    }
  }
}

TEST(OrbitProperty, DeterministicAcrossJobCounts) {
  oracle::Rng rng(0xd37e);
  const auto fields = oracle::fields_up_to(32);
  for (int i = 0; i < 1000; ++i) {
    const Field& f = fields[rng() % fields.size()];
    const std::size_t k = 2 + rng() % std::min<std::uint32_t>(f.q(), 4);
    const Block b = oracle::random_block(f, k, rng);
    const GroupKind kind = rng() % 2 ? GroupKind::PGL : GroupKind::PSL;
    const auto gens = group_generators(f, kind);
    const Orbit one = orbit_of_block(f, gens, b, kind, {1});
    const Orbit many = orbit_of_block(f, gens, b, kind, {static_cast<unsigned>(2 + rng() % 7)});
    ASSERT_EQ(one.blocks, many.blocks);
    ASSERT_TRUE(one.contains(b));
    // Every member generates the same orbit.
    const Block& other = one.blocks[rng() % one.size()];
    ASSERT_EQ(orbit_of_block(f, gens, other, kind, {1}).blocks, one.blocks);
  }
}

TEST(OrbitProperty, StabilizerDeterministicAcrossJobCounts) {
  oracle::Rng rng(0x57ab);
  const auto fields = oracle::fields_up_to(32);
  std::vector<std::vector<Moebius>> groups;
  for (const Field& f : fields) groups.push_back(enumerate_group(f, GroupKind::PGL));
  for (int i = 0; i < 1000; ++i) {
    const std::size_t which = rng() % fields.size();
    const Field& f = fields[which];
    const auto& group = groups[which];
    const Block b = oracle::random_block(f, 1 + rng() % std::min<std::uint32_t>(f.q() + 1, 6), rng);
    const Stabilizer one = stabilizer_of_block(f, group, b, 1);
    const Stabilizer many = stabilizer_of_block(f, group, b, static_cast<unsigned>(2 + rng() % 7));
    ASSERT_EQ(one.elements, many.elements);
  }
}

TEST(OrbitProperty, ImageIsCanonical) {
  oracle::Rng rng(0x1a6e);
  const auto fields = oracle::fields_up_to(128);
  for (int i = 0; i < 2000; ++i) {
    const Field& f = fields[rng() % fields.size()];
    const Block b = oracle::random_block(f, 1 + rng() % std::min<std::uint32_t>(f.q() + 1, 10), rng);
    const Moebius g = oracle::random_moebius(f, rng);
    const Block img = image(f, g, b);
    ASSERT_EQ(img.points(), oracle::image_points(f, g, b.points()));
    ASSERT_EQ(image(f, inverse(f, g), img), b);
  }
}

}  // namespace
}  // namespace pgld
