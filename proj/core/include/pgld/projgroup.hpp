#pragma once

// The projective line X = GF(q) u {inf} and PGL(2,q) / PSL(2,q) as
// canonicalized fractional-linear maps x -> (ax+b)/(cx+d).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pgld/gf.hpp"

namespace pgld {

/// Finite point (by field encoding) or infinity. Infinity sorts last.
struct ProjPoint {
  static constexpr std::uint32_t kInfinityCode = 0xFFFFFFFFu;

  std::uint32_t code = 0;

  static constexpr ProjPoint finite(FieldElement x) { return {x.code}; }
  static constexpr ProjPoint infinity() { return {kInfinityCode}; }

  constexpr bool is_infinity() const { return code == kInfinityCode; }
  constexpr FieldElement value() const { return {code}; }

  /// Dense index in [0, q]: finite points by encoding, infinity at q.
  constexpr std::uint32_t index(std::uint32_t q) const { return is_infinity() ? q : code; }
  static constexpr ProjPoint from_index(std::uint32_t i, std::uint32_t q) {
    return i == q ? infinity() : ProjPoint{i};
  }

  friend constexpr auto operator<=>(ProjPoint, ProjPoint) = default;
};

/// Decimal encoding, or `inf`.
std::string to_string(ProjPoint pt);
ProjPoint parse_point(const Field& field, std::string_view text);

/// All q+1 points of the line, in order.
std::vector<ProjPoint> projective_line(const Field& field);

/// A canonical fractional-linear map. Construct through make_moebius, which
/// checks ad-bc != 0 and scales so the first nonzero of (a,b,c,d) is 1.
struct Moebius {
  FieldElement a, b, c, d;

  friend constexpr auto operator<=>(const Moebius&, const Moebius&) = default;
};

enum class GroupKind { PGL, PSL };

std::string_view to_string(GroupKind kind);

Moebius make_moebius(const Field& field, FieldElement a, FieldElement b, FieldElement c, FieldElement d);
/// Same, from prime-subfield integers (convenient for small examples).
Moebius make_moebius(const Field& field, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

FieldElement determinant(const Field& field, const Moebius& m);

ProjPoint apply(const Field& field, const Moebius& m, ProjPoint pt);

/// m1 after m2.
Moebius compose(const Field& field, const Moebius& m1, const Moebius& m2);
Moebius inverse(const Field& field, const Moebius& m);
Moebius identity();

bool is_in_psl(const Field& field, const Moebius& m);

/// Every canonical element, lexicographic in (a,b,c,d) encodings.
std::vector<Moebius> enumerate_group(const Field& field, GroupKind kind, const Budget& budget = Budget{});

/// Theoretical orders: q(q^2-1), halved for PSL when q is odd.
std::uint64_t group_order(const Field& field, GroupKind kind);

std::uint64_t element_order(const Field& field, const Moebius& m);

struct StandardGenerators {
  Moebius scale;      // x -> theta^r x
  Moebius reciprocal; // x -> 1/x
};

StandardGenerators standard_generators(const Field& field, std::uint64_t r);

/// A small generating set for the whole group: {theta x, x+1, 1/x} for PGL,
/// {theta^2 x, x+1, -1/x} for PSL with q odd.
std::vector<Moebius> group_generators(const Field& field, GroupKind kind);

/// Subgroup generated by `gens`, sorted. Throws BudgetExceeded past `limit`.
std::vector<Moebius> generate_subgroup(const Field& field, const std::vector<Moebius>& gens,
                                       std::uint64_t limit = 1'000'000);

/// `a,b,c,d` in field encodings.
std::string to_string(const Moebius& m);

}  // namespace pgld
