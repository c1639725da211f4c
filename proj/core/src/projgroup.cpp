#include "pgld/projgroup.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>

#include "pgld/error.hpp"

namespace pgld {

std::string to_string(ProjPoint pt) { return pt.is_infinity() ? "inf" : std::to_string(pt.code); }

ProjPoint parse_point(const Field& field, std::string_view text) {
  if (text == "inf") return ProjPoint::infinity();
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "bad point '" + std::string(text) + "'");
  }
  return ProjPoint::finite(field.decode(v));
}

std::vector<ProjPoint> projective_line(const Field& field) {
  std::vector<ProjPoint> out;
  out.reserve(field.q() + 1);
  for (std::uint32_t i = 0; i < field.q(); ++i) out.push_back(ProjPoint{i});
  out.push_back(ProjPoint::infinity());
  return out;
}

std::string_view to_string(GroupKind kind) { return kind == GroupKind::PGL ? "PGL" : "PSL"; }

Moebius make_moebius(const Field& field, FieldElement a, FieldElement b, FieldElement c, FieldElement d) {
  const FieldElement det = field.sub(field.mul(a, d), field.mul(b, c));
  if (det == field.zero()) {
    throw Error(ErrorCode::PreconditionFailed, "singular map (ad - bc = 0)");
  }
  FieldElement lead = a;
  if (lead == field.zero()) lead = b;
  // a = b = 0 is singular, so lead is nonzero here.
  if (lead == field.one()) return {a, b, c, d};
  const FieldElement s = field.inv(lead);
  return {field.mul(a, s), field.mul(b, s), field.mul(c, s), field.mul(d, s)};
}

Moebius make_moebius(const Field& field, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return make_moebius(field, field.from_int(a), field.from_int(b), field.from_int(c), field.from_int(d));
}

FieldElement determinant(const Field& field, const Moebius& m) {
  return field.sub(field.mul(m.a, m.d), field.mul(m.b, m.c));
}

ProjPoint apply(const Field& field, const Moebius& m, ProjPoint pt) {
  if (pt.is_infinity()) {
    if (m.c == field.zero()) return ProjPoint::infinity();
    return ProjPoint::finite(field.div(m.a, m.c));
  }
  const FieldElement x = pt.value();
  const FieldElement den = field.add(field.mul(m.c, x), m.d);
  if (den == field.zero()) return ProjPoint::infinity();
  return ProjPoint::finite(field.div(field.add(field.mul(m.a, x), m.b), den));
}

Moebius compose(const Field& f, const Moebius& m1, const Moebius& m2) {
  return make_moebius(f, f.add(f.mul(m1.a, m2.a), f.mul(m1.b, m2.c)), f.add(f.mul(m1.a, m2.b), f.mul(m1.b, m2.d)),
                      f.add(f.mul(m1.c, m2.a), f.mul(m1.d, m2.c)), f.add(f.mul(m1.c, m2.b), f.mul(m1.d, m2.d)));
}

Moebius inverse(const Field& f, const Moebius& m) { return make_moebius(f, m.d, f.neg(m.b), f.neg(m.c), m.a); }

Moebius identity() { return {{1}, {0}, {0}, {1}}; }

bool is_in_psl(const Field& field, const Moebius& m) {
  if (!field.odd()) return true;
  return field.is_square(determinant(field, m));
}

std::uint64_t group_order(const Field& field, GroupKind kind) {
  const std::uint64_t q = field.q();
  const std::uint64_t full = q * (q * q - 1);
  return (kind == GroupKind::PSL && field.odd()) ? full / 2 : full;
}

std::vector<Moebius> enumerate_group(const Field& field, GroupKind kind, const Budget& budget) {
  const std::uint64_t order = group_order(field, GroupKind::PGL);
  if (order > budget.max_group_order()) {
    throw Error(ErrorCode::BudgetExceeded, "|PGL(2," + std::to_string(field.q()) + ")| = " + std::to_string(order) +
                                               " exceeds the enumeration budget");
  }
  const std::uint32_t q = field.q();
  std::vector<Moebius> out;
  out.reserve(group_order(field, kind));
  auto keep = [&](const Moebius& m) {
    if (kind == GroupKind::PGL || is_in_psl(field, m)) out.push_back(m);
  };
  // Canonical forms are exactly (0,1,c,d) with c != 0 and (1,b,c,d) with
  // d != bc; generating them in that order yields the lexicographic list.
  for (std::uint32_t c = 1; c < q; ++c) {
    for (std::uint32_t d = 0; d < q; ++d) keep({{0}, {1}, {c}, {d}});
  }
  for (std::uint32_t b = 0; b < q; ++b) {
    for (std::uint32_t c = 0; c < q; ++c) {
      const FieldElement bc = field.mul({b}, {c});
      for (std::uint32_t d = 0; d < q; ++d) {
        if (FieldElement{d} != bc) keep({{1}, {b}, {c}, {d}});
      }
    }
  }
  return out;
}

std::uint64_t element_order(const Field& field, const Moebius& m) {
  const Moebius id = identity();
  Moebius acc = m;
  std::uint64_t e = 1;
  // Element orders in PGL(2,q) never exceed q+1.
  while (acc != id) {
    acc = compose(field, m, acc);
    if (++e > std::uint64_t{field.q()} + 1) {
      throw Error(ErrorCode::PreconditionFailed, "element order exceeds q+1");
    }
  }
  return e;
}

StandardGenerators standard_generators(const Field& field, std::uint64_t r) {
  if (r == 0) throw Error(ErrorCode::BadResidueIndex, "r must be >= 1");
  const FieldElement beta = field.power(field.theta(), static_cast<std::int64_t>(r));
  return {make_moebius(field, beta, field.zero(), field.zero(), field.one()),
          make_moebius(field, field.zero(), field.one(), field.one(), field.zero())};
}

std::vector<Moebius> group_generators(const Field& field, GroupKind kind) {
  const FieldElement zero = field.zero();
  const FieldElement one = field.one();
  const Moebius translate = make_moebius(field, one, one, zero, one);
  if (kind == GroupKind::PSL && field.odd()) {
    const FieldElement t2 = field.mul(field.theta(), field.theta());
    return {make_moebius(field, t2, zero, zero, one), translate,
            make_moebius(field, zero, field.neg(one), one, zero)};
  }
  return {make_moebius(field, field.theta(), zero, zero, one), translate, make_moebius(field, zero, one, one, zero)};
}

std::vector<Moebius> generate_subgroup(const Field& field, const std::vector<Moebius>& gens, std::uint64_t limit) {
  std::set<Moebius> seen{identity()};
  std::deque<Moebius> frontier{identity()};
  while (!frontier.empty()) {
    const Moebius g = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      const Moebius h = compose(field, s, g);
      if (seen.insert(h).second) {
        if (seen.size() > limit) throw Error(ErrorCode::BudgetExceeded, "subgroup closure exceeds limit");
        frontier.push_back(h);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::string to_string(const Moebius& m) {
  return std::to_string(m.a.code) + "," + std::to_string(m.b.code) + "," + std::to_string(m.c.code) + "," +
         std::to_string(m.d.code);
}

}  // namespace pgld
