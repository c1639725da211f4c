#include <algorithm>
#include <map>
#include <optional>

#include "pgld/error.hpp"
#include "pgld/orbits.hpp"

namespace pgld {

namespace {

using Kind = SubgroupType::Kind;

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

std::uint64_t pgl_order(std::uint64_t pm) { return pm * (pm * pm - 1); }

// True iff x = p^m for some m >= 1; sets m.
bool power_of(std::uint64_t x, std::uint32_t p, std::uint32_t& m) {
  if (x < p) return false;
  m = 0;
  while (x % p == 0) {
    x /= p;
    ++m;
  }
  return x == 1;
}

bool divides_q_pm_1(std::uint64_t d, std::uint64_t q) { return (q - 1) % d == 0 || (q + 1) % d == 0; }

SubgroupType make(Kind kind, std::uint32_t p, std::uint32_t m, std::uint64_t d, std::uint64_t order) {
  SubgroupType t;
  t.kind = kind;
  t.p = p;
  t.m = m;
  t.d = d;
  t.order = order;
  return t;
}

// Injectivity of h -> (h(o0), h(o1), h(o2)) on the orbit, with |H| equal to
// the number of ordered triples of distinct orbit points over `divisor`.
bool regular_on_triples(const Field& field, std::span<const Moebius> elements, const std::vector<ProjPoint>& orbit,
                        std::uint64_t divisor) {
  const std::uint64_t L = orbit.size();
  if (L < 3 || elements.size() * divisor != L * (L - 1) * (L - 2)) return false;
  const std::uint32_t q = field.q();
  std::vector<std::uint32_t> local(q + 1, UINT32_MAX);
  for (std::uint32_t i = 0; i < L; ++i) local[orbit[i].index(q)] = i;
  std::vector<char> hit(L * L * L, 0);
  for (const auto& h : elements) {
    const std::uint64_t i = local[apply(field, h, orbit[0]).index(q)];
    const std::uint64_t j = local[apply(field, h, orbit[1]).index(q)];
    const std::uint64_t k = local[apply(field, h, orbit[2]).index(q)];
    if (i == UINT32_MAX || j == UINT32_MAX || k == UINT32_MAX) return false;
    char& slot = hit[(i * L + j) * L + k];
    if (slot) return false;
    slot = 1;
  }
  return true;
}

std::optional<SubgroupType> try_subfield(const Field& field, std::span<const Moebius> elements) {
  const std::uint32_t p = field.p();
  const std::uint64_t order = elements.size();
  std::vector<std::vector<ProjPoint>> orbits;
  for (std::uint32_t m = 1; m <= field.n(); ++m) {
    if (field.n() % m != 0) continue;
    const std::uint64_t pm = ipow(p, m);
    const bool full = order == pgl_order(pm);
    const bool half = field.odd() && order * 2 == pgl_order(pm);
    if (!full && !half) continue;
    if (orbits.empty()) orbits = point_orbits(field, elements);
    for (const auto& o : orbits) {
      if (o.size() != pm + 1) continue;
      if (regular_on_triples(field, elements, o, full ? 1 : 2)) {
        return full ? SubgroupType::pgl_sub(p, m) : SubgroupType::psl_sub(p, m);
      }
    }
  }
  return std::nullopt;
}

bool is_abelian(const Field& field, std::span<const Moebius> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (compose(field, elements[i], elements[j]) != compose(field, elements[j], elements[i])) return false;
    }
  }
  return true;
}

}  // namespace

SubgroupType SubgroupType::cyclic(std::uint32_t p, std::uint64_t d) { return make(Kind::Cyclic, p, 0, d, d); }
SubgroupType SubgroupType::dihedral(std::uint32_t p, std::uint64_t d) { return make(Kind::Dihedral, p, 0, d, 2 * d); }
SubgroupType SubgroupType::alternating4(std::uint32_t p) { return make(Kind::A4, p, 0, 0, 12); }
SubgroupType SubgroupType::symmetric4(std::uint32_t p) { return make(Kind::S4, p, 0, 0, 24); }
SubgroupType SubgroupType::alternating5(std::uint32_t p) { return make(Kind::A5, p, 0, 0, 60); }
SubgroupType SubgroupType::psl_sub(std::uint32_t p, std::uint32_t m) {
  const std::uint64_t full = pgl_order(ipow(p, m));
  return make(Kind::PSLSub, p, m, 0, p == 2 ? full : full / 2);
}
SubgroupType SubgroupType::pgl_sub(std::uint32_t p, std::uint32_t m) {
  return make(Kind::PGLSub, p, m, 0, pgl_order(ipow(p, m)));
}
SubgroupType SubgroupType::elem_abelian(std::uint32_t p, std::uint32_t m) {
  return make(Kind::ElemAbelian, p, m, 0, ipow(p, m));
}
SubgroupType SubgroupType::semidirect(std::uint32_t p, std::uint32_t m, std::uint64_t d) {
  return make(Kind::Semidirect, p, m, d, ipow(p, m) * d);
}
SubgroupType SubgroupType::unclassified(std::uint32_t p, std::uint64_t order) {
  return make(Kind::Unclassified, p, 0, 0, order);
}

std::string to_string(const SubgroupType& t) {
  const std::string pm = std::to_string(ipow(t.p, t.m));
  const std::string pe = std::to_string(t.p) + "^" + std::to_string(t.m);
  switch (t.kind) {
    case Kind::Cyclic: return "Cyclic(" + std::to_string(t.d) + ")";
    case Kind::Dihedral: return "Dihedral(" + std::to_string(2 * t.d) + ")";
    case Kind::A4: return "A4";
    case Kind::S4: return "S4";
    case Kind::A5: return "A5";
    case Kind::PSLSub: return "PSL(2," + pm + ")";
    case Kind::PGLSub: return "PGL(2," + pm + ")";
    case Kind::ElemAbelian: return "ElemAbelian(" + pe + ")";
    case Kind::Semidirect: return "Semidirect(" + pe + "," + std::to_string(t.d) + ")";
    case Kind::Unclassified: return "Unclassified(" + std::to_string(t.order) + ")";
  }
  return "?";
}

std::string alias(const SubgroupType& t) {
  const std::uint64_t pm = t.m ? ipow(t.p, t.m) : 0;
  switch (t.kind) {
    case Kind::PGLSub:
      if (pm == 2) return "Dihedral(6)";
      if (pm == 3) return "S4";
      if (pm == 4) return "A5";
      return "";
    case Kind::PSLSub:
      if (pm == 3) return "A4";
      if (pm == 4 || pm == 5) return "A5";
      return "";
    case Kind::A4: return t.p == 2 ? "Semidirect(2^2,3)" : "";
    default: return "";
  }
}

SubgroupType classify_subgroup(const Field& field, std::span<const Moebius> elements) {
  const std::uint32_t p = field.p();
  const std::uint64_t q = field.q();
  const std::uint64_t order = elements.size();
  if (order <= 1) return SubgroupType::cyclic(p, 1);

  if (auto sub = try_subfield(field, elements)) return *sub;

  std::vector<std::uint64_t> orders(order);
  std::map<std::uint64_t, std::uint64_t> histogram;
  for (std::size_t i = 0; i < order; ++i) {
    orders[i] = element_order(field, elements[i]);
    ++histogram[orders[i]];
  }

  if (histogram.count(order) && divides_q_pm_1(order, q)) return SubgroupType::cyclic(p, order);

  if (order % 2 == 0 && order >= 4 && divides_q_pm_1(order / 2, q)) {
    const std::uint64_t d = order / 2;
    const auto it = std::find(orders.begin(), orders.end(), d);
    if (it != orders.end()) {
      const Moebius g = elements[it - orders.begin()];
      std::vector<Moebius> rotations{identity()};
      for (std::uint64_t i = 1; i < d; ++i) rotations.push_back(compose(field, g, rotations.back()));
      std::sort(rotations.begin(), rotations.end());
      const Moebius g_inv = inverse(field, g);
      bool dihedral = true;
      for (std::size_t i = 0; i < order && dihedral; ++i) {
        const Moebius& h = elements[i];
        if (std::binary_search(rotations.begin(), rotations.end(), h)) continue;
        dihedral = orders[i] == 2 && compose(field, h, compose(field, g, h)) == g_inv;
      }
      if (dihedral) return SubgroupType::dihedral(p, d);
    }
  }

  std::uint32_t m = 0;
  if (power_of(order, p, m) && m <= field.n() && histogram.size() == 2 && histogram.count(p) &&
      is_abelian(field, elements)) {
    return SubgroupType::elem_abelian(p, m);
  }

  auto histogram_is = [&](std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> want) {
    return histogram == std::map<std::uint64_t, std::uint64_t>(want);
  };
  if (order == 12 && histogram_is({{1, 1}, {2, 3}, {3, 8}})) return SubgroupType::alternating4(p);
  if (order == 24 && histogram_is({{1, 1}, {2, 9}, {3, 8}, {4, 6}})) return SubgroupType::symmetric4(p);
  if (order == 60 && histogram_is({{1, 1}, {2, 15}, {3, 20}, {5, 24}})) return SubgroupType::alternating5(p);

  // Z_p^m x| C_d: the p-elements with the identity form the normal subgroup.
  std::vector<Moebius> sylow;
  for (std::size_t i = 0; i < order; ++i) {
    if (orders[i] == 1 || orders[i] == p) sylow.push_back(elements[i]);
  }
  const std::uint64_t d = order / sylow.size();
  if (power_of(sylow.size(), p, m) && m <= field.n() && d > 1 && order % sylow.size() == 0 && d % p != 0 &&
      (q - 1) % d == 0 && (sylow.size() - 1) % d == 0 && histogram.count(d)) {
    bool closed = true;
    for (std::size_t i = 0; i < sylow.size() && closed; ++i) {
      for (std::size_t j = 0; j < sylow.size() && closed; ++j) {
        const Moebius ij = compose(field, sylow[i], sylow[j]);
        closed = std::binary_search(sylow.begin(), sylow.end(), ij) &&
                 ij == compose(field, sylow[j], sylow[i]);
      }
    }
    if (closed) return SubgroupType::semidirect(p, m, d);
  }

  return SubgroupType::unclassified(p, order);
}

bool check_orbit_length_lemmas(const SubgroupType& type, std::span<const std::uint64_t> lengths, const Field& field) {
  const std::uint64_t order = type.order;
  auto count = [&](std::uint64_t len) { return std::count(lengths.begin(), lengths.end(), len); };
  auto all_in = [&](std::initializer_list<std::uint64_t> allowed) {
    return std::all_of(lengths.begin(), lengths.end(), [&](std::uint64_t l) {
      return std::find(allowed.begin(), allowed.end(), l) != allowed.end();
    });
  };
  std::uint64_t sum = 0;
  for (auto l : lengths) sum += l;
  if (sum != std::uint64_t{field.q()} + 1) return false;

  switch (type.kind) {
    case Kind::Cyclic: {
      if (type.d == 1) return all_in({1});
      return all_in({1, type.d}) && count(1) <= 2;
    }
    case Kind::Dihedral: {
      const std::uint64_t d = type.d;
      if (!all_in({2, d, 2 * d})) return false;
      if (d == 2) return count(2) <= 3;
      return count(2) <= 1 && count(d) <= 2;
    }
    case Kind::A4:
      // Point stabilizers in A4 are cyclic of order 1, 2, 3, or (q even)
      // the Klein group or A4 itself.
      return field.odd() ? all_in({4, 6, 12}) : all_in({1, 3, 4, 6, 12});
    case Kind::S4: {
      std::uint32_t m = 0;
      return power_of(field.q(), 3, m) ? all_in({4, 6, 24}) : all_in({6, 8, 12, 24});
    }
    case Kind::A5: return all_in({10, 12, 20, 30, 60});
    case Kind::PSLSub:
    case Kind::PGLSub: {
      const std::uint64_t pm = ipow(type.p, type.m);
      if (!all_in({pm + 1, pm * (pm - 1), order})) return false;
      return count(pm + 1) == 1 && (pm * (pm - 1) == order || count(pm * (pm - 1)) <= 1);
    }
    case Kind::ElemAbelian: return all_in({1, order}) && count(1) == 1;
    case Kind::Semidirect: {
      const std::uint64_t pm = ipow(type.p, type.m);
      if (!all_in({1, pm, order})) return false;
      return count(1) == 1 && (pm == order || count(pm) == 1);
    }
    case Kind::Unclassified: break;
  }
  throw Error(ErrorCode::UnsupportedType, "no orbit-length lemma for " + to_string(type));
}

}  // namespace pgld
