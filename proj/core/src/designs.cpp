#include "pgld/designs.hpp"

#include <algorithm>

#include "pgld/error.hpp"
#include "pgld/parallel.hpp"

namespace pgld {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::SubgroupOnly: return "subgroup";
    case Family::SubgroupZero: return "subgroup0";
    case Family::SubgroupZeroInf: return "subgroup0inf";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "subgroup") return Family::SubgroupOnly;
  if (name == "subgroup0") return Family::SubgroupZero;
  if (name == "subgroup0inf") return Family::SubgroupZeroInf;
  return std::nullopt;
}

std::uint64_t min_k(Family f) {
  switch (f) {
    case Family::SubgroupOnly: return 4;
    case Family::SubgroupZero: return 3;
    case Family::SubgroupZeroInf: return 2;
  }
  return 0;
}

std::uint64_t residue_k(const Field& field, std::uint64_t r) {
  if (r == 0 || (field.q() - 1) % r != 0) {
    throw Error(ErrorCode::BadResidueIndex,
                "r = " + std::to_string(r) + " does not divide q-1 = " + std::to_string(field.q() - 1));
  }
  return (field.q() - 1) / r;
}

std::uint64_t block_size(Family f, std::uint64_t k) {
  switch (f) {
    case Family::SubgroupOnly: return k;
    case Family::SubgroupZero: return k + 1;
    case Family::SubgroupZeroInf: return k + 2;
  }
  return k;
}

Block build_block(const Field& field, const BlockFamily& family, bool enforce_hypothesis) {
  const std::uint64_t k = residue_k(field, family.r);
  if (enforce_hypothesis && k < min_k(family.kind)) {
    throw Error(ErrorCode::KTooSmall, "k = " + std::to_string(k) + " < " + std::to_string(min_k(family.kind)) +
                                          " for family " + std::string(family_name(family.kind)));
  }
  std::vector<ProjPoint> pts;
  for (auto x : field.power_subgroup(family.r)) pts.push_back(ProjPoint::finite(x));
  if (family.kind != Family::SubgroupOnly) pts.push_back(ProjPoint::finite(field.zero()));
  if (family.kind == Family::SubgroupZeroInf) pts.push_back(ProjPoint::infinity());
  return Block::make(std::move(pts));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

DesignParams verify_design(const Orbit& orbit, const Field& field, std::uint64_t t, unsigned jobs) {
  if (t != 3) throw Error(ErrorCode::PreconditionFailed, "only t = 3 is supported");
  if (orbit.blocks.empty()) throw Error(ErrorCode::PreconditionFailed, "empty orbit");
  const std::uint32_t q = field.q();
  const std::uint32_t v = q + 1;
  const std::size_t blocksize = orbit.blocks.front().size();

  // Rank of {a < b < c} in the combinatorial number system: C(c,3)+C(b,2)+a.
  std::vector<std::uint32_t> c2(v), c3(v);
  for (std::uint32_t i = 0; i < v; ++i) {
    c2[i] = static_cast<std::uint32_t>(binomial(i, 2));
    c3[i] = static_cast<std::uint32_t>(binomial(i, 3));
  }
  const std::size_t triples = binomial(v, 3);
  const std::size_t chunks = chunk_count(orbit.size(), jobs);
  std::vector<std::vector<std::uint32_t>> tables(chunks);

  parallel_chunks(orbit.size(), jobs, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& count = tables[w];
    count.assign(triples, 0);
    std::vector<std::uint32_t> idx(blocksize);
    for (std::size_t bi = begin; bi < end; ++bi) {
      const Block& b = orbit.blocks[bi];
      if (b.size() != blocksize) throw Error(ErrorCode::PreconditionFailed, "blocks of unequal size");
      // Points are sorted and infinity has the largest index, so idx is increasing.
      for (std::size_t i = 0; i < blocksize; ++i) idx[i] = b.points()[i].index(q);
      for (std::size_t c = 2; c < blocksize; ++c) {
        const std::uint32_t base3 = c3[idx[c]];
        for (std::size_t bb = 1; bb < c; ++bb) {
          std::uint32_t* row = count.data() + base3 + c2[idx[bb]];
          for (std::size_t a = 0; a < bb; ++a) ++row[idx[a]];
        }
      }
    }
  });

  auto& total = tables.front();
  for (std::size_t w = 1; w < tables.size(); ++w) {
    for (std::size_t i = 0; i < triples; ++i) total[i] += tables[w][i];
  }
  const auto [lo, hi] = std::minmax_element(total.begin(), total.end());
  if (*lo != *hi) {
    throw Error(ErrorCode::NotADesign,
                "triple counts range over [" + std::to_string(*lo) + ", " + std::to_string(*hi) + "]");
  }
  return {3, v, blocksize, *lo, orbit.size()};
}

std::uint64_t lambda_from_stabilizer(std::uint64_t blocksize, std::uint64_t stab_order) {
  if (blocksize < 3 || stab_order == 0) {
    throw Error(ErrorCode::PreconditionFailed, "need blocksize >= 3 and a nonempty stabilizer");
  }
  const std::uint64_t num = blocksize * (blocksize - 1) * (blocksize - 2);
  if (num % stab_order != 0) {
    throw Error(ErrorCode::NonIntegralLambda,
                std::to_string(stab_order) + " does not divide " + std::to_string(num));
  }
  return num / stab_order;
}

std::optional<std::uint32_t> prime_power_exponent(std::uint64_t x, std::uint32_t p) {
  if (x < p) return std::nullopt;
  std::uint32_t m = 0;
  while (x % p == 0) {
    x /= p;
    ++m;
  }
  if (x != 1) return std::nullopt;
  return m;
}

namespace {

void require_k(const Field& field, std::uint64_t k, Family f) {
  if (k == 0 || (field.q() - 1) % k != 0) {
    throw Error(ErrorCode::BadResidueIndex, "k = " + std::to_string(k) + " does not divide q-1");
  }
  if (k < min_k(f)) {
    throw Error(ErrorCode::KTooSmall, "k = " + std::to_string(k) + " < " + std::to_string(min_k(f)));
  }
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

}  // namespace

Prediction predict_subgroup_only(const Field& field, std::uint64_t k) {
  require_k(field, k, Family::SubgroupOnly);
  const std::uint32_t p = field.p();
  // k-1 | q exactly when k-1 is a power of p (k-1 > 1 here).
  if (auto m = prime_power_exponent(k - 1, p)) {
    const auto type = SubgroupType::pgl_sub(p, *m);
    return {type, 1, type.order, "subfield"};
  }
  const auto type = SubgroupType::dihedral(p, k);
  return {type, (k - 1) * (k - 2) / 2, type.order, "dihedral"};
}

Prediction predict_subgroup_zero(const Field& field, std::uint64_t k) {
  require_k(field, k, Family::SubgroupZero);
  const std::uint32_t p = field.p();
  if (k == 3) {
    // 3 | q-1 rules out characteristic 3.
    if (p == 3) throw Error(ErrorCode::PreconditionFailed, "k = 3 with q a power of 3");
    return {SubgroupType::alternating4(p), 2, 12, "k=3"};
  }
  if (auto m = prime_power_exponent(k + 1, p)) {
    const auto type = SubgroupType::semidirect(p, *m, ipow(p, *m) - 1);
    return {type, k - 1, type.order, "semidirect"};
  }
  const auto type = SubgroupType::cyclic(p, k);
  return {type, (k + 1) * (k - 1), type.order, "cyclic"};
}

Prediction predict_subgroup_zero_inf(const Field& field, std::uint64_t k) {
  require_k(field, k, Family::SubgroupZeroInf);
  const std::uint64_t s = k + 2;
  const std::uint64_t triples = s * (s - 1) * (s - 2);
  Prediction out;
  if (prime_power_exponent(k + 1, field.p())) {
    out.lambda = 1;
    out.case_label = "k+1|q";
  } else if (k == 2 || k == 4) {
    out.lambda = k + 1;
    out.case_label = "k=2,4";
  } else {
    out.lambda = (k + 2) * (k + 1) / 2;
    out.case_label = "k>4";
  }
  out.stab_order = triples / out.lambda;
  return out;
}

Prediction predict(const Field& field, Family f, std::uint64_t k) {
  switch (f) {
    case Family::SubgroupOnly: return predict_subgroup_only(field, k);
    case Family::SubgroupZero: return predict_subgroup_zero(field, k);
    case Family::SubgroupZeroInf: return predict_subgroup_zero_inf(field, k);
  }
  throw Error(ErrorCode::PreconditionFailed, "unknown family");
}

Moebius witness_subfield_map(const Field& field, std::uint64_t r) {
  const std::uint64_t k = residue_k(field, r);
  if (!field.odd()) throw Error(ErrorCode::PreconditionFailed, "subfield witness needs q odd");
  if (k < 4 || !prime_power_exponent(k - 1, field.p())) {
    throw Error(ErrorCode::PreconditionFailed, "k-1 = " + std::to_string(k - 1) + " is not a power of p");
  }
  const FieldElement beta = field.power(field.theta(), static_cast<std::int64_t>(r));
  return make_moebius(field, field.one(), beta, beta, field.one());
}

bool check_subfield_image(const Field& field, std::uint64_t r) {
  const Moebius f = witness_subfield_map(field, r);
  const std::uint64_t k = residue_k(field, r);
  const std::uint32_t m = *prime_power_exponent(k - 1, field.p());
  const FieldElement beta = field.power(field.theta(), static_cast<std::int64_t>(r));

  if (!apply(field, f, ProjPoint::finite(field.power(beta, static_cast<std::int64_t>(k / 2 - 1)))).is_infinity()) {
    return false;
  }
  std::vector<ProjPoint> images;
  for (auto x : field.power_subgroup(r)) {
    const ProjPoint y = apply(field, f, ProjPoint::finite(x));
    if (!y.is_infinity() && !field.is_in_subfield(y.value(), m)) return false;
    images.push_back(y);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  // k = p^m + 1 distinct points of GF(p^m) u {inf}: the whole subfield line.
  return images.size() == ipow(field.p(), m) + 1;
}

Moebius witness_a4_map(const Field& field, std::uint64_t r) {
  if (residue_k(field, r) != 3) throw Error(ErrorCode::PreconditionFailed, "A4 witness needs k = 3");
  const FieldElement t1 = field.power(field.theta(), static_cast<std::int64_t>(r));
  const FieldElement t2 = field.mul(t1, t1);
  const FieldElement s = field.sub(field.add(t2, t1), field.one());
  const FieldElement minus_one = field.neg(field.one());
  return make_moebius(field, field.one(), minus_one, s, minus_one);
}

bool check_a4_witness(const Field& field, std::uint64_t r) {
  const Moebius f = witness_a4_map(field, r);
  const FieldElement t1 = field.power(field.theta(), static_cast<std::int64_t>(r));
  const FieldElement t2 = field.mul(t1, t1);
  auto maps = [&](FieldElement from, FieldElement to) {
    return apply(field, f, ProjPoint::finite(from)) == ProjPoint::finite(to);
  };
  if (!(maps(field.zero(), field.one()) && maps(field.one(), field.zero()) && maps(t1, t2) && maps(t2, t1))) {
    return false;
  }
  for (const FieldElement c : {field.one(), t1, t2}) {
    if (f == make_moebius(field, c, field.zero(), field.zero(), field.one())) return false;
  }
  return true;
}

bool check_remark_equivalence(const Field& field, std::uint64_t r) {
  if (field.odd()) throw Error(ErrorCode::PreconditionFailed, "block equivalence applies to q = 2^n");
  if (residue_k(field, r) != 3) throw Error(ErrorCode::PreconditionFailed, "theta^r must be a cube root of unity");
  const FieldElement t1 = field.power(field.theta(), static_cast<std::int64_t>(r));
  const FieldElement t2 = field.mul(t1, t1);
  const Moebius f = make_moebius(field, field.zero(), field.one(), t2, t1);
  const ProjPoint zero = ProjPoint::finite(field.zero());
  const ProjPoint one = ProjPoint::finite(field.one());
  const Block from = Block::make({zero, one, ProjPoint::finite(t1), ProjPoint::infinity()});
  const Block to = Block::make({zero, one, ProjPoint::finite(t1), ProjPoint::finite(t2)});
  return image(field, f, from) == to;
}

bool check_subfield_divisibility(const Field& field, std::uint64_t k, Family family) {
  std::optional<std::uint32_t> m;
  if (family == Family::SubgroupOnly) {
    m = prime_power_exponent(k - 1, field.p());
    if (!m) throw Error(ErrorCode::PreconditionFailed, "k-1 is not a power of p");
    return field.n() % (2 * *m) == 0;
  }
  if (family == Family::SubgroupZero) {
    m = prime_power_exponent(k + 1, field.p());
    if (!m) throw Error(ErrorCode::PreconditionFailed, "k+1 is not a power of p");
    return field.n() % *m == 0;
  }
  throw Error(ErrorCode::PreconditionFailed, "no divisibility statement for this family");
}

bool check_simplicity(std::span<const Block> blocks) {
  std::vector<Block> sorted(blocks.begin(), blocks.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace pgld
