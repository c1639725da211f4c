#pragma once

// The three power-residue block families, exhaustive 3-design verification,
// the lambda / stabilizer predictions for each family, and the explicit
// maps that realize the subfield, A4 and characteristic-2 identifications.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgld/orbits.hpp"

namespace pgld {

enum class Family {
  SubgroupOnly,     // <theta^r>
  SubgroupZero,     // <theta^r> u {0}
  SubgroupZeroInf,  // <theta^r> u {0, inf}
};

/// `subgroup`, `subgroup0`, `subgroup0inf`.
std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Smallest k = (q-1)/r for which the family's lambda formula holds.
std::uint64_t min_k(Family f);

struct BlockFamily {
  Family kind = Family::SubgroupOnly;
  std::uint64_t r = 1;
};

/// k = (q-1)/r; throws BadResidueIndex unless r | q-1.
std::uint64_t residue_k(const Field& field, std::uint64_t r);

/// Block size for a family: k, k+1, k+2.
std::uint64_t block_size(Family f, std::uint64_t k);

/// Throws BadResidueIndex, and KTooSmall when `enforce_hypothesis` and k is
/// below min_k.
Block build_block(const Field& field, const BlockFamily& family, bool enforce_hypothesis = true);

struct DesignParams {
  std::uint64_t t = 3;
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;
  std::uint64_t blocks = 0;

  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Counts, for every 3-subset of X, how many blocks contain it. Throws
/// NotADesign when the count is not constant.
DesignParams verify_design(const Orbit& orbit, const Field& field, std::uint64_t t = 3, unsigned jobs = 1);

/// s(s-1)(s-2) / |G_B|; throws NonIntegralLambda.
std::uint64_t lambda_from_stabilizer(std::uint64_t blocksize, std::uint64_t stab_order);

/// The closed-form prediction for one block. `type` is absent for the
/// <theta^r> u {0, inf} family, where only lambda is known in closed form.
struct Prediction {
  std::optional<SubgroupType> type;
  std::uint64_t lambda = 0;
  std::uint64_t stab_order = 0;
  std::string case_label;
};

Prediction predict_subgroup_only(const Field& field, std::uint64_t k);
Prediction predict_subgroup_zero(const Field& field, std::uint64_t k);
Prediction predict_subgroup_zero_inf(const Field& field, std::uint64_t k);
Prediction predict(const Field& field, Family f, std::uint64_t k);

/// x -> (x+beta)/(beta x+1), beta = theta^r, for k-1 = p^m and q odd.
Moebius witness_subfield_map(const Field& field, std::uint64_t r);
/// The witness sends beta^(k/2-1) to inf and the rest of <beta> onto GF(p^m).
bool check_subfield_image(const Field& field, std::uint64_t r);

/// x -> (x-1)/((theta^2r + theta^r - 1)x - 1), for k = 3.
Moebius witness_a4_map(const Field& field, std::uint64_t r);
/// The A4 witness acts on {0, 1, theta^r, theta^2r} as (0 1)(theta^r theta^2r)
/// and is not a power of x -> theta^r x.
bool check_a4_witness(const Field& field, std::uint64_t r);

/// q = 2^n, r = (q-1)/3: x -> 1/(theta^2r x + theta^r) maps {0,1,theta^r,inf}
/// onto {0,1,theta^r,theta^2r}.
bool check_remark_equivalence(const Field& field, std::uint64_t r);

/// k-1 = p^m forces 2m | n (SubgroupOnly); k+1 = p^m forces m | n
/// (SubgroupZero).
bool check_subfield_divisibility(const Field& field, std::uint64_t k, Family family);

/// No block occurs twice.
bool check_simplicity(std::span<const Block> blocks);

/// If x = p^m with m >= 1, returns m.
std::optional<std::uint32_t> prime_power_exponent(std::uint64_t x, std::uint32_t p);

}  // namespace pgld
