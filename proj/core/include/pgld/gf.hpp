#pragma once

// Exact arithmetic in GF(p^n) for the small fields used by the design
// sweeps. Elements are stored by their integer encoding
//     code = sum_j coeffs[j] * p^j,
// which is a bijection onto [0, q) and also defines the canonical total
// order. All arithmetic is served from tables that are built once, by
// polynomial arithmetic modulo (p, modulus), when the field is made.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgld/budget.hpp"

namespace pgld {

/// An element of a fixed field; meaningless without the Field it came from.
struct FieldElement {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Polynomial over Z_p as coefficients, low degree first.
using Poly = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t p);

/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

/// The lexicographically-least (low-degree-first) monic irreducible
/// polynomial of degree n over Z_p.
Poly least_irreducible(std::uint32_t p, std::uint32_t n);

class Field {
 public:
  /// Builds GF(p^n). Without `modulus`, uses least_irreducible(p, n). The
  /// primitive element is the least element (by encoding) of order q-1.
  static Field make(std::uint32_t p, std::uint32_t n, std::optional<Poly> modulus = std::nullopt,
                    const Budget& budget = Budget{});

  /// Parses the `p^n:c0,c1,...,cn` text form.
  static Field parse(std::string_view text, const Budget& budget = Budget{});

  /// Same field with a different primitive element; throws NotPrimitive.
  Field with_primitive(FieldElement theta) const;

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  const Poly& modulus() const { return modulus_; }
  FieldElement theta() const { return theta_; }
  bool odd() const { return p_ != 2; }

  /// `p^n:c0,...,cn`.
  std::string describe() const;

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// Image of an integer in the prime subfield.
  FieldElement from_int(std::int64_t v) const;

  FieldElement add(FieldElement x, FieldElement y) const { return {add_[x.code * q_ + y.code]}; }
  FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }
  FieldElement neg(FieldElement x) const { return {neg_[x.code]}; }
  FieldElement mul(FieldElement x, FieldElement y) const { return {mul_[x.code * q_ + y.code]}; }
  FieldElement inv(FieldElement x) const;
  FieldElement div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }
  /// Negative exponents go through inv; exponents of nonzero bases are
  /// reduced mod q-1. 0^0 = 1.
  FieldElement power(FieldElement x, std::int64_t e) const;

  std::uint64_t multiplicative_order(FieldElement x) const;
  bool is_square(FieldElement x) const;
  /// x^(p^m), 0 < m <= n.
  FieldElement frobenius(FieldElement x, std::uint32_t m) const;
  bool is_in_subfield(FieldElement x, std::uint32_t m) const { return frobenius(x, m) == x; }

  /// The k = (q-1)/r powers of theta^r, sorted by encoding.
  std::vector<FieldElement> power_subgroup(std::uint64_t r) const;

  std::uint32_t encode(FieldElement x) const { return x.code; }
  FieldElement decode(std::uint64_t i) const;
  Poly coeffs(FieldElement x) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> c) const;

  /// Every element in encoding order.
  std::vector<FieldElement> elements() const;

  /// Divisors of q-1 in increasing order.
  const std::vector<std::uint64_t>& unit_divisors() const { return divisors_; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.modulus_ == b.modulus_ && a.theta_ == b.theta_;
  }

 private:
  Field() = default;
  void build_tables();

  std::uint32_t p_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t q_ = 0;
  Poly modulus_;
  FieldElement theta_;
  std::vector<std::uint64_t> divisors_;
  // Shared, immutable after construction; copies of a Field are cheap.
  std::shared_ptr<const std::vector<std::uint16_t>> add_tab_, mul_tab_, neg_tab_, inv_tab_;
  const std::uint16_t* add_ = nullptr;
  const std::uint16_t* mul_ = nullptr;
  const std::uint16_t* neg_ = nullptr;
  const std::uint16_t* inv_ = nullptr;
};

/// Parses `c0,c1,...` into a coefficient list.
Poly parse_coefficients(std::string_view text);

}  // namespace pgld
