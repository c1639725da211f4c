#include "pgld/gf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <string>

#include "pgld/error.hpp"

namespace pgld {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadResidueIndex: return "BadResidueIndex";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::NotADesign: return "NotADesign";
    case ErrorCode::NonIntegralLambda: return "NonIntegralLambda";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v, v + std::char_traits<char>::length(v), out);
  if (ec != std::errc{} || *ptr != '\0' || out == 0) {
    throw Error(ErrorCode::ParseError, std::string("bad value for ") + name + ": " + v);
  }
  return out;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo a monic b, coefficients in Z_p.
Poly poly_mod(Poly a, std::span<const std::uint32_t> b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * std::uint64_t{b[i]}) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  b.max_q = env_or("PGLD_MAX_Q", b.max_q);
  b.max_orbit_blocks = env_or("PGLD_MAX_ORBIT", b.max_orbit_blocks);
  return b;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  const std::size_t deg = monic.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  // Every monic divisor of degree d, 1 <= d <= deg/2, enumerated by its
  // low coefficients as a base-p counter.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    Poly g(d + 1, 0);
    g[d] = 1;
    while (true) {
      if (poly_mod(Poly(monic.begin(), monic.end()), g, p).empty()) return false;
      std::size_t i = 0;
      while (i < d && ++g[i] == p) g[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

Poly least_irreducible(std::uint32_t p, std::uint32_t n) {
  Poly f(n + 1, 0);
  f[n] = 1;
  // Counter over (c0, ..., c_{n-1}) with c0 most significant.
  while (true) {
    if (is_irreducible(p, f)) return f;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++f[i] < p) break;
      f[i] = 0;
      if (i == 0) throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
    }
  }
}

Poly parse_coefficients(std::string_view text) {
  Poly out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view tok = text.substr(pos, comma - pos);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::ParseError, "bad coefficient list '" + std::string(text) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

Field Field::make(std::uint32_t p, std::uint32_t n, std::optional<Poly> modulus, const Budget& budget) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorCode::PreconditionFailed, "extension degree must be >= 1");
  const std::uint64_t q = checked_pow(p, n, budget.max_q);
  if (q > budget.max_q || q > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::BudgetExceeded,
                "GF(" + std::to_string(p) + "^" + std::to_string(n) + ") exceeds max q = " +
                    std::to_string(budget.max_q));
  }

  Field f;
  f.p_ = p;
  f.n_ = n;
  f.q_ = static_cast<std::uint32_t>(q);
  if (modulus) {
    if (modulus->size() != n + 1 || modulus->back() != 1) {
      throw Error(ErrorCode::PreconditionFailed, "modulus must be monic of degree " + std::to_string(n));
    }
    for (auto c : *modulus) {
      if (c >= p) throw Error(ErrorCode::PreconditionFailed, "modulus coefficient out of range");
    }
    if (!is_irreducible(p, *modulus)) {
      throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
    f.modulus_ = *modulus;
  } else {
    f.modulus_ = least_irreducible(p, n);
  }
  for (std::uint64_t d = 1; d <= q - 1; ++d) {
    if ((q - 1) % d == 0) f.divisors_.push_back(d);
  }
  f.build_tables();

  for (std::uint32_t i = 1; i < f.q_; ++i) {
    if (f.multiplicative_order({i}) == q - 1) {
      f.theta_ = {i};
      return f;
    }
  }
  throw Error(ErrorCode::NotPrimitive, "no primitive element found");
}

Field Field::parse(std::string_view text, const Budget& budget) {
  const auto caret = text.find('^');
  const auto colon = text.find(':');
  if (caret == std::string_view::npos || colon == std::string_view::npos || colon < caret) {
    throw Error(ErrorCode::ParseError, "expected p^n:c0,...,cn, got '" + std::string(text) + "'");
  }
  std::uint32_t p = 0, n = 0;
  auto ps = text.substr(0, caret);
  auto ns = text.substr(caret + 1, colon - caret - 1);
  auto r1 = std::from_chars(ps.data(), ps.data() + ps.size(), p);
  auto r2 = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (ps.empty() || ns.empty() || r1.ec != std::errc{} || r2.ec != std::errc{} ||
      r1.ptr != ps.data() + ps.size() || r2.ptr != ns.data() + ns.size()) {
    throw Error(ErrorCode::ParseError, "bad field header '" + std::string(text) + "'");
  }
  return make(p, n, parse_coefficients(text.substr(colon + 1)), budget);
}

Field Field::with_primitive(FieldElement theta) const {
  if (theta.code == 0 || theta.code >= q_ || multiplicative_order(theta) != q_ - 1) {
    throw Error(ErrorCode::NotPrimitive, "element " + std::to_string(theta.code) + " is not primitive");
  }
  Field f = *this;
  f.theta_ = theta;
  return f;
}

void Field::build_tables() {
  const std::size_t q = q_;
  std::vector<Poly> polys(q);
  for (std::uint32_t i = 0; i < q; ++i) polys[i] = coeffs({i});

  auto add = std::make_shared<std::vector<std::uint16_t>>(q * q);
  auto mul = std::make_shared<std::vector<std::uint16_t>>(q * q);
  auto neg = std::make_shared<std::vector<std::uint16_t>>(q);
  auto inv = std::make_shared<std::vector<std::uint16_t>>(q, 0);

  Poly tmp(n_);
  for (std::uint32_t i = 0; i < q; ++i) {
    for (std::uint32_t j = 0; j < q; ++j) {
      for (std::uint32_t c = 0; c < n_; ++c) tmp[c] = (polys[i][c] + polys[j][c]) % p_;
      (*add)[i * q + j] = static_cast<std::uint16_t>(from_coeffs(tmp).code);
      if (j >= i) {
        Poly prod = poly_mod(poly_mul(polys[i], polys[j], p_), modulus_, p_);
        const auto code = static_cast<std::uint16_t>(from_coeffs(prod).code);
        (*mul)[i * q + j] = code;
        (*mul)[j * q + i] = code;
      }
    }
    for (std::uint32_t c = 0; c < n_; ++c) tmp[c] = (p_ - polys[i][c]) % p_;
    (*neg)[i] = static_cast<std::uint16_t>(from_coeffs(tmp).code);
  }
  for (std::uint32_t i = 1; i < q; ++i) {
    for (std::uint32_t j = 1; j < q; ++j) {
      if ((*mul)[i * q + j] == 1) {
        (*inv)[i] = static_cast<std::uint16_t>(j);
        break;
      }
    }
  }
  add_tab_ = add;
  mul_tab_ = mul;
  neg_tab_ = neg;
  inv_tab_ = inv;
  add_ = add_tab_->data();
  mul_ = mul_tab_->data();
  neg_ = neg_tab_->data();
  inv_ = inv_tab_->data();
}

std::string Field::describe() const {
  std::string out = std::to_string(p_) + "^" + std::to_string(n_) + ":";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(modulus_[i]);
  }
  return out;
}

FieldElement Field::from_int(std::int64_t v) const {
  const std::int64_t r = ((v % p_) + p_) % p_;
  return {static_cast<std::uint32_t>(r)};
}

FieldElement Field::inv(FieldElement x) const {
  if (x.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return {inv_[x.code]};
}

FieldElement Field::power(FieldElement x, std::int64_t e) const {
  if (x.code == 0) {
    if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return e == 0 ? one() : zero();
  }
  const std::int64_t order = q_ - 1;
  std::int64_t k = ((e % order) + order) % order;
  FieldElement acc = one();
  FieldElement base = x;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

std::uint64_t Field::multiplicative_order(FieldElement x) const {
  if (x.code == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
  for (auto d : divisors_) {
    if (power(x, static_cast<std::int64_t>(d)) == one()) return d;
  }
  return q_ - 1;  // unreachable: x^(q-1) = 1
}

bool Field::is_square(FieldElement x) const {
  if (x.code == 0) throw Error(ErrorCode::DivisionByZero, "is_square of zero");
  if (p_ == 2) return true;
  return power(x, (q_ - 1) / 2) == one();
}

FieldElement Field::frobenius(FieldElement x, std::uint32_t m) const {
  if (m == 0 || m > n_) {
    throw Error(ErrorCode::PreconditionFailed, "frobenius power must be in [1, n]");
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    FieldElement y = one();
    for (std::uint32_t j = 0; j < p_; ++j) y = mul(y, x);
    x = y;
  }
  return x;
}

std::vector<FieldElement> Field::power_subgroup(std::uint64_t r) const {
  if (r == 0 || (q_ - 1) % r != 0) {
    throw Error(ErrorCode::BadResidueIndex,
                "r = " + std::to_string(r) + " does not divide q-1 = " + std::to_string(q_ - 1));
  }
  const std::uint64_t k = (q_ - 1) / r;
  const FieldElement beta = power(theta_, static_cast<std::int64_t>(r));
  std::vector<FieldElement> out;
  out.reserve(k);
  FieldElement x = one();
  for (std::uint64_t i = 0; i < k; ++i) {
    out.push_back(x);
    x = mul(x, beta);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FieldElement Field::decode(std::uint64_t i) const {
  if (i >= q_) throw Error(ErrorCode::OutOfRange, std::to_string(i) + " is not below q = " + std::to_string(q_));
  return {static_cast<std::uint32_t>(i)};
}

Poly Field::coeffs(FieldElement x) const {
  Poly out(n_, 0);
  std::uint32_t v = x.code;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
  return out;
}

FieldElement Field::from_coeffs(std::span<const std::uint32_t> c) const {
  std::uint32_t code = 0;
  std::uint32_t scale = 1;
  for (std::size_t i = 0; i < c.size() && i < n_; ++i) {
    code += (c[i] % p_) * scale;
    scale *= p_;
  }
  return {code};
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

}  // namespace pgld
