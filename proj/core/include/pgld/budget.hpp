#pragma once

#include <cstdint>

namespace pgld {

/// Enumeration limits. A field GF(q) is accepted only if the whole group
/// PGL(2,q) fits, i.e. q(q^2-1) <= max_group_order().
struct Budget {
  /// Largest field order accepted for construction and enumeration.
  std::uint64_t max_q = 128;
  /// Largest orbit (in blocks) that orbit closure may build before giving up.
  std::uint64_t max_orbit_blocks = 4'000'000;

  std::uint64_t max_group_order() const { return max_q * (max_q * max_q - 1); }

  /// Defaults, with `PGLD_MAX_Q` and `PGLD_MAX_ORBIT` overriding when set.
  static Budget from_env();
};

/// Largest q the CLI runs through the full pipeline (orbit + triple count)
/// unless --stab-only is given.
inline constexpr std::uint64_t kFullVerificationMaxQ = 81;

}  // namespace pgld
