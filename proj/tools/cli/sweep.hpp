#pragma once

// One (q, family, r) pipeline: build -> stabilizer -> classify -> orbit ->
// triple count -> compare against the prediction, plus the sweep driver and
// the row renderers used by the CLI.

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pgld/designs.hpp"

namespace pgld::cli {

enum class CheckStatus { Pass, Fail, Skipped };

struct NamedCheck {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
};

struct SweepRow {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  Family family = Family::SubgroupOnly;
  std::uint64_t r = 0;
  std::uint64_t k = 0;
  std::uint64_t blocksize = 0;
  std::uint64_t orbit_size = 0;  // 0 in stabilizer-only mode
  std::uint64_t stab_order = 0;
  SubgroupType stab_type;
  std::optional<SubgroupType> predicted_type;
  std::uint64_t predicted_stab_order = 0;
  std::string case_label;
  std::optional<std::uint64_t> lambda_counted;  // absent in stabilizer-only mode
  std::uint64_t lambda_formula = 0;
  std::uint64_t lambda_predicted = 0;
  std::vector<NamedCheck> checks;
  bool match = false;
  bool skipped = false;
  std::string note;
  std::chrono::duration<double> elapsed{0};

  bool checks_pass() const;
  bool ok() const { return skipped || (match && checks_pass()); }
};

struct CaseOptions {
  bool stab_only = false;
  unsigned jobs = 1;
  Budget budget;
};

/// Runs the full pipeline for one tuple against an enumerated PGL(2,q).
/// Precondition failures (BadResidueIndex, KTooSmall) propagate.
SweepRow run_case(const Field& field, std::span<const Moebius> pgl, const BlockFamily& family,
                  const CaseOptions& options);

/// Convenience overload that enumerates the group itself.
SweepRow run_case(const Field& field, const BlockFamily& family, const CaseOptions& options);

struct SweepOptions {
  std::uint64_t max_q = 13;
  std::vector<Family> families{Family::SubgroupOnly, Family::SubgroupZero, Family::SubgroupZeroInf};
  unsigned jobs = 1;
  bool stab_only = false;
  Budget budget;
};

/// Prime powers 2 <= q <= max_q, increasing.
std::vector<std::uint64_t> prime_powers_up_to(std::uint64_t max_q);

/// Every admissible (q, family, r), rows ordered by (q, family, r). Output is
/// independent of options.jobs.
std::vector<SweepRow> run_sweep(const SweepOptions& options);

/// Line-delimited `key=value` record with a fixed key order.
std::string render_row(const SweepRow& row, bool with_timing = false);
/// Aligned text table of rows.
void render_table(std::ostream& os, const std::vector<SweepRow>& rows, bool with_timing = false);
/// Per-case counts and overall verdict.
void render_summary(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace pgld::cli
