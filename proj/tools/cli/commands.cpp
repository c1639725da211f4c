#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "pgld/error.hpp"
#include "pgld/export.hpp"
#include "sweep.hpp"

namespace pgld::cli {

namespace {

struct FieldFlags {
  std::uint32_t p = 0;
  std::uint32_t n = 1;
  std::string modulus;
  std::string field;
  std::int64_t theta = -1;
};

struct TupleFlags {
  FieldFlags field;
  std::string family;
  std::uint64_t r = 0;
};

void add_field_flags(CLI::App* cmd, FieldFlags& f) {
  cmd->add_option("--p", f.p, "characteristic");
  cmd->add_option("--n", f.n, "extension degree")->capture_default_str();
  cmd->add_option("--modulus", f.modulus, "modulus coefficients c0,...,cn (or p^n:c0,...,cn)");
  cmd->add_option("--field", f.field, "field as p^n:c0,...,cn");
  cmd->add_option("--theta", f.theta, "primitive element (integer encoding) to use instead of the least one");
}

void add_tuple_flags(CLI::App* cmd, TupleFlags& t) {
  add_field_flags(cmd, t.field);
  cmd->add_option("--family", t.family, "subgroup | subgroup0 | subgroup0inf")
      ->required()
      ->check(CLI::IsMember({"subgroup", "subgroup0", "subgroup0inf"}));
  cmd->add_option("--r", t.r, "residue index, r | q-1")->required();
}

Field resolve_field(const FieldFlags& f, const Budget& budget) {
  Field field = [&] {
    if (!f.field.empty()) return Field::parse(f.field, budget);
    if (!f.modulus.empty() && f.modulus.find(':') != std::string::npos) return Field::parse(f.modulus, budget);
    if (f.p == 0) throw Error(ErrorCode::ParseError, "give --field or --p (with --n)");
    std::optional<Poly> modulus;
    if (!f.modulus.empty()) modulus = parse_coefficients(f.modulus);
    return Field::make(f.p, f.n, modulus, budget);
  }();
  if (f.theta >= 0) field = field.with_primitive(field.decode(static_cast<std::uint64_t>(f.theta)));
  return field;
}

// Full verification (orbit + triple count) stops at q = 81 unless the
// budget was raised explicitly through the environment.
std::uint64_t full_verification_limit(const Budget& budget) {
  const char* env = std::getenv("PGLD_MAX_Q");
  if (env != nullptr && *env != '\0') return budget.max_q;
  return std::min<std::uint64_t>(kFullVerificationMaxQ, budget.max_q);
}

void require_full_budget(std::uint64_t q, bool stab_only, const Budget& budget) {
  const std::uint64_t limit = full_verification_limit(budget);
  if (!stab_only && q > limit) {
    throw Error(ErrorCode::BudgetExceeded, "q = " + std::to_string(q) + " exceeds the full-verification limit " +
                                               std::to_string(limit) + "; use --stab-only");
  }
}

int cmd_verify(const TupleFlags& t, bool stab_only, unsigned jobs, bool timing, std::ostream& out) {
  const Budget budget = Budget::from_env();
  const Field field = resolve_field(t.field, budget);
  require_full_budget(field.q(), stab_only, budget);
  const BlockFamily family{*parse_family(t.family), t.r};
  const SweepRow row = run_case(field, family, {stab_only, jobs, budget});
  out << "# field=" << field.describe() << " theta=" << field.theta().code << '\n';
  render_table(out, {row}, timing);
  for (const auto& c : row.checks) {
    out << "check " << c.name << ": "
        << (c.status == CheckStatus::Pass ? "pass" : c.status == CheckStatus::Fail ? "FAIL" : "skipped") << '\n';
  }
  out << render_row(row, timing) << '\n';
  return row.ok() ? kExitOk : kExitMismatch;
}

int cmd_sweep(std::uint64_t max_q, const std::vector<std::string>& families, unsigned jobs, bool stab_only,
              const std::string& format, const std::string& out_path, bool timing, std::ostream& out) {
  SweepOptions opts;
  opts.budget = Budget::from_env();
  opts.max_q = max_q;
  opts.jobs = jobs;
  opts.stab_only = stab_only;
  if (max_q > opts.budget.max_q) {
    throw Error(ErrorCode::BudgetExceeded, "max q " + std::to_string(max_q) + " exceeds the budget " +
                                               std::to_string(opts.budget.max_q));
  }
  require_full_budget(max_q, stab_only, opts.budget);
  opts.families.clear();
  for (const auto& f : families) {
    if (f == "all") {
      opts.families = {Family::SubgroupOnly, Family::SubgroupZero, Family::SubgroupZeroInf};
      break;
    }
    opts.families.push_back(*parse_family(f));
  }
  const auto rows = run_sweep(opts);

  if (format == "rows") {
    for (const auto& row : rows) out << render_row(row, timing) << '\n';
  } else {
    render_table(out, rows, timing);
  }
  render_summary(out, rows);
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot open " + out_path + " for writing");
    for (const auto& row : rows) file << render_row(row, timing) << '\n';
    if (!file) throw Error(ErrorCode::Io, "write failed for " + out_path);
  }
  for (const auto& row : rows) {
    if (!row.ok()) return kExitMismatch;
  }
  return kExitOk;
}

int cmd_export(const TupleFlags& t, const std::string& out_path, const std::string& format, unsigned jobs,
               std::ostream& out) {
  const Budget budget = Budget::from_env();
  const Field field = resolve_field(t.field, budget);
  require_full_budget(field.q(), false, budget);
  const BlockFamily family{*parse_family(t.family), t.r};

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot open " + out_path + " for writing");
  }
  std::ostream& sink = out_path.empty() ? out : file;

  if (format == "rows") {
    sink << render_row(run_case(field, family, {false, jobs, budget})) << '\n';
  } else {
    const Block block = build_block(field, family);
    const auto group = enumerate_group(field, GroupKind::PGL, budget);
    const Stabilizer stab = stabilizer_of_block(field, group, block, jobs);
    const SubgroupType type = classify_subgroup(field, stab.elements);
    const Orbit orbit = orbit_of_block(field, group_generators(field, GroupKind::PGL), block, GroupKind::PGL,
                                       {jobs, budget.max_orbit_blocks});
    const DesignParams params = verify_design(orbit, field, 3, jobs);
    write_design(sink, field, family, params, type, orbit);
  }
  if (!sink) throw Error(ErrorCode::Io, "write failed for " + (out_path.empty() ? "stdout" : out_path));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify 3-designs from PGL(2,q)-orbits of power-residue blocks"};
  app.require_subcommand(1);

  unsigned jobs = 1;
  bool stab_only = false;
  bool timing = false;

  TupleFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run the full pipeline for one (q, family, r)");
  add_tuple_flags(verify, verify_flags);
  verify->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  verify->add_flag("--stab-only", stab_only, "skip orbit construction and triple counting");
  verify->add_flag("--timing", timing, "report elapsed time");

  std::uint64_t max_q = 13;
  std::vector<std::string> families{"all"};
  std::string format = "table";
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "verify every admissible tuple with q <= max-q");
  sweep->add_option("--max-q", max_q, "largest field order")->capture_default_str();
  sweep->add_option("--family", families, "families to sweep")
      ->check(CLI::IsMember({"subgroup", "subgroup0", "subgroup0inf", "all"}));
  sweep->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  sweep->add_flag("--stab-only", stab_only, "skip orbit construction and triple counting");
  sweep->add_option("--format", format, "table | rows")->check(CLI::IsMember({"table", "rows"}));
  sweep->add_option("--out", out_path, "also write the row stream to this file");
  sweep->add_flag("--timing", timing, "report elapsed time per row");

  TupleFlags export_flags;
  std::string export_format = "text";
  std::string export_out;
  auto* exp = app.add_subcommand("export", "write the design (orbit) of one tuple");
  add_tuple_flags(exp, export_flags);
  exp->add_option("--out", export_out, "output path (default stdout)");
  exp->add_option("--format", export_format, "text | rows")->check(CLI::IsMember({"text", "rows"}));
  exp->add_option("--jobs", jobs, "worker threads (0 = all cores)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(verify_flags, stab_only, jobs, timing, out);
    if (*sweep) return cmd_sweep(max_q, families, jobs, stab_only, format, out_path, timing, out);
    if (*exp) return cmd_export(export_flags, export_out, export_format, jobs, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool mismatch = e.code() == ErrorCode::NotADesign || e.code() == ErrorCode::NonIntegralLambda;
    return mismatch ? kExitMismatch : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pgld::cli
