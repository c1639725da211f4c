#include "sweep.hpp"

#include <atomic>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "pgld/error.hpp"
#include "pgld/parallel.hpp"

namespace pgld::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "skip";
  }
  return "?";
}

CheckStatus status_of(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

// Runs a boolean check, turning library errors into a failed check.
template <class Fn>
CheckStatus guarded(Fn&& fn) {
  try {
    return status_of(fn());
  } catch (const Error&) {
    return CheckStatus::Fail;
  }
}

}  // namespace

bool SweepRow::checks_pass() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

SweepRow run_case(const Field& field, std::span<const Moebius> pgl, const BlockFamily& family,
                  const CaseOptions& options) {
  const auto start = Clock::now();
  SweepRow row;
  row.q = field.q();
  row.p = field.p();
  row.n = field.n();
  row.family = family.kind;
  row.r = family.r;
  row.k = residue_k(field, family.r);

  const Block block = build_block(field, family);
  const Prediction pred = predict(field, family.kind, row.k);
  row.blocksize = block.size();
  row.predicted_type = pred.type;
  row.predicted_stab_order = pred.stab_order;
  row.lambda_predicted = pred.lambda;
  row.case_label = pred.case_label;

  const Stabilizer stab = stabilizer_of_block(field, pgl, block, options.jobs);
  row.stab_order = stab.order();
  row.stab_type = classify_subgroup(field, stab.elements);
  const auto lengths = point_orbit_lengths(field, stab);

  auto add = [&](std::string name, CheckStatus s) { row.checks.push_back({std::move(name), s}); };
  add("stabilizer", guarded([&] { return check_stabilizer(field, stab); }));
  add("union_of_orbits", guarded([&] { return block_is_union_of_orbits(field, stab); }));
  add("divisibility", status_of(check_divisibility(row.stab_order, row.blocksize)));
  add("orbit_lengths", guarded([&] { return check_orbit_length_lemmas(row.stab_type, lengths, field); }));

  try {
    row.lambda_formula = lambda_from_stabilizer(row.blocksize, row.stab_order);
  } catch (const Error& e) {
    row.note = e.what();
  }

  const std::uint64_t group_order = pgld::group_order(field, GroupKind::PGL);
  if (!options.stab_only) {
    const auto gens = group_generators(field, GroupKind::PGL);
    const Orbit orbit =
        orbit_of_block(field, gens, block, GroupKind::PGL, {options.jobs, options.budget.max_orbit_blocks});
    row.orbit_size = orbit.size();
    add("orbit_stabilizer", status_of(check_orbit_stabilizer(orbit.size(), row.stab_order, group_order)));
    add("orbit_closed", status_of(orbit_closed_under(field, orbit, gens)));
    add("simple", status_of(check_simplicity(orbit.blocks)));
    try {
      const DesignParams params = verify_design(orbit, field, 3, options.jobs);
      row.lambda_counted = params.lambda;
      const std::uint64_t v = field.q() + 1;
      add("counting_identity",
          status_of(params.lambda * binomial(v, 3) == orbit.size() * binomial(row.blocksize, 3)));
    } catch (const Error& e) {
      row.note = e.what();
      add("counting_identity", CheckStatus::Fail);
    }
  }

  const std::uint32_t p = field.p();
  if (family.kind == Family::SubgroupOnly && prime_power_exponent(row.k - 1, p)) {
    add("subfield_divisibility", guarded([&] { return check_subfield_divisibility(field, row.k, family.kind); }));
    // The map argument needs beta^(k/2) = -1, i.e. k even, i.e. q odd.
    if (field.odd()) {
      add("subfield_witness", guarded([&] { return check_subfield_image(field, family.r); }));
    } else {
      add("subfield_witness", CheckStatus::Skipped);
    }
  }
  if (family.kind == Family::SubgroupZero && row.k == 3) {
    add("a4_witness", guarded([&] {
          const Moebius f = witness_a4_map(field, family.r);
          return check_a4_witness(field, family.r) &&
                 std::binary_search(stab.elements.begin(), stab.elements.end(), f);
        }));
    if (!field.odd()) add("remark_equivalence", guarded([&] { return check_remark_equivalence(field, family.r); }));
  }
  if (family.kind == Family::SubgroupZero && row.k >= 4 && prime_power_exponent(row.k + 1, p)) {
    add("subfield_divisibility", guarded([&] { return check_subfield_divisibility(field, row.k, family.kind); }));
  }

  const bool lambdas = row.lambda_formula == row.lambda_predicted &&
                       (!row.lambda_counted || *row.lambda_counted == row.lambda_formula);
  const bool type = pred.type ? (row.stab_type == *pred.type) : (row.stab_order == pred.stab_order);
  row.match = lambdas && type && row.stab_order == pred.stab_order;
  row.elapsed = Clock::now() - start;
  return row;
}

SweepRow run_case(const Field& field, const BlockFamily& family, const CaseOptions& options) {
  const auto group = enumerate_group(field, GroupKind::PGL, options.budget);
  return run_case(field, group, family, options);
}

std::vector<std::uint64_t> prime_powers_up_to(std::uint64_t max_q) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= max_q; ++q) {
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint64_t x = q;
    while (x % p == 0) x /= p;
    if (x == 1) out.push_back(q);
  }
  return out;
}

std::vector<SweepRow> run_sweep(const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (const std::uint64_t q : prime_powers_up_to(options.max_q)) {
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t n = 0;
    for (std::uint64_t x = q; x > 1; x /= p) ++n;
    const Field field = Field::make(p, n, std::nullopt, options.budget);

    std::vector<BlockFamily> tuples;
    for (const Family f : options.families) {
      for (const std::uint64_t r : field.unit_divisors()) {
        if ((q - 1) / r >= min_k(f)) tuples.push_back({f, r});
      }
    }
    if (tuples.empty()) continue;

    const auto group = enumerate_group(field, GroupKind::PGL, options.budget);
    std::vector<SweepRow> out(tuples.size());
    std::atomic<std::size_t> next{0};
    const CaseOptions case_opts{options.stab_only, 1, options.budget};
    const std::size_t workers = std::min<std::size_t>(resolve_jobs(options.jobs), tuples.size());
    auto work = [&] {
      for (std::size_t i = next++; i < tuples.size(); i = next++) {
        try {
          out[i] = run_case(field, group, tuples[i], case_opts);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BudgetExceeded) throw;
          SweepRow& row = out[i];
          row.q = q;
          row.p = p;
          row.n = n;
          row.family = tuples[i].kind;
          row.r = tuples[i].r;
          row.k = (q - 1) / tuples[i].r;
          row.blocksize = block_size(row.family, row.k);
          row.skipped = true;
          row.note = e.what();
        }
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            work();
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    rows.insert(rows.end(), std::make_move_iterator(out.begin()), std::make_move_iterator(out.end()));
  }
  return rows;
}

std::string render_row(const SweepRow& row, bool with_timing) {
  std::ostringstream os;
  os << "q=" << row.q << " p=" << row.p << " n=" << row.n << " family=" << family_name(row.family)
     << " r=" << row.r << " k=" << row.k << " blocksize=" << row.blocksize;
  if (row.skipped) {
    os << " skipped=true";
    return os.str();
  }
  const std::string al = alias(row.stab_type);
  os << " orbit=" << row.orbit_size << " stab_order=" << row.stab_order << " stab_type=" << to_string(row.stab_type)
     << " stab_alias=" << (al.empty() ? "-" : al)
     << " predicted_type=" << (row.predicted_type ? to_string(*row.predicted_type) : "-")
     << " predicted_stab_order=" << row.predicted_stab_order << " case=" << row.case_label << " lambda_counted=";
  if (row.lambda_counted) {
    os << *row.lambda_counted;
  } else {
    os << '-';
  }
  os << " lambda_formula=" << row.lambda_formula << " lambda_predicted=" << row.lambda_predicted << " checks=";
  for (std::size_t i = 0; i < row.checks.size(); ++i) {
    if (i) os << ',';
    os << row.checks[i].name << ':' << status_name(row.checks[i].status);
  }
  os << " match=" << (row.match ? "true" : "false");
  if (with_timing) os << " elapsed=" << std::fixed << std::setprecision(3) << row.elapsed.count();
  return os.str();
}

void render_table(std::ostream& os, const std::vector<SweepRow>& rows, bool with_timing) {
  const std::vector<std::string> head{"q", "family", "r", "k", "|B|", "orbit", "|G_B|", "G_B", "lam_cnt",
                                      "lam_frm", "lam_thm", "case", "checks", "match"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> c{std::to_string(row.q), std::string(family_name(row.family)), std::to_string(row.r),
                               std::to_string(row.k), std::to_string(row.blocksize)};
    if (row.skipped) {
      c.insert(c.end(), {"-", "-", "-", "-", "-", "-", "-", "-", "skipped"});
    } else {
      c.push_back(row.orbit_size ? std::to_string(row.orbit_size) : "-");
      c.push_back(std::to_string(row.stab_order));
      c.push_back(to_string(row.stab_type));
      c.push_back(row.lambda_counted ? std::to_string(*row.lambda_counted) : "-");
      c.push_back(std::to_string(row.lambda_formula));
      c.push_back(std::to_string(row.lambda_predicted));
      c.push_back(row.case_label);
      c.push_back(row.checks_pass() ? "ok" : "FAIL");
      c.push_back(row.match ? "yes" : "NO");
    }
    if (with_timing) {
      std::ostringstream t;
      t << std::fixed << std::setprecision(3) << row.elapsed.count();
      c.push_back(t.str());
    }
    cells.push_back(std::move(c));
  }
  std::vector<std::string> header = head;
  if (with_timing) header.push_back("secs");
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& c : cells) {
    for (std::size_t i = 0; i < c.size(); ++i) width[i] = std::max(width[i], c[i].size());
  }
  auto line = [&](const std::vector<std::string>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << "  ";
      os << std::setw(static_cast<int>(width[i])) << c[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& c : cells) line(c);
}

void render_summary(std::ostream& os, const std::vector<SweepRow>& rows) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_case;
  std::size_t matched = 0, failed = 0, skipped = 0;
  for (const auto& row : rows) {
    if (row.skipped) {
      ++skipped;
      continue;
    }
    auto& [total, ok] = per_case[std::string(family_name(row.family)) + ":" + row.case_label];
    ++total;
    if (row.ok()) {
      ++ok;
      ++matched;
    } else {
      ++failed;
    }
  }
  for (const auto& [label, counts] : per_case) {
    os << "case " << label << ": " << counts.second << "/" << counts.first << " match\n";
  }
  os << "rows=" << rows.size() << " matched=" << matched << " mismatched=" << failed << " skipped=" << skipped
     << '\n';
}

}  // namespace pgld::cli
