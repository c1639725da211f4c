#include "pgld/export.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "pgld/error.hpp"

namespace pgld {

namespace {

void write_blocks(std::ostream& os, const Orbit& orbit) {
  for (const auto& b : orbit.blocks) os << to_string(b) << '\n';
}

std::uint64_t to_u64(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorCode::ParseError, "design header lacks " + key);
  std::uint64_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad integer for " + key + ": " + s);
  }
  return v;
}

}  // namespace

void write_orbit(std::ostream& os, const Field& field, const Orbit& orbit, const BlockFamily& family) {
  os << "# field=" << field.describe() << " group=" << to_string(orbit.group) << " family=" << family_name(family.kind)
     << " r=" << family.r << " blocks=" << orbit.size() << '\n';
  write_blocks(os, orbit);
}

void write_design(std::ostream& os, const Field& field, const BlockFamily& family, const DesignParams& params,
                  const SubgroupType& stab_type, const Orbit& orbit) {
  os << "# field=" << field.describe() << " family=" << family_name(family.kind) << " r=" << family.r
     << " t=" << params.t << " v=" << params.v << " k=" << params.k << " lambda=" << params.lambda
     << " stab=" << to_string(stab_type) << ':' << stab_type.order << '\n';
  write_blocks(os, orbit);
}

DesignFile read_design(std::istream& is, const Budget& budget) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# ", 0) != 0) {
    throw Error(ErrorCode::ParseError, "missing design header");
  }
  std::map<std::string, std::string> kv;
  std::istringstream hs(header.substr(2));
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "bad header token " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  DesignFile out;
  out.field = kv["field"];
  const Field field = Field::parse(out.field, budget);
  const auto fam = parse_family(kv["family"]);
  if (!fam) throw Error(ErrorCode::ParseError, "unknown family " + kv["family"]);
  out.family = *fam;
  out.r = to_u64(kv, "r");
  out.params = {to_u64(kv, "t"), to_u64(kv, "v"), to_u64(kv, "k"), to_u64(kv, "lambda"), 0};
  const std::string stab = kv["stab"];
  const auto colon = stab.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "bad stab field " + stab);
  out.stab_type = stab.substr(0, colon);
  out.stab_order = to_u64({{"stab", stab.substr(colon + 1)}}, "stab");

  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.blocks.push_back(parse_block(field, line));
  }
  out.params.blocks = out.blocks.size();
  return out;
}

}  // namespace pgld
