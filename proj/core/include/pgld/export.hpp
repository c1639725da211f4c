#pragma once

// Text exports. Blocks are written one per line as comma-separated point
// encodings (`inf` for infinity), in canonical block order.
//
//   orbit:  # field=3^2:1,0,1 group=PGL family=subgroup r=2 blocks=30
//   design: # field=3^2:1,0,1 family=subgroup r=2 t=3 v=10 k=4 lambda=1 stab=PGL(2,3):24

#include <iosfwd>
#include <string>
#include <string_view>

#include "pgld/designs.hpp"

namespace pgld {

void write_orbit(std::ostream& os, const Field& field, const Orbit& orbit, const BlockFamily& family);

void write_design(std::ostream& os, const Field& field, const BlockFamily& family, const DesignParams& params,
                  const SubgroupType& stab_type, const Orbit& orbit);

struct DesignFile {
  std::string field;
  Family family = Family::SubgroupOnly;
  std::uint64_t r = 0;
  DesignParams params;
  std::string stab_type;
  std::uint64_t stab_order = 0;
  std::vector<Block> blocks;
};

/// Parses a design export; throws ParseError on malformed input.
DesignFile read_design(std::istream& is, const Budget& budget = Budget{});

}  // namespace pgld
