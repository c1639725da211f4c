#include "pgld/orbits.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "pgld/error.hpp"
#include "pgld/parallel.hpp"

namespace pgld {

Block Block::make(std::vector<ProjPoint> points) {
  if (points.empty()) throw Error(ErrorCode::PreconditionFailed, "empty block");
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw Error(ErrorCode::PreconditionFailed, "block has repeated points");
  }
  Block b;
  b.points_ = std::move(points);
  return b;
}

bool Block::contains(ProjPoint pt) const { return std::binary_search(points_.begin(), points_.end(), pt); }

std::size_t BlockHash::operator()(const Block& b) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto pt : b.points()) {
    h ^= pt.code;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::string to_string(const Block& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ',';
    out += to_string(b.points()[i]);
  }
  return out;
}

Block parse_block(const Field& field, std::string_view line) {
  std::vector<ProjPoint> pts;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = std::min(line.find(',', pos), line.size());
    pts.push_back(parse_point(field, line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return Block::make(std::move(pts));
}

Block image(const Field& field, const Moebius& g, const Block& b) {
  std::vector<ProjPoint> pts;
  pts.reserve(b.size());
  for (auto pt : b.points()) pts.push_back(apply(field, g, pt));
  return Block::make(std::move(pts));
}

bool Orbit::contains(const Block& b) const { return std::binary_search(blocks.begin(), blocks.end(), b); }

Orbit orbit_of_block(const Field& field, std::span<const Moebius> generators, const Block& b, GroupKind tag,
                     const OrbitOptions& options) {
  if (generators.empty()) throw Error(ErrorCode::PreconditionFailed, "no generators");
  std::unordered_set<Block, BlockHash> seen{b};
  std::vector<Block> frontier{b};
  const std::size_t ng = generators.size();
  while (!frontier.empty()) {
    // Expand the frontier in parallel, then merge in frontier order.
    std::vector<Block> images(frontier.size() * ng);
    parallel_chunks(frontier.size(), options.jobs, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = 0; j < ng; ++j) images[i * ng + j] = image(field, generators[j], frontier[i]);
      }
    });
    std::vector<Block> next;
    for (auto& img : images) {
      if (seen.insert(img).second) {
        if (seen.size() > options.max_blocks) {
          throw Error(ErrorCode::BudgetExceeded,
                      "orbit exceeds " + std::to_string(options.max_blocks) + " blocks");
        }
        next.push_back(std::move(img));
      }
    }
    frontier = std::move(next);
  }
  Orbit out;
  out.group = tag;
  out.blocks.assign(seen.begin(), seen.end());
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

bool orbit_closed_under(const Field& field, const Orbit& orbit, std::span<const Moebius> generators,
                        std::size_t samples) {
  if (orbit.blocks.empty()) return true;
  const std::size_t n = orbit.size();
  const std::size_t count = std::min(samples, n);
  for (std::size_t s = 0; s < count; ++s) {
    const Block& b = orbit.blocks[s * n / count];
    if (b.size() != orbit.blocks.front().size()) return false;
    for (const auto& g : generators) {
      if (!orbit.contains(image(field, g, b))) return false;
    }
  }
  return true;
}

Stabilizer stabilizer_of_block(const Field& field, std::span<const Moebius> group, const Block& b, unsigned jobs) {
  const std::uint32_t q = field.q();
  std::vector<char> member(q + 1, 0);
  for (auto pt : b.points()) member[pt.index(q)] = 1;

  const std::size_t chunks = chunk_count(group.size(), jobs);
  std::vector<std::vector<Moebius>> found(chunks);
  parallel_chunks(group.size(), jobs, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Moebius& g = group[i];
      bool fixes = true;
      // A bijection mapping B into B maps it onto B.
      for (auto pt : b.points()) {
        if (!member[apply(field, g, pt).index(q)]) {
          fixes = false;
          break;
        }
      }
      if (fixes) found[w].push_back(g);
    }
  });
  Stabilizer stab;
  stab.block = b;
  for (auto& part : found) stab.elements.insert(stab.elements.end(), part.begin(), part.end());
  std::sort(stab.elements.begin(), stab.elements.end());
  return stab;
}

bool check_stabilizer(const Field& field, const Stabilizer& stab, std::uint64_t pair_budget) {
  const auto& el = stab.elements;
  if (!std::binary_search(el.begin(), el.end(), identity())) return false;
  auto member = [&](const Moebius& m) { return std::binary_search(el.begin(), el.end(), m); };
  for (const auto& g : el) {
    if (image(field, g, stab.block) != stab.block) return false;
    if (!member(inverse(field, g))) return false;
  }
  const std::uint64_t n = el.size();
  if (n * n <= pair_budget) {
    for (const auto& g : el) {
      for (const auto& h : el) {
        if (!member(compose(field, g, h))) return false;
      }
    }
    return true;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  const std::uint64_t samples = std::max<std::uint64_t>(pair_budget / 32, 1);
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (!member(compose(field, el[pick(rng)], el[pick(rng)]))) return false;
  }
  return true;
}

bool check_orbit_stabilizer(std::uint64_t orbit_size, std::uint64_t stab_order, std::uint64_t group_order) {
  return orbit_size * stab_order == group_order;
}

bool check_divisibility(std::uint64_t stab_order, std::uint64_t blocksize) {
  if (stab_order == 0 || blocksize < 3) return false;
  return (blocksize * (blocksize - 1) * (blocksize - 2)) % stab_order == 0;
}

std::vector<std::vector<ProjPoint>> point_orbits(const Field& field, std::span<const Moebius> elements) {
  const std::uint32_t q = field.q();
  std::vector<char> seen(q + 1, 0);
  std::vector<std::vector<ProjPoint>> out;
  for (std::uint32_t i = 0; i <= q; ++i) {
    if (seen[i]) continue;
    const ProjPoint x = ProjPoint::from_index(i, q);
    std::vector<ProjPoint> orbit;
    // The orbit of x is exactly {h(x) : h in H} since H is a group.
    for (const auto& h : elements) {
      const ProjPoint y = apply(field, h, x);
      if (!seen[y.index(q)]) {
        seen[y.index(q)] = 1;
        orbit.push_back(y);
      }
    }
    if (!seen[i]) {  // empty element list: treat as trivial group
      seen[i] = 1;
      orbit.push_back(x);
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<std::uint64_t> point_orbit_lengths(const Field& field, const Stabilizer& stab) {
  std::vector<std::uint64_t> out;
  for (const auto& o : point_orbits(field, stab.elements)) out.push_back(o.size());
  std::sort(out.begin(), out.end());
  return out;
}

bool block_is_union_of_orbits(const Field& field, const Stabilizer& stab) {
  for (const auto& o : point_orbits(field, stab.elements)) {
    const auto inside = std::count_if(o.begin(), o.end(), [&](ProjPoint pt) { return stab.block.contains(pt); });
    if (inside != 0 && static_cast<std::size_t>(inside) != o.size()) return false;
  }
  return true;
}

Orbit psl_orbit_to_pgl(const Field& field, const Orbit& gamma) {
  if (gamma.group != GroupKind::PSL) throw Error(ErrorCode::PreconditionFailed, "expected a PSL orbit");
  Orbit out;
  out.group = GroupKind::PGL;
  out.blocks = gamma.blocks;
  if (!field.odd()) return out;
  const Moebius scale = make_moebius(field, field.theta(), field.zero(), field.zero(), field.one());
  for (const auto& b : gamma.blocks) out.blocks.push_back(image(field, scale, b));
  std::sort(out.blocks.begin(), out.blocks.end());
  out.blocks.erase(std::unique(out.blocks.begin(), out.blocks.end()), out.blocks.end());
  return out;
}

}  // namespace pgld
