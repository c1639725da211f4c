#pragma once

// Orbits and setwise stabilizers of k-subsets of the projective line, and
// recognition of stabilizers against the list of subgroups of PGL(2,q).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgld/projgroup.hpp"

namespace pgld {

/// A k-subset of X, strictly sorted.
class Block {
 public:
  Block() = default;
  /// Sorts; throws PreconditionFailed on duplicates or an empty set.
  static Block make(std::vector<ProjPoint> points);

  const std::vector<ProjPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(ProjPoint pt) const;

  friend auto operator<=>(const Block&, const Block&) = default;
  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<ProjPoint> points_;
};

struct BlockHash {
  std::size_t operator()(const Block& b) const noexcept;
};

/// `0,1,inf`.
std::string to_string(const Block& b);
Block parse_block(const Field& field, std::string_view line);

/// g(B), canonicalized.
Block image(const Field& field, const Moebius& g, const Block& b);

struct Orbit {
  std::vector<Block> blocks;  // sorted, distinct
  GroupKind group = GroupKind::PGL;

  std::size_t size() const { return blocks.size(); }
  bool contains(const Block& b) const;
};

struct OrbitOptions {
  unsigned jobs = 1;
  std::uint64_t max_blocks = 4'000'000;
};

/// Breadth-first closure of {b} under the generators. The result is
/// independent of traversal order and of `jobs`.
Orbit orbit_of_block(const Field& field, std::span<const Moebius> generators, const Block& b, GroupKind tag,
                     const OrbitOptions& options = {});

/// Checks that up to `samples` blocks of the orbit (spread evenly) map into
/// the orbit under every generator.
bool orbit_closed_under(const Field& field, const Orbit& orbit, std::span<const Moebius> generators,
                        std::size_t samples = 256);

struct Stabilizer {
  Block block;
  std::vector<Moebius> elements;  // sorted

  std::uint64_t order() const { return elements.size(); }
};

/// Filters `group` for the elements fixing b setwise.
Stabilizer stabilizer_of_block(const Field& field, std::span<const Moebius> group, const Block& b, unsigned jobs = 1);

/// Identity present, every element fixes the block, closed under compose and
/// inverse. Closure is checked on all pairs when |H|^2 <= pair_budget and on
/// pair_budget/32 pseudo-random pairs otherwise.
bool check_stabilizer(const Field& field, const Stabilizer& stab, std::uint64_t pair_budget = 4'000'000);

bool check_orbit_stabilizer(std::uint64_t orbit_size, std::uint64_t stab_order, std::uint64_t group_order);

/// stab_order | blocksize (blocksize-1) (blocksize-2).
bool check_divisibility(std::uint64_t stab_order, std::uint64_t blocksize);

/// Orbits of H on all of X, each sorted, ordered by least point.
std::vector<std::vector<ProjPoint>> point_orbits(const Field& field, std::span<const Moebius> elements);

/// Sorted orbit lengths; they sum to q+1.
std::vector<std::uint64_t> point_orbit_lengths(const Field& field, const Stabilizer& stab);

/// Every H-orbit on X lies inside b or is disjoint from it.
bool block_is_union_of_orbits(const Field& field, const Stabilizer& stab);

/// Isomorphism type of a subgroup of PGL(2,q), restricted to the shapes that
/// can occur. PGLSub/PSLSub mean PGL(2,p^m)/PSL(2,p^m).
struct SubgroupType {
  enum class Kind { Cyclic, Dihedral, A4, S4, A5, PSLSub, PGLSub, ElemAbelian, Semidirect, Unclassified };

  Kind kind = Kind::Unclassified;
  std::uint32_t p = 0;      // field characteristic
  std::uint32_t m = 0;      // subfield degree or elementary-abelian rank
  std::uint64_t d = 0;      // cyclic part: Cyclic(d), Dihedral(2d), Semidirect(m, d)
  std::uint64_t order = 0;

  static SubgroupType cyclic(std::uint32_t p, std::uint64_t d);
  static SubgroupType dihedral(std::uint32_t p, std::uint64_t d);
  static SubgroupType alternating4(std::uint32_t p);
  static SubgroupType symmetric4(std::uint32_t p);
  static SubgroupType alternating5(std::uint32_t p);
  static SubgroupType psl_sub(std::uint32_t p, std::uint32_t m);
  static SubgroupType pgl_sub(std::uint32_t p, std::uint32_t m);
  static SubgroupType elem_abelian(std::uint32_t p, std::uint32_t m);
  static SubgroupType semidirect(std::uint32_t p, std::uint32_t m, std::uint64_t d);
  static SubgroupType unclassified(std::uint32_t p, std::uint64_t order);

  friend bool operator==(const SubgroupType&, const SubgroupType&) = default;
};

/// `Cyclic(4)`, `Dihedral(8)`, `A4`, `PGL(2,3)`, `Semidirect(3^2,8)` ...
std::string to_string(const SubgroupType& t);
/// The other name of an exceptional isomorphism (PGL(2,3) = S4, PSL(2,3) =
/// A4, PGL(2,4) = PSL(2,5) = A5, PGL(2,2) = Dihedral(6), A4 = Semidirect(2^2,3)
/// in characteristic 2); empty when there is none.
std::string alias(const SubgroupType& t);

/// Recognizes the isomorphism type of a subgroup given by all its elements.
/// Subfield subgroups are tested first (sharply 3-transitive, or regular with
/// index 2, on a point-orbit of length p^m+1), then cyclic, dihedral,
/// elementary abelian, the exceptional groups by element-order histogram,
/// and finally Z_p^m x| C_d.
SubgroupType classify_subgroup(const Field& field, std::span<const Moebius> elements);

/// Point-orbit length constraints for each subgroup type. Throws
/// UnsupportedType for Unclassified.
bool check_orbit_length_lemmas(const SubgroupType& type, std::span<const std::uint64_t> lengths, const Field& field);

/// Gamma u theta*Gamma. For q even PSL = PGL and only the tag changes.
Orbit psl_orbit_to_pgl(const Field& field, const Orbit& gamma);

}  // namespace pgld
