#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gould/error.hpp"
#include "gould/rational.hpp"

namespace gould {

// Bit mask over block indices (measurable sets) or point indices (arbitrary
// point sets), depending on context.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline int lowest_bit(Mask m) { return __builtin_ctzll(m); }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

// Every enumeration that walks the partition lattice refuses to run past
// this many blocks unless the caller raises the limit explicitly.
inline constexpr std::size_t kDefaultBlockLimit = 12;

// Number of partitions of a k-element set.
BigInt bell_number(std::size_t k);

class MSet;
class PointSet;

// A finite labeled point set together with the block partition that
// generates the measurable algebra. Measurable sets are exactly the unions
// of blocks, so measurability is a bitmask test. Immutable.
class Universe {
 public:
  // Singleton blocks: the algebra is the full power set.
  explicit Universe(std::vector<std::string> points);
  Universe(std::vector<std::string> points,
           std::vector<std::vector<std::string>> blocks);

  std::size_t point_count() const { return points_.size(); }
  std::size_t block_count() const { return block_points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point_label(std::size_t i) const { return points_[i]; }

  // Mask over point indices of one block.
  Mask block_points(std::size_t block) const { return block_points_[block]; }
  std::size_t block_of_point(std::size_t point) const {
    return point_block_[point];
  }
  bool singleton_blocks() const { return points_.size() == block_points_.size() && all_singleton_; }

  std::size_t point_index(std::string_view label) const;  // throws ValidationError
  std::optional<std::size_t> find_point(std::string_view label) const;

  MSet empty_set() const;
  MSet full_set() const;
  MSet mset_from_blocks(Mask block_mask) const;
  // Rejects point sets that are not unions of blocks.
  MSet mset_from_point_mask(Mask point_mask) const;
  MSet mset_from_labels(const std::vector<std::string>& labels) const;
  PointSet pointset_from_labels(const std::vector<std::string>& labels) const;
  PointSet pointset_from_mask(Mask point_mask) const;

  Mask points_of_blocks(Mask block_mask) const;

  bool operator==(const Universe& other) const;
  bool operator!=(const Universe& other) const { return !(*this == other); }

 private:
  std::vector<std::string> points_;
  std::vector<Mask> block_points_;      // per block, mask over point indices
  std::vector<std::size_t> point_block_; // per point, owning block
  bool all_singleton_ = true;
};

// Checks that two values live in the same universe (by identity or content).
void require_same_universe(const Universe* a, const Universe* b);

// A measurable set: a union of blocks of its universe.
class MSet {
 public:
  MSet() : universe_(nullptr), blocks_(0) {}
  MSet(const Universe* u, Mask block_mask) : universe_(u), blocks_(block_mask) {}

  const Universe* universe() const { return universe_; }
  Mask blocks() const { return blocks_; }
  bool empty() const { return blocks_ == 0; }
  std::size_t block_count() const { return static_cast<std::size_t>(popcount(blocks_)); }
  Mask point_mask() const { return universe_->points_of_blocks(blocks_); }

  bool operator==(const MSet& o) const;
  bool operator!=(const MSet& o) const { return !(*this == o); }

  std::string str() const;  // "{a,b}" in universe point order

 private:
  const Universe* universe_;
  Mask blocks_;
};

MSet set_union(const MSet& a, const MSet& b);
MSet set_intersection(const MSet& a, const MSet& b);
MSet set_difference(const MSet& a, const MSet& b);
MSet set_complement(const MSet& a);  // relative to the full space
bool is_subset(const MSet& a, const MSet& b);

// An arbitrary point set; need not be measurable.
class PointSet {
 public:
  PointSet() : universe_(nullptr), points_(0) {}
  PointSet(const Universe* u, Mask point_mask) : universe_(u), points_(point_mask) {}

  const Universe* universe() const { return universe_; }
  Mask points() const { return points_; }
  bool empty() const { return points_ == 0; }
  std::string str() const;

 private:
  const Universe* universe_;
  Mask points_;
};

// A finite disjoint measurable cover of a target set. Parts are kept in
// canonical order (ascending lowest block index), so equality is
// order-insensitive and every report is reproducible.
class Partition {
 public:
  Partition() = default;  // empty value for report containers
  Partition(MSet target, std::vector<Mask> parts);  // validates + canonicalizes

  const MSet& target() const { return target_; }
  const std::vector<Mask>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  MSet part(std::size_t i) const { return MSet(target_.universe(), parts_[i]); }

  bool operator==(const Partition& o) const;
  bool operator!=(const Partition& o) const { return !(*this == o); }

  std::string str() const;  // "{{a,b},{c}}"

 private:
  MSet target_;
  std::vector<Mask> parts_;
};

// p finer than q: every part of p lies inside some part of q.
bool is_finer(const Partition& p, const Partition& q);

// All nonempty pairwise intersections; the least upper bound in the
// refinement order.
Partition common_refinement(const Partition& p, const Partition& q);

// The partition of e into its individual blocks; refines every partition
// of e. e must be nonempty.
Partition finest_partition(const MSet& e);

// Streams every partition of a target set exactly once, in restricted
// growth string order over the target's blocks. Single consumer.
class PartitionEnumerator {
 public:
  PartitionEnumerator(MSet target, std::size_t block_limit = kDefaultBlockLimit);

  std::optional<Partition> next();

 private:
  MSet target_;
  std::vector<int> block_index_;  // block ids inside the target, ascending
  std::vector<int> rgs_;          // restricted growth string state
  bool done_ = false;
  bool first_ = true;

  Partition current() const;
  bool advance();
};

// Convenience: materialize the whole stream.
std::vector<Partition> all_partitions(const MSet& target,
                                      std::size_t block_limit = kDefaultBlockLimit);

} // namespace gould
