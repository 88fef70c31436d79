#include "gould/space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gould {

BigInt bell_number(std::size_t k) {
  // Bell triangle
  std::vector<BigInt> row{1};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<BigInt> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const BigInt& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

Universe::Universe(std::vector<std::string> points)
    : Universe(std::move(points), {}) {}

Universe::Universe(std::vector<std::string> points,
                   std::vector<std::vector<std::string>> blocks)
    : points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("universe needs at least one point");
  if (points_.size() > 64) throw ValidationError("universe supports at most 64 points");
  std::set<std::string> seen;
  for (const auto& p : points_) {
    if (p.empty()) throw ValidationError("empty point label");
    if (!seen.insert(p).second)
      throw ValidationError("duplicate point label '" + p + "'");
  }
  if (blocks.empty()) {
    // default: singleton blocks
    for (std::size_t i = 0; i < points_.size(); ++i)
      blocks.push_back({points_[i]});
  }
  point_block_.assign(points_.size(), SIZE_MAX);
  for (const auto& blk : blocks) {
    if (blk.empty()) throw ValidationError("empty block");
    Mask m = 0;
    for (const auto& label : blk) {
      std::size_t pi = point_index(label);
      if (point_block_[pi] != SIZE_MAX)
        throw ValidationError("blocks are not disjoint at point '" + label + "'");
      point_block_[pi] = block_points_.size();
      m |= Mask(1) << pi;
    }
    block_points_.push_back(m);
    if (popcount(m) != 1) all_singleton_ = false;
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (point_block_[i] == SIZE_MAX)
      throw ValidationError("blocks do not cover point '" + points_[i] + "'");
}

std::size_t Universe::point_index(std::string_view label) const {
  auto found = find_point(label);
  if (!found)
    throw ValidationError("unknown point label '" + std::string(label) + "'");
  return *found;
}

std::optional<std::size_t> Universe::find_point(std::string_view label) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == label) return i;
  return std::nullopt;
}

MSet Universe::empty_set() const { return MSet(this, 0); }

MSet Universe::full_set() const {
  return MSet(this, (block_count() == 64) ? ~Mask(0)
                                          : ((Mask(1) << block_count()) - 1));
}

MSet Universe::mset_from_blocks(Mask block_mask) const {
  if (block_count() < 64 && (block_mask >> block_count()) != 0)
    throw ValidationError("block mask out of range");
  return MSet(this, block_mask);
}

MSet Universe::mset_from_point_mask(Mask point_mask) const {
  Mask blocks = 0;
  for (std::size_t b = 0; b < block_count(); ++b)
    if (block_points_[b] & point_mask) blocks |= Mask(1) << b;
  Mask covered = points_of_blocks(blocks);
  if (covered != point_mask) {
    // name one point whose block is split by the request
    Mask stray = covered & ~point_mask;
    throw ValidationError("point set is not a union of blocks (block of '" +
                          points_[lowest_bit(stray)] + "' is split)");
  }
  return MSet(this, blocks);
}

MSet Universe::mset_from_labels(const std::vector<std::string>& labels) const {
  Mask pm = 0;
  for (const auto& l : labels) pm |= Mask(1) << point_index(l);
  return mset_from_point_mask(pm);
}

PointSet Universe::pointset_from_labels(const std::vector<std::string>& labels) const {
  Mask pm = 0;
  for (const auto& l : labels) pm |= Mask(1) << point_index(l);
  return PointSet(this, pm);
}

PointSet Universe::pointset_from_mask(Mask point_mask) const {
  if (point_count() < 64 && (point_mask >> point_count()) != 0)
    throw ValidationError("point mask out of range");
  return PointSet(this, point_mask);
}

Mask Universe::points_of_blocks(Mask block_mask) const {
  Mask pm = 0;
  for (Mask m = block_mask; m;) {
    int b = lowest_bit(m);
    m &= m - 1;
    pm |= block_points_[b];
  }
  return pm;
}

bool Universe::operator==(const Universe& other) const {
  return points_ == other.points_ && block_points_ == other.block_points_;
}

void require_same_universe(const Universe* a, const Universe* b) {
  if (a == b) return;
  if (a == nullptr || b == nullptr || !(*a == *b))
    throw UniverseMismatchError("values belong to different universes");
}

bool MSet::operator==(const MSet& o) const {
  require_same_universe(universe_, o.universe_);
  return blocks_ == o.blocks_;
}

static std::string point_mask_str(const Universe* u, Mask pm) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i = 0; i < u->point_count(); ++i) {
    if (!(pm & (Mask(1) << i))) continue;
    if (!first) os << ',';
    first = false;
    os << u->point_label(i);
  }
  os << '}';
  return os.str();
}

std::string MSet::str() const { return point_mask_str(universe_, point_mask()); }

std::string PointSet::str() const { return point_mask_str(universe_, points_); }

MSet set_union(const MSet& a, const MSet& b) {
  require_same_universe(a.universe(), b.universe());
  return MSet(a.universe(), a.blocks() | b.blocks());
}

MSet set_intersection(const MSet& a, const MSet& b) {
  require_same_universe(a.universe(), b.universe());
  return MSet(a.universe(), a.blocks() & b.blocks());
}

MSet set_difference(const MSet& a, const MSet& b) {
  require_same_universe(a.universe(), b.universe());
  return MSet(a.universe(), a.blocks() & ~b.blocks());
}

MSet set_complement(const MSet& a) {
  return MSet(a.universe(), a.universe()->full_set().blocks() & ~a.blocks());
}

bool is_subset(const MSet& a, const MSet& b) {
  require_same_universe(a.universe(), b.universe());
  return subset_of(a.blocks(), b.blocks());
}

Partition::Partition(MSet target, std::vector<Mask> parts)
    : target_(target), parts_(std::move(parts)) {
  Mask seen = 0;
  for (Mask p : parts_) {
    if (p == 0) throw ValidationError("partition part is empty");
    if (seen & p) throw ValidationError("partition parts are not disjoint");
    if (!subset_of(p, target_.blocks()))
      throw ValidationError("partition part is not inside the target");
    seen |= p;
  }
  if (seen != target_.blocks())
    throw ValidationError("partition parts do not cover the target");
  std::sort(parts_.begin(), parts_.end(),
            [](Mask a, Mask b) { return lowest_bit(a) < lowest_bit(b); });
}

bool Partition::operator==(const Partition& o) const {
  return target_ == o.target_ && parts_ == o.parts_;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << MSet(target_.universe(), parts_[i]).str();
  }
  os << '}';
  return os.str();
}

bool is_finer(const Partition& p, const Partition& q) {
  if (p.target() != q.target())
    throw ValidationError("partitions have different targets");
  for (Mask a : p.parts()) {
    bool inside = false;
    for (Mask b : q.parts())
      if (subset_of(a, b)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

Partition common_refinement(const Partition& p, const Partition& q) {
  if (p.target() != q.target())
    throw ValidationError("partitions have different targets");
  std::vector<Mask> parts;
  for (Mask a : p.parts())
    for (Mask b : q.parts())
      if (Mask c = a & b) parts.push_back(c);
  return Partition(p.target(), std::move(parts));
}

Partition finest_partition(const MSet& e) {
  if (e.empty()) throw ValidationError("finest partition of the empty set");
  std::vector<Mask> parts;
  for (Mask m = e.blocks(); m;) {
    int b = lowest_bit(m);
    m &= m - 1;
    parts.push_back(Mask(1) << b);
  }
  return Partition(e, std::move(parts));
}

PartitionEnumerator::PartitionEnumerator(MSet target, std::size_t block_limit)
    : target_(target) {
  std::size_t k = target.block_count();
  if (k > block_limit) {
    std::ostringstream os;
    os << "partition enumeration over " << k << " blocks exceeds limit "
       << block_limit << " (Bell(" << k << ") = " << bell_number(k)
       << " partitions)";
    throw SizeLimitError(os.str());
  }
  for (Mask m = target.blocks(); m;) {
    block_index_.push_back(lowest_bit(m));
    m &= m - 1;
  }
  rgs_.assign(block_index_.size(), 0);
}

std::optional<Partition> PartitionEnumerator::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
    return current();
  }
  if (!advance()) {
    done_ = true;
    return std::nullopt;
  }
  return current();
}

Partition PartitionEnumerator::current() const {
  if (block_index_.empty()) return Partition(target_, {});
  int nparts = 0;
  for (int v : rgs_) nparts = std::max(nparts, v + 1);
  std::vector<Mask> parts(static_cast<std::size_t>(nparts), 0);
  for (std::size_t i = 0; i < rgs_.size(); ++i)
    parts[static_cast<std::size_t>(rgs_[i])] |= Mask(1) << block_index_[i];
  return Partition(target_, std::move(parts));
}

bool PartitionEnumerator::advance() {
  // lexicographic successor of the restricted growth string
  std::size_t n = rgs_.size();
  if (n <= 1) return false;
  for (std::size_t i = n; i-- > 1;) {
    int prefix_max = 0;
    for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs_[j]);
    if (rgs_[i] <= prefix_max) {
      ++rgs_[i];
      for (std::size_t j = i + 1; j < n; ++j) rgs_[j] = 0;
      return true;
    }
  }
  return false;
}

std::vector<Partition> all_partitions(const MSet& target, std::size_t block_limit) {
  PartitionEnumerator en(target, block_limit);
  std::vector<Partition> out;
  while (auto p = en.next()) out.push_back(std::move(*p));
  return out;
}

} // namespace gould
