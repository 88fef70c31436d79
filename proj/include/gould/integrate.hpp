#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gould/atoms.hpp"
#include "gould/setfunc.hpp"
#include "gould/space.hpp"

namespace gould {

// A function from points to rational vectors, f: T -> Q^dim. The norm in
// use is the sup-norm.
class VecFunction {
 public:
  VecFunction(const Universe& u, std::size_t dim, std::vector<RatVec> per_point);

  const Universe& universe() const { return *universe_; }
  std::size_t dim() const { return dim_; }
  const RatVec& at(std::size_t point) const { return values_[point]; }

  bool constant_on(Mask point_mask) const;
  // first two points in the mask with different values, if any
  std::optional<std::pair<std::size_t, std::size_t>> split_pair(Mask point_mask) const;

 private:
  const Universe* universe_;
  std::size_t dim_;
  std::vector<RatVec> values_;
};

// Tagged partition sum: sum of f(tag_i) * m(part_i). Tags are point indices,
// one per part, each inside its part.
RatVec gould_sum(const VecFunction& f, const SetFunction& m, const Partition& p,
                 const std::vector<std::size_t>& tags);

// Result of the integrability decision on a set b.
//
// On a finite algebra the refinement order on partitions of b has a maximum
// (the partition into blocks), so convergence of the tagged-sum net is
// equivalent to tag-independence there: each tag varies independently, so
// the sum is tag-independent exactly when f is constant on every block of b
// with positive measure. The integral is then that common finest-partition
// sum. The tests validate this against an exhaustive-tag oracle and the
// net simulator.
struct GouldResult {
  bool integrable = false;
  std::optional<RatVec> value;
  Partition witness_partition;  // the finest partition of b
  struct Failure {
    MSet block;
    std::size_t point_t = 0;
    std::size_t point_s = 0;  // f(t) != f(s) inside the block
    Rational mass;            // m(block) > 0
  };
  std::optional<Failure> failure;
};

GouldResult gould_integral(const VecFunction& f, const SetFunction& m,
                           const MSet& b);

// Additivity of the integral over disjoint sets, checked exactly.
struct AdditivityReport {
  RatVec value_b, value_c, value_union;
  bool union_integrable = false;
  bool additive = false;
};

AdditivityReport integral_additivity_check(const VecFunction& f,
                                           const SetFunction& m, const MSet& b,
                                           const MSet& c);

// Sup-norm diameter of f over a point set.
Rational osc(const VecFunction& f, const PointSet& a);
Rational osc(const VecFunction& f, const MSet& a);

// Total-measurability decision.
//
// With epsilon given: a feasible family puts every block of oscillation
// >= epsilon inside the exceptional set A0 (a coarser part would inherit
// the oscillation), so feasibility holds exactly when the variation of the
// union of those blocks is < epsilon; the witness uses that union as A0 and
// the remaining blocks individually. Without epsilon ("for every eps > 0"),
// the bad-set variation is a step function of epsilon, so the condition
// reduces to: variation of the union of all positive-oscillation blocks
// is 0. An epsilon-sweep over the critical values validates this in tests.
struct TMReport {
  std::optional<Rational> epsilon;
  bool measurable_totally = false;
  std::optional<std::vector<MSet>> witness_family;  // A0 first (possibly empty)
  Rational bad_set_variation;
  MSet bad_set;
};

TMReport is_totally_measurable(const VecFunction& f, const SetFunction& m,
                               const MSet& b,
                               const std::optional<Rational>& epsilon = std::nullopt,
                               std::size_t block_limit = kDefaultBlockLimit);

// Layer-cake sum over the sorted distinct values 0 = v0 < v1 < ... < vr of
// a nonnegative scalar f on a: sum of (v_k - v_{k-1}) * m({f >= v_k} in a).
// Level sets must be measurable, i.e. f constant on every block of a.
Rational choquet_integral(const VecFunction& f, const SetFunction& m,
                          const MSet& a);

// Largest threshold v in {0, v1, ..., vr} such that m({f > t} in a) = m(a)
// for every t < v.
Rational t_zero(const VecFunction& f, const SetFunction& m, const MSet& a);

// The atom-level equalities: integral = f(p) * m(a) at the located point,
// the value recovered as the single common element of the f-images of all
// atoms inside a, and integrable <=> totally measurable on a.
struct AtomIntegralReport {
  std::size_t point = 0;
  RatVec integral;
  bool point_formula = false;        // integral == f(p) * m(a)
  bool image_intersection = false;   // common f-image element == integral / m(a)
  bool tm_equivalence = false;       // integrable <=> totally measurable
  std::vector<RatVec> intersection;  // the common image elements (must be 1)
};

AtomIntegralReport atom_integral_check(const VecFunction& f, const SetFunction& m,
                                       const MSet& a);

// Integrability of measurable (block-constant) functions:
//   - m null-additive + monotone + finitely purely atomic => integrable;
//   - m finitely additive and f totally measurable      => integrable.
// At least one clause's hypotheses must hold.
struct BoundedMeasurableReport {
  bool purely_atomic_clause = false;   // hypotheses of the first clause hold
  bool finitely_additive_clause = false;
  bool integrable = false;
  bool totally_measurable = false;
};

BoundedMeasurableReport bounded_measurable_integrability_check(
    const VecFunction& f, const SetFunction& m,
    std::size_t block_limit = kDefaultBlockLimit);

// One recorded step of a refinement chain in the net simulation.
struct NetStep {
  std::size_t chain = 0;
  std::size_t step = 0;
  Partition partition;
  std::vector<std::size_t> tags;
  RatVec sigma;
  std::optional<Rational> distance;  // sup-norm distance to the integral
};

struct NetReport {
  GouldResult outcome;
  std::vector<NetStep> steps;
  // two finest-partition sums with different values (non-integrable case)
  std::optional<std::pair<NetStep, NetStep>> conflict;
  std::string text;  // canonical printed form, reproducible per seed
};

// Seeded refinement chains. Every chain starts at the trivial partition of
// b, refines randomly, and ends at the finest partition. Deterministic for
// a given seed.
NetReport simulate_net(const VecFunction& f, const SetFunction& m, const MSet& b,
                       std::size_t chains, std::size_t depth, std::uint64_t seed);

} // namespace gould
