#pragma once

#include <optional>
#include <vector>

#include "gould/setfunc.hpp"
#include "gould/space.hpp"

namespace gould {

// A disjoint family of atoms of m covering the whole space.
struct AtomDecomposition {
  std::vector<MSet> atoms;
};

// The single point carrying an atom's mass.
struct AtomPoint {
  MSet atom;
  std::size_t point = 0;      // point index in the universe
  Rational residual_value;    // m(atom minus the point); always 0
};

// Atom test: m(a) > 0 and every proper measurable subset b has m(b) = 0 or
// m(a \ b) = 0. On failure the witness is the first splitting subset in
// canonical mask order (absent when m(a) = 0 was the reason).
struct AtomCheck {
  bool atom = false;
  bool mass_zero = false;
  std::optional<MSet> splitting;  // b with m(b) > 0 and m(a\b) > 0
};

AtomCheck check_atom(const SetFunction& m, const MSet& a);
bool is_atom(const SetFunction& m, const MSet& a);

// First partition of the space (canonical enumeration order) whose parts
// are all atoms; absent when m is not finitely purely atomic.
std::optional<AtomDecomposition> decompose(
    const SetFunction& m, std::size_t block_limit = kDefaultBlockLimit);

// Every atom decomposition; test oracle for decomposition-independence.
std::vector<AtomDecomposition> all_decompositions(
    const SetFunction& m, std::size_t block_limit = kDefaultBlockLimit);

enum class AtomPointMode {
  point,          // blocks inside the atom must be singletons
  carrier_block,  // return the lowest point of the carrying block
};

// The unique point p of an atom with m({p}) = m(a) and m(a \ {p}) = 0.
// Requires m null-additive and monotone (checked).
AtomPoint locate_atom_point(const SetFunction& m, const MSet& a,
                            AtomPointMode mode = AtomPointMode::point);

// For a partition of an atom, the unique index whose part carries the full
// mass m(a); all other parts must carry 0.
std::size_t atom_partition_structure(const SetFunction& m, const MSet& a,
                                     const Partition& p);

// Intersection of all atoms contained in a; itself an atom of the same mass.
MSet core_atom(const SetFunction& m, const MSet& a);

// Shared hypothesis guard: throws HypothesisError naming the first failed
// property, in the order given.
void require_properties(const SetFunction& m, std::initializer_list<Property> ps,
                        const char* operation);
void require_atom(const SetFunction& m, const MSet& a, const char* operation);

} // namespace gould
