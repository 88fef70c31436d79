#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gould/integrate.hpp"

namespace gould {

// A vector-valued set function mu on the measurable algebra, stored densely.
// mu(empty) = 0 is an invariant; finite additivity is a checkable property.
class VecMeasure {
 public:
  VecMeasure(const Universe& u, std::size_t dim,
             const std::map<Mask, RatVec>& values);
  VecMeasure(const Universe& u, std::size_t dim, std::vector<RatVec> table);

  const Universe& universe() const { return *universe_; }
  std::size_t dim() const { return dim_; }
  const RatVec& at_mask(Mask m) const { return table_[m]; }
  const RatVec& operator()(const MSet& s) const;

  bool operator==(const VecMeasure& o) const;

 private:
  const Universe* universe_;
  std::size_t dim_;
  std::vector<RatVec> table_;
};

// mu(B) = integral of f over B, for every measurable B. Errors with the
// first non-integrable witness set.
VecMeasure integral_measure(const VecFunction& f, const SetFunction& m);

// A set is mu-null when every measurable subset maps to the zero vector.
bool is_null_set(const VecMeasure& mu, const MSet& n);

// Vector atom test: a is not mu-null and every measurable subset b of a
// has b or a\b mu-null.
bool vec_atom_check(const VecMeasure& mu, const MSet& a);

// The three structural conclusions about an integral measure: finite
// additivity, absolute continuity with respect to m, and atom transfer
// (every m-atom is a mu-atom or mu-null).
struct IntegralMeasureReport {
  bool finitely_additive = false;
  bool absolutely_continuous = false;
  bool atom_transfer = false;
  std::string detail;
};

IntegralMeasureReport integral_measure_properties(
    const VecFunction& f, const SetFunction& m,
    std::size_t block_limit = kDefaultBlockLimit);

// mu(B) = sum over atoms A_i of (a_i / m(A_i)) * m(B and A_i), where a_i is
// the integral of f over A_i, checked for every measurable B against a
// fixed canonical atom decomposition.
struct PropFormulaReport {
  std::vector<MSet> atoms;
  bool holds = true;
  std::optional<MSet> counterexample;
};

PropFormulaReport prop_formula_check(const VecFunction& f, const SetFunction& m,
                                     std::size_t block_limit = kDefaultBlockLimit);

// Radon-Nikodym output: the simple derivative, the atom decomposition it is
// built on, and the result of the full verification over every measurable
// set.
struct RNResult {
  VecFunction derivative;
  AtomDecomposition atom_basis;
  bool verified = false;
};

// Constructs f = sum over atoms of mu(A_i)/m(A_i) * 1_{A_i} and verifies
// that its integral measure reproduces mu on every measurable set.
// Hypotheses checked: m null-additive, monotone, finitely purely atomic;
// mu finitely additive, absolutely continuous w.r.t. m, and finitely purely
// atomic in the sense that every atom of the canonical m-decomposition is a
// mu-atom or mu-null (the loosening admits mu = 0).
RNResult rn_derivative(const SetFunction& m, const VecMeasure& mu,
                       std::size_t block_limit = kDefaultBlockLimit);

} // namespace gould
