#pragma once

#include <optional>
#include <vector>

#include "gould/integrate.hpp"

namespace gould {

// A finite prefix of a function sequence, with an optional declared limit.
// The tail claims of the convergence theorems are restated as per-index
// exact identities, which is the strongest finitely checkable content.
struct FnSequence {
  std::vector<VecFunction> terms;
  std::optional<VecFunction> declared_limit;
};

// On an atom a with located point p, the difference of integrals equals the
// difference of point values scaled by m(a), term by term:
//   int_a f_n dm - int_a f dm = (f_n(p) - f(p)) * m(a).
struct LebesgueRow {
  std::size_t n = 0;
  RatVec integral_difference;
  RatVec point_difference_scaled;
  bool equal = false;
};

struct LebesgueReport {
  std::size_t point = 0;
  std::vector<LebesgueRow> rows;
  bool all_equal = true;
};

LebesgueReport lebesgue_identity_check(const FnSequence& fs, const SetFunction& m,
                                       const MSet& a);

// A set U with m(T \ U) = 0 on which every term of the sequence is bounded
// by K + 1 in sup-norm. Requires |int_A f_n dm| <= K on every atom A of the
// canonical decomposition (checked). U is the union over atoms of the core
// atom, on which each integrable f_n is constant.
struct UniformBoundReport {
  MSet u;
  Rational complement_mass;  // m(T \ U), asserted 0
  Rational sup_norm_on_u;    // over all n and points of U
  Rational bound;            // K + 1
};

UniformBoundReport uniform_bounded_atom(const FnSequence& fs, const SetFunction& m,
                                        const Rational& bound_k,
                                        std::size_t block_limit = kDefaultBlockLimit);

// Inside one atom a: nested sub-atoms U_n with f_n-image diameter <= 1/n
// exist (the core atom has diameter 0), and on U = intersection the sup
// distance to the target is bounded by |x_n - target| + 1/n where
// x_n = int_a f_n dm / m(a).
struct UniformConvergenceReport {
  MSet u;
  std::vector<Rational> sup_distances;  // per n, sup over U of |f_n - target|
  std::vector<Rational> bounds;         // per n, |x_n - target| + 1/n
  bool all_within = true;
};

UniformConvergenceReport uniform_convergence_atom(const FnSequence& fs,
                                                  const SetFunction& m,
                                                  const MSet& a,
                                                  const RatVec& x_target);

} // namespace gould
