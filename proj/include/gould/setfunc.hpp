#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gould/rational.hpp"
#include "gould/space.hpp"

namespace gould {

enum class Property {
  monotone,
  null_additive,
  sigma_null_additive,
  subadditive,
  finitely_additive,
  sigma_subadditive,
  null_continuous,
};

const char* property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);

// Outcome of one exhaustive property check. When the property fails, the
// witness is the first violating family in canonical mask order and
// re-evaluates to a violation.
struct PropertyReport {
  Property property;
  bool holds = true;
  std::vector<MSet> witness;        // the violating sets, in scan order
  std::vector<Rational> witness_values;
  std::string detail;               // human-readable account of the violation
  std::string note;                 // e.g. the finite collapse used
};

// A nonnegative set function m on the measurable algebra, stored as a dense
// table over all block masks. m(empty) = 0 and all values are finite
// nonnegative rationals; nothing else (in particular additivity) is assumed.
class SetFunction {
 public:
  SetFunction(const Universe& u, const std::map<Mask, Rational>& values,
              const Rational& default_value = Rational(0));
  // Table given directly, indexed by mask; must have size 1 << block_count.
  static SetFunction from_table(const Universe& u, std::vector<Rational> table);

  const Universe& universe() const { return *universe_; }
  const Rational& at_mask(Mask m) const { return table_[m]; }
  const Rational& operator()(const MSet& s) const;

  std::size_t table_size() const { return table_.size(); }

 private:
  const Universe* universe_;
  std::vector<Rational> table_;

  // property checks are exhaustive scans; the table is immutable, so the
  // results are computed once and shared across copies
  struct PropertyCache {
    std::mutex mu;
    std::array<std::optional<PropertyReport>, 7> slot;
  };
  std::shared_ptr<PropertyCache> cache_ = std::make_shared<PropertyCache>();
  friend PropertyReport check_property(const SetFunction& m, Property which);
};

PropertyReport check_property(const SetFunction& m, Property which);

// The implications between Definition-2.1 properties that must hold for
// every set function; a counterexample is a library bug.
struct ImplicationReport {
  bool monotone = false;
  bool subadditive = false;
  bool null_additive = false;
  bool antecedent_holds = false;  // monotone && subadditive
  bool passed = false;            // antecedent false, or conclusion true
};

ImplicationReport implication_suite(const SetFunction& m);

// Variation of m on a measurable set: the maximum of sum m(A_i) over all
// partitions of e into measurable parts. Computed exactly by a dynamic
// program over sub-masks (the maximum over partitions of S splits off the
// part containing S's lowest block). The partition-enumeration definition
// is kept as an independent oracle in the tests.
Rational variation(const SetFunction& m, const MSet& e,
                   std::size_t block_limit = kDefaultBlockLimit);

// The whole variation table as a set function ("m bar").
SetFunction variation_measure(const SetFunction& m,
                              std::size_t block_limit = kDefaultBlockLimit);

// sup of m(A) over measurable A contained in the (arbitrary) point set e.
Rational m_star(const SetFunction& m, const PointSet& e);

// inf of variation(m, A) over measurable supersets A of the point set e.
Rational m_tilde(const SetFunction& m, const PointSet& e,
                 std::size_t block_limit = kDefaultBlockLimit);

// Propagation laws from m to the derived set functions: materializes the
// variation table (and the m-tilde table over all point sets) and checks
// monotonicity, null-additivity transfer and additivity of the variation
// for subadditive m.
struct PropagationClaim {
  std::string name;
  bool applicable = true;  // antecedent holds for this m
  bool holds = true;
  std::string detail;
};

struct PropagationReport {
  std::vector<PropagationClaim> claims;
  bool all_hold = true;
};

PropagationReport variation_propagation_check(
    const SetFunction& m, std::size_t block_limit = kDefaultBlockLimit);

} // namespace gould
