#include "gould/rn.hpp"

#include <sstream>

namespace gould {

namespace {

constexpr std::size_t kMaxTableBlocks = 16;

} // namespace

VecMeasure::VecMeasure(const Universe& u, std::size_t dim,
                       const std::map<Mask, RatVec>& values)
    : universe_(&u), dim_(dim) {
  if (dim_ == 0) throw ValidationError("measure dimension must be positive");
  if (u.block_count() > kMaxTableBlocks)
    throw ValidationError("vector measures support at most 16 blocks");
  table_.assign(std::size_t(1) << u.block_count(), vec_zero(dim_));
  for (const auto& [mask, v] : values) {
    if (u.block_count() < 64 && (mask >> u.block_count()) != 0)
      throw ValidationError("vector measure entry out of range");
    if (v.size() != dim_)
      throw ValidationError("vector measure value has wrong dimension");
    table_[mask] = v;
  }
  if (!vec_is_zero(table_[0]))
    throw ValidationError("vector measure must vanish on the empty set");
}

VecMeasure::VecMeasure(const Universe& u, std::size_t dim, std::vector<RatVec> table)
    : universe_(&u), dim_(dim), table_(std::move(table)) {
  if (dim_ == 0) throw ValidationError("measure dimension must be positive");
  if (table_.size() != (std::size_t(1) << u.block_count()))
    throw ValidationError("vector measure table has wrong size");
  for (const auto& v : table_)
    if (v.size() != dim_)
      throw ValidationError("vector measure value has wrong dimension");
  if (!vec_is_zero(table_[0]))
    throw ValidationError("vector measure must vanish on the empty set");
}

const RatVec& VecMeasure::operator()(const MSet& s) const {
  require_same_universe(universe_, s.universe());
  return table_[s.blocks()];
}

bool VecMeasure::operator==(const VecMeasure& o) const {
  require_same_universe(universe_, o.universe_);
  return dim_ == o.dim_ && table_ == o.table_;
}

VecMeasure integral_measure(const VecFunction& f, const SetFunction& m) {
  require_same_universe(&f.universe(), &m.universe());
  const Universe& u = f.universe();
  const Mask full = u.full_set().blocks();
  std::vector<RatVec> table;
  table.reserve(std::size_t(full) + 1);
  table.push_back(vec_zero(f.dim()));
  for (Mask b = 1; b <= full; ++b) {
    const GouldResult g = gould_integral(f, m, MSet(&u, b));
    if (!g.integrable)
      throw MeasurabilityError("integral_measure: f is not integrable on " +
                               MSet(&u, b).str());
    table.push_back(*g.value);
  }
  return VecMeasure(u, f.dim(), std::move(table));
}

bool is_null_set(const VecMeasure& mu, const MSet& n) {
  require_same_universe(&mu.universe(), n.universe());
  const Mask nm = n.blocks();
  for (Mask b = 0;; b = (b - nm) & nm) {
    if (!vec_is_zero(mu.at_mask(b))) return false;
    if (b == nm) break;
  }
  return true;
}

bool vec_atom_check(const VecMeasure& mu, const MSet& a) {
  require_same_universe(&mu.universe(), a.universe());
  if (is_null_set(mu, a)) return false;
  const Mask am = a.blocks();
  for (Mask b = 0; b != am; b = (b - am) & am) {
    if (!is_null_set(mu, MSet(a.universe(), b)) &&
        !is_null_set(mu, MSet(a.universe(), am & ~b)))
      return false;
  }
  return true;
}

IntegralMeasureReport integral_measure_properties(const VecFunction& f,
                                                  const SetFunction& m,
                                                  std::size_t block_limit) {
  require_properties(m, {Property::monotone, Property::null_additive},
                     "integral_measure_properties");
  auto dec = decompose(m, block_limit);
  if (!dec)
    throw HypothesisError("finitely_purely_atomic",
                          "integral_measure_properties: the measure admits no "
                          "atom decomposition");
  const VecMeasure mu = integral_measure(f, m);
  const Universe& u = m.universe();
  const Mask full = u.full_set().blocks();

  IntegralMeasureReport rep;
  rep.finitely_additive = true;
  for (Mask a = 0; rep.finitely_additive && a <= full; ++a) {
    const Mask comp = full & ~a;
    for (Mask b = 0;; b = (b - comp) & comp) {
      if (mu.at_mask(a | b) != vec_add(mu.at_mask(a), mu.at_mask(b))) {
        rep.finitely_additive = false;
        rep.detail = "additivity fails at " + MSet(&u, a).str() + " + " +
                     MSet(&u, b).str();
        break;
      }
      if (b == comp) break;
    }
  }

  rep.absolutely_continuous = true;
  for (Mask e = 0; e <= full; ++e) {
    if (m.at_mask(e) == 0 && !vec_is_zero(mu.at_mask(e))) {
      rep.absolutely_continuous = false;
      rep.detail = "m(" + MSet(&u, e).str() + ") = 0 but mu is " +
                   vec_str(mu.at_mask(e));
      break;
    }
  }

  rep.atom_transfer = true;
  for (const MSet& atom : dec->atoms) {
    if (!vec_atom_check(mu, atom) && !is_null_set(mu, atom)) {
      rep.atom_transfer = false;
      rep.detail = "m-atom " + atom.str() + " is neither a mu-atom nor mu-null";
      break;
    }
  }
  return rep;
}

PropFormulaReport prop_formula_check(const VecFunction& f, const SetFunction& m,
                                     std::size_t block_limit) {
  require_properties(m, {Property::monotone, Property::null_additive},
                     "prop_formula_check");
  auto dec = decompose(m, block_limit);
  if (!dec)
    throw HypothesisError("finitely_purely_atomic",
                          "prop_formula_check: the measure admits no atom "
                          "decomposition");
  const VecMeasure mu = integral_measure(f, m);
  const Universe& u = m.universe();
  const Mask full = u.full_set().blocks();

  PropFormulaReport rep;
  rep.atoms = dec->atoms;

  std::vector<RatVec> scaled;  // a_i / m(A_i)
  for (const MSet& atom : dec->atoms) {
    const GouldResult g = gould_integral(f, m, atom);
    scaled.push_back(vec_scale(*g.value, Rational(1) / m.at_mask(atom.blocks())));
  }
  for (Mask b = 0; b <= full; ++b) {
    RatVec rhs = vec_zero(f.dim());
    for (std::size_t i = 0; i < dec->atoms.size(); ++i)
      rhs = vec_add(rhs, vec_scale(scaled[i], m.at_mask(b & dec->atoms[i].blocks())));
    if (mu.at_mask(b) != rhs) {
      rep.holds = false;
      rep.counterexample = MSet(&u, b);
      return rep;
    }
  }
  return rep;
}

RNResult rn_derivative(const SetFunction& m, const VecMeasure& mu,
                       std::size_t block_limit) {
  require_same_universe(&m.universe(), &mu.universe());
  require_properties(m, {Property::monotone, Property::null_additive},
                     "rn_derivative");
  auto dec = decompose(m, block_limit);
  if (!dec)
    throw HypothesisError("finitely_purely_atomic",
                          "rn_derivative: the measure admits no atom decomposition");

  const Universe& u = m.universe();
  const Mask full = u.full_set().blocks();

  // mu finitely additive
  for (Mask a = 0; a <= full; ++a) {
    const Mask comp = full & ~a;
    for (Mask b = 0;; b = (b - comp) & comp) {
      if (mu.at_mask(a | b) != vec_add(mu.at_mask(a), mu.at_mask(b)))
        throw HypothesisError("finitely_additive",
                              "rn_derivative: mu is not finitely additive at " +
                                  MSet(&u, a).str() + " + " + MSet(&u, b).str());
      if (b == comp) break;
    }
  }
  // mu absolutely continuous w.r.t. m
  for (Mask e = 0; e <= full; ++e)
    if (m.at_mask(e) == 0 && !vec_is_zero(mu.at_mask(e)))
      throw HypothesisError("absolutely_continuous",
                            "rn_derivative: m(" + MSet(&u, e).str() +
                                ") = 0 but mu(" + MSet(&u, e).str() + ") = " +
                                vec_str(mu.at_mask(e)));
  // mu finitely purely atomic over the m-decomposition (null parts allowed)
  for (const MSet& atom : dec->atoms)
    if (!vec_atom_check(mu, atom) && !is_null_set(mu, atom))
      throw HypothesisError("finitely_purely_atomic",
                            "rn_derivative: m-atom " + atom.str() +
                                " is neither a mu-atom nor mu-null");

  // derivative: constant mu(A_i)/m(A_i) on each atom A_i
  std::vector<RatVec> per_point(u.point_count(), vec_zero(mu.dim()));
  for (const MSet& atom : dec->atoms) {
    const Rational& mass = m.at_mask(atom.blocks());
    if (mass == 0)
      throw StructureError("rn_derivative: atom with zero mass in decomposition");
    const RatVec value = vec_scale(mu.at_mask(atom.blocks()), Rational(1) / mass);
    for (Mask pm = atom.point_mask(); pm;) {
      const std::size_t p = static_cast<std::size_t>(lowest_bit(pm));
      pm &= pm - 1;
      per_point[p] = value;
    }
  }
  RNResult out{VecFunction(u, mu.dim(), std::move(per_point)), *dec, false};

  // full verification: the integral measure of the derivative equals mu
  const VecMeasure back = integral_measure(out.derivative, m);
  for (Mask b = 0; b <= full; ++b)
    if (back.at_mask(b) != mu.at_mask(b))
      throw StructureError("rn_derivative: verification failed on " +
                           MSet(&u, b).str() + ": integral " +
                           vec_str(back.at_mask(b)) + " vs mu " +
                           vec_str(mu.at_mask(b)));
  out.verified = true;
  return out;
}

} // namespace gould
