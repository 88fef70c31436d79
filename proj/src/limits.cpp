#include "gould/limits.hpp"

#include <sstream>

namespace gould {

namespace {

void check_sequence(const FnSequence& fs, const SetFunction& m) {
  if (fs.terms.empty()) throw ValidationError("sequence needs at least one term");
  const Universe& u = fs.terms.front().universe();
  require_same_universe(&u, &m.universe());
  const std::size_t dim = fs.terms.front().dim();
  for (const auto& f : fs.terms) {
    require_same_universe(&f.universe(), &u);
    if (f.dim() != dim) throw ValidationError("sequence terms must share dimension");
  }
  if (fs.declared_limit) {
    require_same_universe(&fs.declared_limit->universe(), &u);
    if (fs.declared_limit->dim() != dim)
      throw ValidationError("declared limit must share dimension");
  }
}

} // namespace

LebesgueReport lebesgue_identity_check(const FnSequence& fs, const SetFunction& m,
                                       const MSet& a) {
  check_sequence(fs, m);
  if (!fs.declared_limit)
    throw ValidationError("lebesgue_identity_check needs a declared limit");
  require_properties(m, {Property::monotone, Property::null_additive},
                     "lebesgue_identity_check");
  require_atom(m, a, "lebesgue_identity_check");

  const AtomPoint ap = locate_atom_point(m, a);
  const Rational mass = m.at_mask(a.blocks());
  const VecFunction& limit = *fs.declared_limit;
  const GouldResult lim_int = gould_integral(limit, m, a);
  if (!lim_int.integrable)
    throw HypothesisError("integrable",
                          "lebesgue_identity_check: the declared limit is not "
                          "integrable on the atom");

  LebesgueReport rep;
  rep.point = ap.point;
  for (std::size_t n = 0; n < fs.terms.size(); ++n) {
    const GouldResult gn = gould_integral(fs.terms[n], m, a);
    if (!gn.integrable)
      throw HypothesisError("integrable",
                            "lebesgue_identity_check: term " + std::to_string(n + 1) +
                                " is not integrable on the atom");
    LebesgueRow row;
    row.n = n + 1;
    row.integral_difference = vec_sub(*gn.value, *lim_int.value);
    row.point_difference_scaled =
        vec_scale(vec_sub(fs.terms[n].at(ap.point), limit.at(ap.point)), mass);
    row.equal = (row.integral_difference == row.point_difference_scaled);
    if (!row.equal) rep.all_equal = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

UniformBoundReport uniform_bounded_atom(const FnSequence& fs, const SetFunction& m,
                                        const Rational& bound_k,
                                        std::size_t block_limit) {
  check_sequence(fs, m);
  if (bound_k <= 0) throw ValidationError("the bound K must be positive");
  // sigma-null-additivity collapses to the pairwise form on a finite algebra
  require_properties(m, {Property::monotone, Property::null_additive},
                     "uniform_bounded_atom");
  auto dec = decompose(m, block_limit);
  if (!dec)
    throw HypothesisError("finitely_purely_atomic",
                          "uniform_bounded_atom: the measure admits no atom "
                          "decomposition");

  const Universe& u = m.universe();
  // precondition: every integral over every atom is bounded by K
  for (const MSet& atom : dec->atoms) {
    for (std::size_t n = 0; n < fs.terms.size(); ++n) {
      const GouldResult g = gould_integral(fs.terms[n], m, atom);
      if (!g.integrable)
        throw HypothesisError("integrable",
                              "uniform_bounded_atom: term " + std::to_string(n + 1) +
                                  " is not integrable on atom " + atom.str());
      if (sup_norm(*g.value) > bound_k) {
        std::ostringstream os;
        os << "uniform_bounded_atom: |integral| = " << rat_str(sup_norm(*g.value))
           << " on atom " << atom.str() << " exceeds K = " << rat_str(bound_k);
        throw HypothesisError("integral_bound", os.str());
      }
    }
  }

  // each core atom is a single positive block; every integrable term is
  // constant there, so the image diameter is 0
  Mask carrier = 0;
  for (const MSet& atom : dec->atoms) carrier |= core_atom(m, atom).blocks();
  UniformBoundReport rep{MSet(&u, carrier), 0, 0, bound_k + 1};
  rep.complement_mass = m.at_mask(u.full_set().blocks() & ~carrier);
  if (rep.complement_mass != 0)
    throw StructureError("uniform_bounded_atom: complement of the carrier set "
                         "has positive mass");

  for (const auto& f : fs.terms)
    for (Mask pm = u.points_of_blocks(carrier); pm;) {
      const std::size_t p = static_cast<std::size_t>(lowest_bit(pm));
      pm &= pm - 1;
      rep.sup_norm_on_u = std::max(rep.sup_norm_on_u, sup_norm(f.at(p)));
    }
  if (rep.sup_norm_on_u > rep.bound) {
    std::ostringstream os;
    os << "uniform_bounded_atom: sup |f_n| = " << rat_str(rep.sup_norm_on_u)
       << " on the carrier set exceeds K + 1 = " << rat_str(rep.bound);
    throw StructureError(os.str());
  }
  return rep;
}

UniformConvergenceReport uniform_convergence_atom(const FnSequence& fs,
                                                  const SetFunction& m,
                                                  const MSet& a,
                                                  const RatVec& x_target) {
  check_sequence(fs, m);
  if (x_target.size() != fs.terms.front().dim())
    throw ValidationError("target vector has wrong dimension");
  require_properties(m, {Property::monotone, Property::null_additive},
                     "uniform_convergence_atom");
  require_atom(m, a, "uniform_convergence_atom");

  const Rational mass = m.at_mask(a.blocks());
  std::vector<RatVec> xs;  // x_n = integral / m(a)
  for (std::size_t n = 0; n < fs.terms.size(); ++n) {
    const GouldResult g = gould_integral(fs.terms[n], m, a);
    if (!g.integrable)
      throw HypothesisError("integrable",
                            "uniform_convergence_atom: term " + std::to_string(n + 1) +
                                " is not integrable on the atom (no sub-atom with "
                                "small image diameter exists)");
    xs.push_back(vec_scale(*g.value, Rational(1) / mass));
  }

  // nested witnesses U_n: the core atom works for every n (diameter 0)
  const MSet core = core_atom(m, a);
  const Universe& u = m.universe();

  UniformConvergenceReport rep{core, {}, {}, true};
  for (std::size_t n = 0; n < fs.terms.size(); ++n) {
    Rational sup = 0;
    for (Mask pm = u.points_of_blocks(core.blocks()); pm;) {
      const std::size_t p = static_cast<std::size_t>(lowest_bit(pm));
      pm &= pm - 1;
      sup = std::max(sup, sup_dist(fs.terms[n].at(p), x_target));
    }
    const Rational bound =
        sup_dist(xs[n], x_target) + Rational(1, int(n) + 1);
    rep.sup_distances.push_back(sup);
    rep.bounds.push_back(bound);
    if (sup > bound) rep.all_within = false;
  }
  return rep;
}

} // namespace gould
