#include "gould/setfunc.hpp"

#include <sstream>

namespace gould {

namespace {

// Dense tables keep every operation O(1) per lookup; 16 blocks = 64k
// entries is the practical ceiling for that representation.
constexpr std::size_t kMaxTableBlocks = 16;

void check_table_budget(const Universe& u) {
  if (u.block_count() > kMaxTableBlocks)
    throw ValidationError("set functions support at most 16 blocks");
}

} // namespace

SetFunction::SetFunction(const Universe& u, const std::map<Mask, Rational>& values,
                         const Rational& default_value)
    : universe_(&u) {
  check_table_budget(u);
  table_.assign(std::size_t(1) << u.block_count(), default_value);
  for (const auto& [mask, v] : values) {
    if (u.block_count() < 64 && (mask >> u.block_count()) != 0)
      throw ValidationError("set function entry out of range");
    table_[mask] = v;
  }
  if (table_[0] != 0)
    throw ValidationError("set function must vanish on the empty set");
  for (const auto& v : table_)
    if (v < 0) throw ValidationError("set function values must be nonnegative");
}

SetFunction SetFunction::from_table(const Universe& u, std::vector<Rational> table) {
  check_table_budget(u);
  if (table.size() != (std::size_t(1) << u.block_count()))
    throw ValidationError("set function table has wrong size");
  if (table[0] != 0)
    throw ValidationError("set function must vanish on the empty set");
  for (const auto& v : table)
    if (v < 0) throw ValidationError("set function values must be nonnegative");
  SetFunction out(u, {});
  out.table_ = std::move(table);
  return out;
}

const Rational& SetFunction::operator()(const MSet& s) const {
  require_same_universe(universe_, s.universe());
  return table_[s.blocks()];
}

const char* property_name(Property p) {
  switch (p) {
    case Property::monotone: return "monotone";
    case Property::null_additive: return "null_additive";
    case Property::sigma_null_additive: return "sigma_null_additive";
    case Property::subadditive: return "subadditive";
    case Property::finitely_additive: return "finitely_additive";
    case Property::sigma_subadditive: return "sigma_subadditive";
    case Property::null_continuous: return "null_continuous";
  }
  return "?";
}

std::optional<Property> property_from_name(std::string_view name) {
  for (Property p : {Property::monotone, Property::null_additive,
                     Property::sigma_null_additive, Property::subadditive,
                     Property::finitely_additive, Property::sigma_subadditive,
                     Property::null_continuous})
    if (name == property_name(p)) return p;
  return std::nullopt;
}

namespace {

MSet ms(const SetFunction& m, Mask mask) { return MSet(&m.universe(), mask); }

PropertyReport fail2(const SetFunction& m, Property p, Mask a, Mask b,
                     const std::string& detail) {
  PropertyReport r;
  r.property = p;
  r.holds = false;
  r.witness = {ms(m, a), ms(m, b)};
  r.witness_values = {m.at_mask(a), m.at_mask(b)};
  r.detail = detail;
  return r;
}

PropertyReport check_monotone(const SetFunction& m) {
  PropertyReport r;
  r.property = Property::monotone;
  const Mask full = m.universe().full_set().blocks();
  for (Mask a = 0; a <= full; ++a) {
    // supersets of a in ascending order
    for (Mask b = a;; b = (b + 1) | a) {
      if (m.at_mask(a) > m.at_mask(b)) {
        auto rep = fail2(m, Property::monotone, a, b,
                         "m(" + ms(m, a).str() + ") = " + rat_str(m.at_mask(a)) +
                             " > m(" + ms(m, b).str() + ") = " +
                             rat_str(m.at_mask(b)) + " although the first is a subset");
        return rep;
      }
      if (b == full) break;
    }
  }
  return r;
}

PropertyReport check_null_additive(const SetFunction& m) {
  PropertyReport r;
  r.property = Property::null_additive;
  const Mask full = m.universe().full_set().blocks();
  for (Mask a = 0; a <= full; ++a) {
    for (Mask b = 0; b <= full; ++b) {
      if (m.at_mask(b) != 0) continue;
      if (m.at_mask(a | b) != m.at_mask(a)) {
        auto rep = fail2(m, Property::null_additive, a, b,
                         "m(" + ms(m, b).str() + ") = 0 but m(union) = " +
                             rat_str(m.at_mask(a | b)) + " differs from m(" +
                             ms(m, a).str() + ") = " + rat_str(m.at_mask(a)));
        return rep;
      }
    }
  }
  return r;
}

PropertyReport check_sigma_null_additive(const SetFunction& m) {
  PropertyReport r;
  r.property = Property::sigma_null_additive;
  r.note = "finite collapse: every finite union of null sets must be null";
  const Mask full = m.universe().full_set().blocks();
  for (Mask a = 0; a <= full; ++a) {
    if (m.at_mask(a) != 0) continue;
    for (Mask b = 0; b <= full; ++b) {
      if (m.at_mask(b) != 0) continue;
      if (m.at_mask(a | b) != 0) {
        auto rep = fail2(m, Property::sigma_null_additive, a, b,
                         "m = 0 on both sets but m(union) = " +
                             rat_str(m.at_mask(a | b)));
        rep.note = r.note;
        return rep;
      }
    }
  }
  return r;
}

PropertyReport check_subadditive(const SetFunction& m, Property tag) {
  PropertyReport r;
  r.property = tag;
  const Mask full = m.universe().full_set().blocks();
  for (Mask a = 0; a <= full; ++a) {
    for (Mask b = 0; b <= full; ++b) {
      if (m.at_mask(a | b) > m.at_mask(a) + m.at_mask(b)) {
        auto rep = fail2(m, tag, a, b,
                         "m(union) = " + rat_str(m.at_mask(a | b)) + " > " +
                             rat_str(m.at_mask(a)) + " + " + rat_str(m.at_mask(b)));
        rep.note = r.note;
        return rep;
      }
    }
  }
  return r;
}

PropertyReport check_finitely_additive(const SetFunction& m) {
  PropertyReport r;
  r.property = Property::finitely_additive;
  const Mask full = m.universe().full_set().blocks();
  for (Mask a = 0; a <= full; ++a) {
    // disjoint partners: submasks of the complement, ascending
    const Mask comp = full & ~a;
    Mask b = 0;
    while (true) {
      if (m.at_mask(a | b) != m.at_mask(a) + m.at_mask(b)) {
        return fail2(m, Property::finitely_additive, a, b,
                     "m(union) = " + rat_str(m.at_mask(a | b)) +
                         " but the parts sum to " +
                         rat_str(m.at_mask(a) + m.at_mask(b)));
      }
      if (b == comp) break;
      b = (b - comp) & comp;
    }
  }
  return r;
}

PropertyReport compute_property(const SetFunction& m, Property which) {
  switch (which) {
    case Property::monotone:
      return check_monotone(m);
    case Property::null_additive:
      return check_null_additive(m);
    case Property::sigma_null_additive:
      return check_sigma_null_additive(m);
    case Property::subadditive:
      return check_subadditive(m, Property::subadditive);
    case Property::sigma_subadditive: {
      auto r = check_subadditive(m, Property::sigma_subadditive);
      r.note = "finite collapse: equivalent to pairwise subadditivity";
      return r;
    }
    case Property::finitely_additive:
      return check_finitely_additive(m);
    case Property::null_continuous: {
      PropertyReport r;
      r.property = Property::null_continuous;
      r.note =
          "vacuous on a finite algebra: an increasing sequence of null sets "
          "stabilizes, so its union is one of its null terms";
      return r;
    }
  }
  throw Error("unreachable property");
}

} // namespace

PropertyReport check_property(const SetFunction& m, Property which) {
  auto& cache = *m.cache_;
  std::lock_guard<std::mutex> lock(cache.mu);
  auto& slot = cache.slot[static_cast<std::size_t>(which)];
  if (!slot) slot = compute_property(m, which);
  return *slot;
}

ImplicationReport implication_suite(const SetFunction& m) {
  ImplicationReport rep;
  rep.monotone = check_property(m, Property::monotone).holds;
  rep.subadditive = check_property(m, Property::subadditive).holds;
  rep.null_additive = check_property(m, Property::null_additive).holds;
  rep.antecedent_holds = rep.monotone && rep.subadditive;
  rep.passed = !rep.antecedent_holds || rep.null_additive;
  return rep;
}

namespace {

// variation DP over sub-masks of `scope`; out[s] = max over partitions of s.
// To visit each partition once, the part containing the lowest block of s is
// enumerated and the rest recurses.
void variation_fill(const SetFunction& m, Mask scope, std::vector<Rational>& out) {
  out.assign(std::size_t(1) << m.universe().block_count(), Rational(0));
  Mask s = 0;
  while (true) {
    if (s != 0) {
      const Mask low = Mask(1) << lowest_bit(s);
      const Mask rest_all = s & ~low;
      Rational best = -1;
      // first part = low | t for every submask t of rest_all
      Mask t = 0;
      while (true) {
        const Rational cand = m.at_mask(low | t) + out[rest_all & ~t];
        if (cand > best) best = cand;
        if (t == rest_all) break;
        t = (t - rest_all) & rest_all;
      }
      out[s] = best;
    }
    if (s == scope) break;
    s = (s - scope) & scope;
  }
}

void check_block_limit(std::size_t k, std::size_t limit, const char* what) {
  if (k > limit) {
    std::ostringstream os;
    os << what << " over " << k << " blocks exceeds limit " << limit
       << " (Bell(" << k << ") = " << bell_number(k) << " partitions)";
    throw SizeLimitError(os.str());
  }
}

} // namespace

Rational variation(const SetFunction& m, const MSet& e, std::size_t block_limit) {
  require_same_universe(&m.universe(), e.universe());
  check_block_limit(e.block_count(), block_limit, "variation");
  if (e.empty()) return 0;
  std::vector<Rational> table;
  variation_fill(m, e.blocks(), table);
  return table[e.blocks()];
}

SetFunction variation_measure(const SetFunction& m, std::size_t block_limit) {
  check_block_limit(m.universe().block_count(), block_limit, "variation");
  std::vector<Rational> table;
  variation_fill(m, m.universe().full_set().blocks(), table);
  return SetFunction::from_table(m.universe(), std::move(table));
}

Rational m_star(const SetFunction& m, const PointSet& e) {
  require_same_universe(&m.universe(), e.universe());
  Rational best = 0;
  const Mask full = m.universe().full_set().blocks();
  for (Mask a = 0; a <= full; ++a) {
    if (!subset_of(m.universe().points_of_blocks(a), e.points())) continue;
    if (m.at_mask(a) > best) best = m.at_mask(a);
  }
  return best;
}

Rational m_tilde(const SetFunction& m, const PointSet& e, std::size_t block_limit) {
  require_same_universe(&m.universe(), e.universe());
  check_block_limit(m.universe().block_count(), block_limit, "variation");
  std::vector<Rational> table;
  variation_fill(m, m.universe().full_set().blocks(), table);
  std::optional<Rational> best;
  const Mask full = m.universe().full_set().blocks();
  for (Mask a = 0; a <= full; ++a) {
    if (!subset_of(e.points(), m.universe().points_of_blocks(a))) continue;
    if (!best || table[a] < *best) best = table[a];
  }
  // the full space is always a superset, so a minimum exists
  return *best;
}

PropagationReport variation_propagation_check(const SetFunction& m,
                                              std::size_t block_limit) {
  const Universe& u = m.universe();
  check_block_limit(u.block_count(), block_limit, "variation");
  if (u.point_count() > 16)
    throw SizeLimitError("m-tilde table over point sets needs at most 16 points");

  PropagationReport rep;
  auto add = [&rep](std::string name, bool applicable, bool holds,
                    std::string detail) {
    rep.claims.push_back({std::move(name), applicable, holds, std::move(detail)});
    if (applicable && !holds) rep.all_hold = false;
  };

  const SetFunction mbar = variation_measure(m, block_limit);

  // m-tilde over every point subset
  const std::size_t npts = u.point_count();
  std::vector<Rational> tilde(std::size_t(1) << npts);
  for (Mask e = 0; e < (Mask(1) << npts); ++e)
    tilde[e] = m_tilde(m, PointSet(&u, e), block_limit);

  const bool m_null_additive = check_property(m, Property::null_additive).holds;
  const bool m_subadditive = check_property(m, Property::subadditive).holds;

  {
    auto r = check_property(mbar, Property::monotone);
    add("variation is monotone", true, r.holds, r.detail);
  }
  {
    bool holds = true;
    std::string detail;
    for (Mask e = 0; holds && e < (Mask(1) << npts); ++e)
      for (Mask f = e;; f = (f + 1) | e) {
        if (tilde[e] > tilde[f]) {
          holds = false;
          detail = "m~ decreases from " + rat_str(tilde[e]) + " to " +
                   rat_str(tilde[f]) + " on a superset";
          break;
        }
        if (f == (Mask(1) << npts) - 1) break;
      }
    add("m~ is monotone on all point sets", true, holds, detail);
  }
  {
    auto r = check_property(mbar, Property::null_additive);
    add("m null-additive => variation null-additive", m_null_additive, r.holds,
        r.detail);
  }
  {
    // null-additivity of m~ over arbitrary point sets
    const bool mbar_null_additive =
        check_property(mbar, Property::null_additive).holds;
    bool holds = true;
    std::string detail;
    for (Mask e = 0; holds && e < (Mask(1) << npts); ++e)
      for (Mask f = 0; f < (Mask(1) << npts); ++f) {
        if (tilde[f] != 0) continue;
        if (tilde[e | f] != tilde[e]) {
          holds = false;
          detail = "m~ of a union with a m~-null set moved from " +
                   rat_str(tilde[e]) + " to " + rat_str(tilde[e | f]);
          break;
        }
      }
    add("variation null-additive => m~ null-additive on all point sets",
        mbar_null_additive, holds, detail);
  }
  {
    auto r = check_property(mbar, Property::finitely_additive);
    add("m subadditive => variation finitely additive", m_subadditive, r.holds,
        r.detail);
  }
  return rep;
}

} // namespace gould
