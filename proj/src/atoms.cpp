#include "gould/atoms.hpp"

#include <sstream>

namespace gould {

AtomCheck check_atom(const SetFunction& m, const MSet& a) {
  require_same_universe(&m.universe(), a.universe());
  AtomCheck out;
  if (m.at_mask(a.blocks()) == 0) {
    out.mass_zero = true;
    return out;
  }
  const Mask am = a.blocks();
  // proper submasks in ascending order
  for (Mask b = 0; b != am; b = (b - am) & am) {
    if (m.at_mask(b) != 0 && m.at_mask(am & ~b) != 0) {
      out.splitting = MSet(a.universe(), b);
      return out;
    }
  }
  out.atom = true;
  return out;
}

bool is_atom(const SetFunction& m, const MSet& a) { return check_atom(m, a).atom; }

namespace {

// atom flag for every mask at once; 3^B submask scans total
std::vector<bool> atom_table(const SetFunction& m) {
  const Mask full = m.universe().full_set().blocks();
  std::vector<bool> atom(std::size_t(full) + 1, false);
  for (Mask a = 1; a <= full; ++a) {
    if (m.at_mask(a) == 0) continue;
    bool ok = true;
    for (Mask b = 0; b != a; b = (b - a) & a) {
      if (m.at_mask(b) != 0 && m.at_mask(a & ~b) != 0) {
        ok = false;
        break;
      }
    }
    atom[a] = ok;
  }
  return atom;
}

} // namespace

std::optional<AtomDecomposition> decompose(const SetFunction& m,
                                           std::size_t block_limit) {
  const auto atoms = atom_table(m);
  PartitionEnumerator en(m.universe().full_set(), block_limit);
  while (auto p = en.next()) {
    bool all = true;
    for (Mask part : p->parts())
      if (!atoms[part]) {
        all = false;
        break;
      }
    if (all) {
      AtomDecomposition d;
      for (Mask part : p->parts()) d.atoms.emplace_back(&m.universe(), part);
      return d;
    }
  }
  return std::nullopt;
}

std::vector<AtomDecomposition> all_decompositions(const SetFunction& m,
                                                  std::size_t block_limit) {
  const auto atoms = atom_table(m);
  std::vector<AtomDecomposition> out;
  PartitionEnumerator en(m.universe().full_set(), block_limit);
  while (auto p = en.next()) {
    bool all = true;
    for (Mask part : p->parts())
      if (!atoms[part]) {
        all = false;
        break;
      }
    if (all) {
      AtomDecomposition d;
      for (Mask part : p->parts()) d.atoms.emplace_back(&m.universe(), part);
      out.push_back(std::move(d));
    }
  }
  return out;
}

void require_properties(const SetFunction& m, std::initializer_list<Property> ps,
                        const char* operation) {
  for (Property p : ps) {
    auto rep = check_property(m, p);
    if (!rep.holds) {
      std::ostringstream os;
      os << operation << ": the set function is not " << property_name(p);
      if (!rep.detail.empty()) os << " (" << rep.detail << ")";
      throw HypothesisError(property_name(p), os.str());
    }
  }
}

void require_atom(const SetFunction& m, const MSet& a, const char* operation) {
  auto c = check_atom(m, a);
  if (!c.atom) {
    std::ostringstream os;
    os << operation << ": " << a.str() << " is not an atom";
    if (c.mass_zero)
      os << " (its measure is 0)";
    else if (c.splitting)
      os << " (split by " << c.splitting->str() << ")";
    throw HypothesisError("atom", os.str());
  }
}

AtomPoint locate_atom_point(const SetFunction& m, const MSet& a,
                            AtomPointMode mode) {
  require_properties(m, {Property::monotone, Property::null_additive},
                     "locate_atom_point");
  require_atom(m, a, "locate_atom_point");
  const Universe& u = m.universe();

  std::vector<std::size_t> candidates;  // point index per candidate carrier
  std::vector<Mask> carrier_blocks;
  for (Mask bm = a.blocks(); bm;) {
    int b = lowest_bit(bm);
    bm &= bm - 1;
    if (mode == AtomPointMode::point && popcount(u.block_points(b)) != 1)
      throw HypothesisError(
          "singleton_blocks",
          "locate_atom_point: block " +
              MSet(&u, Mask(1) << b).str() +
              " inside the atom is not a singleton (use the carrier-block mode)");
    candidates.push_back(static_cast<std::size_t>(lowest_bit(u.block_points(b))));
    carrier_blocks.push_back(Mask(1) << b);
  }

  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < carrier_blocks.size(); ++i) {
    const Mask rest = a.blocks() & ~carrier_blocks[i];
    if (m.at_mask(rest) == 0 &&
        m.at_mask(carrier_blocks[i]) == m.at_mask(a.blocks())) {
      if (hit)
        throw StructureError("locate_atom_point: two distinct carrier points in " +
                             a.str());
      hit = i;
    }
  }
  if (!hit)
    throw StructureError("locate_atom_point: no carrier point found in " + a.str());
  AtomPoint out;
  out.atom = a;
  out.point = candidates[*hit];
  out.residual_value = m.at_mask(a.blocks() & ~carrier_blocks[*hit]);
  return out;
}

std::size_t atom_partition_structure(const SetFunction& m, const MSet& a,
                                     const Partition& p) {
  require_properties(m, {Property::monotone, Property::null_additive},
                     "atom_partition_structure");
  require_atom(m, a, "atom_partition_structure");
  if (p.target() != a)
    throw ValidationError("atom_partition_structure: partition does not target the atom");

  std::optional<std::size_t> carrier;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational& v = m.at_mask(p.parts()[i]);
    if (v == 0) continue;
    if (v != m.at_mask(a.blocks()))
      throw StructureError("atom_partition_structure: part " + p.part(i).str() +
                           " has mass " + rat_str(v) + " instead of 0 or m(atom)");
    if (carrier)
      throw StructureError("atom_partition_structure: two positive parts in " +
                           p.str());
    carrier = i;
  }
  if (!carrier)
    throw StructureError("atom_partition_structure: no positive part in " + p.str());
  return *carrier;
}

MSet core_atom(const SetFunction& m, const MSet& a) {
  require_properties(m, {Property::monotone, Property::null_additive}, "core_atom");
  require_atom(m, a, "core_atom");
  Mask core = a.blocks();
  const Mask am = a.blocks();
  for (Mask b = 0;; b = (b - am) & am) {
    if (b != 0 && m.at_mask(b) != 0) {
      // positive subsets of an atom are atoms; still verify
      if (is_atom(m, MSet(a.universe(), b))) core &= b;
    }
    if (b == am) break;
  }
  MSet out(a.universe(), core);
  if (!is_atom(m, out) || m.at_mask(core) != m.at_mask(am))
    throw StructureError("core_atom: intersection of sub-atoms is not an atom of equal mass");
  return out;
}

} // namespace gould
