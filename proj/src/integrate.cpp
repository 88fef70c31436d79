#include "gould/integrate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gould/rng.hpp"

namespace gould {

VecFunction::VecFunction(const Universe& u, std::size_t dim,
                         std::vector<RatVec> per_point)
    : universe_(&u), dim_(dim), values_(std::move(per_point)) {
  if (dim_ == 0) throw ValidationError("function dimension must be positive");
  if (values_.size() != u.point_count())
    throw ValidationError("function must assign a value to every point");
  for (const auto& v : values_)
    if (v.size() != dim_)
      throw ValidationError("function value has wrong dimension");
}

bool VecFunction::constant_on(Mask point_mask) const {
  return !split_pair(point_mask).has_value();
}

std::optional<std::pair<std::size_t, std::size_t>> VecFunction::split_pair(
    Mask point_mask) const {
  std::optional<std::size_t> first;
  for (Mask m = point_mask; m;) {
    const std::size_t p = static_cast<std::size_t>(lowest_bit(m));
    m &= m - 1;
    if (!first) {
      first = p;
      continue;
    }
    if (values_[p] != values_[*first]) return std::make_pair(*first, p);
  }
  return std::nullopt;
}

RatVec gould_sum(const VecFunction& f, const SetFunction& m, const Partition& p,
                 const std::vector<std::size_t>& tags) {
  require_same_universe(&f.universe(), &m.universe());
  require_same_universe(&f.universe(), p.target().universe());
  if (tags.size() != p.size())
    throw ValidationError("need exactly one tag per part");
  RatVec sum = vec_zero(f.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Mask part_points = f.universe().points_of_blocks(p.parts()[i]);
    if (!(part_points & (Mask(1) << tags[i])))
      throw ValidationError("tag point lies outside its part");
    sum = vec_add(sum, vec_scale(f.at(tags[i]), m.at_mask(p.parts()[i])));
  }
  return sum;
}

GouldResult gould_integral(const VecFunction& f, const SetFunction& m,
                           const MSet& b) {
  require_same_universe(&f.universe(), &m.universe());
  require_same_universe(&f.universe(), b.universe());
  if (b.empty()) throw ValidationError("gould_integral needs a nonempty set");

  GouldResult out{false, std::nullopt, finest_partition(b), std::nullopt};
  RatVec value = vec_zero(f.dim());
  for (Mask bm = b.blocks(); bm;) {
    const int blk = lowest_bit(bm);
    bm &= bm - 1;
    const Mask block = Mask(1) << blk;
    const Rational& mass = m.at_mask(block);
    if (mass == 0) continue;
    const Mask pts = f.universe().block_points(blk);
    if (auto split = f.split_pair(pts)) {
      out.failure = GouldResult::Failure{MSet(b.universe(), block), split->first,
                                         split->second, mass};
      return out;
    }
    value = vec_add(value, vec_scale(f.at(static_cast<std::size_t>(lowest_bit(pts))), mass));
  }
  out.integrable = true;
  out.value = std::move(value);
  return out;
}

AdditivityReport integral_additivity_check(const VecFunction& f,
                                           const SetFunction& m, const MSet& b,
                                           const MSet& c) {
  if (b.empty() || c.empty())
    throw ValidationError("integral additivity needs nonempty sets");
  if (!set_intersection(b, c).empty())
    throw ValidationError("integral additivity needs disjoint sets");
  const GouldResult rb = gould_integral(f, m, b);
  const GouldResult rc = gould_integral(f, m, c);
  if (!rb.integrable || !rc.integrable)
    throw ValidationError("integral additivity needs f integrable on both sets");
  AdditivityReport rep;
  rep.value_b = *rb.value;
  rep.value_c = *rc.value;
  const GouldResult ru = gould_integral(f, m, set_union(b, c));
  rep.union_integrable = ru.integrable;
  if (ru.integrable) {
    rep.value_union = *ru.value;
    rep.additive = (rep.value_union == vec_add(rep.value_b, rep.value_c));
  }
  return rep;
}

Rational osc(const VecFunction& f, const PointSet& a) {
  require_same_universe(&f.universe(), a.universe());
  if (a.empty()) throw ValidationError("oscillation of an empty set");
  // sup-norm diameter = max over coordinates of (max - min)
  Rational best = 0;
  for (std::size_t d = 0; d < f.dim(); ++d) {
    std::optional<Rational> lo, hi;
    for (Mask m = a.points(); m;) {
      const std::size_t p = static_cast<std::size_t>(lowest_bit(m));
      m &= m - 1;
      const Rational& x = f.at(p)[d];
      if (!lo || x < *lo) lo = x;
      if (!hi || x > *hi) hi = x;
    }
    best = std::max(best, Rational(*hi - *lo));
  }
  return best;
}

Rational osc(const VecFunction& f, const MSet& a) {
  return osc(f, PointSet(a.universe(), a.point_mask()));
}

TMReport is_totally_measurable(const VecFunction& f, const SetFunction& m,
                               const MSet& b, const std::optional<Rational>& epsilon,
                               std::size_t block_limit) {
  require_same_universe(&f.universe(), &m.universe());
  require_same_universe(&f.universe(), b.universe());
  if (epsilon && *epsilon <= 0) throw ValidationError("epsilon must be positive");

  TMReport rep;
  rep.epsilon = epsilon;

  Mask bad = 0;
  for (Mask bm = b.blocks(); bm;) {
    const int blk = lowest_bit(bm);
    bm &= bm - 1;
    const Rational o = osc(f, PointSet(&f.universe(), f.universe().block_points(blk)));
    const bool is_bad = epsilon ? (o >= *epsilon) : (o > 0);
    if (is_bad) bad |= Mask(1) << blk;
  }
  rep.bad_set = MSet(b.universe(), bad);
  rep.bad_set_variation = variation(m, rep.bad_set, block_limit);
  rep.measurable_totally =
      epsilon ? (rep.bad_set_variation < *epsilon) : (rep.bad_set_variation == 0);

  if (rep.measurable_totally) {
    std::vector<MSet> family;
    family.push_back(rep.bad_set);  // A0, possibly empty
    for (Mask bm = b.blocks() & ~bad; bm;) {
      const int blk = lowest_bit(bm);
      bm &= bm - 1;
      family.emplace_back(b.universe(), Mask(1) << blk);
    }
    rep.witness_family = std::move(family);
  }
  return rep;
}

namespace {

// distinct values of a nonnegative scalar f on a, ascending; also checks
// level-set measurability (f constant on each block of a)
std::vector<Rational> scalar_levels(const VecFunction& f, const SetFunction& m,
                                    const MSet& a, const char* op) {
  require_same_universe(&f.universe(), &m.universe());
  require_same_universe(&f.universe(), a.universe());
  if (f.dim() != 1)
    throw ValidationError(std::string(op) + " needs a scalar function");
  for (Mask bm = a.blocks(); bm;) {
    const int blk = lowest_bit(bm);
    bm &= bm - 1;
    if (auto split = f.split_pair(f.universe().block_points(blk))) {
      throw MeasurabilityError(
          std::string(op) + ": level sets are not measurable, block " +
          MSet(a.universe(), Mask(1) << blk).str() + " has values " +
          rat_str(f.at(split->first)[0]) + " and " + rat_str(f.at(split->second)[0]));
    }
  }
  std::vector<Rational> vals;
  for (Mask pm = a.point_mask(); pm;) {
    const std::size_t p = static_cast<std::size_t>(lowest_bit(pm));
    pm &= pm - 1;
    const Rational& v = f.at(p)[0];
    if (v < 0)
      throw ValidationError(std::string(op) + " needs nonnegative values, got " +
                            rat_str(v) + " at point " + f.universe().point_label(p));
    vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

// mask of blocks of a whose f-value satisfies pred
template <typename Pred>
Mask level_set(const VecFunction& f, const MSet& a, Pred pred) {
  Mask out = 0;
  for (Mask bm = a.blocks(); bm;) {
    const int blk = lowest_bit(bm);
    bm &= bm - 1;
    const std::size_t p =
        static_cast<std::size_t>(lowest_bit(f.universe().block_points(blk)));
    if (pred(f.at(p)[0])) out |= Mask(1) << blk;
  }
  return out;
}

} // namespace

Rational choquet_integral(const VecFunction& f, const SetFunction& m,
                          const MSet& a) {
  const auto levels = scalar_levels(f, m, a, "choquet_integral");
  Rational total = 0;
  Rational prev = 0;
  for (const Rational& v : levels) {
    if (v == 0) continue;  // layer of height 0
    const Mask level = level_set(f, a, [&](const Rational& x) { return x >= v; });
    total += (v - prev) * m.at_mask(level);
    prev = v;
  }
  return total;
}

Rational t_zero(const VecFunction& f, const SetFunction& m, const MSet& a) {
  if (a.empty()) throw ValidationError("t_zero needs a nonempty set");
  const auto levels = scalar_levels(f, m, a, "t_zero");
  const Rational target = m.at_mask(a.blocks());

  // thresholds 0 = t_0 < t_1 < ... ; candidate v passes if m({f > t} in a)
  // equals m(a) for every threshold t < v (between thresholds the level set
  // is constant)
  std::vector<Rational> thresholds{0};
  for (const Rational& v : levels)
    if (v != 0) thresholds.push_back(v);

  Rational best = 0;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const Rational& v = thresholds[i];
    bool ok = true;
    for (std::size_t j = 0; j < i; ++j) {
      const Rational& t = thresholds[j];
      const Mask level = level_set(f, a, [&](const Rational& x) { return x > t; });
      if (m.at_mask(level) != target) {
        ok = false;
        break;
      }
    }
    if (ok) best = v;
  }
  return best;
}

AtomIntegralReport atom_integral_check(const VecFunction& f, const SetFunction& m,
                                       const MSet& a) {
  require_properties(m, {Property::monotone, Property::null_additive},
                     "atom_integral_check");
  require_atom(m, a, "atom_integral_check");

  AtomIntegralReport rep;
  const AtomPoint ap = locate_atom_point(m, a);  // needs singleton blocks
  rep.point = ap.point;

  const GouldResult g = gould_integral(f, m, a);
  const TMReport tm = is_totally_measurable(f, m, a);
  rep.tm_equivalence = (g.integrable == tm.measurable_totally);
  if (!g.integrable) return rep;

  rep.integral = *g.value;
  rep.point_formula =
      (rep.integral == vec_scale(f.at(ap.point), m.at_mask(a.blocks())));

  // intersection of the f-images of all atoms inside a
  std::optional<std::vector<RatVec>> common;
  const Mask am = a.blocks();
  for (Mask s = 0;; s = (s - am) & am) {
    if (s != 0 && is_atom(m, MSet(a.universe(), s))) {
      std::vector<RatVec> image;
      for (Mask pm = a.universe()->points_of_blocks(s); pm;) {
        const std::size_t p = static_cast<std::size_t>(lowest_bit(pm));
        pm &= pm - 1;
        image.push_back(f.at(p));
      }
      if (!common) {
        common = std::move(image);
      } else {
        std::vector<RatVec> kept;
        for (const auto& v : *common)
          if (std::find(image.begin(), image.end(), v) != image.end() &&
              std::find(kept.begin(), kept.end(), v) == kept.end())
            kept.push_back(v);
        common = std::move(kept);
      }
    }
    if (s == am) break;
  }
  if (common) {
    // dedupe (the first image may contain repeats)
    std::vector<RatVec> uniq;
    for (const auto& v : *common)
      if (std::find(uniq.begin(), uniq.end(), v) == uniq.end()) uniq.push_back(v);
    rep.intersection = std::move(uniq);
  }
  const Rational mass = m.at_mask(a.blocks());
  rep.image_intersection =
      rep.intersection.size() == 1 &&
      rep.intersection[0] == vec_scale(rep.integral, Rational(1) / mass);
  return rep;
}

BoundedMeasurableReport bounded_measurable_integrability_check(
    const VecFunction& f, const SetFunction& m, std::size_t block_limit) {
  require_same_universe(&f.universe(), &m.universe());
  BoundedMeasurableReport rep;

  const bool monotone = check_property(m, Property::monotone).holds;
  const bool null_additive = check_property(m, Property::null_additive).holds;
  const bool additive = check_property(m, Property::finitely_additive).holds;
  const bool purely_atomic =
      (monotone && null_additive) ? decompose(m, block_limit).has_value() : false;

  bool measurable = true;
  for (std::size_t blk = 0; measurable && blk < m.universe().block_count(); ++blk)
    measurable = f.constant_on(m.universe().block_points(blk));

  const TMReport tm = is_totally_measurable(f, m, m.universe().full_set(),
                                            std::nullopt, block_limit);
  rep.totally_measurable = tm.measurable_totally;

  rep.purely_atomic_clause = monotone && null_additive && purely_atomic && measurable;
  rep.finitely_additive_clause = additive && rep.totally_measurable;
  if (!rep.purely_atomic_clause && !rep.finitely_additive_clause) {
    if (!measurable && monotone && null_additive && purely_atomic)
      throw HypothesisError("measurable",
                            "bounded_measurable_integrability_check: the function is "
                            "not constant on every block");
    throw HypothesisError(
        "set_function",
        "bounded_measurable_integrability_check: need a null-additive monotone "
        "finitely purely atomic measure, or a finitely additive measure with a "
        "totally measurable function");
  }
  rep.integrable = gould_integral(f, m, m.universe().full_set()).integrable;
  return rep;
}

namespace {

std::vector<std::size_t> canonical_tags(const Universe& u, const Partition& p) {
  std::vector<std::size_t> tags;
  tags.reserve(p.size());
  for (Mask part : p.parts())
    tags.push_back(static_cast<std::size_t>(lowest_bit(u.points_of_blocks(part))));
  return tags;
}

std::vector<std::size_t> random_tags(const Universe& u, const Partition& p,
                                     SplitMix64& rng) {
  std::vector<std::size_t> tags;
  tags.reserve(p.size());
  for (Mask part : p.parts()) {
    std::vector<std::size_t> pts;
    for (Mask pm = u.points_of_blocks(part); pm;) {
      pts.push_back(static_cast<std::size_t>(lowest_bit(pm)));
      pm &= pm - 1;
    }
    tags.push_back(pts[rng.below(pts.size())]);
  }
  return tags;
}

// random one-step refinement: split one part with >= 2 blocks in two
std::optional<Partition> random_refinement(const Partition& p, SplitMix64& rng) {
  std::vector<std::size_t> splittable;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (popcount(p.parts()[i]) >= 2) splittable.push_back(i);
  if (splittable.empty()) return std::nullopt;
  const std::size_t idx = splittable[rng.below(splittable.size())];
  const Mask part = p.parts()[idx];

  std::vector<int> blocks;
  for (Mask m = part; m;) {
    blocks.push_back(lowest_bit(m));
    m &= m - 1;
  }
  // nonempty proper sub-selection
  Mask half = 0;
  do {
    half = 0;
    for (int b : blocks)
      if (rng.below(2)) half |= Mask(1) << b;
  } while (half == 0 || half == part);

  std::vector<Mask> parts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == idx) {
      parts.push_back(half);
      parts.push_back(part & ~half);
    } else {
      parts.push_back(p.parts()[i]);
    }
  }
  return Partition(p.target(), std::move(parts));
}

} // namespace

NetReport simulate_net(const VecFunction& f, const SetFunction& m, const MSet& b,
                       std::size_t chains, std::size_t depth, std::uint64_t seed) {
  if (depth == 0) throw ValidationError("simulate_net needs depth >= 1");
  NetReport rep;
  rep.outcome = gould_integral(f, m, b);
  const Universe& u = f.universe();

  std::ostringstream text;
  text << "integrable: " << (rep.outcome.integrable ? "true" : "false") << "\n";
  if (rep.outcome.integrable)
    text << "integral: " << vec_str(*rep.outcome.value) << "\n";
  else if (rep.outcome.failure)
    text << "failure: block " << rep.outcome.failure->block.str() << " mass "
         << rat_str(rep.outcome.failure->mass) << " points "
         << u.point_label(rep.outcome.failure->point_t) << ","
         << u.point_label(rep.outcome.failure->point_s) << "\n";

  SplitMix64 root(seed);
  for (std::size_t c = 0; c < chains; ++c) {
    SplitMix64 rng = root.split(c);
    Partition p(b, {b.blocks()});
    for (std::size_t s = 0; s < depth; ++s) {
      if (s + 1 == depth) {
        p = finest_partition(b);
      } else if (s > 0) {
        if (auto r = random_refinement(p, rng)) p = std::move(*r);
      }
      NetStep step;
      step.chain = c + 1;
      step.step = s + 1;
      step.partition = p;
      step.tags = random_tags(u, p, rng);
      step.sigma = gould_sum(f, m, p, step.tags);
      if (rep.outcome.integrable)
        step.distance = sup_dist(step.sigma, *rep.outcome.value);
      text << "chain=" << step.chain << " step=" << step.step
           << " partition=" << p.str() << " tags=(";
      for (std::size_t i = 0; i < step.tags.size(); ++i) {
        if (i) text << ',';
        text << u.point_label(step.tags[i]);
      }
      text << ") sigma=" << vec_str(step.sigma);
      if (step.distance) text << " distance=" << rat_str(*step.distance);
      text << "\n";
      rep.steps.push_back(std::move(step));
    }
  }

  if (!rep.outcome.integrable && rep.outcome.failure) {
    // exhibit the two finest-partition sums that disagree
    const Partition fin = finest_partition(b);
    auto base = canonical_tags(u, fin);
    auto tags_t = base, tags_s = base;
    for (std::size_t i = 0; i < fin.size(); ++i) {
      if (fin.parts()[i] == rep.outcome.failure->block.blocks()) {
        tags_t[i] = rep.outcome.failure->point_t;
        tags_s[i] = rep.outcome.failure->point_s;
      }
    }
    NetStep st{0, 0, fin, tags_t, gould_sum(f, m, fin, tags_t), std::nullopt};
    NetStep ss{0, 0, fin, tags_s, gould_sum(f, m, fin, tags_s), std::nullopt};
    for (const NetStep* s : {&st, &ss}) {
      text << "conflict tags=(";
      for (std::size_t i = 0; i < s->tags.size(); ++i) {
        if (i) text << ',';
        text << u.point_label(s->tags[i]);
      }
      text << ") sigma=" << vec_str(s->sigma) << "\n";
    }
    rep.conflict = std::make_pair(std::move(st), std::move(ss));
  }
  rep.text = text.str();
  return rep;
}

} // namespace gould
