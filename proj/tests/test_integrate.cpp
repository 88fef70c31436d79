#include <doctest.h>

#include <set>

#include "gould/integrate.hpp"
#include "support/generators.hpp"

using namespace gould;
using namespace gould::testsupport;

namespace {

SetFunction three_point(const Universe& u) {
  return SetFunction(u, {{7, 2}, {3, 1}, {4, 1}});
}

VecFunction scalar_fn(const Universe& u, std::vector<Rational> vals) {
  std::vector<RatVec> per_point;
  for (auto& v : vals) per_point.push_back({v});
  return VecFunction(u, 1, std::move(per_point));
}

// brute-force family search: some partition of b, with one part (or nothing)
// as the exceptional set, satisfies the total-measurability condition
bool tm_by_family_search(const VecFunction& f, const SetFunction& m, const MSet& b,
                         const Rational& eps) {
  if (b.empty()) return true;
  PartitionEnumerator en(b, 16);
  while (auto p = en.next()) {
    for (std::size_t a0 = 0; a0 <= p->size(); ++a0) {  // p->size() = no A0
      bool ok = true;
      if (a0 < p->size() && variation(m, p->part(a0)) >= eps) ok = false;
      for (std::size_t i = 0; ok && i < p->size(); ++i) {
        if (i == a0) continue;
        if (osc(f, p->part(i)) >= eps) ok = false;
      }
      if (ok) return true;
    }
  }
  return false;
}

} // namespace

TEST_CASE("gould sums are tag-sensitive") {
  Universe u = letters(3);
  SetFunction m = three_point(u);
  VecFunction f = scalar_fn(u, {1, 2, 3});
  Partition p(u.full_set(), {3, 4});

  CHECK(gould_sum(f, m, p, {0, 2}) == RatVec{4});  // tags a, c
  CHECK(gould_sum(f, m, p, {1, 2}) == RatVec{5});  // tags b, c
  VecFunction zero = scalar_fn(u, {0, 0, 0});
  CHECK(gould_sum(zero, m, p, {0, 2}) == RatVec{0});
  CHECK_THROWS_AS(gould_sum(f, m, p, {2, 2}), ValidationError);  // tag outside part
}

TEST_CASE("integral on full power set is the weighted point sum") {
  Universe u = letters(3);
  SetFunction m = three_point(u);
  VecFunction f = scalar_fn(u, {1, 2, 3});
  GouldResult g = gould_integral(f, m, u.full_set());
  REQUIRE(g.integrable);
  CHECK(*g.value == RatVec{3});  // 1*0 + 2*0 + 3*1

  SplitMix64 rng(31);
  for (int i = 0; i < 50; ++i) {
    Universe v = letters(1 + rng.below(5));
    SetFunction w = random_table_measure(v, rng);
    VecFunction h = random_function(v, 1 + rng.below(2), rng);
    GouldResult r = gould_integral(h, w, v.full_set());
    REQUIRE(r.integrable);  // singleton blocks
    RatVec expect = vec_zero(h.dim());
    for (std::size_t p = 0; p < v.point_count(); ++p)
      expect = vec_add(expect, vec_scale(h.at(p), w.at_mask(Mask(1) << p)));
    CHECK(*r.value == expect);
  }
}

TEST_CASE("non-measurable f on a positive block is not integrable") {
  Universe u({"a", "b"}, {{"a", "b"}});
  SetFunction m(u, {{1, 1}});
  VecFunction f = scalar_fn(u, {0, 1});
  GouldResult g = gould_integral(f, m, u.full_set());
  CHECK(!g.integrable);
  REQUIRE(g.failure.has_value());
  CHECK(g.failure->block.str() == "{a,b}");
  CHECK(g.failure->mass == 1);
  CHECK(f.at(g.failure->point_t) != f.at(g.failure->point_s));
  CHECK_THROWS_AS(gould_integral(f, m, u.empty_set()), ValidationError);
}

TEST_CASE("integrability decision matches the exhaustive-tag oracle") {
  SplitMix64 rng(32);
  for (int i = 0; i < 60; ++i) {
    Universe u = random_blocked_universe(2 + rng.below(4), rng);
    SetFunction m = random_table_measure(u, rng);
    VecFunction f = random_function(u, 1, rng);
    GouldResult g = gould_integral(f, m, u.full_set());
    auto sums = all_finest_sums(f, m, u.full_set());
    bool all_equal = true;
    for (const auto& s : sums)
      if (s != sums.front()) all_equal = false;
    CHECK(g.integrable == all_equal);
    if (g.integrable) CHECK(*g.value == sums.front());
  }
}

TEST_CASE("integral is additive over disjoint sets") {
  SplitMix64 rng(33);
  for (int i = 0; i < 20; ++i) {
    Universe u = random_blocked_universe(2 + rng.below(3), rng);
    SetFunction m = random_table_measure(u, rng);
    VecFunction f = random_block_constant(u, 1, rng);  // integrable everywhere
    const Mask full = u.full_set().blocks();
    for (Mask b = 1; b <= full; ++b)
      for (Mask c = 1; c <= full; ++c) {
        if (b & c) continue;
        AdditivityReport rep =
            integral_additivity_check(f, m, MSet(&u, b), MSet(&u, c));
        CHECK(rep.union_integrable);
        CHECK(rep.additive);
      }
  }
  Universe u = letters(2);
  SetFunction m(u, {{3, 1}});
  VecFunction f = scalar_fn(u, {1, 1});
  CHECK_THROWS_AS(
      integral_additivity_check(f, m, u.mset_from_labels({"a"}), u.empty_set()),
      ValidationError);
}

TEST_CASE("oscillation is the sup-norm diameter") {
  Universe u = letters(3);
  VecFunction f = scalar_fn(u, {1, 2, 3});
  CHECK(osc(f, u.full_set()) == 2);
  CHECK(osc(f, u.mset_from_labels({"b"})) == 0);
  VecFunction c = scalar_fn(u, {5, 5, 5});
  CHECK(osc(c, u.full_set()) == 0);
  CHECK_THROWS_AS(osc(f, u.empty_set()), ValidationError);

  VecFunction v2(u, 2, {{Rational(0), Rational(10)}, {Rational(1), Rational(7)}, {Rational(0), Rational(9)}});
  CHECK(osc(v2, u.full_set()) == 3);  // second coordinate dominates
}

TEST_CASE("total measurability: spec instances") {
  // singleton blocks: everything is totally measurable
  Universe u = letters(3);
  SetFunction m = three_point(u);
  VecFunction f = scalar_fn(u, {1, 2, 3});
  TMReport r = is_totally_measurable(f, m, u.full_set());
  CHECK(r.measurable_totally);
  CHECK(r.bad_set_variation == 0);

  // a null two-point block is absorbed into the exceptional set
  Universe v({"a", "b", "c"}, {{"a", "b"}, {"c"}});
  SetFunction w(v, {{2, 1}, {3, 1}});  // m({a,b}) = 0
  VecFunction g = scalar_fn(v, {0, 1, 2});
  TMReport rv = is_totally_measurable(g, w, v.full_set());
  CHECK(rv.measurable_totally);
  REQUIRE(rv.witness_family.has_value());
  CHECK((*rv.witness_family)[0].str() == "{a,b}");
  CHECK((*rv.witness_family)[1].str() == "{c}");

  // positive-mass block with oscillation 1 fails at epsilon 1/2
  Universe b2({"a", "b"}, {{"a", "b"}});
  SetFunction mb(b2, {{1, 1}});
  VecFunction fb = scalar_fn(b2, {0, 1});
  TMReport rb = is_totally_measurable(fb, mb, b2.full_set(), Rational(1, 2));
  CHECK(!rb.measurable_totally);
  CHECK(rb.bad_set_variation == 1);
}

TEST_CASE("total measurability matches the family-search oracle") {
  SplitMix64 rng(34);
  for (int i = 0; i < 40; ++i) {
    Universe u = random_blocked_universe(2 + rng.below(3), rng);
    SetFunction m = random_table_measure(u, rng);
    VecFunction f = random_function(u, 1, rng);
    const MSet b = u.full_set();

    // distinct positive block oscillations
    std::set<Rational> oscs;
    for (std::size_t blk = 0; blk < u.block_count(); ++blk) {
      Rational o = osc(f, PointSet(&u, u.block_points(blk)));
      if (o > 0) oscs.insert(o);
    }
    std::set<Rational> sweep{Rational(1, 4), Rational(1), Rational(7, 2)};
    for (const Rational& d : oscs) {
      sweep.insert(d);
      sweep.insert(d / 2);
      sweep.insert(d + Rational(1, 4));
    }
    for (const Rational& eps : sweep) {
      TMReport r = is_totally_measurable(f, m, b, eps);
      CHECK(r.measurable_totally == tm_by_family_search(f, m, b, eps));
      if (r.measurable_totally) {
        // re-validate the constructed family against the raw condition
        REQUIRE(r.witness_family.has_value());
        const auto& fam = *r.witness_family;
        CHECK(variation(m, fam[0]) < eps);
        Mask seen = fam[0].blocks();
        for (std::size_t i2 = 1; i2 < fam.size(); ++i2) {
          CHECK(osc(f, fam[i2]) < eps);
          CHECK((seen & fam[i2].blocks()) == 0);
          seen |= fam[i2].blocks();
        }
        CHECK(seen == b.blocks());
      }
    }

    // the "for every epsilon" mode agrees with the sweep plus the
    // small-epsilon witness min(first osc, bad variation)
    TMReport all = is_totally_measurable(f, m, b);
    bool sweep_ok = true;
    for (const Rational& eps : sweep)
      if (!tm_by_family_search(f, m, b, eps)) sweep_ok = false;
    if (!oscs.empty()) {
      const Rational small = std::min(*oscs.begin(), std::max(all.bad_set_variation, Rational(1, 8)));
      if (!tm_by_family_search(f, m, b, small)) sweep_ok = false;
    }
    CHECK(all.measurable_totally == sweep_ok);
  }
}

TEST_CASE("total measurability on the whole space passes to every subset") {
  SplitMix64 rng(41);
  for (int i = 0; i < 30; ++i) {
    Universe u = random_blocked_universe(2 + rng.below(4), rng);
    SetFunction m = random_table_measure(u, rng);
    VecFunction f = random_function(u, 1, rng);
    if (!is_totally_measurable(f, m, u.full_set()).measurable_totally) continue;
    const Mask full = u.full_set().blocks();
    for (Mask b = 1; b <= full; ++b)
      CHECK(is_totally_measurable(f, m, MSet(&u, b)).measurable_totally);
  }
}

TEST_CASE("choquet integral layer sums") {
  // carrier measure on {a,b}: m({a}) = m(T) = 1, m({b}) = 0
  Universe u = letters(2);
  SetFunction m(u, {{1, 1}, {3, 1}});
  CHECK(choquet_integral(scalar_fn(u, {2, 5}), m, u.full_set()) == 2);

  // constant function: one layer
  CHECK(choquet_integral(scalar_fn(u, {3, 3}), m, u.full_set()) == 3);

  // counting weights 1,1: layer cake equals the plain weighted sum
  SetFunction cnt(u, {{1, 1}, {2, 1}, {3, 2}});
  CHECK(choquet_integral(scalar_fn(u, {1, 3}), cnt, u.full_set()) == 4);

  CHECK_THROWS_AS(choquet_integral(scalar_fn(u, {-1, 0}), m, u.full_set()),
                  ValidationError);
  Universe b2({"a", "b"}, {{"a", "b"}});
  SetFunction mb(b2, {{1, 1}});
  CHECK_THROWS_AS(choquet_integral(scalar_fn(b2, {0, 1}), mb, b2.full_set()),
                  MeasurabilityError);
}

TEST_CASE("choquet equals the direct step-function evaluation") {
  SplitMix64 rng(35);
  for (int i = 0; i < 40; ++i) {
    Universe u = random_blocked_universe(1 + rng.below(4), rng);
    SetFunction m = random_table_measure(u, rng);
    VecFunction f = random_block_constant(u, 1, rng);
    const MSet a = u.full_set();

    // independent route: integrate t -> m({f > t} n a) stepwise with
    // strict level sets evaluated between consecutive distinct values
    std::set<Rational> vals;
    for (std::size_t p = 0; p < u.point_count(); ++p) vals.insert(f.at(p)[0]);
    std::vector<Rational> vs(vals.begin(), vals.end());
    Rational direct = 0, prev = 0;
    for (const Rational& v : vs) {
      if (v == 0) continue;
      Mask level = 0;
      for (std::size_t blk = 0; blk < u.block_count(); ++blk) {
        const std::size_t pt = std::size_t(lowest_bit(u.block_points(blk)));
        if (f.at(pt)[0] > prev) level |= Mask(1) << blk;  // {f > t} for t in [prev, v)
      }
      direct += (v - prev) * m.at_mask(level);
      prev = v;
    }
    CHECK(choquet_integral(f, m, a) == direct);
  }
}

TEST_CASE("choquet equals gould for finitely additive measures") {
  SplitMix64 rng(36);
  for (int i = 0; i < 40; ++i) {
    Universe u = random_blocked_universe(1 + rng.below(4), rng);
    SetFunction m = random_additive(u, rng);
    VecFunction f = random_block_constant(u, 1, rng);
    GouldResult g = gould_integral(f, m, u.full_set());
    REQUIRE(g.integrable);
    CHECK((*g.value)[0] == choquet_integral(f, m, u.full_set()));
  }
}

TEST_CASE("threshold t0 and the atom equalities") {
  Universe u = letters(2);
  SetFunction m(u, {{1, 1}, {3, 1}});
  CHECK(t_zero(scalar_fn(u, {2, 5}), m, u.full_set()) == 2);
  CHECK(t_zero(scalar_fn(u, {3, 3}), m, u.full_set()) == 3);
  CHECK_THROWS_AS(t_zero(scalar_fn(u, {1, 1}), m, u.empty_set()), ValidationError);

  // on every atom of a generated measure: gould = choquet = t0 * m(a)
  SplitMix64 rng(37);
  for (int i = 0; i < 40; ++i) {
    Universe v = letters(1 + rng.below(5));
    SetFunction w = random_carrier(v, rng);
    VecFunction f = random_function(v, 1, rng);  // nonnegative values
    const Mask full = v.full_set().blocks();
    for (Mask am = 1; am <= full; ++am) {
      MSet a(&v, am);
      if (!is_atom(w, a)) continue;
      GouldResult g = gould_integral(f, w, a);
      REQUIRE(g.integrable);
      const Rational c = choquet_integral(f, w, a);
      const Rational t0 = t_zero(f, w, a);
      CHECK((*g.value)[0] == c);
      CHECK(c == t0 * w.at_mask(am));
    }
  }
}

TEST_CASE("atom integral report: carrier example") {
  Universe u = letters(2);
  SetFunction m(u, {{1, 1}, {3, 1}});
  VecFunction f = scalar_fn(u, {2, 5});
  AtomIntegralReport rep = atom_integral_check(f, m, u.full_set());
  CHECK(u.point_label(rep.point) == "a");
  CHECK(rep.integral == RatVec{2});
  CHECK(rep.point_formula);
  CHECK(rep.tm_equivalence);
  REQUIRE(rep.intersection.size() == 1);
  CHECK(rep.intersection[0] == RatVec{2});
  CHECK(rep.image_intersection);

  VecFunction c = scalar_fn(u, {7, 7});
  AtomIntegralReport rc = atom_integral_check(c, m, u.full_set());
  CHECK(rc.point_formula);
  CHECK(rc.image_intersection);
}

TEST_CASE("whole-space integral decomposes over atoms") {
  SplitMix64 rng(38);
  for (int i = 0; i < 40; ++i) {
    Universe u = letters(2 + rng.below(5));
    SetFunction m = random_carrier(u, rng);
    VecFunction f = random_function(u, 1 + rng.below(2), rng);
    auto d = decompose(m);
    REQUIRE(d.has_value());
    RatVec sum = vec_zero(f.dim());
    for (const MSet& a : d->atoms) {
      AtomIntegralReport rep = atom_integral_check(f, m, a);
      CHECK(rep.point_formula);
      CHECK(rep.image_intersection);
      CHECK(rep.tm_equivalence);
      sum = vec_add(sum, vec_scale(f.at(rep.point), m(a)));
    }
    GouldResult g = gould_integral(f, m, u.full_set());
    REQUIRE(g.integrable);
    CHECK(*g.value == sum);
  }
}

TEST_CASE("measurable functions integrate under purely atomic or additive measures") {
  SplitMix64 rng(39);
  for (int i = 0; i < 30; ++i) {
    Universe u = letters(1 + rng.below(5));
    SetFunction m = random_carrier(u, rng);
    VecFunction f = random_block_constant(u, 1, rng);
    BoundedMeasurableReport rep = bounded_measurable_integrability_check(f, m);
    CHECK(rep.purely_atomic_clause);
    CHECK(rep.integrable);
  }
  for (int i = 0; i < 30; ++i) {
    Universe u = random_blocked_universe(2 + rng.below(3), rng);
    SetFunction m = random_additive(u, rng);
    VecFunction f = random_block_constant(u, 1, rng);
    BoundedMeasurableReport rep = bounded_measurable_integrability_check(f, m);
    CHECK(rep.finitely_additive_clause);
    CHECK(rep.totally_measurable);
    CHECK(rep.integrable);
  }
  // non-measurable f on a positive block: hypothesis failure, and indeed
  // not integrable
  Universe b2({"a", "b"}, {{"a", "b"}});
  SetFunction mb(b2, {{1, 1}});
  std::vector<RatVec> vals{{Rational(0)}, {Rational(1)}};
  VecFunction fb(b2, 1, vals);
  CHECK_THROWS_AS(bounded_measurable_integrability_check(fb, mb), HypothesisError);
  CHECK(!gould_integral(fb, mb, b2.full_set()).integrable);
}

TEST_CASE("net simulation: integrable chains end at the integral") {
  Universe u = letters(3);
  SetFunction m = three_point(u);
  VecFunction f = scalar_fn(u, {1, 2, 3});
  NetReport rep = simulate_net(f, m, u.full_set(), 5, 4, 42);
  REQUIRE(rep.outcome.integrable);
  for (const NetStep& s : rep.steps) {
    REQUIRE(s.distance.has_value());
    if (s.step == 4) CHECK(*s.distance == 0);  // final step = finest partition
    // each step's sum re-evaluates
    CHECK(gould_sum(f, m, s.partition, s.tags) == s.sigma);
  }
  // chains are refinement chains
  for (std::size_t i = 1; i < rep.steps.size(); ++i)
    if (rep.steps[i].chain == rep.steps[i - 1].chain)
      CHECK(is_finer(rep.steps[i].partition, rep.steps[i - 1].partition));
}

TEST_CASE("net simulation is reproducible byte for byte") {
  Universe u = letters(4);
  SplitMix64 rng(40);
  SetFunction m = random_table_measure(u, rng);
  VecFunction f = random_function(u, 1, rng);
  NetReport a = simulate_net(f, m, u.full_set(), 3, 5, 42);
  NetReport b = simulate_net(f, m, u.full_set(), 3, 5, 42);
  CHECK(a.text == b.text);
  NetReport c = simulate_net(f, m, u.full_set(), 3, 5, 43);
  CHECK(a.text != c.text);  // different seed moves some tag or split
}

TEST_CASE("net simulation exhibits conflicting sums when not integrable") {
  Universe u({"a", "b"}, {{"a", "b"}});
  SetFunction m(u, {{1, 1}});
  VecFunction f = scalar_fn(u, {0, 1});
  NetReport rep = simulate_net(f, m, u.full_set(), 2, 3, 7);
  CHECK(!rep.outcome.integrable);
  REQUIRE(rep.conflict.has_value());
  CHECK(rep.conflict->first.sigma == RatVec{0});
  CHECK(rep.conflict->second.sigma == RatVec{1});
}
