#include "gould/generate.hpp"

#include <algorithm>

#include "gould/rng.hpp"

namespace gould {

const char* gen_kind_name(GenKind k) {
  switch (k) {
    case GenKind::additive: return "additive";
    case GenKind::square: return "square";
    case GenKind::max: return "max";
  }
  return "?";
}

std::optional<GenKind> gen_kind_from_name(std::string_view name) {
  for (GenKind k : {GenKind::additive, GenKind::square, GenKind::max})
    if (name == gen_kind_name(k)) return k;
  return std::nullopt;
}

Document generate(const GeneratorSpec& spec) {
  if (spec.points == 0 || spec.points > 26)
    throw ValidationError("generator supports 1 to 26 points");
  if (spec.carriers == 0)
    throw ValidationError("generator needs at least one carrier (m(T) > 0)");
  if (spec.carriers > spec.points)
    throw ValidationError("more carriers than points");
  if (spec.dim == 0 || spec.dim > 8)
    throw ValidationError("generator supports dimensions 1 to 8");

  SplitMix64 rng(spec.seed);

  Document doc;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < spec.points; ++i)
    labels.push_back(std::string(1, static_cast<char>('a' + i)));
  doc.universe = std::make_shared<const Universe>(labels);
  const Universe& u = *doc.universe;
  const Mask full = u.full_set().blocks();

  // distinct carrier points via a seeded shuffle
  std::vector<std::size_t> order(spec.points);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i-- > 1;)
    std::swap(order[i], order[rng.below(i + 1)]);
  std::vector<std::size_t> carriers(order.begin(),
                                    order.begin() + static_cast<long>(spec.carriers));
  std::sort(carriers.begin(), carriers.end());

  std::vector<Rational> weights;  // >= 1 so that atom masses are >= 1
  for (std::size_t i = 0; i < spec.carriers; ++i)
    weights.push_back(Rational(1) + Rational(rng.below(5), 2));

  std::map<Mask, Rational> table;
  if (spec.unsafe_random) {
    for (Mask b = 1; b <= full; ++b) table[b] = Rational(rng.below(7), 2);
  } else {
    for (Mask b = 1; b <= full; ++b) {
      Rational sum = 0, mx = 0;
      for (std::size_t i = 0; i < carriers.size(); ++i) {
        if (b & (Mask(1) << carriers[i])) {  // singleton blocks: block = point
          sum += weights[i];
          mx = std::max(mx, weights[i]);
        }
      }
      switch (spec.kind) {
        case GenKind::additive: table[b] = sum; break;
        case GenKind::square: table[b] = sum * sum; break;
        case GenKind::max: table[b] = mx; break;
      }
    }
  }
  SetFunction m(u, table);

  std::vector<RatVec> fvals;
  for (std::size_t p = 0; p < spec.points; ++p) {
    RatVec v;
    for (std::size_t d = 0; d < spec.dim; ++d)
      v.push_back(Rational(rng.below(9), 2));
    fvals.push_back(std::move(v));
  }
  VecFunction f(u, spec.dim, std::move(fvals));

  if (!spec.unsafe_random) {
    // self-test: the construction's guarantees, re-checked from scratch
    if (!check_property(m, Property::monotone).holds ||
        !check_property(m, Property::null_additive).holds || !decompose(m))
      throw StructureError("generator self-test failed");
  }

  VecMeasure mu = integral_measure(f, m);

  doc.measures.emplace("m", std::move(m));
  doc.functions.emplace("f", std::move(f));
  doc.vmeasures.emplace("mu", std::move(mu));
  return doc;
}

} // namespace gould
