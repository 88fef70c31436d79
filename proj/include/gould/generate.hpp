#pragma once

#include <cstdint>
#include <optional>

#include "gould/document.hpp"

namespace gould {

enum class GenKind { additive, square, max };

const char* gen_kind_name(GenKind k);
std::optional<GenKind> gen_kind_from_name(std::string_view name);

// Seeded corpus generator. The carrier construction picks `carriers`
// distinct points with rational weights >= 1 and sets
//   m(B) = h(weights of the carriers inside B)
// with h = sum, (sum)^2 or max. All three are monotone and null-additive by
// construction, the atoms are exactly the sets containing one carrier, and
// grouping the remaining points with the carriers gives an atom
// decomposition; generate() re-checks all of that and refuses to emit a
// document that fails. The document also carries a block-constant vector
// function f and its integral measure mu.
struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::size_t points = 3;
  std::size_t carriers = 1;
  GenKind kind = GenKind::additive;
  std::size_t dim = 1;
  // raw random measure table instead of the carrier construction; no
  // structural guarantees, meant for fuzzing
  bool unsafe_random = false;
};

Document generate(const GeneratorSpec& spec);

} // namespace gould
