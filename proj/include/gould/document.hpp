#pragma once

#include <map>
#include <memory>
#include <string>

#include "gould/rn.hpp"

namespace gould {

// A parse or validation failure with its source location.
struct ParseError : Error {
  std::size_t line;
  std::size_t column;
  ParseError(std::size_t line_, std::size_t column_, const std::string& message)
      : Error("line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ": " + message),
        line(line_),
        column(column_) {}
};

// One parsed input file: a universe plus named set functions, vector
// functions and vector measures that all live on it.
struct Document {
  std::shared_ptr<const Universe> universe;
  std::map<std::string, SetFunction> measures;
  std::map<std::string, VecFunction> functions;
  std::map<std::string, VecMeasure> vmeasures;

  const SetFunction& measure(const std::string& name) const;
  const VecFunction& function(const std::string& name) const;
  const VecMeasure& vmeasure(const std::string& name) const;
};

// Grammar:
//   space <label>+
//   blocks <set>+                                        (optional)
//   measure <name> { (<set> = <rational>)* default = <rational> }
//   function <name> dim <d> { (<label> = <vector>)* }
//   vmeasure <name> dim <d> { (<set> = <vector>)* default = <zero vector> }
// with <set> = {} | {l1,l2,...}, <vector> = (r1,...,rd), rationals written
// as p or p/q, and # starting a comment that runs to end of line.
Document parse_document(const std::string& text);

// Canonical serialization; parse_document(print_document(d)) reproduces d.
std::string print_document(const Document& d);

bool documents_equal(const Document& a, const Document& b);

// "{a,b}" -> point mask; shared by the parser and the CLI flag handling.
Mask parse_set_token(const Universe& u, const std::string& token);
// "(1,2/3)" -> rational vector.
RatVec parse_vector_token(const std::string& token);
// "2/3" -> rational (validated).
Rational parse_rational_token(const std::string& token);

} // namespace gould
