#include "gould/rational.hpp"

#include <sstream>

namespace gould {

std::string rat_str(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string vec_str(const RatVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << rat_str(v[i]);
  }
  os << ')';
  return os.str();
}

RatVec vec_zero(std::size_t dim) { return RatVec(dim, Rational(0)); }

RatVec vec_add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec vec_scale(const RatVec& a, const Rational& s) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

bool vec_is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

Rational sup_norm(const RatVec& a) {
  Rational n = 0;
  for (const auto& x : a) n = std::max(n, rat_abs(x));
  return n;
}

Rational sup_dist(const RatVec& a, const RatVec& b) {
  Rational n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n = std::max(n, rat_abs(a[i] - b[i]));
  return n;
}

} // namespace gould
