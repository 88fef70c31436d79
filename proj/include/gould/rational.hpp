#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace gould {

// Exact arbitrary-precision rational. All library arithmetic stays in Q so
// that zero tests and comparisons are decidable.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Rational vector (coordinates of a point in Q^d). The norm used everywhere
// is the sup-norm, which keeps distances rational.
using RatVec = std::vector<Rational>;

std::string rat_str(const Rational& r);
std::string vec_str(const RatVec& v);

RatVec vec_zero(std::size_t dim);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const RatVec& a, const Rational& s);
bool vec_is_zero(const RatVec& a);

Rational sup_norm(const RatVec& a);
Rational sup_dist(const RatVec& a, const RatVec& b);

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace gould
