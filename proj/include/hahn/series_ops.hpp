#pragma once

#include <cstddef>

#include "hahn/fq_poly.hpp"
#include "hahn/series.hpp"

namespace hahn {

// Arithmetic on automatic series. All binary operations require the two
// operands to share the alphabet (same p) and the same coefficient field
// object; embed coefficients first when they do not.

// Pointwise sum of the coefficient functions.
AutomaticSeries add(const AutomaticSeries& a, const AutomaticSeries& b);

// c * x.
AutomaticSeries scalar_mul(const FqElement& c, const AutomaticSeries& x);

// Same series (equal coefficient at every exponent).
bool equals(const AutomaticSeries& a, const AutomaticSeries& b);

// x |-> x^p: exponents are multiplied by p and coefficients raised to the
// p-th power, which is exactly the Frobenius endomorphism of the series
// field. Implemented as a one-digit-delay rewrite of the expansion reader
// (the dot moves one position to the right).
AutomaticSeries radix_shift(const AutomaticSeries& x);

// Hahn product a * b. Both supports must be well-ordered (checked; throws
// std::invalid_argument otherwise). For every pair (v, w) of nonzero
// coefficient values the pairs of expansions are added digit by digit
// through a carry automaton whose accepting paths are counted mod p;
// summing (v*w)-weighted counts over all value pairs gives the product
// coefficients. State blowups past max_states throw resource_limit_error.
AutomaticSeries multiply(const AutomaticSeries& a, const AutomaticSeries& b,
                         size_t max_states = kDefaultStateCap);

// f(x) for a polynomial f with coefficients in F_q[t] (f.is_integral()
// must hold; its field must be x's field). Powers x^j split off the
// largest p-power of j as radix shifts, the rest is square-and-multiply.
AutomaticSeries evaluate_polynomial(const XPoly& f, const AutomaticSeries& x,
                                    size_t max_states = kDefaultStateCap);

}  // namespace hahn
