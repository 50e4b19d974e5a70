#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hahn/dfao.hpp"
#include "hahn/rational.hpp"

namespace hahn {

// --- Base-p expansions of nonnegative rationals ---------------------------
//
// A nonnegative rational with p-power denominator is written as
//
//     d_1 ... d_{k-1} . d_{k+1} ... d_n        (the dot is symbol p)
//
// most significant digit first, value sum d_i p^{k-1-i} (before the dot)
// plus sum d_i p^{k-i} (after it). The expansion is *valid* when there is
// exactly one dot, the first symbol is not the digit 0 (no leading zeros;
// an empty integer part is allowed) and the last symbol is not the digit 0
// (no trailing zeros; an empty fractional part is allowed). "." alone is
// the valid expansion of 0.

bool is_valid_expansion(const std::vector<int>& w, int p);

// Throws std::invalid_argument unless g >= 0 with p-power denominator.
std::vector<int> encode_exponent(const Rational& g, int p);

// Inverse of encode_exponent; throws std::invalid_argument on an invalid
// expansion.
Rational decode_exponent(const std::vector<int>& w, int p);

// Mechanical value of any word with exactly one dot, ignoring the
// leading/trailing-zero rules. Used to compare witness words that may not
// be fully normalized. Throws unless the word has exactly one dot.
Rational word_value(const std::vector<int>& w, int p);

// Exact value comparison of two single-dot words by digit alignment; unlike
// word_value it never overflows, however long the words are.
bool word_value_less(const std::vector<int>& a, const std::vector<int>& b,
                     int p);

// Acceptor of the valid expansions: outputs 1 on valid words, 0 elsewhere.
Dfao validity_dfao(int p, const FqField& field);

// --- Well-formedness -------------------------------------------------------
//
// A DFAO represents a generalized power series through tau(delta*(q0, w))
// being the coefficient of t^{value(w)} for every valid expansion w. For
// that reading to be unambiguous the automaton must output 0 on every
// invalid word; that is what "well-formed" means here.

struct WellFormedReport {
  bool ok = true;
  std::string reason;
  std::vector<int> witness;  // a shortest invalid word with nonzero output
};

WellFormedReport check_well_formed(const Dfao& d);

// --- Well-orderedness ------------------------------------------------------
//
// The support must be well-ordered for the series to be a Hahn series. For
// a well-formed DFAO this is a structural property of the digit graph on
// the states that are both reachable past the dot and able to reach an
// accepting state by digits alone: every such state may carry at most one
// out-edge that lies on a cycle, and that cycle edge's digit must be
// strictly greater than the digit of every other out-edge into the same
// region. (Pumping such a cycle then always increases the value; any
// violation yields a strictly descending sequence of support exponents.)

struct SaguaroReport {
  bool ok = true;
  std::string reason;
  int state = -1;        // offending vertex (numbering of the checked DFAO)
  int cycle_symbol = -1; // digit of the pumped cycle edge
  int other_symbol = -1; // digit of the competing cycle / escape edge
  // Pumpable descent witness: value(prefix cycle^{k+1} suffix) <
  // value(prefix cycle^k suffix) for every k >= 0, and all those words are
  // accepted. When the automaton is also well-formed they are valid
  // expansions, so the support contains an infinite descending chain.
  std::vector<int> prefix, cycle, suffix;
};

SaguaroReport check_well_ordered(const Dfao& d);

// --- Automatic series ------------------------------------------------------

// A well-formed DFAO wrapped as a generalized power series over its output
// field. Construction checks well-formedness (throws std::invalid_argument
// including a witness word when it fails); well-orderedness is a separate
// concern checked by check_well_ordered / required by support_prefix.
class AutomaticSeries {
 public:
  explicit AutomaticSeries(Dfao d);

  static AutomaticSeries zero(int p, const FqField& field);
  // Series with finitely many terms, given as (exponent, coefficient)
  // pairs. Exponents need p-power denominators; zero coefficients are
  // dropped; duplicate exponents are rejected.
  static AutomaticSeries from_finite_series(
      int p, const FqField& field,
      const std::vector<std::pair<Rational, FqElement>>& terms);

  const Dfao& dfao() const { return d_; }
  int p() const { return d_.p(); }
  const FqField& field() const { return d_.field(); }

  bool is_zero() const;
  // Coefficient of t^g. Exponents outside the support domain (negative, or
  // denominator not a power of p) simply have coefficient zero.
  FqElement coefficient_at(const Rational& g) const;

 private:
  Dfao d_;
};

// Minimal canonical representative computing the same series; equal series
// canonicalize to byte-identical dfao().serialize().
AutomaticSeries canonicalize(const AutomaticSeries& s);

// First (up to) k support terms in strictly increasing exponent order.
// Requires a well-ordered automaton (throws std::invalid_argument
// otherwise). `work_cap` bounds the search effort for pathological
// integer-part languages; exceeding it throws resource_limit_error. A
// support exponent too large for 64-bit rationals surfaces as the usual
// overflow_error.
std::vector<std::pair<Rational, FqElement>> support_prefix(
    const AutomaticSeries& s, int k, size_t work_cap = 1000000);

}  // namespace hahn
