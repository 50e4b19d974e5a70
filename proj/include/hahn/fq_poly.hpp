#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hahn/fq.hpp"

namespace hahn {

// Dense univariate polynomial over one FqField, coefficients lowest-first
// and trimmed (the zero polynomial has an empty coefficient vector).
class FqPolynomial {
 public:
  explicit FqPolynomial(const FqField& f) : field_(&f) {}
  FqPolynomial(const FqField& f, std::vector<FqElement> coeffs);

  static FqPolynomial x(const FqField& f);
  static FqPolynomial constant(const FqElement& c);
  // Coefficients given as integers (reduced mod p).
  static FqPolynomial from_ints(const FqField& f, std::vector<int64_t> coeffs);

  const FqField& field() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  FqElement coeff(int i) const;
  const std::vector<FqElement>& coeffs() const { return c_; }
  FqElement lead() const;

  FqPolynomial operator-() const;
  FqPolynomial operator+(const FqPolynomial& o) const;
  FqPolynomial operator-(const FqPolynomial& o) const;
  FqPolynomial operator*(const FqPolynomial& o) const;
  FqPolynomial operator*(const FqElement& s) const;
  bool operator==(const FqPolynomial& o) const;
  bool operator!=(const FqPolynomial& o) const { return !(*this == o); }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<FqPolynomial, FqPolynomial> divmod(const FqPolynomial& d) const;
  FqPolynomial operator/(const FqPolynomial& d) const;
  FqPolynomial operator%(const FqPolynomial& d) const;

  FqPolynomial derivative() const;
  FqPolynomial monic() const;
  FqPolynomial pow(int64_t n) const;
  FqElement eval(const FqElement& a) const;

  // Multiplicity of the root t = 0, i.e. the index of the lowest nonzero
  // coefficient. Throws on the zero polynomial.
  int order_at_zero() const;

  // All roots in the coefficient field itself, sorted by element code,
  // without multiplicity. Deterministic.
  std::vector<FqElement> roots_in_field() const;

  std::string str(const std::string& var = "t") const;

 private:
  const FqField* field_;
  std::vector<FqElement> c_;
  void trim();
};

FqPolynomial gcd(const FqPolynomial& a, const FqPolynomial& b);

// Element of the fraction field F_q(t): num/den with den monic and
// gcd(num, den) = 1. The zero element is 0/1.
class RationalFunction {
 public:
  explicit RationalFunction(const FqField& f)
      : num_(f), den_(FqPolynomial::constant(f.one())) {}
  RationalFunction(FqPolynomial num, FqPolynomial den);
  static RationalFunction of(FqPolynomial p);

  const FqField& field() const { return num_.field(); }
  const FqPolynomial& num() const { return num_; }
  const FqPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  bool operator==(const RationalFunction& o) const;
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  // t-adic valuation: order of vanishing at t = 0 (negative for poles).
  // Throws on the zero element.
  int t_valuation() const;

  std::string str() const;

 private:
  FqPolynomial num_, den_;
};

// Polynomial in X over F_q(t), dense and lowest-first.
class XPoly {
 public:
  explicit XPoly(const FqField& f) : field_(&f) {}
  XPoly(const FqField& f, std::vector<RationalFunction> coeffs);

  const FqField& field() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  RationalFunction coeff(int i) const;
  const std::vector<RationalFunction>& coeffs() const { return c_; }
  bool is_monic() const;
  // True when all coefficients are polynomials in t (no denominators).
  bool is_integral() const;

  XPoly operator-() const;
  XPoly operator+(const XPoly& o) const;
  XPoly operator-(const XPoly& o) const;
  XPoly operator*(const XPoly& o) const;
  XPoly operator*(const RationalFunction& s) const;
  bool operator==(const XPoly& o) const;
  bool operator!=(const XPoly& o) const { return !(*this == o); }

  std::pair<XPoly, XPoly> divmod(const XPoly& d) const;
  XPoly derivative() const;
  XPoly monic() const;

  std::string str() const;

 private:
  const FqField* field_;
  std::vector<RationalFunction> c_;
  void trim();
};

XPoly gcd(const XPoly& a, const XPoly& b);

// A squarefree separable polynomial with the same NUMBER of roots as f in
// any perfect extension field. Layers f = g(X^p) are peeled keeping the
// coefficients, so after k peels the returned roots are the p^k-th powers of
// f's roots -- a bijection in a perfect field, and one that preserves both
// v >= 0 and membership in a value group closed under multiplication and
// division by p. If any peel happened, *inseparable is set. Multiplicities
// are dropped via gcd with the derivative.
XPoly squarefree_root_part(const XPoly& f, bool* inseparable);

// Resultant of a and b over F_q(t) (zero if either is zero or they share a
// factor). Used for the Newton recursion depth bound via its t-valuation.
RationalFunction resultant(const XPoly& a, const XPoly& b);

// One nonzero kernel vector of the matrix whose columns are `cols` (each
// column a vector of equal length over F_q(t)), or nullopt if the columns
// are linearly independent. Deterministic: columns are eliminated in
// increasing index order, the first free column's variable is set to 1, and
// the result is cleared of denominators (entries are polynomials in t with
// content removed).
std::optional<std::vector<RationalFunction>> kernel_vector(
    const std::vector<std::vector<RationalFunction>>& cols);

// Embed an element of F_{p^a} into F_{p^b} for a | b. The generator of the
// source field maps to the lex-least (by element code) root of the source
// modulus in the target field; the choice is cached per field pair.
FqElement embed(const FqElement& a, const FqField& target);

// Inverse of embed on its image: rewrite an element known to lie in the
// subfield F_{p^d} as an element of the interned FqField::get(p, d).
FqElement project_to_subfield(const FqElement& a, int d);

}  // namespace hahn
