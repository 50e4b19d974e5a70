#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hahn {

// Thrown on broken internal contracts (the "this cannot happen" class).
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FqElement;

// A finite field F_{p^e} presented as F_p[z]/(modulus).
//
// Fields are interned: FqField::get(p, e) always returns the same object, so
// comparing field identity is pointer comparison. The modulus for e > 1 is
// the lexicographically least monic irreducible of degree e (smallest integer
// code sum c_i p^i over the non-leading coefficients), found by sieving; it is
// recorded in every serialization that mentions the field.
class FqField {
 public:
  int p;                     // characteristic (prime)
  int e;                     // degree over F_p
  int64_t q;                 // p^e
  std::vector<int> modulus;  // length e+1, coefficient of z^i at index i, monic

  static const FqField& get(int p, int e = 1);

  FqElement zero() const;
  FqElement one() const;
  FqElement from_int(int64_t n) const;  // n mod p, embedded as a constant
  FqElement from_code(int64_t code) const;
  FqElement element(std::vector<int> coords) const;

  // All p^e elements in code order (0, 1, ..., q-1). Only for small fields.
  std::vector<FqElement> all_elements() const;

  std::string descriptor() const;  // e.g. "F3" or "F9(z^2+1)"

 private:
  FqField(int p_, int e_);
};

bool is_prime(int n);

// An element of an interned FqField, as coordinates in the power basis
// 1, z, ..., z^{e-1}. Arithmetic requires both operands to come from the
// same field object; use embed() (fq_poly.hpp) to move between fields.
class FqElement {
 public:
  FqElement() : field_(nullptr) {}
  FqElement(const FqField* f, std::vector<int> c) : field_(f), c_(std::move(c)) {}

  const FqField& field() const { return *field_; }
  const std::vector<int>& coords() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  int64_t code() const;  // sum c_i p^i; 0 iff zero element

  FqElement operator-() const;
  FqElement operator+(const FqElement& o) const;
  FqElement operator-(const FqElement& o) const;
  FqElement operator*(const FqElement& o) const;
  FqElement operator/(const FqElement& o) const;
  bool operator==(const FqElement& o) const;
  bool operator!=(const FqElement& o) const { return !(*this == o); }

  FqElement inverse() const;
  FqElement pow(int64_t n) const;
  FqElement frobenius() const { return pow(field_->p); }
  FqElement pth_root() const;  // unique in a finite (perfect) field

  // True iff this element lies in the subfield F_{p^d} (requires d | e).
  bool in_subfield(int d) const;
  // Least d (dividing e) with *this in F_{p^d}.
  int subfield_degree() const;

  std::string str() const;  // "0", "1", "2", "z", "z^2+1", ...

 private:
  const FqField* field_;
  std::vector<int> c_;
};

std::ostream& operator<<(std::ostream& os, const FqElement& a);

}  // namespace hahn
