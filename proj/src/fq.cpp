#include "hahn/fq.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>

namespace hahn {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

// Dense polynomial helpers over F_p on int vectors (lowest-first), used only
// for modulus sieving and element arithmetic inside this file.

void trim(std::vector<int>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<int> poly_mul_mod_p(const std::vector<int>& a,
                                const std::vector<int>& b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  trim(r);
  return r;
}

// Reduce a modulo the monic polynomial m.
std::vector<int> poly_rem_mod_p(std::vector<int> a, const std::vector<int>& m,
                                int p) {
  int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int da = static_cast<int>(a.size()) - 1;
    int c = a[da];
    if (c != 0) {
      for (int i = 0; i <= dm; ++i) {
        int& t = a[da - dm + i];
        t = ((t - c * m[i]) % p + p) % p;
      }
    }
    a.pop_back();
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

std::vector<int> poly_gcd_mod_p(std::vector<int> a, std::vector<int> b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic for the remainder step
    int lead = b.back();
    if (lead != 1) {
      int inv = 1;
      for (int k = 1; k < p; ++k) {
        if (lead * k % p == 1) {
          inv = k;
          break;
        }
      }
      for (auto& c : b) c = c * inv % p;
    }
    auto r = poly_rem_mod_p(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<int> poly_powmod_mod_p(std::vector<int> base, int64_t n,
                                   const std::vector<int>& m, int p) {
  std::vector<int> r{1};
  base = poly_rem_mod_p(std::move(base), m, p);
  while (n > 0) {
    if (n & 1) r = poly_rem_mod_p(poly_mul_mod_p(r, base, p), m, p);
    base = poly_rem_mod_p(poly_mul_mod_p(base, base, p), m, p);
    n >>= 1;
  }
  return r;
}

// Irreducibility over F_p via the standard x^{p^e} = x test plus the
// subfield exclusions x^{p^{e/l}} - x for primes l | e.
bool irreducible_mod_p(const std::vector<int>& f, int p) {
  int e = static_cast<int>(f.size()) - 1;
  std::vector<int> x{0, 1};
  int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  auto xq = poly_powmod_mod_p(x, pe, f, p);
  auto diff = xq;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  trim(diff);
  if (!diff.empty()) return false;
  for (int l = 2; l <= e; ++l) {
    if (e % l != 0 || !is_prime(l)) continue;
    int64_t pl = 1;
    for (int i = 0; i < e / l; ++i) pl *= p;
    auto xl = poly_powmod_mod_p(x, pl, f, p);
    auto d2 = xl;
    d2.resize(std::max<size_t>(d2.size(), 2), 0);
    d2[1] = ((d2[1] - 1) % p + p) % p;
    trim(d2);
    auto g = poly_gcd_mod_p(f, d2, p);
    if (static_cast<int>(g.size()) - 1 != 0) return false;
  }
  return true;
}

std::vector<int> least_irreducible(int p, int e) {
  // Enumerate monic degree-e polynomials by the integer code of their
  // non-leading coefficients, smallest first.
  int64_t span = 1;
  for (int i = 0; i < e; ++i) span *= p;
  for (int64_t code = 0; code < span; ++code) {
    std::vector<int> f(e + 1, 0);
    int64_t c = code;
    for (int i = 0; i < e; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[e] = 1;
    if (irreducible_mod_p(f, p)) return f;
  }
  throw internal_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

FqField::FqField(int p_, int e_) : p(p_), e(e_) {
  if (!is_prime(p)) throw std::invalid_argument("FqField: p must be prime");
  if (e < 1) throw std::invalid_argument("FqField: degree must be >= 1");
  q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > (int64_t{1} << 40)) {
      throw std::invalid_argument("FqField: field too large");
    }
  }
  if (e == 1) {
    modulus = {0, 1};  // z, unused for prime fields
  } else {
    modulus = least_irreducible(p, e);
  }
}

const FqField& FqField::get(int p, int e) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FqField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<FqField>(new FqField(p, e))).first;
  }
  return *it->second;
}

FqElement FqField::zero() const {
  return FqElement(this, std::vector<int>(e, 0));
}

FqElement FqField::one() const { return from_int(1); }

FqElement FqField::from_int(int64_t n) const {
  std::vector<int> c(e, 0);
  c[0] = static_cast<int>(((n % p) + p) % p);
  return FqElement(this, std::move(c));
}

FqElement FqField::from_code(int64_t code) const {
  if (code < 0 || code >= q) throw std::invalid_argument("bad element code");
  std::vector<int> c(e, 0);
  for (int i = 0; i < e; ++i) {
    c[i] = static_cast<int>(code % p);
    code /= p;
  }
  return FqElement(this, std::move(c));
}

FqElement FqField::element(std::vector<int> coords) const {
  if (static_cast<int>(coords.size()) != e) {
    throw std::invalid_argument("coordinate vector has wrong length");
  }
  for (auto& c : coords) c = ((c % p) + p) % p;
  return FqElement(this, std::move(coords));
}

std::vector<FqElement> FqField::all_elements() const {
  if (q > (1 << 20)) throw std::invalid_argument("field too large to list");
  std::vector<FqElement> out;
  out.reserve(static_cast<size_t>(q));
  for (int64_t c = 0; c < q; ++c) out.push_back(from_code(c));
  return out;
}

std::string FqField::descriptor() const {
  std::string s = "F" + std::to_string(q);
  if (e > 1) {
    s += "(";
    bool first = true;
    for (int i = e; i >= 0; --i) {
      if (modulus[i] == 0) continue;
      if (!first) s += "+";
      first = false;
      if (i == 0) {
        s += std::to_string(modulus[i]);
      } else {
        if (modulus[i] != 1) s += std::to_string(modulus[i]) + "*";
        s += (i == 1) ? "z" : "z^" + std::to_string(i);
      }
    }
    s += ")";
  }
  return s;
}

bool FqElement::is_zero() const {
  for (int x : c_) {
    if (x != 0) return false;
  }
  return true;
}

bool FqElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

int64_t FqElement::code() const {
  int64_t code = 0;
  for (int i = field_->e - 1; i >= 0; --i) code = code * field_->p + c_[i];
  return code;
}

namespace {
void check_same_field(const FqElement& a, const FqElement& b) {
  if (&a.field() != &b.field()) {
    throw std::invalid_argument("field mismatch in FqElement arithmetic");
  }
}
}  // namespace

FqElement FqElement::operator-() const {
  std::vector<int> r(c_.size());
  int p = field_->p;
  for (size_t i = 0; i < c_.size(); ++i) r[i] = (p - c_[i]) % p;
  return FqElement(field_, std::move(r));
}

FqElement FqElement::operator+(const FqElement& o) const {
  check_same_field(*this, o);
  std::vector<int> r(c_.size());
  int p = field_->p;
  for (size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + o.c_[i]) % p;
  return FqElement(field_, std::move(r));
}

FqElement FqElement::operator-(const FqElement& o) const {
  return *this + (-o);
}

FqElement FqElement::operator*(const FqElement& o) const {
  check_same_field(*this, o);
  int p = field_->p;
  auto prod = poly_mul_mod_p(c_, o.c_, p);
  prod = poly_rem_mod_p(std::move(prod), field_->modulus, p);
  prod.resize(field_->e, 0);
  return FqElement(field_, std::move(prod));
}

FqElement FqElement::operator/(const FqElement& o) const {
  return *this * o.inverse();
}

bool FqElement::operator==(const FqElement& o) const {
  check_same_field(*this, o);
  return c_ == o.c_;
}

FqElement FqElement::inverse() const {
  if (is_zero()) throw std::invalid_argument("inverse of zero");
  return pow(field_->q - 2);
}

FqElement FqElement::pow(int64_t n) const {
  if (n < 0) {
    return inverse().pow(-n);
  }
  FqElement base = *this;
  FqElement r = field_->one();
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

FqElement FqElement::pth_root() const {
  // x -> x^p is an automorphism of order e, so x^(p^(e-1)) inverts it.
  FqElement r = *this;
  for (int i = 0; i < field_->e - 1; ++i) r = r.frobenius();
  return r;
}

bool FqElement::in_subfield(int d) const {
  if (field_->e % d != 0) return false;
  int64_t pd = 1;
  for (int i = 0; i < d; ++i) pd *= field_->p;
  return pow(pd) == *this;
}

int FqElement::subfield_degree() const {
  for (int d = 1; d <= field_->e; ++d) {
    if (field_->e % d == 0 && in_subfield(d)) return d;
  }
  throw internal_error("subfield_degree: no degree found");  // unreachable
}

std::string FqElement::str() const {
  std::string s;
  for (int i = field_->e - 1; i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c_[i]);
    } else {
      if (c_[i] != 1) s += std::to_string(c_[i]) + "*";
      s += (i == 1) ? "z" : "z^" + std::to_string(i);
    }
  }
  if (s.empty()) s = "0";
  return s;
}

std::ostream& operator<<(std::ostream& os, const FqElement& a) {
  return os << a.str();
}

}  // namespace hahn
