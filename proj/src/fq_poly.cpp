#include "hahn/fq_poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hahn {

void FqPolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FqPolynomial::FqPolynomial(const FqField& f, std::vector<FqElement> coeffs)
    : field_(&f), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (&c.field() != &f) {
      throw std::invalid_argument("FqPolynomial: coefficient field mismatch");
    }
  }
  trim();
}

FqPolynomial FqPolynomial::x(const FqField& f) {
  return FqPolynomial(f, {f.zero(), f.one()});
}

FqPolynomial FqPolynomial::constant(const FqElement& c) {
  return FqPolynomial(c.field(), {c});
}

FqPolynomial FqPolynomial::from_ints(const FqField& f,
                                     std::vector<int64_t> coeffs) {
  std::vector<FqElement> c;
  c.reserve(coeffs.size());
  for (int64_t v : coeffs) c.push_back(f.from_int(v));
  return FqPolynomial(f, std::move(c));
}

bool FqPolynomial::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

FqElement FqPolynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return field_->zero();
  return c_[i];
}

FqElement FqPolynomial::lead() const {
  if (c_.empty()) return field_->zero();
  return c_.back();
}

FqPolynomial FqPolynomial::operator-() const {
  auto r = c_;
  for (auto& c : r) c = -c;
  return FqPolynomial(*field_, std::move(r));
}

FqPolynomial FqPolynomial::operator+(const FqPolynomial& o) const {
  std::vector<FqElement> r(std::max(c_.size(), o.c_.size()), field_->zero());
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return FqPolynomial(*field_, std::move(r));
}

FqPolynomial FqPolynomial::operator-(const FqPolynomial& o) const {
  return *this + (-o);
}

FqPolynomial FqPolynomial::operator*(const FqPolynomial& o) const {
  if (is_zero() || o.is_zero()) return FqPolynomial(*field_);
  std::vector<FqElement> r(c_.size() + o.c_.size() - 1, field_->zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
  }
  return FqPolynomial(*field_, std::move(r));
}

FqPolynomial FqPolynomial::operator*(const FqElement& s) const {
  auto r = c_;
  for (auto& c : r) c = c * s;
  return FqPolynomial(*field_, std::move(r));
}

bool FqPolynomial::operator==(const FqPolynomial& o) const {
  if (field_ != o.field_ || c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!(c_[i] == o.c_[i])) return false;
  }
  return true;
}

std::pair<FqPolynomial, FqPolynomial> FqPolynomial::divmod(
    const FqPolynomial& d) const {
  if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
  FqPolynomial q(*field_), r = *this;
  FqElement lead_inv = d.lead().inverse();
  std::vector<FqElement> qc;
  if (r.degree() >= d.degree()) {
    qc.assign(r.degree() - d.degree() + 1, field_->zero());
    while (r.degree() >= d.degree() && !r.is_zero()) {
      int k = r.degree() - d.degree();
      FqElement f = r.lead() * lead_inv;
      qc[k] = f;
      // r -= f * X^k * d
      for (int i = 0; i <= d.degree(); ++i) {
        r.c_[k + i] = r.c_[k + i] - f * d.c_[i];
      }
      r.trim();
    }
  }
  q = FqPolynomial(*field_, std::move(qc));
  return {q, r};
}

FqPolynomial FqPolynomial::operator/(const FqPolynomial& d) const {
  return divmod(d).first;
}

FqPolynomial FqPolynomial::operator%(const FqPolynomial& d) const {
  return divmod(d).second;
}

FqPolynomial FqPolynomial::derivative() const {
  if (c_.size() <= 1) return FqPolynomial(*field_);
  std::vector<FqElement> r;
  r.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    r.push_back(c_[i] * field_->from_int(static_cast<int64_t>(i)));
  }
  return FqPolynomial(*field_, std::move(r));
}

FqPolynomial FqPolynomial::monic() const {
  if (is_zero() || lead().is_one()) return *this;
  return *this * lead().inverse();
}

FqPolynomial FqPolynomial::pow(int64_t n) const {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  FqPolynomial base = *this;
  FqPolynomial r = constant(field_->one());
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

FqElement FqPolynomial::eval(const FqElement& a) const {
  FqElement r = field_->zero();
  for (int i = degree(); i >= 0; --i) r = r * a + c_[i];
  return r;
}

int FqPolynomial::order_at_zero() const {
  if (is_zero()) {
    throw std::invalid_argument("order_at_zero of the zero polynomial");
  }
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return static_cast<int>(i);
  }
  throw internal_error("trimmed polynomial with all-zero coefficients");
}

std::vector<FqElement> FqPolynomial::roots_in_field() const {
  if (is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<FqElement> roots;
  if (field_->q > (1 << 16)) {
    throw std::invalid_argument(
        "root finding implemented for fields up to 2^16 elements");
  }
  for (int64_t code = 0; code < field_->q; ++code) {
    FqElement a = field_->from_code(code);
    if (eval(a).is_zero()) roots.push_back(a);
  }
  return roots;  // code order == sorted
}

std::string FqPolynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    bool needs_parens = c_[i].coords().size() > 1 && !c_[i].is_one() &&
                        c_[i].str().find('+') != std::string::npos;
    std::string cs = needs_parens ? "(" + c_[i].str() + ")" : c_[i].str();
    if (i == 0) {
      s += cs;
    } else {
      if (!c_[i].is_one()) s += cs + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

FqPolynomial gcd(const FqPolynomial& a, const FqPolynomial& b) {
  FqPolynomial x = a, y = b;
  while (!y.is_zero()) {
    FqPolynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(FqPolynomial num, FqPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw std::invalid_argument("RationalFunction: zero denominator");
  }
  if (num_.is_zero()) {
    den_ = FqPolynomial::constant(num_.field().one());
    return;
  }
  FqPolynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  FqElement lc = den_.lead();
  if (!lc.is_one()) {
    FqElement inv = lc.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RationalFunction RationalFunction::of(FqPolynomial p) {
  const FqField& f = p.field();
  return RationalFunction(std::move(p), FqPolynomial::constant(f.one()));
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return *this + (-o);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) {
    throw std::invalid_argument("RationalFunction: division by zero");
  }
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

int RationalFunction::t_valuation() const {
  if (is_zero()) {
    throw std::invalid_argument("t_valuation of zero");
  }
  return num_.order_at_zero() - den_.order_at_zero();
}

std::string RationalFunction::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// XPoly

void XPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XPoly::XPoly(const FqField& f, std::vector<RationalFunction> coeffs)
    : field_(&f), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (&c.field() != &f) {
      throw std::invalid_argument("XPoly: coefficient field mismatch");
    }
  }
  trim();
}

RationalFunction XPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) {
    return RationalFunction(*field_);
  }
  return c_[i];
}

bool XPoly::is_monic() const {
  if (is_zero()) return false;
  const RationalFunction& l = c_.back();
  return l.is_polynomial() && l.num().is_one();
}

bool XPoly::is_integral() const {
  for (const auto& c : c_) {
    if (!c.is_polynomial()) return false;
  }
  return true;
}

XPoly XPoly::operator-() const {
  auto r = c_;
  for (auto& c : r) c = -c;
  return XPoly(*field_, std::move(r));
}

XPoly XPoly::operator+(const XPoly& o) const {
  std::vector<RationalFunction> r(std::max(c_.size(), o.c_.size()),
                                  RationalFunction(*field_));
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  }
  return XPoly(*field_, std::move(r));
}

XPoly XPoly::operator-(const XPoly& o) const { return *this + (-o); }

XPoly XPoly::operator*(const XPoly& o) const {
  if (is_zero() || o.is_zero()) return XPoly(*field_);
  std::vector<RationalFunction> r(c_.size() + o.c_.size() - 1,
                                  RationalFunction(*field_));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
  }
  return XPoly(*field_, std::move(r));
}

XPoly XPoly::operator*(const RationalFunction& s) const {
  auto r = c_;
  for (auto& c : r) c = c * s;
  return XPoly(*field_, std::move(r));
}

bool XPoly::operator==(const XPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!(c_[i] == o.c_[i])) return false;
  }
  return true;
}

std::pair<XPoly, XPoly> XPoly::divmod(const XPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("XPoly division by zero");
  XPoly r = *this;
  RationalFunction lead_inv =
      RationalFunction::of(FqPolynomial::constant(field_->one())) / d.c_.back();
  std::vector<RationalFunction> qc;
  if (r.degree() >= d.degree()) {
    qc.assign(r.degree() - d.degree() + 1, RationalFunction(*field_));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      RationalFunction f = r.c_.back() * lead_inv;
      qc[k] = f;
      for (int i = 0; i <= d.degree(); ++i) {
        r.c_[k + i] = r.c_[k + i] - f * d.c_[i];
      }
      r.trim();
    }
  }
  return {XPoly(*field_, std::move(qc)), r};
}

XPoly XPoly::derivative() const {
  if (c_.size() <= 1) return XPoly(*field_);
  std::vector<RationalFunction> r;
  r.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    auto n = RationalFunction::of(
        FqPolynomial::constant(field_->from_int(static_cast<int64_t>(i))));
    r.push_back(c_[i] * n);
  }
  return XPoly(*field_, std::move(r));
}

XPoly XPoly::monic() const {
  if (is_zero() || is_monic()) return *this;
  RationalFunction inv =
      RationalFunction::of(FqPolynomial::constant(field_->one())) / c_.back();
  return *this * inv;
}

std::string XPoly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string cs = c_[i].str();
    bool trivial = c_[i].is_polynomial() && c_[i].num().is_one();
    if (i == 0) {
      s += cs;
    } else {
      if (!trivial) s += "(" + cs + ")*";
      s += "X";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

XPoly gcd(const XPoly& a, const XPoly& b) {
  XPoly x = a, y = b;
  while (!y.is_zero()) {
    XPoly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XPoly squarefree_root_part(const XPoly& f, bool* inseparable) {
  if (f.is_zero()) {
    throw std::invalid_argument("squarefree_root_part of zero");
  }
  const FqField& K = f.field();
  XPoly g = f.monic();
  if (g.degree() == 0) {
    return XPoly(K, {RationalFunction::of(FqPolynomial::constant(K.one()))});
  }
  XPoly d = g.derivative();
  if (d.is_zero()) {
    // Only p-multiple exponents occur: g = h(X^p), which has the same root
    // set as h composed with the (bijective) p-th power of the perfect
    // ambient field.
    int p = K.p;
    std::vector<RationalFunction> hc;
    for (int i = 0; i <= g.degree(); i += p) hc.push_back(g.coeff(i));
    if (inseparable) *inseparable = true;
    return squarefree_root_part(XPoly(K, std::move(hc)), inseparable);
  }
  XPoly c = gcd(g, d);
  if (c.degree() == 0) return g;  // already squarefree and separable
  XPoly a = g.divmod(c).first;  // multiplicity-one separable factors
  XPoly u = squarefree_root_part(a, inseparable);
  XPoly v = squarefree_root_part(c, inseparable);
  XPoly common = gcd(u, v);
  if (common.degree() > 0) v = v.divmod(common).first;
  return (u * v).monic();
}

RationalFunction resultant(const XPoly& a, const XPoly& b) {
  const FqField& K = a.field();
  RationalFunction one = RationalFunction::of(FqPolynomial::constant(K.one()));
  if (a.is_zero() || b.is_zero()) return RationalFunction(K);
  if (b.degree() == 0) {
    RationalFunction r = one;
    for (int i = 0; i < a.degree(); ++i) r = r * b.coeff(0);
    return r;
  }
  if (a.degree() == 0) {
    RationalFunction r = one;
    for (int i = 0; i < b.degree(); ++i) r = r * a.coeff(0);
    return r;
  }
  XPoly rem = a.divmod(b).second;
  if (rem.is_zero()) return RationalFunction(K);
  RationalFunction lead = b.coeff(b.degree());
  RationalFunction scale = one;
  for (int i = 0; i < a.degree() - rem.degree(); ++i) scale = scale * lead;
  RationalFunction sub = resultant(b, rem);
  RationalFunction sign = one;
  if ((a.degree() % 2) == 1 && (b.degree() % 2) == 1) sign = -one;
  return sign * scale * sub;
}

std::optional<std::vector<RationalFunction>> kernel_vector(
    const std::vector<std::vector<RationalFunction>>& cols) {
  if (cols.empty()) return std::nullopt;
  const FqField& K = cols[0][0].field();
  size_t n = cols[0].size();
  size_t k = cols.size();
  // Row-reduce the n x k matrix, assigning pivots to columns in increasing
  // index order.
  std::vector<std::vector<RationalFunction>> m(
      n, std::vector<RationalFunction>(k, RationalFunction(K)));
  for (size_t j = 0; j < k; ++j) {
    if (cols[j].size() != n) {
      throw std::invalid_argument("kernel_vector: ragged columns");
    }
    for (size_t i = 0; i < n; ++i) m[i][j] = cols[j][i];
  }
  std::vector<int> pivot_row_of_col(k, -1);
  size_t row = 0;
  for (size_t j = 0; j < k && row < n; ++j) {
    size_t sel = row;
    while (sel < n && m[sel][j].is_zero()) ++sel;
    if (sel == n) continue;  // free column
    std::swap(m[sel], m[row]);
    RationalFunction inv =
        RationalFunction::of(FqPolynomial::constant(K.one())) / m[row][j];
    for (size_t jj = 0; jj < k; ++jj) m[row][jj] = m[row][jj] * inv;
    for (size_t ii = 0; ii < n; ++ii) {
      if (ii == row || m[ii][j].is_zero()) continue;
      RationalFunction f = m[ii][j];
      for (size_t jj = 0; jj < k; ++jj) {
        m[ii][jj] = m[ii][jj] - f * m[row][jj];
      }
    }
    pivot_row_of_col[j] = static_cast<int>(row);
    ++row;
  }
  int free_col = -1;
  for (size_t j = 0; j < k; ++j) {
    if (pivot_row_of_col[j] < 0) {
      free_col = static_cast<int>(j);
      break;
    }
  }
  if (free_col < 0) return std::nullopt;

  std::vector<RationalFunction> x(k, RationalFunction(K));
  x[free_col] = RationalFunction::of(FqPolynomial::constant(K.one()));
  for (size_t j = 0; j < k; ++j) {
    int r = pivot_row_of_col[j];
    if (r >= 0) x[j] = -m[r][free_col];
  }

  // Clear denominators and remove polynomial content.
  FqPolynomial lcm = FqPolynomial::constant(K.one());
  for (const auto& xi : x) {
    if (xi.is_zero()) continue;
    FqPolynomial g = gcd(lcm, xi.den());
    lcm = (lcm / g) * xi.den();
  }
  std::vector<FqPolynomial> cleared;
  cleared.reserve(k);
  for (const auto& xi : x) {
    cleared.push_back(xi.num() * (lcm / xi.den()));
  }
  FqPolynomial content(K);
  for (const auto& ci : cleared) {
    if (ci.is_zero()) continue;
    content = content.is_zero() ? ci.monic() : gcd(content, ci);
  }
  std::vector<RationalFunction> out;
  out.reserve(k);
  for (auto& ci : cleared) {
    if (!content.is_zero() && content.degree() > 0) ci = ci / content;
    out.push_back(RationalFunction::of(std::move(ci)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field embeddings

namespace {
std::mutex embed_mu;
// (source, target) -> image of the source generator in the target field
std::map<std::pair<const FqField*, const FqField*>, FqElement> embed_cache;
}  // namespace

FqElement embed(const FqElement& a, const FqField& target) {
  const FqField& src = a.field();
  if (&src == &target) return a;
  if (src.p != target.p || target.e % src.e != 0) {
    throw std::invalid_argument("embed: not a subfield relationship");
  }
  FqElement gen_img = target.zero();
  {
    std::lock_guard<std::mutex> lock(embed_mu);
    auto key = std::make_pair(&src, &target);
    auto it = embed_cache.find(key);
    if (it != embed_cache.end()) {
      gen_img = it->second;
    } else {
      // The source modulus has coefficients in F_p; its lex-least root in the
      // target field is the canonical image of the source generator.
      std::vector<FqElement> mc;
      mc.reserve(src.modulus.size());
      for (int ci : src.modulus) mc.push_back(target.from_int(ci));
      FqPolynomial mod_in_target(target, std::move(mc));
      auto roots = mod_in_target.roots_in_field();
      if (roots.empty()) {
        throw internal_error("embed: modulus has no root in extension");
      }
      gen_img = roots.front();
      embed_cache.emplace(key, gen_img);
    }
  }
  FqElement acc = target.zero();
  FqElement pw = target.one();
  for (int i = 0; i < src.e; ++i) {
    acc = acc + pw * target.from_int(a.coords()[i]);
    if (i + 1 < src.e) pw = pw * gen_img;
  }
  return acc;
}

FqElement project_to_subfield(const FqElement& a, int d) {
  const FqField& src = a.field();
  if (d == src.e) return a;
  if (src.e % d != 0 || !a.in_subfield(d)) {
    throw std::invalid_argument("project_to_subfield: element not in F_{p^d}");
  }
  const FqField& sub = FqField::get(src.p, d);
  // Solve sum_i y_i * g^i = a over F_p, where g is the canonical image of
  // the subfield generator.
  std::vector<FqElement> basis;
  {
    std::vector<int> gc(d, 0);
    gc[d > 1 ? 1 : 0] = 1;
    FqElement gen = embed(sub.element(std::move(gc)), src);
    FqElement pw = src.one();
    for (int i = 0; i < d; ++i) {
      basis.push_back(pw);
      pw = pw * gen;
    }
  }
  // Gaussian elimination over F_p on the (e x d | rhs) system.
  int p = src.p, e = src.e;
  std::vector<std::vector<int>> mat(e, std::vector<int>(d + 1, 0));
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < e; ++i) mat[i][j] = basis[j].coords()[i];
  }
  for (int i = 0; i < e; ++i) mat[i][d] = a.coords()[i];
  std::vector<int> piv_col_row(d, -1);
  int row = 0;
  for (int j = 0; j < d && row < e; ++j) {
    int sel = row;
    while (sel < e && mat[sel][j] == 0) ++sel;
    if (sel == e) continue;
    std::swap(mat[sel], mat[row]);
    int inv = 1;
    for (int k2 = 1; k2 < p; ++k2) {
      if (mat[row][j] * k2 % p == 1) {
        inv = k2;
        break;
      }
    }
    for (int jj = 0; jj <= d; ++jj) mat[row][jj] = mat[row][jj] * inv % p;
    for (int ii = 0; ii < e; ++ii) {
      if (ii == row || mat[ii][j] == 0) continue;
      int f = mat[ii][j];
      for (int jj = 0; jj <= d; ++jj) {
        mat[ii][jj] = ((mat[ii][jj] - f * mat[row][jj]) % p + p) % p;
      }
    }
    piv_col_row[j] = row++;
  }
  std::vector<int> y(d, 0);
  for (int j = 0; j < d; ++j) {
    if (piv_col_row[j] >= 0) y[j] = mat[piv_col_row[j]][d];
  }
  // Consistency: rows beyond the pivots must have zero rhs.
  for (int i = row; i < e; ++i) {
    if (mat[i][d] != 0) {
      throw internal_error("project_to_subfield: inconsistent system");
    }
  }
  return sub.element(std::move(y));
}

}  // namespace hahn
