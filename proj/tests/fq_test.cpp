#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <vector>

#include "hahn/fq.hpp"

using hahn::FqElement;
using hahn::FqField;

TEST_CASE("primality helper") {
  CHECK(hahn::is_prime(2));
  CHECK(hahn::is_prime(3));
  CHECK(hahn::is_prime(5));
  CHECK(hahn::is_prime(97));
  CHECK_FALSE(hahn::is_prime(1));
  CHECK_FALSE(hahn::is_prime(4));
  CHECK_FALSE(hahn::is_prime(91));  // 7 * 13
}

TEST_CASE("field interning and validation") {
  const FqField& f3 = FqField::get(3);
  CHECK(&f3 == &FqField::get(3, 1));
  CHECK(f3.p == 3);
  CHECK(f3.e == 1);
  CHECK(f3.q == 3);
  CHECK_THROWS_AS(FqField::get(4), std::invalid_argument);
  CHECK_THROWS_AS(FqField::get(2, 0), std::invalid_argument);
}

TEST_CASE("least irreducible moduli") {
  // The modulus is the monic irreducible of the right degree whose
  // non-leading coefficient code sum c_i p^i is least.
  CHECK(FqField::get(2, 2).modulus == std::vector<int>{1, 1, 1});  // z^2+z+1
  CHECK(FqField::get(2, 3).modulus == std::vector<int>{1, 1, 0, 1});
  CHECK(FqField::get(2, 4).modulus == std::vector<int>{1, 1, 0, 0, 1});
  CHECK(FqField::get(3, 2).modulus == std::vector<int>{1, 0, 1});  // z^2+1
  CHECK(FqField::get(3, 1).modulus == std::vector<int>{0, 1});
  CHECK(FqField::get(3, 2).descriptor() == "F9(z^2+1)");
  CHECK(FqField::get(5, 1).descriptor() == "F5");
}

TEST_CASE("prime field arithmetic matches integers mod p") {
  for (int p : {2, 3, 5, 7}) {
    const FqField& f = FqField::get(p);
    for (int a = 0; a < p; ++a) {
      for (int b = 0; b < p; ++b) {
        FqElement x = f.from_int(a), y = f.from_int(b);
        CHECK((x + y).code() == (a + b) % p);
        CHECK((x - y).code() == ((a - b) % p + p) % p);
        CHECK((x * y).code() == a * b % p);
        if (b != 0) CHECK(((x / y) * y) == x);
      }
    }
    CHECK(f.from_int(-1).code() == p - 1);
    CHECK(f.from_int(p).is_zero());
  }
}

TEST_CASE("F4 multiplication table") {
  const FqField& f4 = FqField::get(2, 2);
  FqElement z = f4.from_code(2);        // the generator
  FqElement z1 = f4.from_code(3);       // z + 1
  CHECK(z * z == z1);                   // z^2 = z + 1
  CHECK(z * z1 == f4.one());            // z(z+1) = z^2 + z = 1
  CHECK(z1 * z1 == z);                  // (z+1)^2 = z^2 + 1 = z
  CHECK(z.inverse() == z1);
  CHECK(z + z == f4.zero());            // characteristic 2
}

TEST_CASE("code round trips and element order") {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}}) {
    const FqField& f = FqField::get(p, e);
    auto all = f.all_elements();
    REQUIRE(static_cast<int64_t>(all.size()) == f.q);
    for (int64_t c = 0; c < f.q; ++c) {
      CHECK(all[c].code() == c);
      CHECK(f.from_code(c) == all[c]);
    }
    CHECK_THROWS_AS(f.from_code(f.q), std::invalid_argument);
    CHECK_THROWS_AS(f.from_code(-1), std::invalid_argument);
  }
}

TEST_CASE("field axioms on F8 and F9, exhaustively") {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
    const FqField& f = FqField::get(p, e);
    auto all = f.all_elements();
    for (const auto& a : all) {
      CHECK(a + f.zero() == a);
      CHECK(a * f.one() == a);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == f.one());
        CHECK(a.pow(f.q - 1) == f.one());  // Fermat
      }
      for (const auto& b : all) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        // Frobenius is additive and multiplicative.
        CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
        CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
      }
    }
  }
}

TEST_CASE("frobenius and p-th root in F9") {
  const FqField& f9 = FqField::get(3, 2);
  FqElement z = f9.from_code(3);  // the generator, z^2 = -1
  CHECK(z.frobenius() == f9.from_int(2) * z);  // z^3 = z * z^2 = -z
  CHECK(z.frobenius().pth_root() == z);
  for (const auto& a : f9.all_elements()) {
    CHECK(a.pth_root().pow(3) == a);
    CHECK(a.pow(3).pth_root() == a);
  }
}

TEST_CASE("subfield membership") {
  const FqField& f16 = FqField::get(2, 4);
  int count_deg1 = 0, count_deg2 = 0, count_deg4 = 0;
  for (const auto& a : f16.all_elements()) {
    int d = a.subfield_degree();
    CHECK(a.in_subfield(d));
    if (d == 1) ++count_deg1;
    if (d == 2) ++count_deg2;
    if (d == 4) ++count_deg4;
  }
  CHECK(count_deg1 == 2);   // F2
  CHECK(count_deg2 == 2);   // F4 minus F2
  CHECK(count_deg4 == 12);  // the rest
  CHECK_FALSE(f16.one().in_subfield(3));  // 3 does not divide 4
}

TEST_CASE("element strings") {
  const FqField& f9 = FqField::get(3, 2);
  CHECK(f9.zero().str() == "0");
  CHECK(f9.one().str() == "1");
  CHECK(f9.from_int(2).str() == "2");
  CHECK(f9.from_code(3).str() == "z");
  CHECK(f9.from_code(7).str() == "2*z+1");
}
