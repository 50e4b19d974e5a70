#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "hahn/dfao.hpp"
#include "hahn/fq.hpp"
#include "hahn/rational.hpp"
#include "hahn/series.hpp"

namespace {

using hahn::AutomaticSeries;
using hahn::Dfao;
using hahn::FqElement;
using hahn::FqField;
using hahn::Rational;

struct Lcg {
  uint64_t state;
  explicit Lcg(uint64_t seed) : state(seed) {}
  uint64_t raw() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 17;
  }
  int next(int bound) { return static_cast<int>(raw() % bound); }
};

// Every word over {0..p} up to the given length, shortest first.
std::vector<std::vector<int>> all_words(int p, int max_len) {
  std::vector<std::vector<int>> out{{}};
  size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i) {
      for (int a = 0; a <= p; ++a) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return out;
}

// Positional-sum value straight from the definition, as an independent
// check of word_value's Horner evaluation.
Rational brute_value(const std::vector<int>& w, int p) {
  int dot = -1;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == p) dot = static_cast<int>(i);
  }
  REQUIRE(dot >= 0);
  auto power = [&](int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= Rational(p);
    for (int i = 0; i > e; --i) r *= Rational(1, p);
    return r;
  };
  Rational v(0);
  for (int i = 0; i < dot; ++i) v += Rational(w[i]) * power(dot - 1 - i);
  for (size_t i = dot + 1; i < w.size(); ++i) {
    v += Rational(w[i]) * power(dot - static_cast<int>(i));
  }
  return v;
}

std::vector<int> sym(const std::string& s, int p) {
  return hahn::symbols_from_string(s, p);
}

// Accepted words "1 0^n ." for n >= 0, i.e. the series sum_n t^(p^n)
// restricted to... for p=2: exponents 1, 2, 4, 8, ...
Dfao powers_of_p_dfao(int p, const FqField& field) {
  // 0: start, 1: saw the leading 1 (plus trailing zeros), 2: accept, 3: dead.
  Dfao d(p, field, 4, 0);
  for (int a = 0; a <= p; ++a) {
    d.set_edge(0, a, 3);
    d.set_edge(1, a, 3);
    d.set_edge(2, a, 3);
    d.set_edge(3, a, 3);
  }
  d.set_edge(0, 1, 1);
  d.set_edge(1, 0, 1);
  d.set_edge(1, p, 2);
  d.set_output(2, field.one());
  return d;
}

// Strict value comparison that works on words of any length: exact Horner
// rationals when they fit in 64 bits, the digit-aligned comparison (itself
// cross-checked against the rationals below) beyond that.
bool strictly_below(const std::vector<int>& a, const std::vector<int>& b,
                    int p) {
  try {
    return hahn::word_value(a, p) < hahn::word_value(b, p);
  } catch (const hahn::overflow_error&) {
    return hahn::word_value_less(a, b, p);
  }
}

void check_witness_descends(const hahn::SaguaroReport& rep, const Dfao& d) {
  REQUIRE_FALSE(rep.ok);
  REQUIRE_FALSE(rep.cycle.empty());
  int dots = 0;
  for (int a : rep.prefix) dots += a == d.p() ? 1 : 0;
  CHECK(dots == 1);
  for (int a : rep.cycle) CHECK(a < d.p());
  for (int a : rep.suffix) CHECK(a < d.p());
  std::vector<int> pumped = rep.prefix;
  std::vector<int> prev;
  for (int k = 0; k <= 4; ++k) {
    std::vector<int> w = pumped;
    w.insert(w.end(), rep.suffix.begin(), rep.suffix.end());
    CHECK_FALSE(d.eval(w).is_zero());
    if (k > 0) CHECK(strictly_below(w, prev, d.p()));
    prev = w;
    pumped.insert(pumped.end(), rep.cycle.begin(), rep.cycle.end());
  }
}

}  // namespace

TEST_CASE("expansion validity agrees with the acceptor automaton") {
  const FqField& f2 = FqField::get(2, 1);
  const FqField& f3 = FqField::get(3, 1);
  for (const auto& [p, field, max_len] :
       {std::tuple<int, const FqField*, int>{2, &f2, 8},
        std::tuple<int, const FqField*, int>{3, &f3, 6}}) {
    Dfao v = hahn::validity_dfao(p, *field);
    v.validate();
    for (const auto& w : all_words(p, max_len)) {
      CAPTURE(hahn::string_from_symbols(w, p));
      CHECK(hahn::is_valid_expansion(w, p) == !v.eval(w).is_zero());
    }
  }

  CHECK(hahn::is_valid_expansion(sym(".", 2), 2));
  CHECK(hahn::is_valid_expansion(sym("1.", 2), 2));
  CHECK(hahn::is_valid_expansion(sym("1.01", 2), 2));
  CHECK_FALSE(hahn::is_valid_expansion({}, 2));           // no dot
  CHECK_FALSE(hahn::is_valid_expansion(sym("11", 2), 2)); // no dot
  CHECK_FALSE(hahn::is_valid_expansion(sym("1..", 2), 2));
  CHECK_FALSE(hahn::is_valid_expansion(sym("01.", 2), 2)); // leading zero
  CHECK_FALSE(hahn::is_valid_expansion(sym(".10", 2), 2)); // trailing zero
  CHECK_FALSE(hahn::is_valid_expansion(sym("0.", 2), 2));
  CHECK_FALSE(hahn::is_valid_expansion({3, 2}, 2));        // out of range
}

TEST_CASE("exponent encoding: golden words, round trips, value formula") {
  CHECK(hahn::encode_exponent(Rational(0), 2) == sym(".", 2));
  CHECK(hahn::encode_exponent(Rational(1), 2) == sym("1.", 2));
  CHECK(hahn::encode_exponent(Rational(2), 2) == sym("10.", 2));
  CHECK(hahn::encode_exponent(Rational(1, 2), 2) == sym(".1", 2));
  CHECK(hahn::encode_exponent(Rational(5, 4), 2) == sym("1.01", 2));
  CHECK(hahn::encode_exponent(Rational(11, 8), 2) == sym("1.011", 2));
  CHECK(hahn::encode_exponent(Rational(7), 3) == sym("21.", 3));
  CHECK(hahn::encode_exponent(Rational(5, 9), 3) == sym(".12", 3));

  CHECK_THROWS_AS(hahn::encode_exponent(Rational(-1), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(hahn::encode_exponent(Rational(1, 3), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(hahn::encode_exponent(Rational(1, 6), 3),
                  std::invalid_argument);

  // decode is a two-sided inverse on every short valid word.
  for (const auto& w : all_words(2, 8)) {
    if (!hahn::is_valid_expansion(w, 2)) continue;
    CAPTURE(hahn::string_from_symbols(w, 2));
    Rational g = hahn::decode_exponent(w, 2);
    CHECK(g == brute_value(w, 2));
    CHECK(hahn::encode_exponent(g, 2) == w);
  }
  for (const auto& w : all_words(3, 5)) {
    if (!hahn::is_valid_expansion(w, 3)) continue;
    Rational g = hahn::decode_exponent(w, 3);
    CHECK(g == brute_value(w, 3));
    CHECK(hahn::encode_exponent(g, 3) == w);
  }
  CHECK_THROWS_AS(hahn::decode_exponent(sym("01.", 2), 2),
                  std::invalid_argument);
}

TEST_CASE("word_value handles unnormalized words") {
  CHECK(hahn::word_value(sym("01.10", 2), 2) == Rational(3, 2));
  CHECK(hahn::word_value(sym("00.00", 2), 2) == Rational(0));
  CHECK(hahn::word_value(sym(".", 3), 3) == Rational(0));
  CHECK(hahn::word_value(sym("0012.0100", 3), 3) == Rational(46, 9));
  CHECK_THROWS_AS(hahn::word_value(sym("11", 2), 2), std::invalid_argument);
  CHECK_THROWS_AS(hahn::word_value(sym("1.1.", 2), 2), std::invalid_argument);
  // Agrees with decode on valid words.
  CHECK(hahn::word_value(sym("1.011", 2), 2) == Rational(11, 8));
}

TEST_CASE("digit-aligned comparison matches exact rational comparison") {
  for (int p : {2, 3}) {
    std::vector<std::vector<int>> dotted;
    for (const auto& w : all_words(p, p == 2 ? 6 : 4)) {
      if (std::count(w.begin(), w.end(), p) == 1) dotted.push_back(w);
    }
    for (const auto& a : dotted) {
      for (const auto& b : dotted) {
        bool expect = hahn::word_value(a, p) < hahn::word_value(b, p);
        if (hahn::word_value_less(a, b, p) != expect) {
          CAPTURE(hahn::string_from_symbols(a, p));
          CAPTURE(hahn::string_from_symbols(b, p));
          CHECK(hahn::word_value_less(a, b, p) == expect);
        }
      }
    }
  }
  CHECK_THROWS_AS(hahn::word_value_less(sym("11", 2), sym(".", 2), 2),
                  std::invalid_argument);
  // No overflow on words far past the 64-bit range.
  std::vector<int> big_a = sym(".", 2), big_b = sym(".", 2);
  for (int i = 0; i < 500; ++i) {
    big_a.push_back(i == 499 ? 1 : 0);
    big_b.push_back(i == 0 ? 1 : 0);
  }
  CHECK(hahn::word_value_less(big_a, big_b, 2));
  CHECK_FALSE(hahn::word_value_less(big_b, big_a, 2));
  CHECK_FALSE(hahn::word_value_less(big_a, big_a, 2));
}

TEST_CASE("well-formedness: shortest offending word is reported") {
  const FqField& f3 = FqField::get(3, 1);

  // Outputs 1 everywhere: already wrong on the empty word.
  Dfao all_ones(3, f3, 1, 0);
  for (int a = 0; a <= 3; ++a) all_ones.set_edge(0, a, 0);
  all_ones.set_output(0, f3.one());
  auto rep = hahn::check_well_formed(all_ones);
  CHECK_FALSE(rep.ok);
  CHECK(rep.witness.empty());
  CHECK_THROWS_AS(AutomaticSeries{all_ones}, std::invalid_argument);

  // Accepts exactly "1": invalid because it has no dot.
  Dfao one_only(3, f3, 3, 0);
  for (int a = 0; a <= 3; ++a) {
    one_only.set_edge(0, a, 2);
    one_only.set_edge(1, a, 2);
    one_only.set_edge(2, a, 2);
  }
  one_only.set_edge(0, 1, 1);
  one_only.set_output(1, f3.from_int(2));
  rep = hahn::check_well_formed(one_only);
  CHECK_FALSE(rep.ok);
  CHECK(rep.witness == sym("1", 3));
  CHECK(rep.reason.find("\"1\"") != std::string::npos);
  CHECK(rep.reason.find("2") != std::string::npos);

  // The validity acceptor itself is a perfectly good series (all
  // coefficients 1): well-formed by construction.
  Dfao v = hahn::validity_dfao(3, f3);
  CHECK(hahn::check_well_formed(v).ok);
  AutomaticSeries s{v};
  CHECK_FALSE(s.is_zero());
  CHECK(s.coefficient_at(Rational(7, 9)) == f3.one());
  CHECK(s.coefficient_at(Rational(4)) == f3.one());
}

TEST_CASE("the all-ones series is not well-ordered") {
  const FqField& f2 = FqField::get(2, 1);
  Dfao v = hahn::validity_dfao(2, f2);
  auto rep = hahn::check_well_ordered(v);
  REQUIRE_FALSE(rep.ok);
  // State 3 is the "fraction ending in a nonzero digit" state; both of its
  // digit edges lie on cycles.
  CHECK(rep.state == 3);
  CHECK(rep.cycle_symbol == 0);
  CHECK(rep.other_symbol == 1);
  CHECK(rep.reason.find("two cycles") != std::string::npos);
  check_witness_descends(rep, v);
}

TEST_CASE("finite series round trip through the automaton") {
  const FqField& f9 = FqField::get(3, 2);
  FqElement z = f9.from_code(3);  // a generator of F9 over F3
  std::vector<std::pair<Rational, FqElement>> terms = {
      {Rational(3), f9.from_int(2)},
      {Rational(0), f9.one()},
      {Rational(1, 2) + Rational(0), f9.zero()},  // dropped
      {Rational(4, 9), z},
  };
  AutomaticSeries s = AutomaticSeries::from_finite_series(3, f9, terms);
  CHECK_FALSE(s.is_zero());
  CHECK(s.coefficient_at(Rational(0)) == f9.one());
  CHECK(s.coefficient_at(Rational(3)) == f9.from_int(2));
  CHECK(s.coefficient_at(Rational(4, 9)) == z);
  CHECK(s.coefficient_at(Rational(1, 2)) == f9.zero());  // was dropped
  CHECK(s.coefficient_at(Rational(5)) == f9.zero());
  CHECK(s.coefficient_at(Rational(1, 3)) == f9.zero());
  // Exponents outside the support domain have coefficient zero.
  CHECK(s.coefficient_at(Rational(1, 7)) == f9.zero());
  CHECK(s.coefficient_at(Rational(-2)) == f9.zero());

  CHECK(hahn::check_well_ordered(s.dfao()).ok);
  auto support = hahn::support_prefix(s, 10);
  REQUIRE(support.size() == 3);
  CHECK(support[0].first == Rational(0));
  CHECK(support[0].second == f9.one());
  CHECK(support[1].first == Rational(4, 9));
  CHECK(support[1].second == z);
  CHECK(support[2].first == Rational(3));
  CHECK(support[2].second == f9.from_int(2));
  CHECK(hahn::support_prefix(s, 2).size() == 2);
  CHECK(hahn::support_prefix(s, 0).empty());

  // Input validation.
  CHECK_THROWS_AS(AutomaticSeries::from_finite_series(
                      3, f9, {{Rational(1), f9.one()},
                              {Rational(1), f9.from_int(2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AutomaticSeries::from_finite_series(
                      3, f9, {{Rational(1, 2), f9.one()},
                              {Rational(1, 2), f9.one()}}),
                  std::invalid_argument);
  const FqField& f3 = FqField::get(3, 1);
  CHECK_THROWS_AS(AutomaticSeries::from_finite_series(3, f9,
                                                      {{Rational(1),
                                                        f3.one()}}),
                  std::invalid_argument);

  // The zero series.
  AutomaticSeries zser = AutomaticSeries::zero(3, f9);
  CHECK(zser.is_zero());
  CHECK(zser.coefficient_at(Rational(0)) == f9.zero());
  CHECK(hahn::support_prefix(zser, 5).empty());
  CHECK(AutomaticSeries::from_finite_series(3, f9, {}).is_zero());
}

TEST_CASE("canonical form does not depend on how the series was built") {
  const FqField& f2 = FqField::get(2, 1);
  std::vector<std::pair<Rational, FqElement>> terms = {
      {Rational(1), f2.one()}, {Rational(3, 4), f2.one()}};
  AutomaticSeries a = AutomaticSeries::from_finite_series(2, f2, terms);
  std::reverse(terms.begin(), terms.end());
  AutomaticSeries b = AutomaticSeries::from_finite_series(2, f2, terms);
  CHECK(hahn::canonicalize(a).dfao().serialize() ==
        hahn::canonicalize(b).dfao().serialize());

  // Padding with junk states changes nothing after canonicalization.
  const Dfao& d = a.dfao();
  Dfao padded(2, f2, d.num_states() + 2, d.q0());
  for (int s = 0; s < d.num_states(); ++s) {
    for (int sym2 = 0; sym2 <= 2; ++sym2) {
      padded.set_edge(s, sym2, d.next(s, sym2));
    }
    padded.set_output(s, d.output(s));
  }
  for (int s = d.num_states(); s < padded.num_states(); ++s) {
    for (int sym2 = 0; sym2 <= 2; ++sym2) padded.set_edge(s, sym2, s);
    padded.set_output(s, f2.one());
  }
  CHECK(hahn::canonicalize(AutomaticSeries{padded}).dfao().serialize() ==
        hahn::canonicalize(a).dfao().serialize());
  CHECK(hahn::equal_function(padded, d));
}

TEST_CASE("ascending fractional loop: well-ordered, support in order") {
  // Accepts ".1", ".11", ".111", ...: exponents 1 - 2^-n, coefficients 1.
  const FqField& f2 = FqField::get(2, 1);
  Dfao d(2, f2, 4, 0);
  for (int a = 0; a <= 2; ++a) {
    d.set_edge(0, a, 3);
    d.set_edge(1, a, 3);
    d.set_edge(2, a, 3);
    d.set_edge(3, a, 3);
  }
  d.set_edge(0, 2, 1);
  d.set_edge(1, 1, 2);
  d.set_edge(2, 1, 2);
  d.set_output(2, f2.one());
  CHECK(hahn::check_well_formed(d).ok);
  CHECK(hahn::check_well_ordered(d).ok);

  AutomaticSeries s{d};
  auto support = hahn::support_prefix(s, 5);
  REQUIRE(support.size() == 5);
  for (int n = 1; n <= 5; ++n) {
    int64_t den = int64_t{1} << n;
    CHECK(support[n - 1].first == Rational(den - 1, den));
    CHECK(support[n - 1].second == f2.one());
  }
}

TEST_CASE("descending fractional loop: rejected with the offending edge") {
  // Accepts ".1", ".01", ".001", ...: exponents 2^-n descend.
  const FqField& f2 = FqField::get(2, 1);
  Dfao d(2, f2, 4, 0);
  for (int a = 0; a <= 2; ++a) {
    d.set_edge(0, a, 3);
    d.set_edge(1, a, 3);
    d.set_edge(2, a, 3);
    d.set_edge(3, a, 3);
  }
  d.set_edge(0, 2, 1);
  d.set_edge(1, 0, 1);
  d.set_edge(1, 1, 2);
  d.set_output(2, f2.one());
  CHECK(hahn::check_well_formed(d).ok);

  auto rep = hahn::check_well_ordered(d);
  REQUIRE_FALSE(rep.ok);
  CHECK(rep.state == 1);
  CHECK(rep.cycle_symbol == 0);
  CHECK(rep.other_symbol == 1);
  CHECK(rep.reason.find("exit digit") != std::string::npos);
  check_witness_descends(rep, d);
  // The first two pumped words are exactly .1 and .01.
  std::vector<int> w0 = rep.prefix, w1 = rep.prefix;
  w0.insert(w0.end(), rep.suffix.begin(), rep.suffix.end());
  w1.insert(w1.end(), rep.cycle.begin(), rep.cycle.end());
  w1.insert(w1.end(), rep.suffix.begin(), rep.suffix.end());
  CHECK(hahn::word_value(w0, 2) == Rational(1, 2));
  CHECK(hahn::word_value(w1, 2) == Rational(1, 4));

  CHECK_THROWS_AS(hahn::support_prefix(AutomaticSeries{d}, 3),
                  std::invalid_argument);
}

TEST_CASE("integer-side loop: powers of the base, and the work cap") {
  const FqField& f2 = FqField::get(2, 1);
  Dfao d = powers_of_p_dfao(2, f2);
  CHECK(hahn::check_well_formed(d).ok);
  CHECK(hahn::check_well_ordered(d).ok);
  AutomaticSeries s{d};
  auto support = hahn::support_prefix(s, 5);
  REQUIRE(support.size() == 5);
  for (int n = 0; n < 5; ++n) {
    CHECK(support[n].first == Rational(int64_t{1} << n));
    CHECK(support[n].second == f2.one());
  }
  CHECK_THROWS_AS(hahn::support_prefix(s, 5, 2), hahn::resource_limit_error);
}

TEST_CASE("random series: the well-ordered verdict is honest both ways") {
  Lcg rng(20240817);
  int pass_count = 0, fail_count = 0, capped = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int p = trial % 2 == 0 ? 2 : 3;
    const FqField& field = FqField::get(p, 1);
    int n = 2 + rng.next(3);
    Dfao raw(p, field, n, 0);
    for (int st = 0; st < n; ++st) {
      for (int a = 0; a <= p; ++a) raw.set_edge(st, a, rng.next(n));
      if (rng.next(3) == 0) {
        raw.set_output(st, field.from_int(1 + rng.next(p - 1 > 0 ? p - 1 : 1)));
      }
    }
    // Zero out every invalid word: the product with the validity acceptor
    // is well-formed by construction.
    Dfao wf = hahn::product(
        raw, hahn::validity_dfao(p, field), field,
        [](const FqElement& x, const FqElement& y) { return x * y; });
    REQUIRE(hahn::check_well_formed(wf).ok);
    AutomaticSeries s{wf};

    auto rep = hahn::check_well_ordered(wf);
    if (!rep.ok) {
      ++fail_count;
      CAPTURE(trial);
      check_witness_descends(rep, wf);
      // Well-formed + accepted means the pumped words are genuine support
      // exponents: the automaton's support really does descend forever.
      std::vector<int> w0 = rep.prefix, w1 = rep.prefix;
      w0.insert(w0.end(), rep.suffix.begin(), rep.suffix.end());
      w1.insert(w1.end(), rep.cycle.begin(), rep.cycle.end());
      w1.insert(w1.end(), rep.suffix.begin(), rep.suffix.end());
      CHECK(hahn::is_valid_expansion(w0, p));
      CHECK(hahn::is_valid_expansion(w1, p));
      continue;
    }
    ++pass_count;
    std::vector<std::pair<Rational, FqElement>> support;
    try {
      support = hahn::support_prefix(s, 40, 300000);
    } catch (const hahn::resource_limit_error&) {
      ++capped;
      continue;
    } catch (const hahn::overflow_error&) {
      ++capped;  // a support exponent beyond the 64-bit rational range
      continue;
    }
    CAPTURE(trial);
    for (size_t i = 0; i < support.size(); ++i) {
      if (i > 0) CHECK(support[i - 1].first < support[i].first);
      CHECK_FALSE(support[i].second.is_zero());
      CHECK(s.coefficient_at(support[i].first) == support[i].second);
    }
    // Completeness: every short valid word the automaton accepts must
    // appear, as long as its exponent is within the enumerated range.
    std::map<Rational, FqElement> listed(support.begin(), support.end());
    for (const auto& w : all_words(p, p == 2 ? 7 : 5)) {
      if (!hahn::is_valid_expansion(w, p)) continue;
      FqElement c = wf.eval(w);
      if (c.is_zero()) continue;
      Rational g = hahn::decode_exponent(w, p);
      if (support.size() == 40 && support.back().first < g) continue;
      auto it = listed.find(g);
      REQUIRE(it != listed.end());
      CHECK(it->second == c);
    }
  }
  // The corpus must exercise both verdicts to mean anything.
  CHECK(pass_count >= 50);
  CHECK(fail_count >= 50);
  CHECK(capped <= pass_count / 4);
}
