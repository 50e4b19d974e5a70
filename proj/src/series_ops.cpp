#include "hahn/series_ops.hpp"

#include <map>
#include <queue>
#include <utility>
#include <vector>

namespace hahn {

namespace {

void require_compatible(const AutomaticSeries& a, const AutomaticSeries& b) {
  if (a.p() != b.p()) {
    throw std::invalid_argument("series alphabets differ");
  }
  if (&a.field() != &b.field()) {
    throw std::invalid_argument("series coefficient fields differ");
  }
}

FqElement mul_outputs(const FqElement& x, const FqElement& y) { return x * y; }

}  // namespace

AutomaticSeries add(const AutomaticSeries& a, const AutomaticSeries& b) {
  require_compatible(a, b);
  Dfao sum = product(
      a.dfao(), b.dfao(), a.field(),
      [](const FqElement& x, const FqElement& y) { return x + y; });
  return AutomaticSeries(minimize(sum));
}

AutomaticSeries scalar_mul(const FqElement& c, const AutomaticSeries& x) {
  if (&c.field() != &x.field()) {
    throw std::invalid_argument("scalar lives in a different field");
  }
  Dfao scaled = map_outputs(x.dfao(), x.field(),
                            [&c](const FqElement& v) { return c * v; });
  return AutomaticSeries(minimize(scaled));
}

bool equals(const AutomaticSeries& a, const AutomaticSeries& b) {
  require_compatible(a, b);
  return equal_function(a.dfao(), b.dfao());
}

AutomaticSeries radix_shift(const AutomaticSeries& x) {
  const Dfao& a = x.dfao();
  const int p = a.p();
  const int n = a.num_states();
  // The expansion of p*g is the expansion of g with the dot one position
  // later, up to normalization. Simulate the original reader with a
  // one-digit delay: hold the last digit back, and at the dot feed the
  // reader the dot first, then the held digit.
  //
  // State layout: 0 = start; pre(q, d) = original at q with held digit d,
  // dot not yet seen; pend(q, d) = original consumed the dot, digit d still
  // held; post(q) = everything flushed; then a dead sink. Normalization
  // ("10." reads as "1.", not "1.0") is handled in the outputs of pend, and
  // invalid inputs are zeroed by the validity product at the end.
  auto pre = [&](int q, int d) { return 1 + q * p + d; };
  auto pend = [&](int q, int d) { return 1 + n * p + q * p + d; };
  auto post = [&](int q) { return 1 + 2 * n * p + q; };
  const int dead = 1 + 2 * n * p + n;
  Dfao b(p, a.field(), dead + 1, 0);

  for (int d = 0; d < p; ++d) b.set_edge(0, d, pre(a.q0(), d));
  b.set_edge(0, p, pend(a.next(a.q0(), p), 0));
  for (int q = 0; q < n; ++q) {
    for (int d = 0; d < p; ++d) {
      int fed = a.next(q, d);
      for (int e = 0; e < p; ++e) b.set_edge(pre(q, d), e, pre(fed, e));
      b.set_edge(pre(q, d), p, pend(a.next(q, p), d));
      for (int e = 0; e < p; ++e) {
        b.set_edge(pend(q, d), e, post(a.next(fed, e)));
      }
      b.set_edge(pend(q, d), p, dead);
      b.set_output(pend(q, d),
                   d == 0 ? a.output(q).frobenius()
                          : a.output(fed).frobenius());
    }
    for (int e = 0; e < p; ++e) b.set_edge(post(q), e, post(a.next(q, e)));
    b.set_edge(post(q), p, dead);
    b.set_output(post(q), a.output(q).frobenius());
  }
  for (int s = 0; s <= p; ++s) b.set_edge(dead, s, dead);

  Dfao clean =
      product(b, validity_dfao(p, a.field()), a.field(), mul_outputs);
  return AutomaticSeries(minimize(clean));
}

namespace {

// NFA accepting 0^a . rev . 0^b with b >= 1, where rev is any string the
// reversed indicator DFAO `r` accepts. rev is a reversed valid expansion,
// so it never starts with the digit 0: the leading-padding phase is
// unambiguous, and the only nondeterminism is guessing where the trailing
// padding starts.
Nfa padded_track_nfa(const Dfao& r) {
  const int p = r.p();
  const int n = r.num_states();
  Nfa t;
  t.p = p;
  // 0 = leading padding, 1..n = r's states shifted by one, n+1 = done.
  const int pad = 0, done = n + 1;
  t.trans.assign(n + 2, std::vector<std::vector<int>>(p + 1));
  t.accepting.assign(n + 2, 0);
  t.accepting[done] = 1;
  t.initial = {pad};
  t.trans[pad][0] = {pad};
  for (int sym = 1; sym <= p; ++sym) {
    t.trans[pad][sym] = {1 + r.next(r.q0(), sym)};
  }
  for (int s = 0; s < n; ++s) {
    for (int sym = 0; sym <= p; ++sym) {
      t.trans[1 + s][sym] = {1 + r.next(s, sym)};
    }
    if (r.accepting(s)) t.trans[1 + s][0].push_back(done);
  }
  t.trans[done][0] = {done};
  return t;
}

// Pair synchronization of two track NFAs over the synthetic alphabet
// (x, y) |-> x*(p+1)+y. Dots must line up: only (digit,digit) and
// (dot,dot) columns exist.
Nfa pair_nfa(const Nfa& t1, const Nfa& t2, int p) {
  const int n1 = t1.num_states(), n2 = t2.num_states();
  Nfa s;
  s.p = (p + 1) * (p + 1) - 1;  // (dot,dot) is the top symbol
  s.trans.assign(n1 * n2, std::vector<std::vector<int>>(s.p + 1));
  s.accepting.assign(n1 * n2, 0);
  for (int u1 : t1.initial) {
    for (int u2 : t2.initial) s.initial.push_back(u1 * n2 + u2);
  }
  for (int u1 = 0; u1 < n1; ++u1) {
    for (int u2 = 0; u2 < n2; ++u2) {
      int from = u1 * n2 + u2;
      s.accepting[from] = t1.accepting[u1] && t2.accepting[u2];
      for (int x = 0; x <= p; ++x) {
        for (int y = 0; y <= p; ++y) {
          if ((x == p) != (y == p)) continue;
          auto& targets = s.trans[from][x * (p + 1) + y];
          for (int v1 : t1.trans[u1][x]) {
            for (int v2 : t2.trans[u2][y]) {
              targets.push_back(v1 * n2 + v2);
            }
          }
        }
      }
    }
  }
  return s;
}

// Split every state by the symbol that entered it. Path counting through
// the carry automaton must keep digit pairs with equal sums and equal
// carries apart even when the underlying DFA state collides; the tag makes
// those targets distinct. Never minimize the result - that would undo the
// split.
Dfao refine_by_last_symbol(const Dfao& d) {
  std::map<std::pair<int, int>, int> id;  // (state, 1+symbol or 0) -> index
  std::vector<std::pair<int, int>> states;
  auto intern = [&](int q, int tag) {
    auto [it, fresh] = id.emplace(std::make_pair(q, tag),
                                  static_cast<int>(states.size()));
    if (fresh) states.emplace_back(q, tag);
    return it->second;
  };
  intern(d.q0(), 0);
  for (size_t i = 0; i < states.size(); ++i) {
    for (int sym = 0; sym <= d.p(); ++sym) {
      intern(d.next(states[i].first, sym), 1 + sym);
    }
  }
  Dfao out(d.p(), d.field(), static_cast<int>(states.size()), 0);
  for (size_t i = 0; i < states.size(); ++i) {
    for (int sym = 0; sym <= d.p(); ++sym) {
      out.set_edge(static_cast<int>(i), sym,
                   id.at({d.next(states[i].first, sym), 1 + sym}));
    }
    out.set_output(static_cast<int>(i), d.output(states[i].first));
  }
  return out;
}

// Column-sum reader: a path chooses, for every column of the sum string,
// a digit pair consistent with the running carry. One accepting path per
// pair of padded expansions adding up to the input.
Nfa carry_nfa(const Dfao& refined, int p) {
  const int n = refined.num_states();
  Nfa c;
  c.p = p;
  c.trans.assign(2 * n, std::vector<std::vector<int>>(p + 1));
  c.accepting.assign(2 * n, 0);
  c.initial = {refined.q0() * 2};
  for (int q = 0; q < n; ++q) {
    for (int carry = 0; carry < 2; ++carry) {
      int from = q * 2 + carry;
      for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
          int total = x + y + carry;
          c.trans[from][total % p].push_back(
              refined.next(q, x * (p + 1) + y) * 2 + total / p);
        }
      }
      // The dot column: both tracks read their dot, the carry crosses
      // from the fractional side to the integer side untouched.
      c.trans[from][p].push_back(refined.next(q, refined.p()) * 2 + carry);
    }
    c.accepting[q * 2] = refined.accepting(q);
  }
  return c;
}

// The count automaton reads padded reversed sums. Stabilize the fractional
// padding by walking states+1 zeros from the start (the walk is inside its
// terminal cycle by then, where the counts of a well-ordered product are
// constant), and absorb the single mandatory integer padding zero into the
// outputs.
Dfao strip_padding(const Dfao& t) {
  int q = t.q0();
  for (int i = 0; i <= t.num_states(); ++i) q = t.next(q, 0);
  Dfao out(t.p(), t.field(), t.num_states(), q);
  for (int s = 0; s < t.num_states(); ++s) {
    for (int sym = 0; sym <= t.p(); ++sym) out.set_edge(s, sym, t.next(s, sym));
    out.set_output(s, t.output(t.next(s, 0)));
  }
  return out;
}

// Reversed indicator automata of every nonzero coefficient value, in value
// code order; values the series never takes are dropped.
std::vector<std::pair<FqElement, Dfao>> indicator_reverses(
    const Dfao& d, const FqField& prime_field, size_t max_states) {
  std::vector<std::pair<FqElement, Dfao>> out;
  for (const FqElement& v : d.field().all_elements()) {
    if (v.is_zero()) continue;
    Dfao ind = minimize(map_outputs(d, prime_field, [&](const FqElement& c) {
      return c == v ? prime_field.one() : prime_field.zero();
    }));
    auto reach = reachable_states(ind);
    bool empty = true;
    for (int s = 0; s < ind.num_states(); ++s) {
      if (reach[s] && ind.accepting(s)) empty = false;
    }
    if (empty) continue;
    out.emplace_back(v, reverse(ind, max_states));
  }
  return out;
}

}  // namespace

AutomaticSeries multiply(const AutomaticSeries& a, const AutomaticSeries& b,
                         size_t max_states) {
  require_compatible(a, b);
  for (const AutomaticSeries* s : {&a, &b}) {
    SaguaroReport rep = check_well_ordered(s->dfao());
    if (!rep.ok) {
      throw std::invalid_argument(
          "multiply requires well-ordered supports: " + rep.reason);
    }
  }
  const int p = a.p();
  const FqField& fq = a.field();
  const FqField& fp = FqField::get(p, 1);
  const Dfao valid = validity_dfao(p, fp);

  AutomaticSeries acc = AutomaticSeries::zero(p, fq);
  auto parts_a = indicator_reverses(a.dfao(), fp, max_states);
  auto parts_b = indicator_reverses(b.dfao(), fp, max_states);
  for (const auto& [va, ra] : parts_a) {
    for (const auto& [vb, rb] : parts_b) {
      Nfa pairs = pair_nfa(padded_track_nfa(ra), padded_track_nfa(rb), p);
      Dfao joint = determinize(pairs, fp, fp.one(), max_states);
      Dfao counts = count_paths_mod(
          carry_nfa(refine_by_last_symbol(prune_unreachable(joint)), p), fp,
          max_states);
      Dfao on_valid = product(reverse(strip_padding(counts), max_states),
                              valid, fp, mul_outputs);
      FqElement weight = va * vb;
      Dfao weighted =
          map_outputs(minimize(on_valid), fq, [&](const FqElement& c) {
            return weight * fq.from_int(c.code());
          });
      acc = add(acc, AutomaticSeries(std::move(weighted)));
    }
  }
  return acc;
}

AutomaticSeries evaluate_polynomial(const XPoly& f, const AutomaticSeries& x,
                                    size_t max_states) {
  if (&f.field() != &x.field()) {
    throw std::invalid_argument("polynomial and series fields differ");
  }
  if (!f.is_integral()) {
    throw std::invalid_argument(
        "evaluate_polynomial needs polynomial coefficients in t");
  }
  const int p = x.p();
  const FqField& fq = x.field();

  auto power = [&](int64_t j) {
    if (j == 0) {
      return AutomaticSeries::from_finite_series(p, fq,
                                                 {{Rational(0), fq.one()}});
    }
    int shifts = 0;
    while (j % p == 0) {
      j /= p;
      ++shifts;
    }
    AutomaticSeries base = x;
    for (int i = 0; i < shifts; ++i) base = radix_shift(base);
    AutomaticSeries result =
        AutomaticSeries::from_finite_series(p, fq, {{Rational(0), fq.one()}});
    AutomaticSeries sq = base;
    for (int64_t rest = j; rest > 0; rest >>= 1) {
      if (rest & 1) result = multiply(result, sq, max_states);
      if (rest > 1) sq = multiply(sq, sq, max_states);
    }
    return result;
  };

  AutomaticSeries acc = AutomaticSeries::zero(p, fq);
  for (int j = 0; j <= f.degree(); ++j) {
    RationalFunction cj = f.coeff(j);
    if (cj.is_zero()) continue;
    std::vector<std::pair<Rational, FqElement>> terms;
    const auto& cs = cj.num().coeffs();
    for (size_t i = 0; i < cs.size(); ++i) {
      terms.emplace_back(Rational(static_cast<int64_t>(i)), cs[i]);
    }
    AutomaticSeries monomial = multiply(
        AutomaticSeries::from_finite_series(p, fq, terms), power(j),
        max_states);
    acc = add(acc, monomial);
  }
  return acc;
}

}  // namespace hahn
