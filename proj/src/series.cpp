#include "hahn/series.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace hahn {

bool is_valid_expansion(const std::vector<int>& w, int p) {
  int dots = 0;
  for (int a : w) {
    if (a < 0 || a > p) return false;
    if (a == p) ++dots;
  }
  if (dots != 1) return false;
  return w.front() != 0 && w.back() != 0;
}

std::vector<int> encode_exponent(const Rational& g, int p) {
  if (g < Rational(0)) {
    throw std::invalid_argument("exponent must be nonnegative");
  }
  int64_t den = g.den();
  while (den % p == 0) den /= p;
  if (den != 1) {
    throw std::invalid_argument(
        "exponent denominator is not a power of the base");
  }
  int64_t ip = g.floor();
  Rational frac = g - Rational(ip);

  std::vector<int> w;
  {
    std::vector<int> digits;
    for (int64_t v = ip; v > 0; v /= p) {
      digits.push_back(static_cast<int>(v % p));
    }
    w.assign(digits.rbegin(), digits.rend());
  }
  w.push_back(p);  // the dot
  {
    int j = 0;
    for (int64_t dd = frac.den(); dd > 1; dd /= p) ++j;
    std::vector<int> digits(j);
    int64_t a = frac.num();
    for (int i = j - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(a % p);
      a /= p;
    }
    w.insert(w.end(), digits.begin(), digits.end());
  }
  return w;
}

Rational word_value(const std::vector<int>& w, int p) {
  int dot = -1;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] > p) {
      throw std::invalid_argument("word_value: symbol out of range");
    }
    if (w[i] == p) {
      if (dot >= 0) throw std::invalid_argument("word_value: two dots");
      dot = static_cast<int>(i);
    }
  }
  if (dot < 0) throw std::invalid_argument("word_value: no dot");
  Rational v(0);
  for (int i = 0; i < dot; ++i) v = v * Rational(p) + Rational(w[i]);
  Rational scale(1, p);
  for (size_t i = dot + 1; i < w.size(); ++i) {
    v += Rational(w[i]) * scale;
    scale = scale * Rational(1, p);
  }
  return v;
}

bool word_value_less(const std::vector<int>& a, const std::vector<int>& b,
                     int p) {
  auto split = [p](const std::vector<int>& w) {
    int dot = -1;
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 0 || w[i] > p) {
        throw std::invalid_argument("word_value_less: symbol out of range");
      }
      if (w[i] == p) {
        if (dot >= 0) throw std::invalid_argument("word_value_less: two dots");
        dot = static_cast<int>(i);
      }
    }
    if (dot < 0) throw std::invalid_argument("word_value_less: no dot");
    std::vector<int> ip(w.begin(), w.begin() + dot);
    std::vector<int> fp(w.begin() + dot + 1, w.end());
    ip.erase(ip.begin(),
             std::find_if(ip.begin(), ip.end(), [](int d) { return d != 0; }));
    return std::make_pair(std::move(ip), std::move(fp));
  };
  auto [ia, fa] = split(a);
  auto [ib, fb] = split(b);
  if (ia.size() != ib.size()) return ia.size() < ib.size();
  if (ia != ib) return ia < ib;  // same length: lexicographic = numeric
  size_t len = std::max(fa.size(), fb.size());
  for (size_t i = 0; i < len; ++i) {
    int da = i < fa.size() ? fa[i] : 0;
    int db = i < fb.size() ? fb[i] : 0;
    if (da != db) return da < db;
  }
  return false;
}

Rational decode_exponent(const std::vector<int>& w, int p) {
  if (!is_valid_expansion(w, p)) {
    throw std::invalid_argument("not a valid base-" + std::to_string(p) +
                                " expansion");
  }
  return word_value(w, p);
}

Dfao validity_dfao(int p, const FqField& field) {
  // 0 start, 1 integer part, 2 just past the dot, 3 fraction ending in a
  // nonzero digit, 4 fraction ending in 0, 5 dead.
  enum { kStart = 0, kInt = 1, kDot = 2, kFrac = 3, kFrac0 = 4, kDead = 5 };
  Dfao d(p, field, 6, kStart);
  for (int a = 0; a < p; ++a) {
    d.set_edge(kStart, a, a == 0 ? kDead : kInt);
    d.set_edge(kInt, a, kInt);
    d.set_edge(kDot, a, a == 0 ? kFrac0 : kFrac);
    d.set_edge(kFrac, a, a == 0 ? kFrac0 : kFrac);
    d.set_edge(kFrac0, a, a == 0 ? kFrac0 : kFrac);
    d.set_edge(kDead, a, kDead);
  }
  d.set_edge(kStart, p, kDot);
  d.set_edge(kInt, p, kDot);
  d.set_edge(kDot, p, kDead);
  d.set_edge(kFrac, p, kDead);
  d.set_edge(kFrac0, p, kDead);
  d.set_edge(kDead, p, kDead);
  d.set_output(kDot, field.one());
  d.set_output(kFrac, field.one());
  return d;
}

WellFormedReport check_well_formed(const Dfao& d) {
  d.validate();
  Dfao v = validity_dfao(d.p(), d.field());
  // Shortest-witness BFS over the pair graph.
  std::map<std::pair<int, int>, std::pair<std::pair<int, int>, int>> parent;
  std::queue<std::pair<int, int>> work;
  std::set<std::pair<int, int>> seen;
  std::pair<int, int> start{d.q0(), v.q0()};
  seen.insert(start);
  work.push(start);
  while (!work.empty()) {
    auto cur = work.front();
    work.pop();
    if (!d.output(cur.first).is_zero() && v.output(cur.second).is_zero()) {
      std::vector<int> w;
      for (auto node = cur; node != start; node = parent[node].first) {
        w.push_back(parent[node].second);
      }
      std::reverse(w.begin(), w.end());
      WellFormedReport rep;
      rep.ok = false;
      rep.witness = w;
      std::ostringstream os;
      os << "output " << d.output(cur.first).str()
         << " on the invalid word \"" << string_from_symbols(w, d.p())
         << "\"";
      rep.reason = os.str();
      return rep;
    }
    for (int a = 0; a <= d.p(); ++a) {
      std::pair<int, int> nx{d.next(cur.first, a), v.next(cur.second, a)};
      if (seen.insert(nx).second) {
        parent[nx] = {cur, a};
        work.push(nx);
      }
    }
  }
  return WellFormedReport{};
}

namespace {

// States that can reach an accepting state using digit edges only.
std::vector<char> digit_relevant_set(const Dfao& d) {
  int n = d.num_states();
  std::vector<std::vector<int>> rev(n);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < d.p(); ++a) rev[d.next(s, a)].push_back(s);
  }
  std::vector<char> rel(n, 0);
  std::queue<int> work;
  for (int s = 0; s < n; ++s) {
    if (d.accepting(s)) {
      rel[s] = 1;
      work.push(s);
    }
  }
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int u : rev[s]) {
      if (!rel[u]) {
        rel[u] = 1;
        work.push(u);
      }
    }
  }
  return rel;
}

// States reachable by words containing exactly one dot.
std::vector<char> postradix_set(const Dfao& d) {
  int n = d.num_states();
  std::vector<char> pre(n, 0), post(n, 0);
  std::queue<int> work;
  pre[d.q0()] = 1;
  work.push(d.q0());
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int a = 0; a < d.p(); ++a) {
      int t = d.next(s, a);
      if (!pre[t]) {
        pre[t] = 1;
        work.push(t);
      }
    }
  }
  for (int s = 0; s < n; ++s) {
    if (!pre[s]) continue;
    int t = d.next(s, d.p());
    if (!post[t]) {
      post[t] = 1;
      work.push(t);
    }
  }
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int a = 0; a < d.p(); ++a) {
      int t = d.next(s, a);
      if (!post[t]) {
        post[t] = 1;
        work.push(t);
      }
    }
  }
  return post;
}

// Shortest word from q0 that consumes exactly one dot and lands on
// `target`. Exists whenever target is in postradix_set.
std::vector<int> word_to_postradix(const Dfao& d, int target) {
  int n = d.num_states();
  // Node encoding: s + n * dot_seen.
  std::vector<int> par(2 * n, -2), sym(2 * n, -1);
  std::queue<int> work;
  int start = d.q0();
  par[start] = -1;
  work.push(start);
  int goal = target + n;
  while (!work.empty() && par[goal] == -2) {
    int node = work.front();
    work.pop();
    int s = node % n, flag = node / n;
    for (int a = 0; a <= d.p(); ++a) {
      if (a == d.p() && flag == 1) continue;  // no second dot
      int t = d.next(s, a);
      int nx = t + n * (flag || a == d.p() ? 1 : 0);
      if (par[nx] == -2) {
        par[nx] = node;
        sym[nx] = a;
        work.push(nx);
      }
    }
  }
  if (par[goal] == -2) {
    throw internal_error("word_to_postradix: target not reachable");
  }
  std::vector<int> w;
  for (int node = goal; par[node] >= 0; node = par[node]) {
    w.push_back(sym[node]);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

// Shortest digit-only word from `from` to a state satisfying `pred`, with
// every intermediate state allowed by `ok`.
std::optional<std::vector<int>> digit_bfs(
    const Dfao& d, int from, const std::function<bool(int)>& pred,
    const std::function<bool(int)>& ok) {
  int n = d.num_states();
  std::vector<int> par(n, -2), sym(n, -1);
  std::queue<int> work;
  par[from] = -1;
  work.push(from);
  int goal = -1;
  if (pred(from)) goal = from;
  while (!work.empty() && goal < 0) {
    int s = work.front();
    work.pop();
    for (int a = 0; a < d.p(); ++a) {
      int t = d.next(s, a);
      if (!ok(t) || par[t] != -2) continue;
      par[t] = s;
      sym[t] = a;
      if (pred(t)) {
        goal = t;
        break;
      }
      work.push(t);
    }
  }
  if (goal < 0) return std::nullopt;
  std::vector<int> w;
  for (int s = goal; par[s] >= 0; s = par[s]) w.push_back(sym[s]);
  std::reverse(w.begin(), w.end());
  return w;
}

void append(std::vector<int>& w, const std::vector<int>& tail) {
  w.insert(w.end(), tail.begin(), tail.end());
}

}  // namespace

SaguaroReport check_well_ordered(const Dfao& d) {
  d.validate();
  SaguaroReport rep;
  int n = d.num_states();
  auto rel = digit_relevant_set(d);
  auto post = postradix_set(d);
  std::vector<char> in_d(n, 0);
  for (int s = 0; s < n; ++s) in_d[s] = rel[s] && post[s];

  // Strongly connected components of the digit graph restricted to in_d
  // (iterative Tarjan).
  std::vector<int> comp(n, -1);
  std::vector<int> comp_size;
  {
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stk;
    int next_index = 0;
    struct Frame {
      int v;
      int sym;
    };
    for (int root = 0; root < n; ++root) {
      if (!in_d[root] || index[root] >= 0) continue;
      std::vector<Frame> call;
      index[root] = low[root] = next_index++;
      stk.push_back(root);
      on_stack[root] = 1;
      call.push_back({root, 0});
      while (!call.empty()) {
        Frame& f = call.back();
        if (f.sym < d.p()) {
          int t = d.next(f.v, f.sym++);
          if (!in_d[t]) continue;
          if (index[t] < 0) {
            index[t] = low[t] = next_index++;
            stk.push_back(t);
            on_stack[t] = 1;
            call.push_back({t, 0});
          } else if (on_stack[t]) {
            low[f.v] = std::min(low[f.v], index[t]);
          }
        } else {
          int v = f.v;
          call.pop_back();
          if (!call.empty()) {
            low[call.back().v] = std::min(low[call.back().v], low[v]);
          }
          if (low[v] == index[v]) {
            int cid = static_cast<int>(comp_size.size());
            int sz = 0;
            for (;;) {
              int w = stk.back();
              stk.pop_back();
              on_stack[w] = 0;
              comp[w] = cid;
              ++sz;
              if (w == v) break;
            }
            comp_size.push_back(sz);
          }
        }
      }
    }
  }

  auto is_cyclic_edge = [&](int s, int a) {
    int t = d.next(s, a);
    return in_d[t] && comp[t] == comp[s] && (comp_size[comp[s]] > 1 || t == s);
  };
  auto cycle_word_through = [&](int s, int a) {
    std::vector<int> w{a};
    int t = d.next(s, a);
    if (t != s) {
      auto back = digit_bfs(
          d, t, [&](int u) { return u == s; },
          [&](int u) { return in_d[u] && comp[u] == comp[s]; });
      if (!back) throw internal_error("cycle edge with no way back");
      append(w, *back);
    }
    return w;
  };
  auto escape_word = [&](int from) {
    auto w = digit_bfs(
        d, from, [&](int u) { return d.accepting(u); },
        [&](int) { return true; });
    if (!w) throw internal_error("escape from a digit-relevant state");
    return *w;
  };

  auto finish = [&](int s, int a_low, int a_high, std::vector<int> cycle,
                    std::vector<int> suffix, const std::string& reason) {
    rep.ok = false;
    rep.state = s;
    rep.cycle_symbol = a_low;
    rep.other_symbol = a_high;
    rep.reason = reason;
    rep.prefix = word_to_postradix(d, s);
    rep.cycle = std::move(cycle);
    rep.suffix = std::move(suffix);
    // The witness contract: one extra pass through the cycle strictly
    // lowers the value, and both words are accepted.
    std::vector<int> w0 = rep.prefix, w1 = rep.prefix;
    append(w0, rep.suffix);
    append(w1, rep.cycle);
    append(w1, rep.suffix);
    if (!word_value_less(w1, w0, d.p()) || d.eval(w0).is_zero() ||
        d.eval(w1).is_zero()) {
      throw internal_error("well-ordered check: witness verification failed");
    }
  };

  for (int s = 0; s < n; ++s) {
    if (!in_d[s]) continue;
    std::vector<int> cyc;
    for (int a = 0; a < d.p(); ++a) {
      if (is_cyclic_edge(s, a)) cyc.push_back(a);
    }
    if (cyc.size() >= 2) {
      // Two cycles at one vertex. The cycle led by the smaller digit has
      // the smaller repeated-forever value, so inserting it once into a
      // long enough run of the other cycle descends.
      auto c_low = cycle_word_through(s, cyc[0]);
      auto c_high = cycle_word_through(s, cyc[1]);
      auto esc = escape_word(s);
      std::vector<int> prefix = word_to_postradix(d, s);
      for (int m = 0;; ++m) {
        if (m > 4 * n + 8) {
          throw internal_error("well-ordered check: no descending insertion");
        }
        std::vector<int> suffix;
        for (int i = 0; i < m; ++i) append(suffix, c_high);
        append(suffix, esc);
        std::vector<int> w0 = prefix, w1 = prefix;
        append(w0, suffix);
        append(w1, c_low);
        append(w1, suffix);
        if (word_value_less(w1, w0, d.p())) {
          std::ostringstream os;
          os << "state " << s << " lies on two cycles (digits " << cyc[0]
             << " and " << cyc[1] << ")";
          finish(s, cyc[0], cyc[1], c_low, suffix, os.str());
          return rep;
        }
      }
    }
    if (cyc.size() == 1) {
      int a_c = cyc[0];
      for (int a_e = a_c + 1; a_e < d.p(); ++a_e) {
        if (!in_d[d.next(s, a_e)] || is_cyclic_edge(s, a_e)) continue;
        // A relevant exit with a digit >= the cycle digit: looping once
        // more before exiting always lowers the value.
        auto c = cycle_word_through(s, a_c);
        std::vector<int> suffix{a_e};
        append(suffix, escape_word(d.next(s, a_e)));
        std::ostringstream os;
        os << "cycle digit " << a_c << " at state " << s
           << " does not exceed the exit digit " << a_e;
        finish(s, a_c, a_e, c, suffix, os.str());
        return rep;
      }
    }
  }
  return rep;
}

AutomaticSeries::AutomaticSeries(Dfao d) : d_(std::move(d)) {
  WellFormedReport rep = check_well_formed(d_);
  if (!rep.ok) {
    throw std::invalid_argument("automaton is not a series: " + rep.reason);
  }
}

AutomaticSeries AutomaticSeries::zero(int p, const FqField& field) {
  Dfao d(p, field, 1, 0);
  for (int a = 0; a <= p; ++a) d.set_edge(0, a, 0);
  return AutomaticSeries(std::move(d));
}

AutomaticSeries AutomaticSeries::from_finite_series(
    int p, const FqField& field,
    const std::vector<std::pair<Rational, FqElement>>& terms) {
  std::map<std::vector<int>, FqElement> words;
  for (const auto& [g, c] : terms) {
    if (&c.field() != &field) {
      throw std::invalid_argument("from_finite_series: coefficient field");
    }
    if (c.is_zero()) continue;
    auto w = encode_exponent(g, p);
    if (!words.emplace(std::move(w), c).second) {
      throw std::invalid_argument("from_finite_series: duplicate exponent");
    }
  }
  // Trie over the words, with a dead sink for everything else.
  std::map<std::vector<int>, int> node;
  node[{}] = 0;
  for (const auto& [w, c] : words) {
    std::vector<int> prefix;
    for (int a : w) {
      prefix.push_back(a);
      node.emplace(prefix, static_cast<int>(node.size()));
    }
  }
  int dead = static_cast<int>(node.size());
  Dfao d(p, field, dead + 1, 0);
  for (int a = 0; a <= p; ++a) d.set_edge(dead, a, dead);
  for (const auto& [w, id] : node) {
    for (int a = 0; a <= p; ++a) {
      auto child = w;
      child.push_back(a);
      auto it = node.find(child);
      d.set_edge(id, a, it == node.end() ? dead : it->second);
    }
    auto term = words.find(w);
    if (term != words.end()) d.set_output(id, term->second);
  }
  return AutomaticSeries(minimize(d));
}

bool AutomaticSeries::is_zero() const {
  auto reach = reachable_states(d_);
  for (int s = 0; s < d_.num_states(); ++s) {
    if (reach[s] && d_.accepting(s)) return false;
  }
  return true;
}

FqElement AutomaticSeries::coefficient_at(const Rational& g) const {
  if (g < Rational(0)) return field().zero();
  int64_t den = g.den();
  while (den % d_.p() == 0) den /= d_.p();
  if (den != 1) return field().zero();  // exponent outside the support domain
  return d_.eval(encode_exponent(g, d_.p()));
}

AutomaticSeries canonicalize(const AutomaticSeries& s) {
  return AutomaticSeries(minimize(s.dfao()));
}

std::vector<std::pair<Rational, FqElement>> support_prefix(
    const AutomaticSeries& s, int k, size_t work_cap) {
  std::vector<std::pair<Rational, FqElement>> out;
  if (k <= 0) return out;
  const Dfao& d = s.dfao();
  SaguaroReport sag = check_well_ordered(d);
  if (!sag.ok) {
    throw std::invalid_argument(
        "support enumeration requires a well-ordered series: " + sag.reason);
  }
  const int p = d.p();
  auto rel = digit_relevant_set(d);
  int n = d.num_states();

  size_t work = 0;
  auto spend = [&]() {
    if (++work > work_cap) {
      throw resource_limit_error("support enumeration work cap exceeded");
    }
  };

  // Depth-first fractional enumeration from the state just past the dot;
  // "stop here" sorts before every continuation and smaller digits sort
  // before larger ones, which is exactly numeric order on valid tails.
  auto enumerate_frac = [&](int start, const Rational& base) {
    auto emit = [&](int st, const std::vector<int>& digits) {
      if (!d.accepting(st)) return;
      Rational f(0);
      Rational scale(1, p);
      for (int a : digits) {
        f += Rational(a) * scale;
        scale = scale * Rational(1, p);
      }
      out.emplace_back(base + f, d.output(st));
    };
    struct Frame {
      int state;
      int next_sym;
    };
    std::vector<Frame> stack;
    std::vector<int> digits;
    emit(start, digits);
    if (static_cast<int>(out.size()) >= k) return;
    stack.push_back({start, 0});
    while (!stack.empty()) {
      spend();
      Frame& f = stack.back();
      if (f.next_sym >= p) {
        stack.pop_back();
        if (!digits.empty()) digits.pop_back();
        continue;
      }
      int a = f.next_sym++;
      int t = d.next(f.state, a);
      if (!rel[t]) continue;
      digits.push_back(a);
      emit(t, digits);
      if (static_cast<int>(out.size()) >= k) return;
      stack.push_back({t, 0});
    }
  };

  // Integer parts ascending = shorter first, lexicographic within a
  // length. Explore only prefixes that can still reach a state whose
  // dot-successor can accept something.
  std::vector<char> productive(n, 0);
  for (int st = 0; st < n; ++st) productive[st] = rel[d.next(st, p)];
  std::vector<char> can(n, 0);
  {
    std::vector<std::vector<int>> rev(n);
    for (int st = 0; st < n; ++st) {
      for (int a = 0; a < p; ++a) rev[d.next(st, a)].push_back(st);
    }
    std::queue<int> workq;
    for (int st = 0; st < n; ++st) {
      if (productive[st]) {
        can[st] = 1;
        workq.push(st);
      }
    }
    while (!workq.empty()) {
      int st = workq.front();
      workq.pop();
      for (int u : rev[st]) {
        if (!can[u]) {
          can[u] = 1;
          workq.push(u);
        }
      }
    }
  }

  struct Item {
    std::vector<int> word;
    int state;
  };
  auto later = [](const Item& a, const Item& b) {
    if (a.word.size() != b.word.size()) return a.word.size() > b.word.size();
    return a.word > b.word;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
  if (can[d.q0()]) queue.push({{}, d.q0()});
  while (!queue.empty() && static_cast<int>(out.size()) < k) {
    spend();
    Item cur = queue.top();
    queue.pop();
    if (productive[cur.state]) {
      Rational value(0);
      for (int a : cur.word) value = value * Rational(p) + Rational(a);
      enumerate_frac(d.next(cur.state, p), value);
      if (static_cast<int>(out.size()) >= k) break;
    }
    for (int a = cur.word.empty() ? 1 : 0; a < p; ++a) {
      int t = d.next(cur.state, a);
      if (!can[t]) continue;
      Item child{cur.word, t};
      child.word.push_back(a);
      queue.push(std::move(child));
    }
  }
  return out;
}

}  // namespace hahn
