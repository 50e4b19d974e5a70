#include "hahn/dfao.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <utility>

namespace hahn {

Dfao::Dfao(int p, const FqField& field, int num_states, int q0)
    : p_(p), field_(&field), q0_(q0) {
  if (p < 2) throw std::invalid_argument("Dfao: alphabet base must be >= 2");
  if (num_states <= 0) throw std::invalid_argument("Dfao: need >= 1 state");
  if (q0 < 0 || q0 >= num_states) {
    throw std::invalid_argument("Dfao: start state out of range");
  }
  delta_.assign(static_cast<size_t>(num_states) * (p + 1), -1);
  tau_.assign(num_states, field.zero());
}

void Dfao::set_edge(int s, int a, int t) {
  if (s < 0 || s >= num_states() || a < 0 || a > p_ || t < 0 ||
      t >= num_states()) {
    throw std::invalid_argument("Dfao::set_edge: out of range");
  }
  delta_[idx(s, a)] = t;
}

void Dfao::set_output(int s, FqElement v) {
  if (s < 0 || s >= num_states()) {
    throw std::invalid_argument("Dfao::set_output: state out of range");
  }
  if (&v.field() != field_) {
    throw std::invalid_argument("Dfao::set_output: wrong field");
  }
  tau_[s] = std::move(v);
}

int Dfao::run_from(int s, const std::vector<int>& word) const {
  for (int a : word) {
    if (a < 0 || a > p_) throw std::invalid_argument("Dfao::run: bad symbol");
    s = delta_[idx(s, a)];
  }
  return s;
}

void Dfao::validate() const {
  for (int s = 0; s < num_states(); ++s) {
    for (int a = 0; a <= p_; ++a) {
      int t = delta_[idx(s, a)];
      if (t < 0 || t >= num_states()) {
        throw internal_error("Dfao: missing or out-of-range transition");
      }
    }
    if (&tau_[s].field() != field_) {
      throw internal_error("Dfao: output in wrong field");
    }
  }
}

std::string Dfao::serialize() const {
  std::ostringstream os;
  os << "dfao p=" << p_ << " states=" << num_states() << " q0=" << q0_
     << " outputs=" << field_->descriptor() << "\n";
  for (int s = 0; s < num_states(); ++s) {
    for (int a = 0; a <= p_; ++a) {
      os << s << " ";
      if (a == p_) {
        os << ".";
      } else {
        os << a;
      }
      os << " -> " << delta_[idx(s, a)] << "\n";
    }
  }
  for (int s = 0; s < num_states(); ++s) {
    os << s << " : " << tau_[s].str() << "\n";
  }
  return os.str();
}

void Nfa::validate() const {
  if (p < 2) throw internal_error("Nfa: alphabet base must be >= 2");
  if (static_cast<int>(trans.size()) != num_states()) {
    throw internal_error("Nfa: transition table size mismatch");
  }
  for (const auto& row : trans) {
    if (static_cast<int>(row.size()) != p + 1) {
      throw internal_error("Nfa: symbol row count mismatch");
    }
    for (const auto& targets : row) {
      for (int t : targets) {
        if (t < 0 || t >= num_states()) {
          throw internal_error("Nfa: target out of range");
        }
      }
    }
  }
  for (int s : initial) {
    if (s < 0 || s >= num_states()) {
      throw internal_error("Nfa: initial state out of range");
    }
  }
}

Dfao determinize(const Nfa& n, const FqField& field,
                 const FqElement& accept_value, size_t max_states) {
  n.validate();
  std::vector<int> start = n.initial;
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());

  std::map<std::vector<int>, int> id_of;
  std::vector<std::vector<int>> subsets;
  std::vector<std::vector<int>> edges;  // edges[s][a]
  std::queue<int> work;

  auto intern = [&](std::vector<int> subset) {
    auto it = id_of.find(subset);
    if (it != id_of.end()) return it->second;
    if (subsets.size() >= max_states) {
      throw resource_limit_error("determinize: state cap exceeded");
    }
    int id = static_cast<int>(subsets.size());
    id_of.emplace(subset, id);
    subsets.push_back(std::move(subset));
    edges.emplace_back(n.p + 1, -1);
    work.push(id);
    return id;
  };
  intern(start);

  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int a = 0; a <= n.p; ++a) {
      std::vector<int> next;
      for (int u : subsets[s]) {
        const auto& ts = n.trans[u][a];
        next.insert(next.end(), ts.begin(), ts.end());
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      edges[s][a] = intern(std::move(next));
    }
  }

  Dfao d(n.p, field, static_cast<int>(subsets.size()), 0);
  for (int s = 0; s < d.num_states(); ++s) {
    for (int a = 0; a <= n.p; ++a) d.set_edge(s, a, edges[s][a]);
    bool acc = false;
    for (int u : subsets[s]) acc = acc || n.accepting[u];
    if (acc) d.set_output(s, accept_value);
  }
  return d;
}

Dfao reverse(const Dfao& a, size_t max_states) {
  a.validate();
  // Distinct nonzero output values, in code order for determinism.
  std::map<int64_t, FqElement> values;
  for (int s = 0; s < a.num_states(); ++s) {
    if (a.accepting(s)) values.emplace(a.output(s).code(), a.output(s));
  }
  if (values.empty()) {
    Dfao z(a.p(), a.field(), 1, 0);
    for (int sym = 0; sym <= a.p(); ++sym) z.set_edge(0, sym, 0);
    return z;
  }

  // Reversed edge lists, shared by every per-value NFA.
  std::vector<std::vector<std::vector<int>>> rev(
      a.num_states(),
      std::vector<std::vector<int>>(a.num_symbols()));
  for (int s = 0; s < a.num_states(); ++s) {
    for (int sym = 0; sym <= a.p(); ++sym) {
      rev[a.next(s, sym)][sym].push_back(s);
    }
  }

  bool have = false;
  Dfao acc(a.p(), a.field(), 1, 0);
  for (const auto& [code, value] : values) {
    Nfa n;
    n.p = a.p();
    n.trans = rev;
    n.accepting.assign(a.num_states(), 0);
    n.accepting[a.q0()] = 1;
    for (int s = 0; s < a.num_states(); ++s) {
      if (a.accepting(s) && a.output(s).code() == code) n.initial.push_back(s);
    }
    Dfao component = determinize(n, a.field(), value, max_states);
    if (!have) {
      acc = std::move(component);
      have = true;
    } else {
      // A DFAO computes a single value per string, so the per-value reversed
      // languages are disjoint and the outputs can be summed.
      acc = product(
          acc, component, a.field(),
          [](const FqElement& x, const FqElement& y) {
            if (!x.is_zero() && !y.is_zero()) {
              throw internal_error("reverse: overlapping value languages");
            }
            return x + y;
          },
          max_states);
    }
  }
  return prune_unreachable(acc);
}

std::vector<char> reachable_states(const Dfao& a) {
  std::vector<char> seen(a.num_states(), 0);
  std::queue<int> work;
  seen[a.q0()] = 1;
  work.push(a.q0());
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int sym = 0; sym <= a.p(); ++sym) {
      int t = a.next(s, sym);
      if (!seen[t]) {
        seen[t] = 1;
        work.push(t);
      }
    }
  }
  return seen;
}

std::vector<char> relevant_states(const Dfao& a) {
  std::vector<std::vector<int>> rev(a.num_states());
  for (int s = 0; s < a.num_states(); ++s) {
    for (int sym = 0; sym <= a.p(); ++sym) rev[a.next(s, sym)].push_back(s);
  }
  std::vector<char> rel(a.num_states(), 0);
  std::queue<int> work;
  for (int s = 0; s < a.num_states(); ++s) {
    if (a.accepting(s)) {
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

Dfao prune_unreachable(const Dfao& a) {
  std::vector<int> number(a.num_states(), -1);
  std::vector<int> order;
  std::queue<int> work;
  number[a.q0()] = 0;
  order.push_back(a.q0());
  work.push(a.q0());
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int sym = 0; sym <= a.p(); ++sym) {
      int t = a.next(s, sym);
      if (number[t] < 0) {
        number[t] = static_cast<int>(order.size());
        order.push_back(t);
        work.push(t);
      }
    }
  }
  Dfao b(a.p(), a.field(), static_cast<int>(order.size()), 0);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    int s = order[i];
    for (int sym = 0; sym <= a.p(); ++sym) {
      b.set_edge(i, sym, number[a.next(s, sym)]);
    }
    b.set_output(i, a.output(s));
  }
  return b;
}

Dfao minimize(const Dfao& a) {
  Dfao d = prune_unreachable(a);
  int n = d.num_states();
  // Initial partition by output value.
  std::vector<int> block(n);
  {
    std::map<int64_t, int> by_code;
    for (int s = 0; s < n; ++s) {
      auto [it, ignored] =
          by_code.emplace(d.output(s).code(), static_cast<int>(by_code.size()));
      block[s] = it->second;
    }
  }
  // Moore refinement until the block count stops growing.
  for (;;) {
    std::map<std::vector<int>, int> sig_id;
    std::vector<int> next_block(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig;
      sig.reserve(d.num_symbols() + 1);
      sig.push_back(block[s]);
      for (int sym = 0; sym <= d.p(); ++sym) {
        sig.push_back(block[d.next(s, sym)]);
      }
      auto [it, ignored] =
          sig_id.emplace(std::move(sig), static_cast<int>(sig_id.size()));
      next_block[s] = it->second;
    }
    bool grew = sig_id.size() >
                static_cast<size_t>(*std::max_element(block.begin(),
                                                      block.end()) +
                                    1);
    block = std::move(next_block);
    if (!grew) break;
  }
  int blocks = *std::max_element(block.begin(), block.end()) + 1;
  Dfao q(d.p(), d.field(), blocks, block[d.q0()]);
  std::vector<char> done(blocks, 0);
  for (int s = 0; s < n; ++s) {
    int b = block[s];
    if (done[b]) continue;
    done[b] = 1;
    for (int sym = 0; sym <= d.p(); ++sym) {
      q.set_edge(b, sym, block[d.next(s, sym)]);
    }
    q.set_output(b, d.output(s));
  }
  return prune_unreachable(q);
}

Dfao product(const Dfao& a, const Dfao& b, const FqField& out_field,
             const std::function<FqElement(const FqElement&,
                                           const FqElement&)>& combine,
             size_t max_states) {
  if (a.p() != b.p()) {
    throw std::invalid_argument("product: alphabet mismatch");
  }
  std::map<std::pair<int, int>, int> id_of;
  std::vector<std::pair<int, int>> pairs;
  std::queue<int> work;
  auto intern = [&](int s, int t) {
    auto key = std::make_pair(s, t);
    auto it = id_of.find(key);
    if (it != id_of.end()) return it->second;
    if (pairs.size() >= max_states) {
      throw resource_limit_error("product: state cap exceeded");
    }
    int id = static_cast<int>(pairs.size());
    id_of.emplace(key, id);
    pairs.push_back(key);
    work.push(id);
    return id;
  };
  intern(a.q0(), b.q0());
  std::vector<std::vector<int>> edges;
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    auto [x, y] = pairs[s];
    if (static_cast<int>(edges.size()) <= s) edges.resize(s + 1);
    edges[s].assign(a.num_symbols(), -1);
    for (int sym = 0; sym <= a.p(); ++sym) {
      edges[s][sym] = intern(a.next(x, sym), b.next(y, sym));
    }
  }
  Dfao r(a.p(), out_field, static_cast<int>(pairs.size()), 0);
  for (int s = 0; s < r.num_states(); ++s) {
    for (int sym = 0; sym <= a.p(); ++sym) r.set_edge(s, sym, edges[s][sym]);
    r.set_output(s, combine(a.output(pairs[s].first),
                            b.output(pairs[s].second)));
  }
  return r;
}

Dfao map_outputs(const Dfao& a, const FqField& out_field,
                 const std::function<FqElement(const FqElement&)>& f) {
  Dfao b(a.p(), out_field, a.num_states(), a.q0());
  for (int s = 0; s < a.num_states(); ++s) {
    for (int sym = 0; sym <= a.p(); ++sym) b.set_edge(s, sym, a.next(s, sym));
    b.set_output(s, f(a.output(s)));
  }
  return b;
}

Dfao count_paths_mod(const Nfa& n, const FqField& field, size_t max_states) {
  n.validate();
  const int p = field.p;
  const int m = n.num_states();

  std::map<std::vector<uint8_t>, int> id_of;
  std::vector<std::vector<uint8_t>> counts;
  std::vector<std::vector<int>> edges;
  std::queue<int> work;
  auto intern = [&](std::vector<uint8_t> c) {
    auto it = id_of.find(c);
    if (it != id_of.end()) return it->second;
    if (counts.size() >= max_states) {
      throw resource_limit_error("count_paths_mod: state cap exceeded");
    }
    int id = static_cast<int>(counts.size());
    id_of.emplace(c, id);
    counts.push_back(std::move(c));
    edges.emplace_back(n.p + 1, -1);
    work.push(id);
    return id;
  };

  std::vector<uint8_t> start(m, 0);
  for (int s : n.initial) start[s] = static_cast<uint8_t>((start[s] + 1) % p);
  intern(std::move(start));

  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int sym = 0; sym <= n.p; ++sym) {
      std::vector<uint8_t> next(m, 0);
      for (int u = 0; u < m; ++u) {
        if (counts[s][u] == 0) continue;
        for (int t : n.trans[u][sym]) {
          next[t] = static_cast<uint8_t>((next[t] + counts[s][u]) % p);
        }
      }
      edges[s][sym] = intern(std::move(next));
    }
  }

  Dfao d(n.p, field, static_cast<int>(counts.size()), 0);
  for (int s = 0; s < d.num_states(); ++s) {
    for (int sym = 0; sym <= n.p; ++sym) d.set_edge(s, sym, edges[s][sym]);
    int total = 0;
    for (int u = 0; u < m; ++u) {
      if (n.accepting[u]) total = (total + counts[s][u]) % p;
    }
    d.set_output(s, field.from_int(total));
  }
  return d;
}

bool equal_function(const Dfao& a, const Dfao& b) {
  if (a.p() != b.p()) {
    throw std::invalid_argument("equal_function: alphabet mismatch");
  }
  if (&a.field() != &b.field()) {
    throw std::invalid_argument("equal_function: output field mismatch");
  }
  std::map<std::pair<int, int>, char> seen;
  std::queue<std::pair<int, int>> work;
  seen[{a.q0(), b.q0()}] = 1;
  work.push({a.q0(), b.q0()});
  while (!work.empty()) {
    auto [s, t] = work.front();
    work.pop();
    if (a.output(s) != b.output(t)) return false;
    for (int sym = 0; sym <= a.p(); ++sym) {
      std::pair<int, int> nx{a.next(s, sym), b.next(t, sym)};
      if (!seen.count(nx)) {
        seen[nx] = 1;
        work.push(nx);
      }
    }
  }
  return true;
}

std::vector<int> symbols_from_string(const std::string& s, int p) {
  if (p > 9) {
    throw std::invalid_argument("symbols_from_string: base must be <= 9");
  }
  std::vector<int> w;
  w.reserve(s.size());
  for (char c : s) {
    if (c == '.') {
      w.push_back(p);
    } else if (c >= '0' && c < '0' + p) {
      w.push_back(c - '0');
    } else {
      throw std::invalid_argument(std::string("bad symbol '") + c +
                                  "' for base " + std::to_string(p));
    }
  }
  return w;
}

std::string string_from_symbols(const std::vector<int>& w, int p) {
  if (p > 9) {
    throw std::invalid_argument("string_from_symbols: base must be <= 9");
  }
  std::string s;
  s.reserve(w.size());
  for (int a : w) {
    if (a == p) {
      s += '.';
    } else if (a >= 0 && a < p) {
      s += static_cast<char>('0' + a);
    } else {
      throw std::invalid_argument("string_from_symbols: symbol out of range");
    }
  }
  return s;
}

}  // namespace hahn
