#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hahn/fq.hpp"

namespace hahn {

// Thrown when a construction would exceed an explicit state budget
// (determinization blowup, counting automaton blowup). Callers that search
// translate this into an "undecided for resources" outcome instead of a
// wrong answer.
struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr size_t kDefaultStateCap = 1000000;

// Deterministic finite automaton with output (DFAO) over the alphabet
// {0, 1, ..., p-1, p} where the last symbol p plays the role of the radix
// point and is written "." in serializations. The transition function is
// total. Outputs live in one finite field; a state "accepts" exactly when
// its output is nonzero.
//
// State numbering is meaningful: two DFAOs are byte-identical under
// serialize() iff they have the same p, output field, transitions and
// outputs with the same numbering. minimize() produces the canonical
// representative (minimal, breadth-first numbered from the start state in
// symbol order), so function equality can be checked on serialized bytes.
class Dfao {
 public:
  Dfao(int p, const FqField& field, int num_states, int q0);

  int p() const { return p_; }
  int num_symbols() const { return p_ + 1; }
  int radix_symbol() const { return p_; }
  const FqField& field() const { return *field_; }
  int num_states() const { return static_cast<int>(tau_.size()); }
  int q0() const { return q0_; }

  int next(int s, int a) const { return delta_[idx(s, a)]; }
  void set_edge(int s, int a, int t);
  const FqElement& output(int s) const { return tau_[s]; }
  void set_output(int s, FqElement v);
  bool accepting(int s) const { return !tau_[s].is_zero(); }

  // Walk the word from a given state / from the start state.
  int run_from(int s, const std::vector<int>& word) const;
  int run(const std::vector<int>& word) const { return run_from(q0_, word); }
  const FqElement& eval(const std::vector<int>& word) const {
    return tau_[run(word)];
  }

  // Checks totality, range of every edge, and that outputs live in the
  // declared field. Throws internal_error on violation.
  void validate() const;

  // Canonical text form; doubles as the on-disk format (io.hpp).
  std::string serialize() const;

 private:
  size_t idx(int s, int a) const {
    return static_cast<size_t>(s) * (p_ + 1) + a;
  }
  int p_;
  const FqField* field_;
  int q0_;
  std::vector<int> delta_;
  std::vector<FqElement> tau_;
};

// Nondeterministic acceptor over the same alphabet {0..p}, used as an
// intermediate in reversal and in path counting. No outputs, just an
// accepting set; transitions may be missing (empty target lists).
struct Nfa {
  int p = 0;
  std::vector<std::vector<std::vector<int>>> trans;  // [state][symbol]
  std::vector<int> initial;
  std::vector<char> accepting;

  int num_states() const { return static_cast<int>(accepting.size()); }
  int num_symbols() const { return p + 1; }
  void validate() const;
};

// Subset construction. The result outputs `accept_value` exactly on the
// strings the NFA accepts and zero elsewhere. Only reachable subsets are
// materialized; exceeding `max_states` throws resource_limit_error.
Dfao determinize(const Nfa& n, const FqField& field,
                 const FqElement& accept_value,
                 size_t max_states = kDefaultStateCap);

// DFAO computing w -> a(reverse(w)). Built one output value at a time
// through reversed-edge NFAs, then recombined; at most one component can
// accept any given string because a is a function.
Dfao reverse(const Dfao& a, size_t max_states = kDefaultStateCap);

// Drop states unreachable from the start state and renumber the rest in
// breadth-first discovery order (symbols scanned 0, 1, ..., p-1, then the
// radix). This numbering is what serialize() considers canonical.
Dfao prune_unreachable(const Dfao& a);

// reachable[s] iff s is reachable from the start state.
std::vector<char> reachable_states(const Dfao& a);

// relevant[s] iff some accepting state is reachable from s.
std::vector<char> relevant_states(const Dfao& a);

// Canonical minimal form: Moore partition refinement on the pruned
// automaton, quotient, prune again for the breadth-first numbering.
Dfao minimize(const Dfao& a);

// Lazy product automaton; outputs combine(a_out, b_out) in out_field.
// Requires a.p() == b.p().
Dfao product(const Dfao& a, const Dfao& b, const FqField& out_field,
             const std::function<FqElement(const FqElement&, const FqElement&)>&
                 combine,
             size_t max_states = kDefaultStateCap);

// Apply f to every output (e.g. scalar multiplication, indicator extraction,
// coefficient embedding into a larger field).
Dfao map_outputs(const Dfao& a, const FqField& out_field,
                 const std::function<FqElement(const FqElement&)>& f);

// DFAO computing w -> (number of accepting paths of n on w) mod char(field),
// as an element of the prime subfield of `field`. States are vectors of
// per-NFA-state path counts mod p, built lazily; exceeding max_states throws
// resource_limit_error.
Dfao count_paths_mod(const Nfa& n, const FqField& field,
                     size_t max_states = kDefaultStateCap);

// Exact equality of the computed functions (same value on every string).
// Requires the same alphabet and the same output field object; walks the
// reachable pair graph.
bool equal_function(const Dfao& a, const Dfao& b);

// "102.01" <-> {1, 0, 2, RADIX, 0, 1}; only for p <= 9.
std::vector<int> symbols_from_string(const std::string& s, int p);
std::string string_from_symbols(const std::vector<int>& w, int p);

}  // namespace hahn
