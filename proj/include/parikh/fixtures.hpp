#pragma once

// Generators for the lower-bound families and the Hamiltonian-path reduction.

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parikh/automata.hpp"
#include "parikh/error.hpp"
#include "parikh/int_vector.hpp"

namespace parikh {

/// Chain q_0 .. q_n where every one of the k letters advances; accepts exactly
/// the words of length n.
inline Nfa gen_partition_dfa(long long n, long long k) {
  if (n < 1 || k < 1) throw malformed_input("partition-dfa needs n >= 1 and k >= 1");
  std::vector<Transition> delta;
  for (long long q = 0; q < n; ++q)
    for (long long l = 1; l <= k; ++l)
      delta.push_back({static_cast<std::size_t>(q), static_cast<std::size_t>(l),
                       static_cast<std::size_t>(q + 1)});
  return Nfa(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(k), 0,
             {static_cast<std::size_t>(n)}, std::move(delta));
}

/// Letter indices of the quadratic family, 1-based: a, b, c, then a_i, a'_i.
struct QuadraticLetters {
  static constexpr std::size_t a = 1, b = 2, c = 3;
  static constexpr std::size_t ai(std::size_t i) { return 4 + 2 * (i - 1); }
  static constexpr std::size_t ai_loop(std::size_t i) { return 5 + 2 * (i - 1); }
};

/// The 2n+3 state DFA for b (a(a_1 a_1'* c | a a_2 a_2'* c | ...))* b.
/// States: q_0 = 0, p_0..p_n = 1..n+1, p'_1..p'_n = n+2..2n+1, q_F = 2n+2.
inline Nfa gen_quadratic_dfa(long long n) {
  if (n < 1) throw malformed_input("quadratic-dfa needs n >= 1");
  using L = QuadraticLetters;
  const auto m = static_cast<std::size_t>(n);
  auto p = [](std::size_t i) { return 1 + i; };
  auto pp = [m](std::size_t i) { return m + 1 + i; };
  const std::size_t q0 = 0, qf = 2 * m + 2;

  std::vector<Transition> delta{{q0, L::b, p(0)}, {p(0), L::b, qf}};
  for (std::size_t i = 1; i <= m; ++i) {
    delta.push_back({p(i - 1), L::a, p(i)});
    delta.push_back({p(i), L::ai(i), pp(i)});
    delta.push_back({pp(i), L::ai_loop(i), pp(i)});
    delta.push_back({pp(i), L::c, p(0)});
  }
  std::vector<std::string> names{"a", "b", "c"};
  for (std::size_t i = 1; i <= m; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("a" + std::to_string(i) + "'");
  }
  return Nfa(2 * m + 3, 2 * m + 3, q0, {qf}, std::move(delta), std::move(names));
}

/// A grammar over the single terminal "a". An empty right-hand side is epsilon.
struct UnaryCfg {
  std::string start;
  std::vector<std::pair<std::string, std::vector<std::string>>> rules;

  static constexpr const char* terminal = "a";

  /// Nonterminals in order of first appearance as a left-hand side.
  std::vector<std::string> nonterminals() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& [lhs, rhs] : rules)
      if (seen.insert(lhs).second) out.push_back(lhs);
    return out;
  }

  void validate() const {
    std::set<std::string> defined;
    for (const auto& [lhs, rhs] : rules) {
      if (lhs == terminal) throw malformed_input("the terminal 'a' cannot be a left-hand side");
      defined.insert(lhs);
    }
    if (!defined.count(start)) throw malformed_input("start symbol '" + start + "' has no rule");
    for (const auto& [lhs, rhs] : rules)
      for (const auto& s : rhs)
        if (s != terminal && !defined.count(s))
          throw malformed_input("rule for '" + lhs + "' uses undefined nonterminal '" + s + "'");
  }

  friend bool operator==(const UnaryCfg& x, const UnaryCfg& y) {
    return x.start == y.start && x.rules == y.rules;
  }
};

/// S -> A_0 .. A_{n-1}; A_i -> eps | B_i; B_i -> B_{i-1} B_{i-1}; B_0 -> a.
inline UnaryCfg gen_doubling_cfg(long long n) {
  if (n < 1) throw malformed_input("doubling-cfg needs n >= 1");
  UnaryCfg g;
  g.start = "S";
  std::vector<std::string> s_rhs;
  for (long long i = 0; i < n; ++i) s_rhs.push_back("A" + std::to_string(i));
  g.rules.emplace_back("S", std::move(s_rhs));
  for (long long i = 0; i < n; ++i) {
    const std::string ai = "A" + std::to_string(i), bi = "B" + std::to_string(i);
    g.rules.emplace_back(ai, std::vector<std::string>{});
    g.rules.emplace_back(ai, std::vector<std::string>{bi});
  }
  g.rules.emplace_back("B0", std::vector<std::string>{"a"});
  for (long long i = 1; i < n; ++i) {
    const std::string prev = "B" + std::to_string(i - 1);
    g.rules.emplace_back("B" + std::to_string(i), std::vector<std::string>{prev, prev});
  }
  return g;
}

/// Word lengths derivable from the start symbol, up to `bound`: least fixpoint
/// of the length-set equations with sums truncated at the bound.
inline std::set<long long> unary_cfg_lengths(const UnaryCfg& g, long long bound) {
  if (bound < 0) throw malformed_input("length bound must be nonnegative");
  g.validate();
  using Bits = boost::dynamic_bitset<>;
  const auto width = static_cast<std::size_t>(bound) + 1;

  std::map<std::string, Bits> len;
  for (const auto& nt : g.nonterminals()) len.emplace(nt, Bits(width));

  auto sumset = [&](const Bits& x, const Bits& y) {
    Bits out(width);
    for (auto i = x.find_first(); i != Bits::npos; i = x.find_next(i)) out |= (y << i);
    return out;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [lhs, rhs] : g.rules) {
      Bits cur(width);
      cur.set(0);
      for (const auto& s : rhs) {
        if (s == UnaryCfg::terminal) cur <<= 1;
        else cur = sumset(cur, len.at(s));
        if (cur.none()) break;
      }
      Bits& target = len.at(lhs);
      if (!cur.is_subset_of(target)) {
        target |= cur;
        changed = true;
      }
    }
  }

  std::set<long long> out;
  const Bits& s = len.at(g.start);
  for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i))
    out.insert(static_cast<long long>(i));
  return out;
}

/// A directed graph on vertices 0..vertices-1 with a source and a target.
struct Graph {
  std::size_t vertices = 1;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t source = 0;
  std::size_t target = 0;

  void validate() const {
    if (vertices == 0) throw malformed_input("a graph needs at least one vertex");
    if (source >= vertices || target >= vertices)
      throw malformed_input("source or target out of range");
    for (const auto& [u, v] : edges)
      if (u >= vertices || v >= vertices)
        throw malformed_input("edge [" + std::to_string(u) + ", " + std::to_string(v) +
                              "] out of range for " + std::to_string(vertices) + " vertices");
  }

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.vertices == y.vertices && x.edges == y.edges && x.source == y.source &&
           x.target == y.target;
  }
};

/// States are the vertices; the edge (u, v) reads letter v, so a word's Parikh
/// image counts the visits to each vertex after the start.
inline Nfa gen_hamiltonian_dfa(const Graph& g) {
  g.validate();
  std::vector<Transition> delta;
  for (const auto& [u, v] : g.edges) delta.push_back({u, v + 1, v});
  std::vector<std::string> names;
  for (std::size_t v = 0; v < g.vertices; ++v) names.push_back("v" + std::to_string(v));
  return Nfa(g.vertices, g.vertices, g.source, {g.target}, std::move(delta), std::move(names));
}

/// 0 at the source, 1 everywhere else.
inline IntVector hamiltonian_query(const Graph& g) {
  g.validate();
  IntVector q(g.vertices);
  for (std::size_t v = 0; v < g.vertices; ++v) q[v] = v == g.source ? 0 : 1;
  return q;
}

}  // namespace parikh
