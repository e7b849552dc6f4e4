#pragma once

// Random instance generators and small reference computations for tests.
// Nothing here calls into the library's algorithms.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "parikh/parikh.hpp"

namespace parikh::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline long long uniform_ll(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// Each possible transition present independently with probability `density`.
inline Nfa random_nfa(Rng& rng, std::size_t n, std::size_t k, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Transition> delta;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t l = 1; l <= k; ++l)
      for (std::size_t q = 0; q < n; ++q)
        if (coin(rng)) delta.push_back({p, l, q});
  std::vector<std::size_t> finals;
  for (std::size_t q = 0; q < n; ++q)
    if (coin(rng)) finals.push_back(q);
  if (finals.empty()) finals.push_back(uniform(rng, 0, n - 1));
  return Nfa(n, k, uniform(rng, 0, n - 1), std::move(finals), std::move(delta));
}

inline Nfa random_nfa(Rng& rng, std::size_t max_n, std::size_t max_k) {
  const std::size_t n = uniform(rng, 1, max_n), k = uniform(rng, 1, max_k);
  const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return random_nfa(rng, n, k, density);
}

inline GeneratorSet random_generators(Rng& rng, std::size_t k, std::size_t max_m,
                                      long long lo, long long hi) {
  const std::size_t m = uniform(rng, 1, max_m);
  std::vector<IntVector> out;
  while (out.size() < m) {
    IntVector v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = uniform_ll(rng, lo, hi);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return GeneratorSet(k, std::move(out));
}

inline Graph random_graph(Rng& rng, std::size_t max_vertices) {
  Graph g;
  g.vertices = uniform(rng, 1, max_vertices);
  const double density = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
  std::bernoulli_distribution coin(density);
  for (std::size_t u = 0; u < g.vertices; ++u)
    for (std::size_t v = 0; v < g.vertices; ++v)
      if (u != v && coin(rng)) g.edges.emplace_back(u, v);
  g.source = uniform(rng, 0, g.vertices - 1);
  g.target = uniform(rng, 0, g.vertices - 1);
  return g;
}

/// C(n, r) by the multiplicative formula.
inline long long binomial(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  long long out = 1;
  for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

/// Hamiltonian path from source to target by trying every vertex order.
inline bool has_hamiltonian_path(const Graph& g) {
  std::vector<std::size_t> order(g.vertices);
  std::iota(order.begin(), order.end(), 0);
  std::set<std::pair<std::size_t, std::size_t>> edges(g.edges.begin(), g.edges.end());
  do {
    if (order.front() != g.source || order.back() != g.target) continue;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < order.size() && ok; ++i)
      ok = edges.count({order[i], order[i + 1]}) != 0;
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

/// All (i, j, Parikh vector) with a path of length <= max_len from q_i to q_j,
/// by explicit depth-first enumeration of paths.
struct PathFacts {
  std::set<std::tuple<std::size_t, std::size_t, std::vector<long long>>> facts;

  bool has(std::size_t i, std::size_t j, const std::vector<long long>& v) const {
    return facts.count({i, j, v}) != 0;
  }
};

inline PathFacts enumerate_paths(const Nfa& a, std::size_t max_len) {
  PathFacts out;
  const std::size_t k = a.alphabet_size();
  std::vector<long long> counts(k, 0);
  std::function<void(std::size_t, std::size_t, std::size_t)> walk =
      [&](std::size_t start, std::size_t q, std::size_t len) {
        out.facts.insert({start, q, counts});
        if (len == max_len) return;
        for (const auto& t : a.transitions()) {
          if (t.from != q) continue;
          ++counts[t.letter - 1];
          walk(start, t.to, len + 1);
          --counts[t.letter - 1];
        }
      };
  for (std::size_t s = 0; s < a.states(); ++s) walk(s, s, 0);
  return out;
}

inline std::vector<long long> to_ll(const IntVector& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(static_cast<long long>(x));
  return out;
}

/// Points of a set given by a predicate on a box, for hand-specified sets.
template <class Pred>
PointSet points_where(const Box& box, Pred pred) {
  PointSet out;
  IntVector p(box.dim);
  for (std::size_t i = 0; i < box.dim; ++i) p[i] = box.low();
  while (true) {
    if (pred(p)) out.insert(p);
    std::size_t i = 0;
    while (i < box.dim && p[i] == box.high()) p[i++] = box.low();
    if (i == box.dim) break;
    ++p[i];
  }
  return out;
}

/// b in N-span of a single row [c_1 .. c_m] with small b, by dynamic programming.
inline bool knapsack_reachable(const std::vector<long long>& row, long long b) {
  if (b < 0) return false;
  std::vector<char> ok(static_cast<std::size_t>(b) + 1, 0);
  ok[0] = 1;
  for (long long x = 1; x <= b; ++x)
    for (long long c : row)
      if (c > 0 && c <= x && ok[static_cast<std::size_t>(x - c)]) ok[static_cast<std::size_t>(x)] = 1;
  return ok[static_cast<std::size_t>(b)] != 0;
}

}  // namespace parikh::testing
