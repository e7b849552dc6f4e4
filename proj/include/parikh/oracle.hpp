#pragma once

// Brute-force reference point sets on finite boxes. Each routine is a direct
// transcription of a definition (cone_N, Parikh image, union of linear sets)
// and uses only the data types of the library, never its algorithms.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "parikh/automata.hpp"
#include "parikh/error.hpp"
#include "parikh/geometry.hpp"
#include "parikh/int_vector.hpp"

namespace parikh {

/// {0..radius}^dim, or {-radius..radius}^dim when is_signed.
struct Box {
  std::size_t dim = 1;
  Integer radius = 0;
  bool is_signed = false;

  Box(std::size_t d, Integer r, bool signed_box = false)
      : dim(d), radius(std::move(r)), is_signed(signed_box) {
    if (dim == 0) throw malformed_input("box dimension must be positive");
    if (radius < 0) throw malformed_input("box radius must be nonnegative");
  }

  Integer low() const { return is_signed ? Integer(-radius) : Integer(0); }
  const Integer& high() const { return radius; }

  bool contains(const IntVector& v) const {
    if (v.dim() != dim) return false;
    for (const auto& x : v)
      if (x < low() || x > radius) return false;
    return true;
  }

  Box shrunk(Integer r) const { return Box(dim, std::move(r), is_signed); }
};

using PointSet = std::set<IntVector>;
using PointSource = std::function<PointSet(const Box&)>;

namespace detail {

/// Steinitz: any N-combination of vectors with |entries| <= a reaching p can
/// be ordered so that every partial sum is within 2ka (sup norm) of the
/// segment to p. Saturating inside the region grown by that margin is exact.
inline Integer steinitz_pad(const GeneratorSet& g) {
  return g.is_nonnegative() ? Integer(0) : Integer(2 * g.dim() * g.max_abs());
}

inline bool within(const IntVector& v, const std::vector<Integer>& lo,
                   const std::vector<Integer>& hi) {
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (v[i] < lo[i] || v[i] > hi[i]) return false;
  return true;
}

/// Everything reachable from `seeds` by adding generators inside [lo, hi].
inline void saturate(const std::vector<IntVector>& seeds, const GeneratorSet& gens,
                     const std::vector<Integer>& lo, const std::vector<Integer>& hi,
                     const Box& box, PointSet& out) {
  std::unordered_set<IntVector, IntVectorHash> seen;
  std::deque<IntVector> queue;
  for (const auto& s : seeds)
    if (within(s, lo, hi) && seen.insert(s).second) queue.push_back(s);
  while (!queue.empty()) {
    IntVector p = std::move(queue.front());
    queue.pop_front();
    if (box.contains(p)) out.insert(p);
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      IntVector q = p + g;
      if (within(q, lo, hi) && seen.insert(q).second) queue.push_back(std::move(q));
    }
  }
}

}  // namespace detail

/// cone_N(V) restricted to the box.
inline PointSet oracle_cone_points(const GeneratorSet& v, const Box& box) {
  if (v.dim() != box.dim) throw malformed_input("oracle_cone_points: dimension mismatch");
  const Integer pad = detail::steinitz_pad(v);
  std::vector<Integer> lo(box.dim, box.low() - pad), hi(box.dim, box.high() + pad);
  PointSet out;
  detail::saturate({IntVector::zero(box.dim)}, v, lo, hi, box, out);
  return out;
}

/// Union over bases of offset + cone_N(generators), restricted to the box.
/// Bases sharing a generator set are saturated together.
inline PointSet oracle_semilinear_points(const SemilinearBasis& b, const Box& box) {
  if (b.dim() != box.dim) throw malformed_input("oracle_semilinear_points: dimension mismatch");
  std::map<GeneratorSet, std::vector<IntVector>> groups;
  for (const auto& lb : b) groups[lb.generators].push_back(lb.offset);

  PointSet out;
  for (const auto& [gens, offsets] : groups) {
    const std::size_t k = box.dim;
    std::vector<Integer> lo(k, box.low()), hi(k, box.high());
    if (gens.is_nonnegative()) {
      // points only grow: offsets already above the box are useless
      std::vector<IntVector> seeds;
      for (const auto& o : offsets) {
        bool dead = false;
        for (std::size_t i = 0; i < k; ++i) {
          if (o[i] > hi[i]) dead = true;
          else if (o[i] < lo[i]) lo[i] = o[i];
        }
        if (!dead) seeds.push_back(o);
      }
      detail::saturate(seeds, gens, lo, hi, box, out);
    } else {
      const Integer pad = detail::steinitz_pad(gens);
      for (const auto& o : offsets)
        for (std::size_t i = 0; i < k; ++i) {
          if (o[i] < lo[i]) lo[i] = o[i];
          if (o[i] > hi[i]) hi[i] = o[i];
        }
      for (std::size_t i = 0; i < k; ++i) {
        lo[i] -= pad;
        hi[i] += pad;
      }
      detail::saturate(offsets, gens, lo, hi, box, out);
    }
  }
  return out;
}

/// Parikh images of accepted words that fit in the box, by search over
/// (state, letter counts) configurations. Counts never decrease along a run,
/// so pruning at the box boundary loses nothing.
inline PointSet oracle_parikh_points(const Nfa& a, const Box& box) {
  const std::size_t k = a.alphabet_size();
  if (k != box.dim) throw malformed_input("oracle_parikh_points: dimension mismatch");
  if (box.radius > 1'000'000) throw malformed_input("oracle_parikh_points: radius too large");
  const auto cap = static_cast<std::uint32_t>(box.radius);

  using Config = std::vector<std::uint32_t>;  // counts..., state
  struct ConfigHash {
    std::size_t operator()(const Config& c) const noexcept {
      std::size_t h = 0;
      for (auto x : c) h = h * 1000003u + x;
      return h;
    }
  };
  std::unordered_set<Config, ConfigHash> seen;
  std::deque<Config> queue;
  Config start(k + 1, 0);
  start[k] = static_cast<std::uint32_t>(a.initial());
  seen.insert(start);
  queue.push_back(start);

  PointSet out;
  while (!queue.empty()) {
    Config c = std::move(queue.front());
    queue.pop_front();
    const std::size_t q = c[k];
    if (a.is_final(q)) {
      IntVector v(k);
      for (std::size_t i = 0; i < k; ++i) v[i] = c[i];
      out.insert(std::move(v));
    }
    for (const auto& t : a.transitions()) {
      if (t.from != q || c[t.letter - 1] == cap) continue;
      Config d = c;
      ++d[t.letter - 1];
      d[k] = static_cast<std::uint32_t>(t.to);
      if (seen.insert(d).second) queue.push_back(std::move(d));
    }
  }
  return out;
}

struct BoxComparison {
  enum class Side { none, lhs_only, rhs_only };
  bool equal = true;
  std::optional<IntVector> witness;
  Side side = Side::none;

  std::string to_string() const {
    if (equal) return "equal";
    return "counterexample " + witness->to_string() +
           (side == Side::lhs_only ? " in lhs only" : " in rhs only");
  }
};

/// Set equality on the box; otherwise the canonically smallest differing point.
inline BoxComparison compare_on_box(const PointSet& lhs, const PointSet& rhs, const Box& box) {
  auto l = lhs.begin(), r = rhs.begin();
  auto skip = [&](PointSet::const_iterator& it, const PointSet& s) {
    while (it != s.end() && !box.contains(*it)) ++it;
  };
  while (true) {
    skip(l, lhs);
    skip(r, rhs);
    if (l == lhs.end() && r == rhs.end()) return {};
    if (r == rhs.end() || (l != lhs.end() && *l < *r))
      return {false, *l, BoxComparison::Side::lhs_only};
    if (l == lhs.end() || *r < *l) return {false, *r, BoxComparison::Side::rhs_only};
    ++l;
    ++r;
  }
}

inline BoxComparison compare_on_box(const PointSource& lhs, const PointSource& rhs,
                                    const Box& box) {
  return compare_on_box(lhs(box), rhs(box), box);
}

}  // namespace parikh
