#pragma once

// Normal form for Z-linear cones: every cone_N(V) becomes a finite union of
// linear sets whose generators are independent subsets of V (at most k each).
//
// Pipeline for one cone V:
//   1. caratheodory_subcones(V) -> S_1..S_r covering cone(V)
//   2. T1 = points sum c_i v_i with 0 <= c_i <= cap inside the box, built one
//      generator at a time, each point carrying one witness tuple
//   3. per S_j: points of T1 inside cone(S_j) from which no u in S_j can be
//      subtracted while staying in T1 and cone(S_j) -> the offsets for S_j

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "parikh/error.hpp"
#include "parikh/geometry.hpp"
#include "parikh/int_vector.hpp"
#include "parikh/integer.hpp"

namespace parikh {

/// Exact bounds for a cone with m generators in dimension k whose entries are
/// bounded by a in absolute value:
///   t = a k,  M = (m + k)(k t)^(2k+1),  N = (m + k)(k^2 a)^(2k+2) + a k.
/// M caps the coefficients of minimal integer-program solutions; N bounds the
/// entries of minimal offsets.
struct Bounds {
  Integer t;
  Integer M;
  Integer N;
};

inline Bounds theoretical_bounds(long long m, long long k, const Integer& a) {
  if (m < 1) throw malformed_input("theoretical_bounds: m must be positive");
  if (k < 1) throw malformed_input("theoretical_bounds: k must be positive");
  if (a < 0) throw malformed_input("theoretical_bounds: a must be nonnegative");
  using boost::multiprecision::pow;
  const Integer mk = m + k;
  const auto e = static_cast<unsigned>(2 * k + 1);
  Bounds b;
  b.t = a * k;
  b.M = mk * pow(Integer(k) * b.t, e);
  b.N = mk * pow(Integer(k) * k * a, e + 1) + a * k;
  return b;
}

/// exact: box and coefficient cap from theoretical_bounds, result complete.
/// bounded: both set to a user bound, result sound but only box-validated.
struct NormalizeMode {
  enum class Kind { exact, bounded };
  Kind kind = Kind::exact;
  std::optional<Integer> bound;

  static NormalizeMode exact() { return {}; }
  static NormalizeMode bounded(Integer b) {
    if (b < 0) throw malformed_input("normalization bound must be nonnegative");
    return {Kind::bounded, std::move(b)};
  }

  bool is_exact() const noexcept { return kind == Kind::exact; }

  friend bool operator==(const NormalizeMode& x, const NormalizeMode& y) {
    return x.kind == y.kind && x.bound == y.bound;
  }
  friend bool operator<(const NormalizeMode& x, const NormalizeMode& y) {
    return std::tie(x.kind, x.bound) < std::tie(y.kind, y.bound);
  }

  std::string to_string() const {
    return is_exact() ? std::string("exact") : "bounded(" + bound->str() + ")";
  }
};

/// v = canonical + sum floor_coeffs_i u_i with canonical in the half-open
/// parallelepiped of the subcone.
struct ConeDecomposition {
  IntVector point;
  IntVector canonical;
  std::vector<Integer> floor_coeffs;
  GeneratorSet subcone;
};

namespace detail {

inline std::optional<ConeDecomposition> decompose_with(const SpanSolver& solver,
                                                       const IntVector& v) {
  auto scaled = solver.scaled_coefficients(v);
  if (!scaled) return std::nullopt;
  const Integer& den = solver.denominator();
  ConeDecomposition out{v, v, {}, solver.basis()};
  out.floor_coeffs.reserve(scaled->size());
  for (std::size_t i = 0; i < scaled->size(); ++i) {
    if ((*scaled)[i] < 0) return std::nullopt;
    Integer fl = floor_div((*scaled)[i], den);
    if (fl != 0) out.canonical -= fl * solver.basis()[i];
    out.floor_coeffs.push_back(std::move(fl));
  }
  return out;
}

}  // namespace detail

/// Splits v in cone(S) into its canonical part and integral multiples of S.
inline std::optional<ConeDecomposition> decompose(const GeneratorSet& s, const IntVector& v) {
  return detail::decompose_with(SpanSolver(s), v);
}

/// Integer points sum b_i u_i with 0 <= b_i < 1, i.e. one representative per
/// class of cone(S) modulo the lattice N S. Scans the bounding box of the
/// half-open parallelepiped clipped to {-ka..ka}^k.
inline std::vector<IntVector> canonical_vectors(const GeneratorSet& s, const Integer& a) {
  if (s.empty()) throw malformed_input("canonical_vectors needs a nonempty subcone");
  if (a < s.max_abs())
    throw malformed_input("canonical_vectors: a = " + a.str() + " is below max |entry| " +
                          s.max_abs().str());
  SpanSolver solver(s);
  const std::size_t k = s.dim();
  const Integer ka = a * k;
  std::vector<Integer> lo(k), hi(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& u : s) {
      if (u[c] < 0) lo[c] += u[c];
      else hi[c] += u[c];
    }
    if (lo[c] < -ka) lo[c] = -ka;
    if (hi[c] > ka) hi[c] = ka;
  }

  std::vector<IntVector> out;
  IntVector cur(k);
  for (std::size_t c = 0; c < k; ++c) cur[c] = lo[c];
  const Integer& den = solver.denominator();
  while (true) {
    if (auto scaled = solver.scaled_coefficients(cur)) {
      bool inside = true;
      for (const auto& x : *scaled)
        if (x < 0 || x >= den) { inside = false; break; }
      if (inside) out.push_back(cur);
    }
    std::size_t c = 0;
    while (c < k && cur[c] == hi[c]) { cur[c] = lo[c]; ++c; }
    if (c == k) break;
    ++cur[c];
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr std::size_t kDefaultTableLimit = 4'000'000;

/// T1: the in-box points of sum c_i v_i (0 <= c_i <= cap), each with the first
/// witness coefficient tuple found (indexed like V's canonical order).
class ConePointTable {
 public:
  using Witness = std::vector<Integer>;

  ConePointTable(GeneratorSet generators, Integer cap, Integer box, bool signed_box)
      : generators_(std::move(generators)), cap_(std::move(cap)), box_(std::move(box)),
        signed_(signed_box) {}

  const GeneratorSet& generators() const noexcept { return generators_; }
  const Integer& cap() const noexcept { return cap_; }
  const Integer& box() const noexcept { return box_; }
  /// True when the box is {-box..box}^k rather than {0..box}^k.
  bool signed_box() const noexcept { return signed_; }

  std::size_t size() const noexcept { return points_.size(); }
  bool contains(const IntVector& v) const { return points_.count(v) != 0; }

  const Witness* witness(const IntVector& v) const {
    auto it = points_.find(v);
    return it == points_.end() ? nullptr : &it->second;
  }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Points in canonical order.
  std::vector<IntVector> sorted_points() const {
    std::vector<IntVector> out;
    out.reserve(points_.size());
    for (const auto& [p, w] : points_) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  template <class Fn>
  friend ConePointTable build_cone_point_table(const GeneratorSet&, const Integer&,
                                               const Integer&, std::size_t, Fn&&);

  GeneratorSet generators_;
  Integer cap_;
  Integer box_;
  bool signed_;
  std::unordered_map<IntVector, Witness, IntVectorHash> points_;
};

template <class Fn>
ConePointTable build_cone_point_table(const GeneratorSet& v, const Integer& cap,
                                      const Integer& box, std::size_t limit, Fn&& on_stage) {
  if (v.empty()) throw malformed_input("bounded_cone_points needs a nonempty generator set");
  if (v.has_zero()) throw domain_error("bounded_cone_points: zero vector in " + v.to_string());
  if (cap < 0 || box < 0) throw malformed_input("bounded_cone_points: cap and box must be >= 0");

  const std::size_t m = v.size();
  const std::size_t k = v.dim();
  const bool signed_input = !v.is_nonnegative();
  ConePointTable table(v, cap, box, signed_input);
  table.points_.emplace(IntVector::zero(k), ConePointTable::Witness(m));

  for (std::size_t h = 0; h < m; ++h) {
    // A partial sum after this stage may still drift by at most the remaining
    // stages' worth of generator mass before coming back into the box.
    const Integer pad = signed_input ? Integer(Integer(m - h - 1) * cap * v.max_abs()) : Integer(0);
    const Integer lim = box + pad;
    const IntVector& g = v[h];

    std::vector<std::pair<IntVector, ConePointTable::Witness>> snapshot(table.points_.begin(),
                                                                         table.points_.end());
    for (const auto& [p, w] : snapshot) {
      IntVector q = p;
      for (Integer c = 1; c <= cap; ++c) {
        q += g;
        bool inside = true, receding = false;
        for (std::size_t i = 0; i < k; ++i) {
          if (q[i] > lim) {
            inside = false;
            if (g[i] >= 0) receding = true;
          } else if (q[i] < (signed_input ? Integer(-lim) : Integer(0))) {
            inside = false;
            if (g[i] <= 0) receding = true;
          }
        }
        if (receding) break;
        if (!inside) continue;
        if (table.points_.count(q)) continue;
        auto wq = w;
        wq[h] = c;
        table.points_.emplace(q, std::move(wq));
        if (table.points_.size() > limit)
          throw limit_exceeded("cone point table exceeded " + std::to_string(limit) +
                               " entries (generators " + v.to_string() + ", box " +
                               box.str() + "); use bounded mode with a smaller bound");
      }
    }
    if (signed_input) {
      for (auto it = table.points_.begin(); it != table.points_.end();) {
        bool inside = true;
        for (std::size_t i = 0; i < k && inside; ++i)
          inside = abs_value(it->first[i]) <= lim;
        it = inside ? std::next(it) : table.points_.erase(it);
      }
    }
    on_stage(h + 1, table.points_.size());
  }
  return table;
}

/// T1 for generators V with coefficient cap and box radius.
inline ConePointTable bounded_cone_points(const GeneratorSet& v, const Integer& coeff_cap,
                                          const Integer& box,
                                          std::size_t limit = kDefaultTableLimit) {
  return build_cone_point_table(v, coeff_cap, box, limit, [](std::size_t, std::size_t) {});
}

/// The (cap, box) pair a mode prescribes for V.
inline std::pair<Integer, Integer> table_extent(const GeneratorSet& v, const NormalizeMode& mode) {
  if (!mode.is_exact()) return {*mode.bound, *mode.bound};
  Bounds b = theoretical_bounds(static_cast<long long>(v.size()),
                                static_cast<long long>(v.dim()), v.max_abs());
  return {b.M, b.N};
}

inline ConePointTable cone_point_table_for(const GeneratorSet& v, const NormalizeMode& mode,
                                           std::size_t limit = kDefaultTableLimit) {
  auto [cap, box] = table_extent(v, mode);
  return bounded_cone_points(v, cap, box, limit);
}

/// Offsets for one subcone, read off an already built T1.
inline std::vector<IntVector> minimal_vectors(const ConePointTable& table,
                                              const GeneratorSet& subcone) {
  if (!subcone.is_subset_of(table.generators()))
    throw malformed_input("subcone " + subcone.to_string() + " is not a subset of " +
                          table.generators().to_string());
  SpanSolver solver(subcone);
  std::vector<IntVector> out;
  for (const auto& [p, w] : table) {
    auto dec = detail::decompose_with(solver, p);
    if (!dec) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < subcone.size() && minimal; ++i) {
      // p - u_i stays in cone(S) exactly when its floor coefficient is >= 1
      if (dec->floor_coeffs[i] >= 1 && table.contains(p - subcone[i])) minimal = false;
    }
    if (minimal) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<IntVector> minimal_vectors(const GeneratorSet& v, const GeneratorSet& subcone,
                                              const NormalizeMode& mode) {
  if (!subcone.is_subset_of(v))
    throw malformed_input("subcone " + subcone.to_string() + " is not a subset of " +
                          v.to_string());
  return minimal_vectors(cone_point_table_for(v, mode), subcone);
}

/// Result of normalizing one cone. `witnesses` maps each offset to a
/// coefficient tuple over the input generators (canonical order).
struct ConeNormalForm {
  SemilinearBasis basis;
  bool verified = true;
  std::map<IntVector, std::vector<Integer>> witnesses;
  GeneratorSet generators;
};

inline ConeNormalForm normalize_cone(const GeneratorSet& v, const NormalizeMode& mode,
                                     std::size_t limit = kDefaultTableLimit) {
  if (v.empty()) throw malformed_input("normalize_cone needs a nonempty generator set");
  if (v.has_zero()) throw domain_error("normalize_cone: zero vector in " + v.to_string());

  ConePointTable table = cone_point_table_for(v, mode, limit);
  ConeNormalForm out{SemilinearBasis(v.dim()), mode.is_exact(), {}, v};
  std::vector<LinearBasis> bases;
  for (const auto& s : caratheodory_subcones(v)) {
    for (auto& w : minimal_vectors(table, s)) {
      out.witnesses.emplace(w, *table.witness(w));
      bases.emplace_back(std::move(w), s);
    }
  }
  out.basis = SemilinearBasis(v.dim(), std::move(bases));
  return out;
}

/// Whether a linear basis already has the normal-form shape.
inline bool is_normalized(const LinearBasis& b) {
  return b.generators.empty() ||
         (b.generators.size() <= b.dim() && !b.generators.has_zero() &&
          is_independent(b.generators));
}

/// Memoizing front end for normalize_cone, safe to share between threads.
class ConeNormalizer {
 public:
  explicit ConeNormalizer(std::size_t limit = kDefaultTableLimit) : limit_(limit) {}

  std::shared_ptr<const ConeNormalForm> normalize(const GeneratorSet& v,
                                                  const NormalizeMode& mode) {
    Key key{v, mode};
    {
      std::lock_guard lock(mutex_);
      if (auto it = forms_.find(key); it != forms_.end()) return it->second;
    }
    auto form = std::make_shared<const ConeNormalForm>(normalize_cone(v, mode, limit_));
    std::lock_guard lock(mutex_);
    return forms_.emplace(std::move(key), std::move(form)).first->second;
  }

  bool normalized(const LinearBasis& b) {
    if (b.generators.empty()) return true;
    {
      std::lock_guard lock(mutex_);
      if (auto it = shape_.find(b.generators); it != shape_.end()) return it->second;
    }
    bool ok = is_normalized(b);
    std::lock_guard lock(mutex_);
    shape_.emplace(b.generators, ok);
    return ok;
  }

  std::size_t limit() const noexcept { return limit_; }

  std::size_t cached_forms() const {
    std::lock_guard lock(mutex_);
    return forms_.size();
  }

 private:
  using Key = std::pair<GeneratorSet, NormalizeMode>;
  std::size_t limit_;
  mutable std::mutex mutex_;
  std::map<Key, std::shared_ptr<const ConeNormalForm>> forms_;
  std::map<GeneratorSet, bool> shape_;
};

struct SemilinearForm {
  SemilinearBasis basis;
  bool verified = true;
};

/// Rewrites every basis that has more than k or dependent generators as
/// offset + normalize_cone(generators). Zero generators are dropped first
/// since they never change the denoted set.
inline SemilinearForm normalize_semilinear(const SemilinearBasis& b, const NormalizeMode& mode,
                                           ConeNormalizer* cache = nullptr) {
  ConeNormalizer local;
  ConeNormalizer& norm = cache ? *cache : local;
  SemilinearForm out{SemilinearBasis(b.dim()), true};
  std::vector<LinearBasis> bases;
  for (const auto& lb : b) {
    LinearBasis cleaned(lb.offset, lb.generators.without_zero());
    if (norm.normalized(cleaned)) {
      bases.push_back(std::move(cleaned));
      continue;
    }
    auto form = norm.normalize(cleaned.generators, mode);
    out.verified = out.verified && form->verified;
    for (const auto& w : form->basis) bases.emplace_back(lb.offset + w.offset, w.generators);
  }
  out.basis = SemilinearBasis(b.dim(), std::move(bases));
  return out;
}

}  // namespace parikh
