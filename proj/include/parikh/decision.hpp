#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parikh/automata.hpp"
#include "parikh/error.hpp"
#include "parikh/geometry.hpp"
#include "parikh/int_vector.hpp"
#include "parikh/normalform.hpp"
#include "parikh/oracle.hpp"

namespace parikh {

/// Coefficients x >= 0 with b = offset + sum x_i u_i, when they exist.
/// Requires independent generators (the normal-form shape).
inline std::optional<std::vector<Integer>> linear_member(const IntVector& b,
                                                         const LinearBasis& basis) {
  b.require_same_dim(basis.offset);
  const IntVector target = b - basis.offset;
  const GeneratorSet& s = basis.generators;
  if (s.empty()) {
    if (target.is_zero()) return std::vector<Integer>{};
    return std::nullopt;
  }
  if (s.has_zero() || !is_independent(s))
    throw domain_error("linear_member: generators " + s.to_string() +
                       " are dependent; normalize the basis with normalize_semilinear first");
  auto sol = SpanSolver(s).solve(target);
  if (!sol) return std::nullopt;
  std::vector<Integer> out;
  out.reserve(sol->size());
  for (const auto& x : *sol) {
    if (x < 0 || denominator(x) != 1) return std::nullopt;
    out.push_back(numerator(x));
  }
  return out;
}

/// Upper bound on the exact-mode cone point table for V.
inline Integer exact_table_estimate(const GeneratorSet& v) {
  using boost::multiprecision::pow;
  auto [cap, box] = table_extent(v, NormalizeMode::exact());
  const Integer side = v.is_nonnegative() ? Integer(box + 1) : Integer(2 * box + 1);
  // cap^m and side^k overflow any sane limit quickly; clamp exponents
  const auto m = static_cast<unsigned>(std::min<std::size_t>(v.size(), 64));
  const auto k = static_cast<unsigned>(std::min<std::size_t>(v.dim(), 64));
  Integer by_coeffs = pow(Integer(cap + 1), m);
  Integer by_box = pow(side, k);
  return by_coeffs < by_box ? by_coeffs : by_box;
}

struct MemberResult {
  bool member = false;
  /// False when the answer is "no" but rests on bounded-mode normalization.
  bool verified = true;
};

namespace detail {

/// Membership of b in offset + cone_N(gens) for an arbitrary generator set.
/// With an explicit mode, normalizes in that mode. Otherwise exact mode when
/// its table fits the normalizer's limit. Failing that, for N generators the
/// cone points below t = b - offset are enumerated directly: coefficients and
/// partial sums of any representation of t stay within max(t), so a table
/// with that cap and box decides t exactly.
inline MemberResult general_linear_member(const IntVector& b, const LinearBasis& lb,
                                          const std::optional<NormalizeMode>& mode,
                                          ConeNormalizer& norm) {
  if (norm.normalized(lb)) return {linear_member(b, lb).has_value(), true};
  const IntVector t = b - lb.offset;

  NormalizeMode use;
  if (mode) {
    use = *mode;
  } else if (exact_table_estimate(lb.generators) <= norm.limit()) {
    use = NormalizeMode::exact();
  } else if (lb.generators.is_nonnegative()) {
    if (!t.is_nonnegative()) return {false, true};
    Integer bound = 0;
    for (const auto& x : t)
      if (x > bound) bound = x;
    return {bounded_cone_points(lb.generators, bound, bound, norm.limit()).contains(t), true};
  } else {
    throw limit_exceeded("membership in P(" + lb.offset.to_string() + "; " +
                         lb.generators.to_string() +
                         ") needs an exact table beyond the size limit; pass a bound");
  }
  auto form = norm.normalize(lb.generators, use);
  for (const auto& part : form->basis)
    if (linear_member(t, part)) return {true, true};
  return {false, use.is_exact()};
}

}  // namespace detail

/// b in the set denoted by B. Bases that are not in normal-form shape are
/// normalized on the fly (see detail::general_linear_member for the policy).
inline MemberResult semilinear_member(const IntVector& b, const SemilinearBasis& basis,
                                      const std::optional<NormalizeMode>& mode = std::nullopt,
                                      ConeNormalizer* cache = nullptr) {
  if (b.dim() != basis.dim())
    throw malformed_input("query has dimension " + std::to_string(b.dim()) + ", basis has " +
                          std::to_string(basis.dim()));
  ConeNormalizer local;
  ConeNormalizer& norm = cache ? *cache : local;
  MemberResult out{false, true};
  for (const auto& lb : basis) {
    LinearBasis cleaned(lb.offset, lb.generators.without_zero());
    auto r = detail::general_linear_member(b, cleaned, mode, norm);
    if (r.member) return {true, true};
    out.verified = out.verified && r.verified;
  }
  return out;
}

/// Columns v_1..v_m of A and the right-hand side b of A x = b, x in N^m.
struct IpInstance {
  std::vector<IntVector> columns;
  IntVector b;

  IpInstance(std::vector<IntVector> cols, IntVector rhs)
      : columns(std::move(cols)), b(std::move(rhs)) {
    for (const auto& c : columns)
      if (c.dim() != b.dim())
        throw malformed_input("column " + c.to_string() + " does not match target dimension " +
                              std::to_string(b.dim()));
  }

  /// From row-major matrix entries.
  static IpInstance from_rows(const std::vector<std::vector<Integer>>& rows, IntVector rhs) {
    if (rows.empty()) throw malformed_input("matrix needs at least one row");
    const std::size_t m = rows.front().size();
    if (m == 0) throw malformed_input("matrix needs at least one column");
    for (const auto& r : rows)
      if (r.size() != m) throw malformed_input("matrix rows have different lengths");
    if (rows.size() != rhs.dim())
      throw malformed_input("matrix has " + std::to_string(rows.size()) +
                            " rows but the target has dimension " + std::to_string(rhs.dim()));
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < m; ++j) {
      IntVector c(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) c[i] = rows[i][j];
      cols.push_back(std::move(c));
    }
    return IpInstance(std::move(cols), std::move(rhs));
  }

  IntVector apply(const std::vector<Integer>& x) const {
    if (x.size() != columns.size()) throw malformed_input("witness length differs from column count");
    IntVector out(b.dim());
    for (std::size_t j = 0; j < columns.size(); ++j) out += x[j] * columns[j];
    return out;
  }
};

struct Feasibility {
  enum class Status { feasible, infeasible, inconclusive };
  Status status = Status::infeasible;
  std::optional<std::vector<Integer>> witness;
  bool verified = true;

  bool feasible() const noexcept { return status == Status::feasible; }

  std::string to_string() const {
    switch (status) {
      case Status::feasible: {
        std::string out = "feasible, witness [";
        for (std::size_t i = 0; i < witness->size(); ++i) {
          if (i) out += ",";
          out += (*witness)[i].str();
        }
        return out + "]";
      }
      case Status::infeasible:
        return "infeasible";
      default:
        return "inconclusive";
    }
  }
};

/// Oracle confirmation of a negative answer is attempted only below this
/// many box points.
inline constexpr std::size_t kOracleConfirmLimit = 200'000;

/// Feasibility of A x = b over x in N^m via b in cone_N(columns).
inline Feasibility ip_feasible(const IpInstance& inst, const NormalizeMode& mode,
                               ConeNormalizer* cache = nullptr) {
  const std::size_t m = inst.columns.size();
  const std::size_t k = inst.b.dim();
  std::vector<IntVector> nonzero;
  for (const auto& c : inst.columns)
    if (!c.is_zero()) nonzero.push_back(c);
  if (nonzero.empty()) {
    if (inst.b.is_zero()) return {Feasibility::Status::feasible, std::vector<Integer>(m), true};
    return {Feasibility::Status::infeasible, std::nullopt, true};
  }

  const GeneratorSet v(k, std::move(nonzero));
  // generator position -> first column carrying it
  std::vector<std::size_t> column_of(v.size(), m);
  for (std::size_t j = 0; j < m; ++j) {
    if (inst.columns[j].is_zero()) continue;
    std::size_t g = v.index_of(inst.columns[j]);
    if (column_of[g] == m) column_of[g] = j;
  }

  ConeNormalizer local;
  ConeNormalizer& norm = cache ? *cache : local;
  auto form = norm.normalize(v, mode);

  for (const auto& lb : form->basis) {
    auto coeffs = linear_member(inst.b, lb);
    if (!coeffs) continue;
    std::vector<Integer> over_v = form->witnesses.at(lb.offset);
    for (std::size_t i = 0; i < lb.generators.size(); ++i)
      over_v[v.index_of(lb.generators[i])] += (*coeffs)[i];
    std::vector<Integer> x(m);
    for (std::size_t g = 0; g < v.size(); ++g) x[column_of[g]] = over_v[g];
    if (inst.apply(x) != inst.b)
      throw std::logic_error("ip_feasible: reconstructed witness does not satisfy A x = b");
    return {Feasibility::Status::feasible, std::move(x), true};
  }

  if (mode.is_exact()) return {Feasibility::Status::infeasible, std::nullopt, true};

  // Bounded normal forms under-approximate the cone: settle the negative by
  // saturating a box that encloses b, when that box is small enough.
  Integer radius = inst.b.max_abs();
  const bool signed_box = !inst.b.is_nonnegative() || !v.is_nonnegative();
  const Integer pad = v.is_nonnegative() ? Integer(0) : Integer(2 * k * v.max_abs());
  const Integer side = (signed_box ? 2 : 1) * (radius + pad) + 1;
  if (boost::multiprecision::pow(side, static_cast<unsigned>(std::min<std::size_t>(k, 64))) <=
      kOracleConfirmLimit) {
    const PointSet pts = oracle_cone_points(v, Box(k, radius, signed_box));
    if (!pts.count(inst.b)) return {Feasibility::Status::infeasible, std::nullopt, true};
  }
  return {Feasibility::Status::inconclusive, std::nullopt, false};
}

/// Canonical text of an automaton, used as a cache key.
inline std::string canonical_key(const Nfa& a) {
  std::ostringstream out;
  out << a.states() << '|' << a.alphabet_size() << '|' << a.initial() << '|';
  for (auto f : a.finals()) out << f << ',';
  out << '|';
  for (const auto& t : a.transitions()) out << t.from << ':' << t.letter << ':' << t.to << ';';
  return out.str();
}

/// Memoized Parikh images and cone normal forms shared by many queries.
/// Queries may run concurrently; cache population is serialized per key.
class DecisionSession {
 public:
  explicit DecisionSession(std::size_t limit = kDefaultTableLimit) : normalizer_(limit) {}

  std::shared_ptr<const ParikhImage> image(const Nfa& a, const ImageNormalization& norm = {}) {
    std::string key = canonical_key(a) + '#' + std::to_string(static_cast<int>(norm.kind)) +
                      norm.mode.to_string();
    {
      std::lock_guard lock(mutex_);
      if (auto it = images_.find(key); it != images_.end()) return it->second;
    }
    auto img = std::make_shared<const ParikhImage>(parikh_image(a, norm, &normalizer_));
    std::lock_guard lock(mutex_);
    return images_.emplace(std::move(key), std::move(img)).first->second;
  }

  /// Whether some accepted word of A has Parikh image b.
  MemberResult nfa_member(const Nfa& a, const IntVector& b, const ImageNormalization& norm = {},
                          const std::optional<NormalizeMode>& mode = std::nullopt) {
    if (b.dim() != a.alphabet_size())
      throw malformed_input("query has dimension " + std::to_string(b.dim()) +
                            ", alphabet has " + std::to_string(a.alphabet_size()) + " letters");
    auto img = image(a, norm);
    MemberResult r = parikh::semilinear_member(b, img->basis, mode, &normalizer_);
    if (!r.member) r.verified = r.verified && img->verified;
    return r;
  }

  MemberResult semilinear_member(const IntVector& b, const SemilinearBasis& basis,
                                 const std::optional<NormalizeMode>& mode = std::nullopt) {
    return parikh::semilinear_member(b, basis, mode, &normalizer_);
  }

  Feasibility ip_feasible(const IpInstance& inst, const NormalizeMode& mode) {
    return parikh::ip_feasible(inst, mode, &normalizer_);
  }

  ConeNormalizer& normalizer() noexcept { return normalizer_; }

 private:
  ConeNormalizer normalizer_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const ParikhImage>> images_;
};

/// Convenience wrapper with a throwaway session.
inline MemberResult nfa_member(const Nfa& a, const IntVector& b,
                               const ImageNormalization& norm = {}) {
  DecisionSession session;
  return session.nfa_member(a, b, norm);
}

}  // namespace parikh
