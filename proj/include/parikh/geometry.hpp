#pragma once

// Exact linear algebra on integer vectors: ranks, span solving, simplicial
// cone membership, Caratheodory subcones, and semilinear-set sums.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parikh/error.hpp"
#include "parikh/int_vector.hpp"
#include "parikh/integer.hpp"

namespace parikh {

/// Sorted, duplicate-free set of vectors of a common dimension.
///
/// Storage is immutable and shared, so copies are cheap; the Parikh dynamic
/// program hands the same few generator sets to hundreds of thousands of
/// linear bases.
class GeneratorSet {
 public:
  GeneratorSet() : GeneratorSet(1) {}

  explicit GeneratorSet(std::size_t dim)
      : vectors_(std::make_shared<const std::vector<IntVector>>()), dim_(dim) {
    if (dim == 0) throw malformed_input("generator set dimension must be positive");
  }

  GeneratorSet(std::size_t dim, std::vector<IntVector> vectors) : dim_(dim) {
    if (dim == 0) throw malformed_input("generator set dimension must be positive");
    for (const auto& v : vectors) {
      if (v.dim() != dim)
        throw malformed_input("generator " + v.to_string() + " has dimension " +
                              std::to_string(v.dim()) + ", expected " +
                              std::to_string(dim));
      Integer a = v.max_abs();
      if (a > max_abs_) max_abs_ = a;
    }
    std::sort(vectors.begin(), vectors.end());
    vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
    vectors_ = std::make_shared<const std::vector<IntVector>>(std::move(vectors));
  }

  /// Dimension taken from the first vector; the list must be nonempty.
  GeneratorSet(std::initializer_list<IntVector> vectors)
      : GeneratorSet(vectors.size() ? vectors.begin()->dim() : 0,
                     std::vector<IntVector>(vectors)) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_->size(); }
  bool empty() const noexcept { return vectors_->empty(); }
  const Integer& max_abs() const noexcept { return max_abs_; }

  const IntVector& operator[](std::size_t i) const { return (*vectors_)[i]; }
  auto begin() const noexcept { return vectors_->begin(); }
  auto end() const noexcept { return vectors_->end(); }
  const std::vector<IntVector>& vectors() const noexcept { return *vectors_; }

  bool contains(const IntVector& v) const {
    return std::binary_search(vectors_->begin(), vectors_->end(), v);
  }

  /// Position of `v` in canonical order, or size() when absent.
  std::size_t index_of(const IntVector& v) const {
    auto it = std::lower_bound(vectors_->begin(), vectors_->end(), v);
    if (it == vectors_->end() || *it != v) return size();
    return static_cast<std::size_t>(it - vectors_->begin());
  }

  bool has_zero() const {
    return std::any_of(begin(), end(), [](const IntVector& v) { return v.is_zero(); });
  }

  bool is_nonnegative() const {
    return std::all_of(begin(), end(), [](const IntVector& v) { return v.is_nonnegative(); });
  }

  bool is_subset_of(const GeneratorSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  GeneratorSet united_with(const GeneratorSet& other) const {
    if (other.dim_ != dim_) throw malformed_input("generator sets differ in dimension");
    if (other.empty() || vectors_ == other.vectors_) return *this;
    if (empty()) return other;
    std::vector<IntVector> merged;
    merged.reserve(size() + other.size());
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(merged));
    return GeneratorSet(dim_, std::move(merged));
  }

  GeneratorSet without_zero() const {
    if (!has_zero()) return *this;
    std::vector<IntVector> kept;
    for (const auto& v : *this)
      if (!v.is_zero()) kept.push_back(v);
    return GeneratorSet(dim_, std::move(kept));
  }

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
    return a.dim_ == b.dim_ && (a.vectors_ == b.vectors_ || *a.vectors_ == *b.vectors_);
  }
  friend bool operator!=(const GeneratorSet& a, const GeneratorSet& b) { return !(a == b); }
  friend bool operator<(const GeneratorSet& a, const GeneratorSet& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    if (a.vectors_ == b.vectors_) return false;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ", ";
      out += (*this)[i].to_string();
    }
    return out + "}";
  }

 private:
  std::shared_ptr<const std::vector<IntVector>> vectors_;
  std::size_t dim_ = 1;
  Integer max_abs_ = 0;
};

/// offset + N-combinations of generators.
struct LinearBasis {
  IntVector offset;
  GeneratorSet generators;

  LinearBasis(IntVector off, GeneratorSet gens)
      : offset(std::move(off)), generators(std::move(gens)) {
    if (offset.dim() != generators.dim())
      throw malformed_input("offset " + offset.to_string() +
                            " does not match generator dimension " +
                            std::to_string(generators.dim()));
  }

  explicit LinearBasis(IntVector off)
      : offset(std::move(off)), generators(offset.dim()) {}

  std::size_t dim() const noexcept { return offset.dim(); }

  friend bool operator==(const LinearBasis& a, const LinearBasis& b) {
    return a.offset == b.offset && a.generators == b.generators;
  }
  friend bool operator!=(const LinearBasis& a, const LinearBasis& b) { return !(a == b); }
  friend bool operator<(const LinearBasis& a, const LinearBasis& b) {
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.generators < b.generators;
  }

  std::string to_string() const {
    return "P(" + offset.to_string() + "; " + generators.to_string() + ")";
  }
};

/// A finite union of linear sets, kept sorted and deduplicated.
class SemilinearBasis {
 public:
  explicit SemilinearBasis(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw malformed_input("semilinear basis dimension must be positive");
  }

  SemilinearBasis(std::size_t dim, std::vector<LinearBasis> bases)
      : dim_(dim), bases_(std::move(bases)) {
    if (dim == 0) throw malformed_input("semilinear basis dimension must be positive");
    for (const auto& b : bases_)
      if (b.dim() != dim_)
        throw malformed_input("linear basis " + b.to_string() + " has dimension " +
                              std::to_string(b.dim()) + ", expected " + std::to_string(dim_));
    canonicalize();
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return bases_.size(); }
  bool empty() const noexcept { return bases_.empty(); }
  auto begin() const noexcept { return bases_.begin(); }
  auto end() const noexcept { return bases_.end(); }
  const LinearBasis& operator[](std::size_t i) const { return bases_[i]; }
  const std::vector<LinearBasis>& bases() const noexcept { return bases_; }

  bool contains_basis(const LinearBasis& b) const {
    return std::binary_search(bases_.begin(), bases_.end(), b);
  }

  friend bool operator==(const SemilinearBasis& a, const SemilinearBasis& b) {
    return a.dim_ == b.dim_ && a.bases_ == b.bases_;
  }

  std::string to_string() const {
    if (bases_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < bases_.size(); ++i) {
      if (i) out += " u ";
      out += bases_[i].to_string();
    }
    return out;
  }

 private:
  void canonicalize() {
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  }

  std::size_t dim_;
  std::vector<LinearBasis> bases_;
};

namespace detail {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// In-place reduced row echelon form over the first `pivot_cols` columns.
/// Returns the pivot column of each pivot row, in row order.
inline std::vector<std::size_t> reduce_rows(RationalMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// k x n matrix whose columns are the given vectors.
inline RationalMatrix columns_matrix(const std::vector<IntVector>& cols, std::size_t k) {
  RationalMatrix m(k, std::vector<Rational>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < k; ++r) m[r][c] = Rational(cols[c][r]);
  return m;
}

inline std::size_t rank_of(const std::vector<IntVector>& vectors, std::size_t k) {
  if (vectors.empty()) return 0;
  auto m = columns_matrix(vectors, k);
  return reduce_rows(m, vectors.size()).size();
}

}  // namespace detail

/// Rank over the rationals.
inline std::size_t rank(const GeneratorSet& v) {
  if (v.empty()) throw malformed_input("rank of an empty generator set is undefined");
  return detail::rank_of(v.vectors(), v.dim());
}

inline bool is_independent(const GeneratorSet& s) {
  return s.empty() || detail::rank_of(s.vectors(), s.dim()) == s.size();
}

/// Precomputed solver for sum_i lambda_i u_i = v over an independent set S.
///
/// Row-reduces [U | I] once; the accumulated row operations E (scaled to an
/// integer matrix with common denominator D) give lambda = (E v)[0..d) / D,
/// and v lies in the span iff the remaining rows of E v vanish. All queries
/// after construction are integer dot products.
class SpanSolver {
 public:
  explicit SpanSolver(const GeneratorSet& s) : basis_(s), k_(s.dim()), d_(s.size()) {
    detail::RationalMatrix m(k_, std::vector<Rational>(d_ + k_));
    for (std::size_t r = 0; r < k_; ++r) {
      for (std::size_t c = 0; c < d_; ++c) m[r][c] = Rational(s[c][r]);
      m[r][d_ + r] = 1;
    }
    auto pivots = detail::reduce_rows(m, d_);
    if (pivots.size() != d_)
      throw domain_error("generator set " + s.to_string() + " is linearly dependent");

    Integer den = 1;
    for (const auto& row : m)
      for (std::size_t c = d_; c < d_ + k_; ++c)
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(row[c]));
    denominator_ = den;
    transform_.assign(k_, std::vector<Integer>(k_));
    for (std::size_t r = 0; r < k_; ++r)
      for (std::size_t c = 0; c < k_; ++c) {
        Rational scaled = m[r][d_ + c] * Rational(den);
        transform_[r][c] = boost::multiprecision::numerator(scaled);
      }
  }

  const GeneratorSet& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return d_; }

  /// Numerators of lambda over the shared positive denominator(), or nullopt
  /// when v is outside the span.
  std::optional<std::vector<Integer>> scaled_coefficients(const IntVector& v) const {
    if (v.dim() != k_)
      throw malformed_input("vector " + v.to_string() + " does not match dimension " +
                            std::to_string(k_));
    std::vector<Integer> image(k_);
    for (std::size_t r = 0; r < k_; ++r) {
      Integer acc = 0;
      for (std::size_t c = 0; c < k_; ++c)
        if (transform_[r][c] != 0) acc += transform_[r][c] * v[c];
      image[r] = std::move(acc);
    }
    for (std::size_t r = d_; r < k_; ++r)
      if (image[r] != 0) return std::nullopt;
    image.resize(d_);
    return image;
  }

  const Integer& denominator() const noexcept { return denominator_; }

  std::optional<std::vector<Rational>> solve(const IntVector& v) const {
    auto scaled = scaled_coefficients(v);
    if (!scaled) return std::nullopt;
    std::vector<Rational> out;
    out.reserve(d_);
    for (const auto& x : *scaled) out.emplace_back(x, denominator_);
    return out;
  }

 private:
  GeneratorSet basis_;
  std::size_t k_;
  std::size_t d_;
  Integer denominator_ = 1;
  std::vector<std::vector<Integer>> transform_;
};

/// Coefficients of v over S in S's canonical order, when v is in span(S).
inline std::optional<std::vector<Rational>> solve_in_span(const GeneratorSet& s,
                                                          const IntVector& v) {
  return SpanSolver(s).solve(v);
}

/// Nonnegative real coefficients of v over an independent S, if any.
inline std::optional<std::vector<Rational>> cone_contains(const GeneratorSet& s,
                                                          const IntVector& v) {
  auto lambda = solve_in_span(s, v);
  if (!lambda) return std::nullopt;
  for (const auto& x : *lambda)
    if (x < 0) return std::nullopt;
  return lambda;
}

/// All linearly independent rank(V)-subsets of V, in canonical order. Their
/// real cones cover cone(V).
inline std::vector<GeneratorSet> caratheodory_subcones(const GeneratorSet& v) {
  if (v.empty()) throw malformed_input("caratheodory_subcones needs a nonempty set");
  if (v.has_zero()) throw domain_error("caratheodory_subcones: zero vector in " + v.to_string());
  const std::size_t d = rank(v);
  const std::size_t m = v.size();

  std::vector<GeneratorSet> out;
  std::vector<std::size_t> pick(d);
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  while (true) {
    std::vector<IntVector> subset;
    subset.reserve(d);
    for (auto i : pick) subset.push_back(v[i]);
    if (detail::rank_of(subset, v.dim()) == d) out.emplace_back(v.dim(), std::move(subset));

    // next d-combination of {0..m-1} in lexicographic order
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == m - d + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// {v1 + v2 : v1 in B1, v2 in B2}, basis by basis.
inline SemilinearBasis sum_semilinear(const SemilinearBasis& b1, const SemilinearBasis& b2) {
  if (b1.dim() != b2.dim())
    throw malformed_input("sum_semilinear: dimension mismatch " + std::to_string(b1.dim()) +
                          " vs " + std::to_string(b2.dim()));
  std::vector<LinearBasis> out;
  out.reserve(b1.size() * b2.size());
  for (const auto& x : b1)
    for (const auto& y : b2)
      out.emplace_back(x.offset + y.offset, x.generators.united_with(y.generators));
  return SemilinearBasis(b1.dim(), std::move(out));
}

}  // namespace parikh
