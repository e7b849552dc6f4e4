#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "parikh/error.hpp"
#include "parikh/integer.hpp"

namespace parikh {

/// A k-tuple of arbitrary-precision integers: Parikh counts, offsets and
/// generators all live here. Ordering is by dimension, then lexicographic.
class IntVector {
 public:
  IntVector() = default;

  explicit IntVector(std::size_t dim) : entries_(dim) {
    if (dim == 0) throw malformed_input("vector dimension must be positive");
  }

  IntVector(std::initializer_list<Integer> entries) : entries_(entries) {
    if (entries_.empty()) throw malformed_input("vector dimension must be positive");
  }

  explicit IntVector(std::vector<Integer> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw malformed_input("vector dimension must be positive");
  }

  static IntVector zero(std::size_t dim) { return IntVector(dim); }

  /// The unit vector with a one at 0-based position `index`.
  static IntVector unit(std::size_t dim, std::size_t index) {
    IntVector e(dim);
    e.entries_.at(index) = 1;
    return e;
  }

  std::size_t dim() const noexcept { return entries_.size(); }

  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  const std::vector<Integer>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Integer& x) { return x == 0; });
  }

  bool is_nonnegative() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Integer& x) { return x >= 0; });
  }

  Integer max_abs() const {
    Integer best = 0;
    for (const auto& x : entries_) {
      Integer a = abs_value(x);
      if (a > best) best = a;
    }
    return best;
  }

  Integer sum() const {
    Integer s = 0;
    for (const auto& x : entries_) s += x;
    return s;
  }

  IntVector& operator+=(const IntVector& other) {
    require_same_dim(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
  }

  IntVector& operator-=(const IntVector& other) {
    require_same_dim(other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
  }

  IntVector& operator*=(const Integer& c) {
    for (auto& x : entries_) x *= c;
    return *this;
  }

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Integer& c, IntVector v) { return v *= c; }
  friend IntVector operator-(IntVector v) {
    for (auto& x : v.entries_) x = -x;
    return v;
  }

  friend bool operator==(const IntVector& a, const IntVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const IntVector& a, const IntVector& b) { return !(a == b); }

  friend bool operator<(const IntVector& a, const IntVector& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                        b.entries_.begin(), b.entries_.end());
  }
  friend bool operator>(const IntVector& a, const IntVector& b) { return b < a; }
  friend bool operator<=(const IntVector& a, const IntVector& b) { return !(b < a); }
  friend bool operator>=(const IntVector& a, const IntVector& b) { return !(a < b); }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ", ";
      out += entries_[i].str();
    }
    return out + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const IntVector& v) {
    return os << v.to_string();
  }

  void require_same_dim(const IntVector& other) const {
    if (dim() != other.dim())
      throw malformed_input("dimension mismatch: " + std::to_string(dim()) + " vs " +
                            std::to_string(other.dim()));
  }

 private:
  std::vector<Integer> entries_;
};

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const noexcept {
    std::size_t h = v.dim();
    for (const auto& x : v) h = h * 1000003u ^ std::hash<Integer>{}(x);
    return h;
  }
};

/// The componentwise order: u_i <= v_i for every i.
inline bool dominates(const IntVector& u, const IntVector& v) {
  u.require_same_dim(v);
  for (std::size_t i = 0; i < u.dim(); ++i)
    if (u[i] > v[i]) return false;
  return true;
}

}  // namespace parikh

template <>
struct std::hash<parikh::IntVector> : parikh::IntVectorHash {};
