#pragma once

// NFAs, boolean reachability matrices indexed by Parikh vectors, cycle types,
// and the path-length dynamic program producing a semilinear basis for the
// Parikh image.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "parikh/error.hpp"
#include "parikh/geometry.hpp"
#include "parikh/int_vector.hpp"
#include "parikh/normalform.hpp"

namespace parikh {

/// One transition; letters are numbered 1..k.
struct Transition {
  std::size_t from;
  std::size_t letter;
  std::size_t to;

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.from == b.from && a.letter == b.letter && a.to == b.to;
  }
  friend bool operator<(const Transition& a, const Transition& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.letter != b.letter) return a.letter < b.letter;
    return a.to < b.to;
  }
};

inline std::vector<std::string> default_letter_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i)
    names.push_back(k <= 26 ? std::string(1, static_cast<char>('a' + i))
                            : "x" + std::to_string(i + 1));
  return names;
}

class Nfa {
 public:
  Nfa(std::size_t states, std::size_t alphabet, std::size_t initial,
      std::vector<std::size_t> finals, std::vector<Transition> transitions,
      std::vector<std::string> letter_names = {})
      : n_(states), k_(alphabet), initial_(initial), finals_(std::move(finals)),
        transitions_(std::move(transitions)), names_(std::move(letter_names)) {
    if (n_ == 0) throw malformed_input("an NFA needs at least one state");
    if (k_ == 0) throw malformed_input("an NFA needs a nonempty alphabet");
    if (initial_ >= n_)
      throw malformed_input("initial state " + std::to_string(initial_) + " out of range");
    if (finals_.empty()) throw malformed_input("finals must be nonempty");
    for (auto f : finals_)
      if (f >= n_) throw malformed_input("final state " + std::to_string(f) + " out of range");
    std::sort(finals_.begin(), finals_.end());
    finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
    for (const auto& t : transitions_) {
      if (t.from >= n_ || t.to >= n_ || t.letter < 1 || t.letter > k_)
        throw malformed_input("transition (" + std::to_string(t.from) + ", " +
                              std::to_string(t.letter) + ", " + std::to_string(t.to) +
                              ") out of range for " + std::to_string(n_) + " states and " +
                              std::to_string(k_) + " letters");
    }
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                       transitions_.end());
    if (names_.empty()) names_ = default_letter_names(k_);
    if (names_.size() != k_) throw malformed_input("letter name count differs from alphabet size");
  }

  std::size_t states() const noexcept { return n_; }
  std::size_t alphabet_size() const noexcept { return k_; }
  std::size_t initial() const noexcept { return initial_; }
  const std::vector<std::size_t>& finals() const noexcept { return finals_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const std::vector<std::string>& letter_names() const noexcept { return names_; }

  bool is_final(std::size_t q) const {
    return std::binary_search(finals_.begin(), finals_.end(), q);
  }

  /// Transitions leaving q (contiguous since transitions are sorted by source).
  std::span<const Transition> outgoing(std::size_t q) const {
    auto lo = std::lower_bound(transitions_.begin(), transitions_.end(), Transition{q, 0, 0});
    auto hi = std::lower_bound(lo, transitions_.end(), Transition{q + 1, 0, 0});
    return {lo, hi};
  }

  friend bool operator==(const Nfa& a, const Nfa& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.initial_ == b.initial_ &&
           a.finals_ == b.finals_ && a.transitions_ == b.transitions_ && a.names_ == b.names_;
  }

 private:
  std::size_t n_;
  std::size_t k_;
  std::size_t initial_;
  std::vector<std::size_t> finals_;
  std::vector<Transition> transitions_;
  std::vector<std::string> names_;
};

/// Parikh image of a word given as 1-based letter indices.
inline IntVector parikh_of_word(std::span<const std::size_t> word, std::size_t k) {
  IntVector v(k);
  for (auto l : word) {
    if (l < 1 || l > k)
      throw malformed_input("letter " + std::to_string(l) + " outside 1.." + std::to_string(k));
    ++v[l - 1];
  }
  return v;
}

inline IntVector parikh_of_word(std::initializer_list<std::size_t> word, std::size_t k) {
  return parikh_of_word(std::span<const std::size_t>(word.begin(), word.size()), k);
}

/// Square 0-1 matrix stored as packed 64-bit rows.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_) {}

  static BoolMatrix identity(std::size_t n) {
    BoolMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  static BoolMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    BoolMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw malformed_input("matrix rows must be square");
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (rows[i][j]) m.set(i, j);
    }
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  bool operator()(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }

  void set(std::size_t i, std::size_t j, bool value = true) {
    auto& w = bits_[i * words_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  bool any() const {
    return std::any_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w != 0; });
  }

  friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

  friend BoolMatrix bool_or(const BoolMatrix& a, const BoolMatrix& b) {
    a.require_same(b);
    BoolMatrix out = a;
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] |= b.bits_[i];
    return out;
  }

  BoolMatrix& operator|=(const BoolMatrix& b) {
    require_same(b);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= b.bits_[i];
    return *this;
  }

  /// (a * b)[i][j] = OR_h a[i][h] AND b[h][j], one row OR per set bit.
  friend BoolMatrix bool_mul(const BoolMatrix& a, const BoolMatrix& b) {
    a.require_same(b);
    BoolMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      std::uint64_t* dst = &out.bits_[i * a.words_];
      for (std::size_t h = 0; h < a.n_; ++h) {
        if (!a(i, h)) continue;
        const std::uint64_t* src = &b.bits_[h * b.words_];
        for (std::size_t w = 0; w < a.words_; ++w) dst[w] |= src[w];
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + std::string((*this)(i, j) ? "1" : "0");
      s += "]";
    }
    return s + "]";
  }

 private:
  void require_same(const BoolMatrix& b) const {
    if (n_ != b.n_)
      throw malformed_input("boolean matrix size mismatch: " + std::to_string(n_) + " vs " +
                            std::to_string(b.n_));
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Which nonzero coordinate the recurrence splits on.
enum class PivotRule { first_nonzero, last_nonzero };

/// M_v for every v in N^k with entry sum <= n: M_v[i][j] = 1 iff some path
/// from state i to state j reads a word with Parikh image v.
class CycleTypeTable {
 public:
  using Key = std::vector<std::uint32_t>;

  std::size_t states() const noexcept { return n_; }
  std::size_t alphabet_size() const noexcept { return k_; }
  std::size_t size() const noexcept { return keys_.size(); }

  const BoolMatrix* find(const IntVector& v) const {
    if (v.dim() != k_) return nullptr;
    Key key(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      if (v[i] < 0 || v[i] > n_) return nullptr;
      key[i] = static_cast<std::uint32_t>(v[i]);
    }
    return find(key);
  }

  const BoolMatrix* find(const Key& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &matrices_[it->second];
  }

  const BoolMatrix& at(const IntVector& v) const {
    if (auto* m = find(v)) return *m;
    throw malformed_input("vector " + v.to_string() + " is outside the cycle-type index set");
  }

  /// Index-set members with their matrices, in canonical vector order.
  std::vector<std::pair<IntVector, const BoolMatrix*>> entries() const {
    std::vector<std::pair<IntVector, const BoolMatrix*>> out;
    out.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) out.emplace_back(to_vector(keys_[i]), &matrices_[i]);
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

  friend bool operator==(const CycleTypeTable& a, const CycleTypeTable& b) {
    if (a.n_ != b.n_ || a.k_ != b.k_ || a.keys_.size() != b.keys_.size()) return false;
    for (std::size_t i = 0; i < a.keys_.size(); ++i) {
      const BoolMatrix* other = b.find(a.keys_[i]);
      if (!other || !(*other == a.matrices_[i])) return false;
    }
    return true;
  }

 private:
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept {
      std::size_t h = 0;
      for (auto x : key) h = h * 131 + x;
      return h;
    }
  };

  IntVector to_vector(const Key& key) const {
    IntVector v(k_);
    for (std::size_t i = 0; i < k_; ++i) v[i] = key[i];
    return v;
  }

  std::size_t add(Key key, BoolMatrix m) {
    index_.emplace(key, keys_.size());
    keys_.push_back(std::move(key));
    matrices_.push_back(std::move(m));
    return keys_.size() - 1;
  }

  friend CycleTypeTable cycle_type_table(const Nfa&, PivotRule);

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Key> keys_;
  std::vector<BoolMatrix> matrices_;
  std::unordered_map<Key, std::size_t, KeyHash> index_;
};

namespace detail {

/// Calls fn(key) for every key in N^k with entry sum exactly `total`.
template <class Fn>
void for_each_composition(std::size_t k, std::uint32_t total, Fn&& fn) {
  std::vector<std::uint32_t> key(k, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
    if (pos + 1 == k) {
      key[pos] = left;
      fn(key);
      return;
    }
    for (std::uint32_t x = 0; x <= left; ++x) {
      key[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  rec(rec, 0, total);
}

}  // namespace detail

/// Builds {M_v} in n + 1 stages by total letter count. For |v| >= 2, with i a
/// pivot coordinate where v_i > 0:
///   M_v = OR over u <= v with u_i = 0 of  M_u * M_{e_i} * M_{v - e_i - u}
/// i.e. split each path at its first i-labelled transition.
inline CycleTypeTable cycle_type_table(const Nfa& a, PivotRule pivot = PivotRule::first_nonzero) {
  CycleTypeTable t;
  const std::size_t n = a.states();
  const std::size_t k = a.alphabet_size();
  t.n_ = n;
  t.k_ = k;

  t.add(CycleTypeTable::Key(k, 0), BoolMatrix::identity(n));
  std::vector<BoolMatrix> units(k, BoolMatrix(n));
  for (const auto& tr : a.transitions()) units[tr.letter - 1].set(tr.from, tr.to);
  for (std::size_t l = 0; l < k; ++l) {
    CycleTypeTable::Key key(k, 0);
    key[l] = 1;
    t.add(std::move(key), units[l]);
  }

  for (std::uint32_t total = 2; total <= n; ++total) {
    detail::for_each_composition(k, total, [&](const CycleTypeTable::Key& v) {
      std::size_t piv = k;
      for (std::size_t i = 0; i < k; ++i) {
        if (v[i] == 0) continue;
        if (piv == k || pivot == PivotRule::last_nonzero) piv = i;
        if (pivot == PivotRule::first_nonzero) break;
      }
      const BoolMatrix& unit = units[piv];
      BoolMatrix acc(n);
      CycleTypeTable::Key u(k, 0), w(k, 0);
      // odometer over u <= v with u[piv] = 0
      while (true) {
        for (std::size_t i = 0; i < k; ++i) w[i] = v[i] - u[i];
        --w[piv];
        const BoolMatrix& mu = *t.find(u);
        if (mu.any()) {
          const BoolMatrix& mw = *t.find(w);
          if (mw.any()) acc |= bool_mul(bool_mul(mu, unit), mw);
        }
        std::size_t i = 0;
        while (i < k && (i == piv || u[i] == v[i])) {
          if (i != piv) u[i] = 0;
          ++i;
        }
        if (i == k) break;
        ++u[i];
      }
      t.add(v, std::move(acc));
    });
  }
  return t;
}

/// Gamma_i: nonzero cycle types witnessed by a cycle through state i.
using GammaSets = std::vector<GeneratorSet>;

inline GammaSets gamma_sets(const Nfa& a, const CycleTypeTable& table) {
  if (table.states() != a.states() || table.alphabet_size() != a.alphabet_size())
    throw malformed_input("cycle-type table was built for a different automaton");
  std::vector<std::vector<IntVector>> per_state(a.states());
  for (const auto& [v, m] : table.entries()) {
    if (v.is_zero()) continue;
    for (std::size_t i = 0; i < a.states(); ++i)
      if ((*m)(i, i)) per_state[i].push_back(v);
  }
  GammaSets out;
  out.reserve(a.states());
  for (auto& vs : per_state) out.emplace_back(a.alphabet_size(), std::move(vs));
  return out;
}

/// When (if ever) to rewrite bases into the <= k independent generator shape.
struct ImageNormalization {
  enum class Kind { off, per_step, final };
  Kind kind = Kind::off;
  NormalizeMode mode;

  static ImageNormalization off() { return {}; }
  static ImageNormalization per_step(NormalizeMode m) { return {Kind::per_step, std::move(m)}; }
  static ImageNormalization at_end(NormalizeMode m) { return {Kind::final, std::move(m)}; }
};

struct ParikhImage {
  SemilinearBasis basis;
  /// False when bounded-mode normalization touched the result.
  bool verified = true;
};

namespace detail {

/// Generator sets interned to small ids for the dynamic program.
class GeneratorPool {
 public:
  std::uint32_t intern(const GeneratorSet& g) {
    auto [it, fresh] = ids_.emplace(g, static_cast<std::uint32_t>(sets_.size()));
    if (fresh) sets_.push_back(g);
    return it->second;
  }

  const GeneratorSet& get(std::uint32_t id) const { return sets_[id]; }

  std::uint32_t united(std::uint32_t id, std::uint32_t other) {
    auto key = std::make_pair(id, other);
    if (auto it = unions_.find(key); it != unions_.end()) return it->second;
    std::uint32_t out = intern(sets_[id].united_with(sets_[other]));
    unions_.emplace(key, out);
    return out;
  }

 private:
  std::map<GeneratorSet, std::uint32_t> ids_;
  std::vector<GeneratorSet> sets_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> unions_;
};

struct DpEntry {
  IntVector offset;
  std::uint32_t gens;

  friend bool operator==(const DpEntry& a, const DpEntry& b) {
    return a.gens == b.gens && a.offset == b.offset;
  }
};

struct DpEntryHash {
  std::size_t operator()(const DpEntry& e) const noexcept {
    return IntVectorHash{}(e.offset) * 31 + e.gens;
  }
};

using DpSet = std::unordered_set<DpEntry, DpEntryHash>;

}  // namespace detail

/// Semilinear basis of the Parikh image of L(A).
///
/// T[0][initial] = {P(0; Gamma_initial)}, and for i >= 1
///   T[i][j] = U_{(h, l, j) in delta} { P(v + e_l; S u Gamma_j) : P(v; S) in T[i-1][h] }
/// for i up to max(1, (n-1)^2). The answer is the union of T[i][f] over all i
/// and final states f. Without normalization the offsets are Parikh images of
/// short accepting paths and the generators are cycle types.
inline ParikhImage parikh_image(const Nfa& a, const ImageNormalization& norm = {},
                                ConeNormalizer* cache = nullptr) {
  const std::size_t n = a.states();
  const std::size_t k = a.alphabet_size();
  const CycleTypeTable table = cycle_type_table(a);
  const GammaSets gamma = gamma_sets(a, table);

  ConeNormalizer local;
  ConeNormalizer& normalizer = cache ? *cache : local;
  bool verified = true;

  detail::GeneratorPool pool;
  std::vector<std::uint32_t> gamma_id(n);
  for (std::size_t q = 0; q < n; ++q) gamma_id[q] = pool.intern(gamma[q]);

  // per-step rewriting: generator-set id -> (offset shift, generator id) list
  std::map<std::uint32_t, std::vector<std::pair<IntVector, std::uint32_t>>> rewrites;
  auto normalize_stage = [&](std::vector<detail::DpSet>& stage) {
    for (auto& entries : stage) {
      detail::DpSet next;
      for (auto it = entries.begin(); it != entries.end();) {
        auto node = entries.extract(it++);
        detail::DpEntry& e = node.value();
        const GeneratorSet& g = pool.get(e.gens);
        if (normalizer.normalized(LinearBasis(e.offset, g))) {
          next.insert(std::move(node));
          continue;
        }
        auto found = rewrites.find(e.gens);
        if (found == rewrites.end()) {
          auto form = normalizer.normalize(g, norm.mode);
          verified = verified && form->verified;
          std::vector<std::pair<IntVector, std::uint32_t>> parts;
          for (const auto& lb : form->basis) parts.emplace_back(lb.offset, pool.intern(lb.generators));
          found = rewrites.emplace(e.gens, std::move(parts)).first;
        }
        for (const auto& [shift, gid] : found->second) next.insert({e.offset + shift, gid});
      }
      entries = std::move(next);
    }
  };

  std::vector<detail::DpSet> stage(n);
  stage[a.initial()].insert({IntVector::zero(k), gamma_id[a.initial()]});
  if (norm.kind == ImageNormalization::Kind::per_step) normalize_stage(stage);

  detail::DpSet accepted;
  auto collect = [&](const std::vector<detail::DpSet>& s) {
    for (auto f : a.finals()) accepted.insert(s[f].begin(), s[f].end());
  };
  collect(stage);

  const std::size_t rounds = std::max<std::size_t>(1, (n - 1) * (n - 1));
  for (std::size_t i = 1; i <= rounds; ++i) {
    std::vector<detail::DpSet> next(n);
    for (std::size_t h = 0; h < n; ++h) {
      if (stage[h].empty()) continue;
      for (const auto& tr : a.outgoing(h)) {
        auto& dst = next[tr.to];
        for (const auto& e : stage[h]) {
          IntVector off = e.offset;
          ++off[tr.letter - 1];
          dst.insert({std::move(off), pool.united(e.gens, gamma_id[tr.to])});
        }
      }
    }
    stage = std::move(next);
    if (norm.kind == ImageNormalization::Kind::per_step) normalize_stage(stage);
    collect(stage);
  }
  stage.clear();

  std::vector<LinearBasis> bases;
  bases.reserve(accepted.size());
  while (!accepted.empty()) {
    auto node = accepted.extract(accepted.begin());
    bases.emplace_back(std::move(node.value().offset), pool.get(node.value().gens));
  }
  SemilinearBasis basis(k, std::move(bases));

  if (norm.kind == ImageNormalization::Kind::final) {
    auto form = normalize_semilinear(basis, norm.mode, &normalizer);
    return {std::move(form.basis), verified && form.verified};
  }
  return {std::move(basis), verified};
}

}  // namespace parikh
