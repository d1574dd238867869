#pragma once

// Graded attribute implications A => B, their truth in L-sets, least models
// [M]_T, semantic entailment and equivalence of theories.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gfai/fuzzy_set.hpp"

namespace gfai {

struct Implication {
  FuzzySet antecedent;
  FuzzySet consequent;

  Implication() = default;
  Implication(FuzzySet a, FuzzySet b) : antecedent(std::move(a)), consequent(std::move(b)) {
    antecedent.check_compatible(consequent);
  }

  friend bool operator==(const Implication&, const Implication&) = default;
};

inline std::string format_implication(const Implication& imp) {
  return format_set(imp.antecedent) + " => " + format_set(imp.consequent);
}

inline Implication parse_implication(std::string_view text, const UniversePtr& universe,
                                     const ChainPtr& chain) {
  const auto arrow = text.find("=>");
  if (arrow == std::string_view::npos || text.find("=>", arrow + 2) != std::string_view::npos)
    throw ParseError("expected '<set> => <set>': '" + std::string(text) + "'");
  return {parse_set(text.substr(0, arrow), universe, chain),
          parse_set(text.substr(arrow + 2), universe, chain)};
}

/// Ordered, duplicate-free list of implications over one universe and chain.
class Theory {
 public:
  Theory() = default;
  Theory(UniversePtr universe, ChainPtr chain) : universe_(std::move(universe)), chain_(std::move(chain)) {}
  Theory(UniversePtr universe, ChainPtr chain, std::vector<Implication> items)
      : Theory(std::move(universe), std::move(chain)) {
    for (auto& imp : items) add(std::move(imp));
  }

  /// Appends `imp` unless an identical implication is present.
  bool add(Implication imp) {
    check(imp.antecedent);
    const auto h = hash(imp);
    auto [lo, hi] = index_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (items_[it->second] == imp) return false;
    index_.emplace(h, items_.size());
    items_.push_back(std::move(imp));
    return true;
  }
  bool add(FuzzySet a, FuzzySet b) { return add(Implication(std::move(a), std::move(b))); }

  std::optional<std::size_t> find(const Implication& imp) const {
    auto [lo, hi] = index_.equal_range(hash(imp));
    for (auto it = lo; it != hi; ++it)
      if (items_[it->second] == imp) return it->second;
    return std::nullopt;
  }
  bool contains(const Implication& imp) const { return find(imp).has_value(); }

  /// Copy without the member at position `skip`.
  Theory without(std::size_t skip) const {
    Theory out(universe_, chain_);
    for (std::size_t i = 0; i < items_.size(); ++i)
      if (i != skip) out.add(items_[i]);
    return out;
  }

  const UniversePtr& universe() const noexcept { return universe_; }
  const ChainPtr& chain() const noexcept { return chain_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Implication& operator[](std::size_t i) const { return items_.at(i); }
  const std::vector<Implication>& items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  void check(const FuzzySet& s) const {
    if (!same_universe(universe_, s.universe())) throw UniverseMismatch();
    if (!same_chain(chain_, s.chain())) throw ChainMismatch();
  }
  void check(const Theory& other) const {
    if (!same_universe(universe_, other.universe_)) throw UniverseMismatch();
    if (!same_chain(chain_, other.chain_)) throw ChainMismatch();
  }

  friend bool operator==(const Theory& a, const Theory& b) { return a.items_ == b.items_; }

 private:
  static std::size_t hash(const Implication& imp) {
    const FuzzySetHash h;
    return h(imp.antecedent) * 31 + h(imp.consequent);
  }

  UniversePtr universe_;
  ChainPtr chain_;
  std::vector<Implication> items_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

/// ||A => B||_M = S(A, M)* -> S(B, M).
inline TruthDegree truth_in_model(const Implication& imp, const FuzzySet& model) {
  const auto& chain = *model.chain();
  return chain.residuum(chain.hedge(subsethood(imp.antecedent, model)), subsethood(imp.consequent, model));
}

inline bool is_model(const FuzzySet& m, const Theory& theory) {
  theory.check(m);
  for (const auto& imp : theory)
    if (!truth_in_model(imp, m).is_top()) return false;
  return true;
}

/// Least-model computation for a fixed theory. Members can be switched off,
/// which is how redundancy elimination walks a shrinking theory without
/// copying it.
///
/// Closure is the fixpoint of N -> N u U (S(A, N)* (x) B). Under
/// globalization with |Y| * n <= 64 the sets are encoded as bit masks of
/// "y has degree >= k" atoms and an implication fires iff A is contained in N.
class ClosureEngine {
 public:
  explicit ClosureEngine(const Theory& theory)
      : universe_(theory.universe()), chain_(theory.chain()), count_(theory.size()) {
    width_ = universe_ ? universe_->size() : 0;
    active_.assign(count_, 1);
    if (!chain_) return;
    mask_mode_ = chain_->is_globalization() && width_ * static_cast<std::size_t>(chain_->scale()) <= 64;
    if (mask_mode_) {
      ante_mask_.reserve(count_);
      cons_mask_.reserve(count_);
      for (const auto& imp : theory) {
        ante_mask_.push_back(encode(imp.antecedent.indices()));
        cons_mask_.push_back(encode(imp.consequent.indices()));
      }
    } else {
      ante_.reserve(count_ * width_);
      cons_.reserve(count_ * width_);
      for (const auto& imp : theory) {
        ante_.insert(ante_.end(), imp.antecedent.indices().begin(), imp.antecedent.indices().end());
        cons_.insert(cons_.end(), imp.consequent.indices().begin(), imp.consequent.indices().end());
      }
    }
  }

  std::size_t size() const noexcept { return count_; }
  bool active(std::size_t i) const { return active_.at(i) != 0; }
  void deactivate(std::size_t i) { active_.at(i) = 0; }
  void activate(std::size_t i) { active_.at(i) = 1; }

  /// [m] under the active members, ignoring `skip` when given.
  FuzzySet close(const FuzzySet& m, std::optional<std::size_t> skip = std::nullopt) const {
    FuzzySet out = m;
    if (mask_mode_) {
      decode(close_mask(encode(m.indices()), skip.value_or(kNone), 0), out.indices());
    } else {
      close_generic(out.indices(), skip.value_or(kNone), nullptr, nullptr);
    }
    return out;
  }

  /// Whether member i is fully entailed by the other active members, i.e.
  /// B_i is contained in the closure of A_i without i. When `saturated` is
  /// set the caller guarantees [A_i] under all active members equals B_i,
  /// which bounds the members that can fire.
  bool entailed_by_others(std::size_t i, bool saturated = false) const {
    if (mask_mode_) {
      const auto target = cons_mask_[i];
      if (!saturated) return (close_mask(ante_mask_[i], i, target) & target) == target;
      candidates_.clear();
      for (std::size_t j = 0; j < count_; ++j)
        if (active_[j] && j != i && (ante_mask_[j] & ~target) == 0) candidates_.push_back(j);
      std::uint64_t n = ante_mask_[i];
      bool changed = true;
      while (changed && (n & target) != target) {
        changed = false;
        for (auto& j : candidates_) {
          if (j == kNone || (ante_mask_[j] & ~n) != 0) continue;
          if ((cons_mask_[j] & ~n) != 0) {
            n |= cons_mask_[j];
            changed = true;
          }
          j = kNone;
        }
      }
      return (n & target) == target;
    }
    std::vector<Index> n(ante_.begin() + static_cast<std::ptrdiff_t>(i * width_),
                         ante_.begin() + static_cast<std::ptrdiff_t>((i + 1) * width_));
    const Index* target = cons_.data() + i * width_;
    return close_generic(n, i, target, saturated ? target : nullptr);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::uint64_t encode(std::span<const Index> degrees) const {
    std::uint64_t m = 0;
    const auto n = static_cast<std::size_t>(chain_->scale());
    for (std::size_t y = 0; y < degrees.size(); ++y)
      m |= (degrees[y] >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << degrees[y]) - 1) << (y * n);
    return m;
  }
  void decode(std::uint64_t m, std::span<Index> degrees) const {
    const auto n = static_cast<std::size_t>(chain_->scale());
    const std::uint64_t block = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t y = 0; y < degrees.size(); ++y)
      degrees[y] = static_cast<Index>(std::popcount((m >> (y * n)) & block));
  }

  std::uint64_t close_mask(std::uint64_t n, std::size_t skip, std::uint64_t target) const {
    fired_.assign(count_, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < count_; ++j) {
        if (!active_[j] || fired_[j] || j == skip || (ante_mask_[j] & ~n) != 0) continue;
        fired_[j] = 1;
        if ((cons_mask_[j] & ~n) != 0) {
          n |= cons_mask_[j];
          changed = true;
          if (target && (n & target) == target) return n;
        }
      }
    }
    return n;
  }

  // Returns whether `target` (if any) ended up contained in n. With `bound`,
  // members whose antecedent has S(A, bound)* = 0 are skipped: they cannot
  // fire below the bound.
  bool close_generic(std::span<Index> n, std::size_t skip, const Index* target, const Index* bound) const {
    const auto& chain = *chain_;
    const Index top = chain.top_index();
    auto contains_target = [&] {
      for (std::size_t y = 0; y < width_; ++y)
        if (n[y] < target[y]) return false;
      return true;
    };
    auto degree_in = [&](const Index* a, const Index* m) {
      Index s = top;
      for (std::size_t y = 0; y < width_ && s > 0; ++y) s = std::min(s, chain.residuum_index(a[y], m[y]));
      return chain.hedge_index(s);
    };
    fired_.assign(count_, 0);
    if (bound)
      for (std::size_t j = 0; j < count_; ++j)
        if (active_[j] && degree_in(ante_.data() + j * width_, bound) == 0) fired_[j] = 1;
    if (target && contains_target()) return true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < count_; ++j) {
        if (!active_[j] || fired_[j] || j == skip) continue;
        const Index s = degree_in(ante_.data() + j * width_, n.data());
        if (s == 0) continue;
        if (s == top) fired_[j] = 1;
        const Index* b = cons_.data() + j * width_;
        bool grew = false;
        for (std::size_t y = 0; y < width_; ++y) {
          const Index v = chain.tensor_index(s, b[y]);
          if (v > n[y]) {
            n[y] = v;
            grew = true;
          }
        }
        if (grew) {
          changed = true;
          if (target && contains_target()) return true;
        }
      }
    }
    return target ? contains_target() : true;
  }

  UniversePtr universe_;
  ChainPtr chain_;
  std::size_t count_ = 0;
  std::size_t width_ = 0;
  bool mask_mode_ = false;
  std::vector<char> active_;
  std::vector<std::uint64_t> ante_mask_, cons_mask_;
  std::vector<Index> ante_, cons_;
  mutable std::vector<char> fired_;
  mutable std::vector<std::size_t> candidates_;
};

/// The least model of `theory` containing `m`.
inline FuzzySet close(const FuzzySet& m, const Theory& theory) {
  theory.check(m);
  return ClosureEngine(theory).close(m);
}

/// Degree to which `theory` semantically entails `imp`: S(B, [A]_T).
inline TruthDegree entail_degree(const Theory& theory, const Implication& imp) {
  theory.check(imp.antecedent);
  return subsethood(imp.consequent, close(imp.antecedent, theory));
}

inline bool entails(const Theory& theory, const Implication& imp) {
  theory.check(imp.antecedent);
  return imp.consequent.is_subset_of(close(imp.antecedent, theory));
}

/// Every member of each theory is fully entailed by the other theory.
inline bool equivalent(const Theory& a, const Theory& b) {
  a.check(b);
  const ClosureEngine ea(a), eb(b);
  for (const auto& imp : a)
    if (!imp.consequent.is_subset_of(eb.close(imp.antecedent))) return false;
  for (const auto& imp : b)
    if (!imp.consequent.is_subset_of(ea.close(imp.antecedent))) return false;
  return true;
}

inline bool is_redundant(const Theory& theory, std::size_t i) {
  if (i >= theory.size())
    throw PreconditionError("implication #" + std::to_string(i) + " is not a member of the theory");
  return ClosureEngine(theory).entailed_by_others(i);
}

inline bool is_redundant(const Theory& theory, const Implication& imp) {
  auto i = theory.find(imp);
  if (!i) throw PreconditionError(format_implication(imp) + " is not a member of the theory");
  return is_redundant(theory, *i);
}

inline bool is_non_redundant(const Theory& theory) {
  const ClosureEngine engine(theory);
  for (std::size_t i = 0; i < theory.size(); ++i)
    if (engine.entailed_by_others(i)) return false;
  return true;
}

/// Scans members in list order and drops each one that is fully entailed by
/// the members still present. `saturated` promises B = [A]_T for every
/// member, which lets the scan bound each closure; saturation is preserved
/// by dropping entailed members, so the promise holds throughout.
inline Theory remove_redundancy(const Theory& theory, bool saturated = false) {
  ClosureEngine engine(theory);
  Theory out(theory.universe(), theory.chain());
  for (std::size_t i = 0; i < theory.size(); ++i)
    if (engine.entailed_by_others(i, saturated)) engine.deactivate(i);
  for (std::size_t i = 0; i < theory.size(); ++i)
    if (engine.active(i)) out.add(theory[i]);
  return out;
}

}  // namespace gfai
