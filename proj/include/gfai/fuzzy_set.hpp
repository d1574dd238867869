#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gfai/algebra.hpp"

namespace gfai {

/// Ordered, duplicate-free list of names. Used for attributes (Y) and, in
/// contexts, for objects (X).
class AttributeUniverse {
 public:
  explicit AttributeUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw Error("attribute universe must not be empty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& name = names_[i];
      if (name.empty() || name.find_first_of(" \t\r\n,{}/:=>") != std::string::npos)
        throw ParseError("invalid name '" + name + "'");
      if (!index_.emplace(name, i).second) throw ParseError("duplicate name '" + name + "'");
    }
  }

  static std::shared_ptr<const AttributeUniverse> make(std::vector<std::string> names) {
    return std::make_shared<const AttributeUniverse>(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw ParseError("unknown name '" + std::string(name) + "'");
  }

  friend bool operator==(const AttributeUniverse& a, const AttributeUniverse& b) {
    return &a == &b || a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using UniversePtr = std::shared_ptr<const AttributeUniverse>;

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// An L-set: one degree per element of the universe, stored densely by
/// universe position.
class FuzzySet {
 public:
  FuzzySet() = default;
  FuzzySet(UniversePtr universe, ChainPtr chain)
      : universe_(std::move(universe)), chain_(std::move(chain)), degrees_(universe_->size(), 0) {}
  FuzzySet(UniversePtr universe, ChainPtr chain, std::vector<Index> degrees)
      : universe_(std::move(universe)), chain_(std::move(chain)), degrees_(std::move(degrees)) {
    if (degrees_.size() != universe_->size())
      throw UniverseMismatch("expected " + std::to_string(universe_->size()) + " degrees, got " +
                             std::to_string(degrees_.size()));
    for (Index d : degrees_)
      if (d > chain_->top_index()) throw ChainMismatch("degree index outside the chain");
  }

  static FuzzySet empty(UniversePtr universe, ChainPtr chain) {
    return FuzzySet(std::move(universe), std::move(chain));
  }
  static FuzzySet full(UniversePtr universe, ChainPtr chain) {
    FuzzySet out(std::move(universe), std::move(chain));
    std::fill(out.degrees_.begin(), out.degrees_.end(), out.chain_->top_index());
    return out;
  }

  const UniversePtr& universe() const noexcept { return universe_; }
  const ChainPtr& chain() const noexcept { return chain_; }
  std::size_t size() const noexcept { return degrees_.size(); }

  TruthDegree operator[](std::size_t i) const { return chain_->degree(degrees_.at(i)); }
  TruthDegree at(std::string_view name) const { return (*this)[universe_->index_of(name)]; }

  void set(std::size_t i, TruthDegree d) {
    if (d.scale() != chain_->scale()) throw ChainMismatch();
    degrees_.at(i) = static_cast<Index>(d.index());
  }
  void set(std::string_view name, TruthDegree d) { set(universe_->index_of(name), d); }

  std::span<const Index> indices() const noexcept { return degrees_; }
  std::span<Index> indices() noexcept { return degrees_; }

  /// Full inclusion: A(y) <= B(y) for every y.
  bool is_subset_of(const FuzzySet& other) const {
    check_compatible(other);
    for (std::size_t i = 0; i < degrees_.size(); ++i)
      if (degrees_[i] > other.degrees_[i]) return false;
    return true;
  }

  bool is_empty() const noexcept {
    return std::all_of(degrees_.begin(), degrees_.end(), [](Index d) { return d == 0; });
  }

  void check_compatible(const FuzzySet& other) const {
    if (!same_universe(universe_, other.universe_)) throw UniverseMismatch();
    if (!same_chain(chain_, other.chain_)) throw ChainMismatch();
  }

  friend bool operator==(const FuzzySet& a, const FuzzySet& b) {
    return a.degrees_ == b.degrees_ && same_universe(a.universe_, b.universe_) &&
           same_chain(a.chain_, b.chain_);
  }
  /// Lexicographic on degree indices, first attribute most significant.
  friend std::strong_ordering operator<=>(const FuzzySet& a, const FuzzySet& b) {
    return a.degrees_ <=> b.degrees_;
  }

 private:
  UniversePtr universe_;
  ChainPtr chain_;
  std::vector<Index> degrees_;
};

struct FuzzySetHash {
  std::size_t operator()(const FuzzySet& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Index d : s.indices()) h = (h ^ d) * 1099511628211ull;
    return h;
  }
};

/// Graded subsethood S(A, B): infimum over y of A(y) -> B(y).
inline TruthDegree subsethood(const FuzzySet& a, const FuzzySet& b) {
  a.check_compatible(b);
  const auto& chain = *a.chain();
  Index s = chain.top_index();
  auto ai = a.indices();
  auto bi = b.indices();
  for (std::size_t i = 0; i < ai.size() && s > 0; ++i) s = std::min(s, chain.residuum_index(ai[i], bi[i]));
  return chain.degree(s);
}

inline FuzzySet set_union(const FuzzySet& a, const FuzzySet& b) {
  a.check_compatible(b);
  FuzzySet out = a;
  auto o = out.indices();
  auto bi = b.indices();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::max(o[i], bi[i]);
  return out;
}

inline FuzzySet intersect(const FuzzySet& a, const FuzzySet& b) {
  a.check_compatible(b);
  FuzzySet out = a;
  auto o = out.indices();
  auto bi = b.indices();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::min(o[i], bi[i]);
  return out;
}

/// a (x) B, componentwise.
inline FuzzySet scalar_tensor(TruthDegree a, const FuzzySet& b) {
  if (a.scale() != b.chain()->scale()) throw ChainMismatch();
  FuzzySet out = b;
  const auto& chain = *b.chain();
  for (auto& d : out.indices()) d = chain.tensor_index(static_cast<Index>(a.index()), d);
  return out;
}

// ---------------------------------------------------------------------------
// Text encoding: "{p, 0.5/q, 1/3/r}". Zero entries may be omitted, a bare name
// means degree 1, "{}" is the empty set.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

inline FuzzySet parse_set(std::string_view text, const UniversePtr& universe, const ChainPtr& chain) {
  auto body = detail::trim(text);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw ParseError("set must be enclosed in braces: '" + std::string(text) + "'");
  body = detail::trim(body.substr(1, body.size() - 2));
  FuzzySet out(universe, chain);
  std::vector<bool> seen(universe->size(), false);
  for (bool more = !body.empty(); more;) {
    const auto comma = body.find(',');
    const auto item = detail::trim(body.substr(0, comma));
    more = comma != std::string_view::npos;
    body = more ? detail::trim(body.substr(comma + 1)) : std::string_view{};
    if (item.empty()) throw ParseError("empty element in '" + std::string(text) + "'");
    int degree = chain->scale();
    auto name = item;
    if (const auto slash = item.rfind('/'); slash != std::string_view::npos) {
      degree = parse_degree(detail::trim(item.substr(0, slash)), chain->scale());
      name = detail::trim(item.substr(slash + 1));
    }
    const auto index = universe->index_of(name);
    if (seen[index]) throw ParseError("element '" + std::string(name) + "' listed twice");
    seen[index] = true;
    out.indices()[index] = static_cast<Index>(degree);
  }
  return out;
}

inline std::string format_set(const FuzzySet& set) {
  std::string out = "{";
  bool first = true;
  const int n = set.chain()->scale();
  auto degrees = set.indices();
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] == 0) continue;
    if (!first) out += ", ";
    first = false;
    if (degrees[i] != n) out += format_degree(degrees[i], n) + "/";
    out += set.universe()->name(i);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Enumeration of L^Y.

inline constexpr std::uint64_t kDefaultCap = 2'000'000;

/// |L|^|Y|, saturating at the maximum of uint64.
inline std::uint64_t count_sets(std::size_t universe_size, int scale) {
  std::uint64_t total = 1;
  const auto base = static_cast<std::uint64_t>(scale + 1);
  for (std::size_t i = 0; i < universe_size; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    total *= base;
  }
  return total;
}

inline void require_enumerable(std::size_t universe_size, int scale, std::uint64_t cap) {
  if (const auto need = count_sets(universe_size, scale); need > cap) throw CapacityError(need, cap);
}

/// Calls `fn(const FuzzySet&)` for every L-set in lexicographic order of the
/// degree indices. `fn` may return false to stop early.
template <class Fn>
void for_each_set(const UniversePtr& universe, const ChainPtr& chain, std::uint64_t cap, Fn&& fn) {
  require_enumerable(universe->size(), chain->scale(), cap);
  FuzzySet current(universe, chain);
  auto d = current.indices();
  const Index top = chain->top_index();
  while (true) {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const FuzzySet&>, bool>) {
      if (!fn(static_cast<const FuzzySet&>(current))) return;
    } else {
      fn(static_cast<const FuzzySet&>(current));
    }
    std::size_t pos = d.size();
    while (pos > 0 && d[pos - 1] == top) d[--pos] = 0;
    if (pos == 0) return;
    ++d[pos - 1];
  }
}

inline std::vector<FuzzySet> all_sets(const UniversePtr& universe, const ChainPtr& chain,
                                      std::uint64_t cap = kDefaultCap) {
  std::vector<FuzzySet> out;
  for_each_set(universe, chain, cap, [&](const FuzzySet& s) { out.push_back(s); });
  return out;
}

}  // namespace gfai
