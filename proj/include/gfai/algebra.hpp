#pragma once

// Finite residuated chains L = {0, 1/n, ..., 1} with Goedel, Lukasiewicz and
// BL ordinal-sum t-norms, equipped with a truth-stressing hedge.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gfai/error.hpp"

namespace gfai {

/// Position i of the degree i/n on its chain.
using Index = std::uint8_t;

inline constexpr int kMaxScale = 255;

class TruthDegree {
 public:
  constexpr TruthDegree() = default;
  constexpr TruthDegree(int index, int scale)
      : index_(static_cast<Index>(index)), scale_(static_cast<Index>(scale)) {
    if (scale < 1 || scale > kMaxScale || index < 0 || index > scale)
      throw Error("truth degree " + std::to_string(index) + "/" + std::to_string(scale) +
                  " is not on a chain of resolution " + std::to_string(scale));
  }

  constexpr int index() const noexcept { return index_; }
  constexpr int scale() const noexcept { return scale_; }
  constexpr double value() const noexcept { return static_cast<double>(index_) / scale_; }
  constexpr bool is_top() const noexcept { return index_ == scale_; }
  constexpr bool is_bottom() const noexcept { return index_ == 0; }

  // Degrees compare by exact rational value.
  friend constexpr std::strong_ordering operator<=>(TruthDegree a, TruthDegree b) noexcept {
    return a.index_ * b.scale_ <=> b.index_ * a.scale_;
  }
  friend constexpr bool operator==(TruthDegree a, TruthDegree b) noexcept {
    return a.index_ * b.scale_ == b.index_ * a.scale_;
  }

 private:
  Index index_ = 0;
  Index scale_ = 1;
};

enum class TNorm { goedel, lukasiewicz, ordinal_sum };
enum class HedgeKind { identity, globalization, table };

/// Unvalidated description of a chain; `ResiduatedChain::make` turns it into
/// an algebra, `validate` checks it exhaustively.
struct ChainSpec {
  int scale = 1;
  TNorm tnorm = TNorm::lukasiewicz;
  /// Idempotent indices of an ordinal sum, ascending, containing 0 and scale.
  std::vector<int> idempotents;
  HedgeKind hedge = HedgeKind::identity;
  /// hedge_table[i] is the index of (i/n)*; only for HedgeKind::table.
  std::vector<int> hedge_table;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};

// ---------------------------------------------------------------------------
// Degree text: "0", "1", decimals with denominator n ("0.25"), or rationals
// ("1/3").

namespace detail {

inline bool parse_uint(std::string_view s, std::uint64_t& out) {
  if (s.empty() || s.size() > 18) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

/// Index of the degree denoted by `text` on a chain of resolution `scale`.
inline int parse_degree(std::string_view text, int scale) {
  std::uint64_t num = 0, den = 1;
  const std::string shown(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!detail::parse_uint(text.substr(0, slash), num) ||
        !detail::parse_uint(text.substr(slash + 1), den) || den == 0)
      throw ParseError("malformed degree '" + shown + "'");
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::uint64_t whole = 0, frac = 0;
    auto whole_text = text.substr(0, dot);
    auto frac_text = text.substr(dot + 1);
    if ((!whole_text.empty() && !detail::parse_uint(whole_text, whole)) ||
        !detail::parse_uint(frac_text, frac) || frac_text.size() > 12)
      throw ParseError("malformed degree '" + shown + "'");
    den = 1;
    for (std::size_t i = 0; i < frac_text.size(); ++i) den *= 10;
    num = whole * den + frac;
  } else if (!detail::parse_uint(text, num)) {
    throw ParseError("malformed degree '" + shown + "'");
  }
  if (num > den || (num * static_cast<std::uint64_t>(scale)) % den != 0)
    throw ParseError("degree '" + shown + "' is not on the chain {0, 1/" + std::to_string(scale) +
                     ", ..., 1}");
  return static_cast<int>(num * static_cast<std::uint64_t>(scale) / den);
}

/// Shortest exact text for i/n: "0", "1", a terminating decimal, or "p/q".
inline std::string format_degree(int index, int scale) {
  if (index == 0) return "0";
  if (index == scale) return "1";
  const int g = std::gcd(index, scale);
  int num = index / g, den = scale / g;
  int rest = den;
  while (rest % 2 == 0) rest /= 2;
  while (rest % 5 == 0) rest /= 5;
  if (rest != 1) return std::to_string(num) + "/" + std::to_string(den);
  std::string out = "0.";
  int r = num;
  while (r != 0) {
    r *= 10;
    out.push_back(static_cast<char>('0' + r / den));
    r %= den;
  }
  return out;
}

inline std::string format_degree(TruthDegree d) { return format_degree(d.index(), d.scale()); }

// ---------------------------------------------------------------------------

struct Violation {
  std::string axiom;
  std::vector<int> arguments;  // degree indices
  int scale = 1;

  std::string describe() const {
    static constexpr const char* names[] = {"a", "b", "c"};
    std::string out = axiom + " at ";
    for (std::size_t i = 0; i < arguments.size(); ++i) {
      if (i) out += ", ";
      out += std::string(i < 3 ? names[i] : "x") + "=" + format_degree(arguments[i], scale);
    }
    return out;
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

class ResiduatedChain;
using ChainPtr = std::shared_ptr<const ResiduatedChain>;

class InvalidAlgebra : public PreconditionError {
 public:
  explicit InvalidAlgebra(ValidationReport report)
      : PreconditionError("chain violates " + std::to_string(report.violations.size()) +
                          " axiom instance(s); first: " + report.violations.front().describe()),
        report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

class ResiduatedChain {
 public:
  /// Builds the chain; table hedges are checked against the hedge axioms and
  /// rejected with `InvalidAlgebra` when they violate any.
  static ChainPtr make(ChainSpec spec);

  static ChainPtr goedel(int scale, HedgeKind hedge = HedgeKind::identity) {
    return make({scale, TNorm::goedel, {}, hedge, {}});
  }
  static ChainPtr lukasiewicz(int scale, HedgeKind hedge = HedgeKind::identity) {
    return make({scale, TNorm::lukasiewicz, {}, hedge, {}});
  }
  static ChainPtr ordinal_sum(int scale, std::vector<int> idempotents,
                              HedgeKind hedge = HedgeKind::identity) {
    return make({scale, TNorm::ordinal_sum, std::move(idempotents), hedge, {}});
  }
  static ChainPtr boolean() { return lukasiewicz(1); }

  int scale() const noexcept { return spec_.scale; }
  int size() const noexcept { return spec_.scale + 1; }
  const ChainSpec& spec() const noexcept { return spec_; }
  HedgeKind hedge_kind() const noexcept { return spec_.hedge; }
  bool is_globalization() const noexcept { return globalization_; }
  /// Idempotents of the tensor, ascending (every degree for Goedel).
  const std::vector<int>& idempotents() const noexcept { return idempotents_; }

  TruthDegree degree(int index) const { return TruthDegree(index, scale()); }
  TruthDegree top() const { return degree(scale()); }
  TruthDegree bottom() const { return degree(0); }
  std::vector<TruthDegree> degrees() const {
    std::vector<TruthDegree> out;
    for (int i = 0; i <= scale(); ++i) out.push_back(degree(i));
    return out;
  }

  TruthDegree tensor(TruthDegree a, TruthDegree b) const {
    check(a, b);
    return degree(tensor_index(static_cast<Index>(a.index()), static_cast<Index>(b.index())));
  }
  TruthDegree residuum(TruthDegree a, TruthDegree b) const {
    check(a, b);
    return degree(residuum_index(static_cast<Index>(a.index()), static_cast<Index>(b.index())));
  }
  TruthDegree hedge(TruthDegree a) const {
    check(a);
    return degree(hedge_index(static_cast<Index>(a.index())));
  }
  TruthDegree meet(TruthDegree a, TruthDegree b) const {
    check(a, b);
    return a.index() <= b.index() ? a : b;
  }
  TruthDegree join(TruthDegree a, TruthDegree b) const {
    check(a, b);
    return a.index() >= b.index() ? a : b;
  }

  // Unchecked index arithmetic for inner loops.
  Index tensor_index(Index a, Index b) const noexcept { return tensor_[a * stride_ + b]; }
  Index residuum_index(Index a, Index b) const noexcept { return residuum_[a * stride_ + b]; }
  Index hedge_index(Index a) const noexcept { return hedge_[a]; }
  Index top_index() const noexcept { return static_cast<Index>(spec_.scale); }

  /// Human-readable header in the textual algebra format.
  std::string describe() const;

  friend bool operator==(const ResiduatedChain& a, const ResiduatedChain& b) {
    return &a == &b || a.spec_ == b.spec_;
  }

  explicit ResiduatedChain(ChainSpec spec);

 private:
  void check(TruthDegree a) const {
    if (a.scale() != scale()) throw ChainMismatch();
  }
  void check(TruthDegree a, TruthDegree b) const {
    check(a);
    check(b);
  }

  ChainSpec spec_;
  std::vector<int> idempotents_;
  bool globalization_ = false;
  int stride_ = 0;
  std::vector<Index> tensor_;
  std::vector<Index> residuum_;
  std::vector<Index> hedge_;
};

inline bool same_chain(const ChainPtr& a, const ChainPtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace detail {

/// Normalizes a ChainSpec (idempotent list, hedge table) and rejects structural
/// errors that are not axiom violations.
inline ChainSpec normalize(ChainSpec spec) {
  const int n = spec.scale;
  if (n < 1 || n > kMaxScale)
    throw PreconditionError("chain resolution must be in [1, " + std::to_string(kMaxScale) + "], got " +
                std::to_string(n));
  switch (spec.tnorm) {
    case TNorm::goedel:
    case TNorm::lukasiewicz:
      spec.idempotents.clear();
      break;
    case TNorm::ordinal_sum: {
      auto& ids = spec.idempotents;
      if (ids.size() < 2 || ids.front() != 0 || ids.back() != n ||
          !std::is_sorted(ids.begin(), ids.end()) ||
          std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw PreconditionError("ordinal-sum idempotents must ascend strictly from 0 to 1");
      if (ids.size() == 2) spec.tnorm = TNorm::lukasiewicz;
      if (static_cast<int>(ids.size()) == n + 1) spec.tnorm = TNorm::goedel;
      if (spec.tnorm != TNorm::ordinal_sum) ids.clear();
      break;
    }
  }
  // On {0, 1} every t-norm is the Boolean conjunction.
  if (n == 1) spec.tnorm = TNorm::lukasiewicz;
  if (spec.hedge == HedgeKind::table) {
    if (static_cast<int>(spec.hedge_table.size()) != n + 1)
      throw PreconditionError("hedge table needs " + std::to_string(n + 1) + " entries");
    for (int v : spec.hedge_table)
      if (v < 0 || v > n) throw PreconditionError("hedge table entry outside the chain");
  } else {
    spec.hedge_table.clear();
  }
  return spec;
}

}  // namespace detail

inline ResiduatedChain::ResiduatedChain(ChainSpec spec) : spec_(detail::normalize(std::move(spec))) {
  const int n = spec_.scale;
  stride_ = n + 1;
  switch (spec_.tnorm) {
    case TNorm::goedel:
      idempotents_.resize(static_cast<std::size_t>(n + 1));
      std::iota(idempotents_.begin(), idempotents_.end(), 0);
      break;
    case TNorm::lukasiewicz:
      idempotents_ = {0, n};
      break;
    case TNorm::ordinal_sum:
      idempotents_ = spec_.idempotents;
      break;
  }
  // upper[x] for x > 0: the idempotent u of the component [l, u] with l < x <= u;
  // lower[x] is its l. Two degrees share a component iff min >= lower[max].
  std::vector<int> lower(static_cast<std::size_t>(n + 1)), upper(static_cast<std::size_t>(n + 1));
  for (std::size_t k = 0; k + 1 < idempotents_.size(); ++k)
    for (int x = idempotents_[k] + 1; x <= idempotents_[k + 1]; ++x) {
      lower[static_cast<std::size_t>(x)] = idempotents_[k];
      upper[static_cast<std::size_t>(x)] = idempotents_[k + 1];
    }

  tensor_.resize(static_cast<std::size_t>(stride_ * stride_));
  residuum_.resize(tensor_.size());
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      const int hi = std::max(a, b), lo = std::min(a, b);
      int t = lo;
      int r = a <= b ? n : b;
      if (hi > 0 && lo >= lower[static_cast<std::size_t>(hi)]) {
        const int l = lower[static_cast<std::size_t>(hi)], u = upper[static_cast<std::size_t>(hi)];
        t = std::max(l, a + b - u);
        if (a > b) r = u - a + b;
      }
      tensor_[static_cast<std::size_t>(a * stride_ + b)] = static_cast<Index>(t);
      residuum_[static_cast<std::size_t>(a * stride_ + b)] = static_cast<Index>(r);
    }

  hedge_.resize(static_cast<std::size_t>(stride_));
  for (int a = 0; a <= n; ++a) {
    int h = a;
    if (spec_.hedge == HedgeKind::globalization) h = a == n ? n : 0;
    if (spec_.hedge == HedgeKind::table) h = spec_.hedge_table[static_cast<std::size_t>(a)];
    hedge_[static_cast<std::size_t>(a)] = static_cast<Index>(h);
  }
  globalization_ = std::all_of(hedge_.begin(), hedge_.end() - 1, [](Index v) { return v == 0; }) &&
                   hedge_.back() == n;
}

/// Exhaustively checks the residuated-lattice and hedge axioms of the
/// structure described by `spec`; every violated instance is listed.
inline ValidationReport validate(const ChainSpec& spec) {
  const ResiduatedChain chain(spec);
  const int n = chain.scale();
  ValidationReport report;
  auto fail = [&](std::string axiom, std::vector<int> args) {
    report.violations.push_back({std::move(axiom), std::move(args), n});
  };
  auto t = [&](int a, int b) { return chain.tensor_index(static_cast<Index>(a), static_cast<Index>(b)); };
  auto r = [&](int a, int b) { return chain.residuum_index(static_cast<Index>(a), static_cast<Index>(b)); };
  auto h = [&](int a) { return chain.hedge_index(static_cast<Index>(a)); };

  for (int a = 0; a <= n; ++a) {
    if (t(a, n) != a) fail("unit: a (x) 1 = a", {a});
    for (int b = 0; b <= n; ++b) {
      if (t(a, b) != t(b, a)) fail("commutativity: a (x) b = b (x) a", {a, b});
      if ((r(a, b) == n) != (a <= b)) fail("order: a -> b = 1 iff a <= b", {a, b});
      if (b < n && t(a, b) > t(a, b + 1)) fail("monotonicity: b <= b' implies a (x) b <= a (x) b'", {a, b});
      for (int c = 0; c <= n; ++c) {
        if ((t(a, b) <= c) != (a <= r(b, c))) fail("adjointness: a (x) b <= c iff a <= b -> c", {a, b, c});
        if (t(t(a, b), c) != t(a, t(b, c))) fail("associativity: (a (x) b) (x) c = a (x) (b (x) c)", {a, b, c});
      }
    }
  }
  if (h(n) != n) fail("hedge: 1* = 1", {n});
  for (int a = 0; a <= n; ++a) {
    if (h(a) > a) fail("hedge: a* <= a", {a});
    if (h(a) > h(h(a))) fail("hedge: a* <= a**", {a});
    for (int b = 0; b <= n; ++b)
      if (h(r(a, b)) > r(h(a), h(b))) fail("hedge: (a -> b)* <= a* -> b*", {a, b});
  }
  return report;
}

inline ValidationReport validate(const ResiduatedChain& chain) { return validate(chain.spec()); }

inline ChainPtr ResiduatedChain::make(ChainSpec spec) {
  spec = detail::normalize(std::move(spec));
  if (spec.hedge == HedgeKind::table) {
    if (auto report = validate(spec); !report.ok()) throw InvalidAlgebra(std::move(report));
  }
  return std::make_shared<const ResiduatedChain>(std::move(spec));
}

inline std::string ResiduatedChain::describe() const {
  std::ostringstream out;
  out << "scale " << scale() << "\nlogic ";
  switch (spec_.tnorm) {
    case TNorm::goedel: out << "goedel"; break;
    case TNorm::lukasiewicz: out << "lukasiewicz"; break;
    case TNorm::ordinal_sum:
      out << "bl ";
      for (std::size_t i = 0; i < idempotents_.size(); ++i)
        out << (i ? "," : "") << format_degree(idempotents_[i], scale());
      break;
  }
  out << "\nhedge ";
  switch (spec_.hedge) {
    case HedgeKind::identity: out << "identity"; break;
    case HedgeKind::globalization: out << "globalization"; break;
    case HedgeKind::table:
      out << "table ";
      for (std::size_t i = 0; i < hedge_.size(); ++i)
        out << (i ? "," : "") << format_degree(hedge_[i], scale());
      break;
  }
  return out.str();
}

}  // namespace gfai
