#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gfai/implication.hpp"

namespace gfai {

/// An exact fraction; densities are reported this way so that bucketing
/// never depends on floating-point rounding.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  Rational reduced() const {
    const auto g = std::gcd(num, den);
    return g ? Rational{num / g, den / g} : *this;
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
  friend auto operator<=>(const Rational& a, const Rational& b) { return a.num * b.den <=> b.num * a.den; }
};

/// A formal L-context <X, Y, I>.
class FormalContext {
 public:
  /// `table` is row-major: table[x * |Y| + y] is the index of I(x, y).
  FormalContext(UniversePtr objects, UniversePtr attributes, ChainPtr chain, std::vector<Index> table)
      : objects_(std::move(objects)),
        attributes_(std::move(attributes)),
        chain_(std::move(chain)),
        table_(std::move(table)) {
    if (table_.size() != objects_->size() * attributes_->size())
      throw Error("context table has " + std::to_string(table_.size()) + " cells, expected " +
                  std::to_string(objects_->size() * attributes_->size()));
    for (Index d : table_)
      if (d > chain_->top_index()) throw ChainMismatch("context degree outside the chain");
    rows_.reserve(objects_->size());
    for (std::size_t x = 0; x < objects_->size(); ++x) {
      FuzzySet single(objects_, chain_);
      single.indices()[x] = chain_->top_index();
      rows_.push_back(up(single));
    }
  }

  const UniversePtr& objects() const noexcept { return objects_; }
  const UniversePtr& attributes() const noexcept { return attributes_; }
  const ChainPtr& chain() const noexcept { return chain_; }
  std::size_t object_count() const noexcept { return objects_->size(); }
  std::size_t attribute_count() const noexcept { return attributes_->size(); }

  TruthDegree incidence(std::size_t x, std::size_t y) const {
    return chain_->degree(table_.at(x * attributes_->size() + y));
  }
  std::span<const Index> table() const noexcept { return table_; }
  /// {1/x}^up, the attribute row of object x.
  const FuzzySet& row(std::size_t x) const { return rows_.at(x); }
  const std::vector<FuzzySet>& rows() const noexcept { return rows_; }

  /// A^up(y) = inf_x (A(x)* -> I(x, y)).
  FuzzySet up(const FuzzySet& a) const {
    check_objects(a);
    const auto& c = *chain_;
    const std::size_t ny = attributes_->size();
    FuzzySet out = FuzzySet::full(attributes_, chain_);
    auto o = out.indices();
    auto ai = a.indices();
    for (std::size_t x = 0; x < ai.size(); ++x) {
      const Index h = c.hedge_index(ai[x]);
      if (h == 0) continue;
      for (std::size_t y = 0; y < ny; ++y) o[y] = std::min(o[y], c.residuum_index(h, table_[x * ny + y]));
    }
    return out;
  }

  /// B^down(x) = inf_y (B(y) -> I(x, y)).
  FuzzySet down(const FuzzySet& b) const {
    check_attributes(b);
    const auto& c = *chain_;
    const std::size_t ny = attributes_->size();
    FuzzySet out = FuzzySet::full(objects_, chain_);
    auto o = out.indices();
    auto bi = b.indices();
    for (std::size_t x = 0; x < objects_->size(); ++x)
      for (std::size_t y = 0; y < ny; ++y) o[x] = std::min(o[x], c.residuum_index(bi[y], table_[x * ny + y]));
    return out;
  }

  FuzzySet intent_closure(const FuzzySet& b) const { return up(down(b)); }

  void check_attributes(const FuzzySet& s) const {
    if (!same_universe(attributes_, s.universe())) throw UniverseMismatch();
    if (!same_chain(chain_, s.chain())) throw ChainMismatch();
  }
  void check_objects(const FuzzySet& s) const {
    if (!same_universe(objects_, s.universe())) throw UniverseMismatch("set is not over the objects");
    if (!same_chain(chain_, s.chain())) throw ChainMismatch();
  }

 private:
  UniversePtr objects_;
  UniversePtr attributes_;
  ChainPtr chain_;
  std::vector<Index> table_;
  std::vector<FuzzySet> rows_;
};

/// ||A => B||_I: infimum of the truth degrees in all object rows.
inline TruthDegree truth_in_context(const Implication& imp, const FormalContext& context) {
  context.check_attributes(imp.antecedent);
  const auto& chain = *context.chain();
  TruthDegree out = chain.top();
  for (const auto& row : context.rows()) {
    out = chain.meet(out, truth_in_model(imp, row));
    if (out.is_bottom()) break;
  }
  return out;
}

/// Whether the entailment degrees of `theory` coincide with truth in
/// `context`, decided by checking [M]_T = M^down-up for every M in L^Y.
inline bool is_complete(const Theory& theory, const FormalContext& context, std::uint64_t cap = kDefaultCap) {
  if (!same_universe(theory.universe(), context.attributes())) throw UniverseMismatch();
  if (!same_chain(theory.chain(), context.chain())) throw ChainMismatch();
  const ClosureEngine engine(theory);
  bool complete = true;
  for_each_set(context.attributes(), context.chain(), cap, [&](const FuzzySet& m) {
    complete = engine.close(m) == context.intent_closure(m);
    return complete;
  });
  return complete;
}

/// 100 * (sum of table degrees) / (|X| * |Y|), exact.
inline Rational density(const FormalContext& context) {
  std::int64_t sum = 0;
  for (Index d : context.table()) sum += d;
  const auto cells = static_cast<std::int64_t>(context.object_count() * context.attribute_count());
  return Rational{100 * sum, cells * context.chain()->scale()}.reduced();
}

}  // namespace gfai
