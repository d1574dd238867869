#pragma once

// Systems of pseudo-intents as constrained maximal independent sets of the
// graph over non-closed sets.

#include <algorithm>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "gfai/base_build.hpp"

namespace gfai {

using VertexSet = boost::dynamic_bitset<>;

/// Vertices are the non-closed sets in lexicographic order. Edge <P, Q> is
/// present iff P != Q and ||Q => Q^down-up||_P != 1.
struct PseudoGraph {
  std::vector<FuzzySet> vertices;
  std::vector<FuzzySet> closures;
  std::vector<VertexSet> out;        // out[p][q]: <p, q> in E
  std::vector<VertexSet> in;         // in[q][p]:  <p, q> in E
  std::vector<VertexSet> adjacent;   // out | in

  std::size_t size() const noexcept { return vertices.size(); }
  bool has_edge(std::size_t p, std::size_t q) const { return out.at(p).test(q); }

  std::optional<std::size_t> find(const FuzzySet& s) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), s);
    if (it == vertices.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }
  std::size_t index_of(const FuzzySet& s) const {
    if (auto i = find(s)) return *i;
    throw PreconditionError(format_set(s) + " is not a vertex of the graph");
  }
};

inline PseudoGraph build_graph(const FormalContext& context, std::uint64_t cap = kDefaultCap) {
  PseudoGraph g;
  g.vertices = non_closed_sets(context, cap);
  const std::size_t v = g.vertices.size();
  g.closures.reserve(v);
  for (const auto& p : g.vertices) g.closures.push_back(context.intent_closure(p));
  g.out.assign(v, VertexSet(v));
  g.in.assign(v, VertexSet(v));
  for (std::size_t q = 0; q < v; ++q) {
    const Implication imp(g.vertices[q], g.closures[q]);
    for (std::size_t p = 0; p < v; ++p) {
      if (p == q || truth_in_model(imp, g.vertices[p]).is_top()) continue;
      g.out[p].set(q);
      g.in[q].set(p);
    }
  }
  g.adjacent.reserve(v);
  for (std::size_t p = 0; p < v; ++p) g.adjacent.push_back(g.out[p] | g.in[p]);
  return g;
}

/// Union of the in-neighbourhoods of `members`.
inline VertexSet pred(const VertexSet& members, const PseudoGraph& g) {
  if (members.size() != g.size()) throw PreconditionError("vertex set does not match the graph");
  VertexSet out(g.size());
  for (auto q = members.find_first(); q != VertexSet::npos; q = members.find_next(q)) out |= g.in[q];
  return out;
}

inline std::vector<FuzzySet> pred(const std::vector<FuzzySet>& members, const PseudoGraph& g) {
  VertexSet set(g.size());
  for (const auto& m : members) set.set(g.index_of(m));
  const auto p = pred(set, g);
  std::vector<FuzzySet> out;
  for (auto i = p.find_first(); i != VertexSet::npos; i = p.find_next(i)) out.push_back(g.vertices[i]);
  return out;
}

/// U \ P = Pred(P).
inline bool is_system(const VertexSet& members, const PseudoGraph& g) {
  auto rest = ~members;
  return rest == pred(members, g);
}

struct EnumerationStats {
  std::uint64_t maximal_sets = 0;  // maximal independent sets visited
};

namespace detail {

struct MisSearch {
  const PseudoGraph& g;
  std::vector<VertexSet> free;  // non-neighbours in G, self excluded
  std::uint64_t limit;
  EnumerationStats stats;
  std::vector<VertexSet> systems;

  void run(VertexSet r, VertexSet p, VertexSet x) {
    if (p.none()) {
      if (x.none()) {
        if (++stats.maximal_sets > limit) throw CapacityError(stats.maximal_sets, limit);
        if (is_system(r, g)) systems.push_back(r);
      }
      return;
    }
    // Pivot maximizing |P & free(u)| over P | X.
    std::size_t pivot = 0, best = 0;
    bool first = true;
    const auto px = p | x;
    for (auto u = px.find_first(); u != VertexSet::npos; u = px.find_next(u)) {
      const auto c = (p & free[u]).count();
      if (first || c > best) pivot = u, best = c, first = false;
    }
    auto branch = p - free[pivot];
    for (auto v = branch.find_first(); v != VertexSet::npos; v = branch.find_next(v)) {
      auto r2 = r;
      r2.set(v);
      run(std::move(r2), p & free[v], x & free[v]);
      p.reset(v);
      x.set(v);
    }
  }
};

}  // namespace detail

/// All P with U \ P = Pred(P), found among the maximal independent sets of
/// the symmetrized graph (isolated vertices are in every one). Systems are
/// returned in the order the search meets them, members in vertex order.
/// Throws CapacityError once more than `limit` maximal sets were visited.
inline std::vector<VertexSet> enumerate_system_sets(const PseudoGraph& g, std::uint64_t limit = UINT64_MAX,
                                                    EnumerationStats* stats = nullptr) {
  const std::size_t v = g.size();
  detail::MisSearch search{g, {}, limit, {}, {}};
  search.free.reserve(v);
  VertexSet forced(v), open(v);
  for (std::size_t i = 0; i < v; ++i) {
    auto f = ~g.adjacent[i];
    f.reset(i);
    search.free.push_back(std::move(f));
    (g.adjacent[i].none() ? forced : open).set(i);
  }
  search.run(forced, open, VertexSet(v));
  if (stats) *stats = search.stats;
  return std::move(search.systems);
}

inline std::vector<PseudoIntentSystem> enumerate_systems(const PseudoGraph& g, const FormalContext& context,
                                                         std::uint64_t limit = UINT64_MAX,
                                                         EnumerationStats* stats = nullptr) {
  std::vector<PseudoIntentSystem> out;
  for (const auto& set : enumerate_system_sets(g, limit, stats)) {
    PseudoIntentSystem s{{}, Theory(context.attributes(), context.chain())};
    for (auto i = set.find_first(); i != VertexSet::npos; i = set.find_next(i)) {
      s.members.push_back(g.vertices[i]);
      s.base.add(g.vertices[i], g.closures[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Line-oriented dump: "vertex <i> <set> -> <closure>" then "edge <p> <q>".
inline void dump_graph(const PseudoGraph& g, std::ostream& os) {
  for (std::size_t i = 0; i < g.size(); ++i)
    os << "vertex " << i << ' ' << format_set(g.vertices[i]) << " -> " << format_set(g.closures[i]) << '\n';
  for (std::size_t p = 0; p < g.size(); ++p)
    for (auto q = g.out[p].find_first(); q != VertexSet::npos; q = g.out[p].find_next(q))
      os << "edge " << p << ' ' << q << '\n';
}

}  // namespace gfai
