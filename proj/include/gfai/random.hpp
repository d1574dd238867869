#pragma once

// Seeded random instances. Every draw goes through mt19937_64 (whose output
// sequence is fixed by the standard) and hand-rolled conversions, so streams
// are identical across standard libraries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gfai/base_build.hpp"

namespace gfai {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Generator for job `index` of a run seeded with `master`.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng for_job(std::uint64_t master, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ull)));
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + x % span;
  }
  /// `k` distinct values from [lo, hi], ascending.
  std::vector<int> sample(int lo, int hi, int k) {
    std::vector<int> pool;
    for (int v = lo; v <= hi; ++v) pool.push_back(v);
    for (int i = 0; i < k; ++i) std::swap(pool[i], pool[between(i, pool.size() - 1)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<std::string> numbered_names(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Each cell is i/n with i ~ Binomial(n, density / 100), so the expected
/// density equals the target.
inline FormalContext random_context(Rng& rng, std::size_t objects, std::size_t attributes, const ChainPtr& chain,
                                    double target_density) {
  const double p = std::clamp(target_density / 100.0, 0.0, 1.0);
  std::vector<Index> table(objects * attributes);
  for (auto& cell : table) {
    int i = 0;
    for (int k = 0; k < chain->scale(); ++k) i += rng.bernoulli(p);
    cell = static_cast<Index>(i);
  }
  return FormalContext(AttributeUniverse::make(numbered_names("x", objects)),
                       AttributeUniverse::make(numbered_names("y", attributes)), chain, std::move(table));
}

/// Raw implications before saturation: each antecedent attribute is present
/// with probability `antecedent_rate`, each consequent adds further
/// attributes with probability `consequent_rate`; present degrees are uniform
/// on {1/n, ..., 1}.
struct TheoryShape {
  std::size_t formulas = 10;
  double antecedent_rate = 0.3;
  double consequent_rate = 0.3;
};

inline FuzzySet random_set(Rng& rng, const UniversePtr& universe, const ChainPtr& chain, double rate) {
  FuzzySet out(universe, chain);
  for (auto& d : out.indices())
    if (rng.bernoulli(rate)) d = static_cast<Index>(rng.between(1, chain->scale()));
  return out;
}

/// Draws `shape.formulas` implications and brings them to a saturated
/// non-redundant theory (which may be smaller).
inline Theory random_saturated_nonredundant_theory(Rng& rng, const UniversePtr& universe, const ChainPtr& chain,
                                                   const TheoryShape& shape = {}) {
  Theory raw(universe, chain);
  for (std::size_t i = 0; i < shape.formulas; ++i) {
    auto a = random_set(rng, universe, chain, shape.antecedent_rate);
    auto b = set_union(a, random_set(rng, universe, chain, shape.consequent_rate));
    raw.add(std::move(a), std::move(b));
  }
  return saturate_and_reduce(std::move(raw));
}

}  // namespace gfai
