#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace gfai;
using testing_support::Lang;

namespace {

// Two-attribute Lukasiewicz theory whose first antecedent is not a model of the rest.
Lang two_attr() { return Lang({"p", "q"}, ResiduatedChain::lukasiewicz(2)); }

std::vector<ChainPtr> small_chains() {
  std::vector<ChainPtr> out;
  for (auto h : {HedgeKind::identity, HedgeKind::globalization}) {
    out.push_back(ResiduatedChain::boolean());
    out.push_back(ResiduatedChain::lukasiewicz(2, h));
    out.push_back(ResiduatedChain::goedel(2, h));
  }
  ChainSpec s;
  s.scale = 2;
  s.tnorm = TNorm::goedel;
  s.hedge = HedgeKind::table;
  s.hedge_table = {0, 1, 2};
  out.push_back(ResiduatedChain::make(s));
  return out;
}

Theory random_theory(Rng& rng, const UniversePtr& u, const ChainPtr& c, std::size_t max_size) {
  Theory t(u, c);
  const auto k = rng.between(0, max_size);
  for (std::size_t i = 0; i < k; ++i)
    t.add(random_set(rng, u, c, 0.4), random_set(rng, u, c, 0.5));
  return t;
}

/// N <- N u S(A, N)* (x) B until nothing changes, straight from the definition.
FuzzySet fixpoint_close(FuzzySet n, const Theory& t) {
  const auto& c = *t.chain();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& imp : t) {
      const auto next = set_union(n, scalar_tensor(c.hedge(subsethood(imp.antecedent, n)), imp.consequent));
      if (next != n) n = next, changed = true;
    }
  }
  return n;
}

}  // namespace

TEST(Implication, TruthInModel) {
  auto l = two_attr();
  EXPECT_EQ(truth_in_model(l.i("{p} => {p, q}"), l.s("{p, 0.5/q}")), l.d("0.5"));
  EXPECT_EQ(truth_in_model(l.i("{} => {0.5/q}"), l.s("{p}")), l.d("0.5"));
  EXPECT_TRUE(truth_in_model(l.i("{p, q} => {p}"), l.s("{p, q}")).is_top());
}

TEST(Implication, LeastModels) {
  auto l = two_attr();
  const auto sigma = l.t({"{p} => {p, q}", "{} => {0.5/q}"});
  EXPECT_EQ(close(l.s("{p}"), sigma), l.s("{p, q}"));
  EXPECT_EQ(close(l.s("{}"), sigma), l.s("{0.5/q}"));
  EXPECT_EQ(close(l.s("{0.5/p}"), Theory(l.u, l.c)), l.s("{0.5/p}"));
  Lang l3({"p", "q", "r"}, ResiduatedChain::lukasiewicz(2));
  EXPECT_EQ(close(l3.s("{0.5/r}"), l3.t({"{} => {p}"})), l3.s("{p, 0.5/r}"));
}

TEST(Implication, EntailmentDegrees) {
  Lang b({"p", "q"}, ResiduatedChain::boolean());
  const auto gamma = b.t({"{} => {p}", "{p} => {q}"});
  EXPECT_TRUE(entail_degree(gamma, b.i("{} => {q}")).is_top());
  EXPECT_TRUE(entails(gamma, b.i("{q} => {q}")));
  Lang g({"p", "q", "r"}, ResiduatedChain::goedel(2));
  EXPECT_EQ(entail_degree(g.t({"{p} => {p, q, r}"}), g.i("{0.5/p} => {q}")), g.d("0.5"));
}

TEST(Implication, Equivalence) {
  Lang b({"p", "q", "r"}, ResiduatedChain::boolean());
  EXPECT_TRUE(equivalent(b.t({"{p} => {q}", "{p} => {r}"}), b.t({"{p} => {q, r}"})));
  const auto s = b.t({"{p} => {q}"});
  EXPECT_TRUE(equivalent(s, s));
  EXPECT_FALSE(equivalent(s, b.t({"{p} => {r}"})));
  Lang g({"p", "q", "r"}, ResiduatedChain::goedel(2));
  EXPECT_FALSE(equivalent(g.t({"{0.5/p} => {0.5/p, 0.5/q, r}", "{p} => {p, q, r}"}),
                          g.t({"{0.5/p, 0.5/q, 0.5/r} => {0.5/p, 0.5/q, r}", "{p, 0.5/q, r} => {p, q, r}"})));
}

TEST(Implication, Redundancy) {
  Lang b({"p", "q"}, ResiduatedChain::boolean());
  const auto sigma = b.t({"{} => {p, q}", "{p} => {p, q}"});
  EXPECT_TRUE(is_redundant(sigma, 1));
  EXPECT_FALSE(is_redundant(sigma, 0));
  EXPECT_EQ(remove_redundancy(sigma), b.t({"{} => {p, q}"}));
  EXPECT_EQ(remove_redundancy(b.t({"{p} => {q}", "{q} => {q}"})), b.t({"{p} => {q}"}));
  const auto nr = b.t({"{p} => {q}"});
  EXPECT_EQ(remove_redundancy(nr), nr);
  EXPECT_THROW(is_redundant(nr, b.i("{q} => {p}")), PreconditionError);
  EXPECT_TRUE(is_redundant(nr, b.i("{p} => {q}")) == false);
}

TEST(Implication, DuplicatesCollapse) {
  auto l = two_attr();
  Theory t(l.u, l.c);
  EXPECT_TRUE(t.add(l.i("{p} => {q}")));
  EXPECT_FALSE(t.add(l.i("{p} => {q}")));
  EXPECT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.contains(l.i("{p} => {q}")));
}

TEST(Implication, MismatchedTheoryAndSet) {
  auto l = two_attr();
  Lang other({"p", "q"}, ResiduatedChain::goedel(2));
  EXPECT_THROW(close(other.s("{p}"), l.t({"{p} => {q}"})), ChainMismatch);
  EXPECT_THROW(equivalent(l.t({}), other.t({})), ChainMismatch);
}

// Least models, entailment degrees and equivalence against full enumeration.
TEST(ImplicationProperty, AgreesWithModelEnumeration) {
  std::size_t cases = 0;
  for (const auto& chain : small_chains())
    for (std::size_t ny = 1; ny <= 3; ++ny) {
      const auto u = AttributeUniverse::make(numbered_names("y", ny));
      for (std::uint64_t k = 0; k < 25; ++k) {
        auto rng = Rng::for_job(11, cases++);
        const auto sigma = random_theory(rng, u, chain, 5);
        const auto gamma = random_theory(rng, u, chain, 3);
        const auto all = oracle::every_set(u, chain);
        for (const auto& m : all) ASSERT_EQ(close(m, sigma), oracle::least_model(m, sigma));
        for (int j = 0; j < 5; ++j) {
          const Implication imp(random_set(rng, u, chain, 0.5), random_set(rng, u, chain, 0.5));
          ASSERT_EQ(entail_degree(sigma, imp).index(), oracle::entail(sigma, imp));
        }
        ASSERT_EQ(equivalent(sigma, gamma), oracle::same_models(sigma, gamma));
        ASSERT_TRUE(equivalent(sigma, remove_redundancy(sigma)));
        for (std::size_t i = 0; i < sigma.size(); ++i)
          ASSERT_EQ(is_redundant(sigma, i), oracle::same_models(sigma, sigma.without(i)));
      }
    }
}

TEST(ImplicationProperty, ClosureOperatorLaws) {
  for (const auto& chain : small_chains()) {
    const auto u = AttributeUniverse::make(numbered_names("y", 3));
    for (std::uint64_t k = 0; k < 20; ++k) {
      auto rng = Rng::for_job(12, k);
      const auto sigma = random_theory(rng, u, chain, 6);
      for (const auto& m : oracle::every_set(u, chain)) {
        const auto c = close(m, sigma);
        ASSERT_TRUE(m.is_subset_of(c));
        ASSERT_EQ(close(c, sigma), c);
        ASSERT_TRUE(is_model(c, sigma));
      }
    }
  }
}

// Larger universes: the engine (bitmask path under globalization, generic
// otherwise) against the plain fixpoint iteration.
TEST(ImplicationProperty, EngineMatchesPlainFixpoint) {
  for (auto chain : {ResiduatedChain::lukasiewicz(4, HedgeKind::globalization), ResiduatedChain::lukasiewicz(4),
                     ResiduatedChain::goedel(10, HedgeKind::globalization), ResiduatedChain::lukasiewicz(20)}) {
    const auto u = AttributeUniverse::make(numbered_names("y", 8));
    for (std::uint64_t k = 0; k < 60; ++k) {
      auto rng = Rng::for_job(13, k);
      const auto sigma = random_theory(rng, u, chain, 15);
      const ClosureEngine engine(sigma);
      for (int j = 0; j < 20; ++j) {
        const auto m = random_set(rng, u, chain, 0.3);
        ASSERT_EQ(engine.close(m), fixpoint_close(m, sigma));
      }
      for (std::size_t i = 0; i < sigma.size(); ++i)
        ASSERT_EQ(engine.close(sigma[i].antecedent, i), fixpoint_close(sigma[i].antecedent, sigma.without(i)));
      const auto reduced = remove_redundancy(sigma);
      ASSERT_TRUE(is_non_redundant(reduced));
      ASSERT_TRUE(equivalent(reduced, sigma));
    }
  }
}

TEST(ImplicationProperty, EntailmentIsTransitive) {
  Lang l({"p", "q", "r"}, ResiduatedChain::lukasiewicz(2));
  const auto all = oracle::every_set(l.u, l.c);
  for (std::uint64_t k = 0; k < 30; ++k) {
    auto rng = Rng::for_job(14, k);
    const auto sigma = random_theory(rng, l.u, l.c, 4);
    for (int j = 0; j < 40; ++j) {
      const auto a = all[rng.between(0, all.size() - 1)];
      const auto b = all[rng.between(0, all.size() - 1)];
      const auto c = all[rng.between(0, all.size() - 1)];
      if (entails(sigma, Implication(a, b)) && entails(sigma, Implication(b, c))) {
        ASSERT_TRUE(entails(sigma, Implication(a, c)));
      }
    }
  }
}
