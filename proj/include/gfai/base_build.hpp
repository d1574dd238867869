#pragma once

// Saturation, witnessed non-redundancy and the transform that turns a
// non-redundant theory with saturated consequents into one whose
// non-redundancy is witnessed by its own antecedents; plus the pipeline that
// produces a base given by pseudo-intents from a formal context.

#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "gfai/context.hpp"

namespace gfai {

/// {A => [A]_T : A => B in T}; members sharing an antecedent collapse.
inline Theory saturate(const Theory& theory) {
  const ClosureEngine engine(theory);
  Theory out(theory.universe(), theory.chain());
  for (const auto& imp : theory) out.add(imp.antecedent, engine.close(imp.antecedent));
  return out;
}

/// B = [A]_T for every member.
inline bool is_saturated(const Theory& theory) {
  const ClosureEngine engine(theory);
  for (const auto& imp : theory)
    if (engine.close(imp.antecedent) != imp.consequent) return false;
  return true;
}

/// Alternates saturation and redundancy removal until the theory is both
/// saturated and non-redundant.
inline Theory saturate_and_reduce(Theory theory) {
  while (true) {
    theory = remove_redundancy(saturate(theory), true);
    if (is_saturated(theory) && is_non_redundant(theory)) return theory;
  }
}

struct WitnessFailure {
  std::size_t index;        // position in the checked theory
  Implication implication;  // the member whose antecedent is no witness
  std::string reason;
};

struct WitnessReport {
  bool witnessed = true;
  bool non_redundant = true;
  std::vector<WitnessFailure> failures;
};

/// Checks A in Mod(T \ {A => B}) for every member.
inline WitnessReport witness_check(const Theory& theory) {
  WitnessReport report;
  report.non_redundant = is_non_redundant(theory);
  for (std::size_t i = 0; i < theory.size(); ++i) {
    const auto& a = theory[i].antecedent;
    for (std::size_t j = 0; j < theory.size(); ++j) {
      if (j == i) continue;
      const auto degree = truth_in_model(theory[j], a);
      if (degree.is_top()) continue;
      report.witnessed = false;
      report.failures.push_back({i, theory[i],
                                 "antecedent " + format_set(a) + " satisfies " +
                                     format_implication(theory[j]) + " only to degree " + format_degree(degree)});
      break;
    }
  }
  return report;
}

/// [A]_{T \ {A => B}} for every member, in member order.
inline std::vector<FuzzySet> punctured_closures(const Theory& theory) {
  const ClosureEngine engine(theory);
  std::vector<FuzzySet> out;
  out.reserve(theory.size());
  for (std::size_t i = 0; i < theory.size(); ++i) out.push_back(engine.close(theory[i].antecedent, i));
  return out;
}

inline void require_saturated_non_redundant(const Theory& theory) {
  if (!is_saturated(theory)) throw PreconditionError("theory does not have saturated consequents");
  if (!is_non_redundant(theory)) throw PreconditionError("theory is redundant");
}

/// A strict total order on the antecedents (returned as member positions,
/// smallest first) such that each punctured closure equals the closure under
/// the members placed before it. Built greedily, taking the first eligible
/// member in list order; nullopt when the order cannot be extended.
inline std::optional<std::vector<std::size_t>> find_order(const Theory& theory) {
  require_saturated_non_redundant(theory);
  const auto punctured = punctured_closures(theory);
  ClosureEngine prefix(theory);
  for (std::size_t i = 0; i < theory.size(); ++i) prefix.deactivate(i);
  std::vector<std::size_t> order;
  std::vector<bool> placed(theory.size(), false);
  while (order.size() < theory.size()) {
    std::optional<std::size_t> next;
    for (std::size_t i = 0; i < theory.size() && !next; ++i)
      if (!placed[i] && prefix.close(theory[i].antecedent) == punctured[i]) next = i;
    if (!next) return std::nullopt;
    placed[*next] = true;
    prefix.activate(*next);
    order.push_back(*next);
  }
  return order;
}

struct TransformResult {
  Theory sigma;
  bool equivalent = false;
};

/// {[A]_{T \ {A => [A]_T}} => [A]_T : A => [A]_T in T}, together with
/// whether the image is equivalent to the input.
inline TransformResult witness_transform(const Theory& theory) {
  require_saturated_non_redundant(theory);
  const auto punctured = punctured_closures(theory);
  Theory sigma(theory.universe(), theory.chain());
  for (std::size_t i = 0; i < theory.size(); ++i) sigma.add(punctured[i], theory[i].consequent);
  const bool eq = equivalent(sigma, theory);
  return {std::move(sigma), eq};
}

// ---------------------------------------------------------------------------
// Pseudo-intents of a context.

struct PseudoIntentSystem {
  std::vector<FuzzySet> members;
  Theory base;  // {P => P^down-up : P in members}
};

inline PseudoIntentSystem make_system(std::vector<FuzzySet> members, const FormalContext& context) {
  PseudoIntentSystem out{{}, Theory(context.attributes(), context.chain())};
  for (auto& p : members) {
    auto closed = context.intent_closure(p);
    if (closed == p) throw PreconditionError("pseudo-intent candidate " + format_set(p) + " is an intent");
    out.base.add(p, std::move(closed));
  }
  out.members = std::move(members);
  return out;
}

/// {P in L^Y : P != P^down-up}, lexicographically ordered.
inline std::vector<FuzzySet> non_closed_sets(const FormalContext& context, std::uint64_t cap = kDefaultCap) {
  std::vector<FuzzySet> out;
  for_each_set(context.attributes(), context.chain(), cap, [&](const FuzzySet& p) {
    if (context.intent_closure(p) != p) out.push_back(p);
  });
  return out;
}

/// {P => P^down-up : P non-closed}; complete in the context.
inline Theory universe_seed(const FormalContext& context, std::uint64_t cap = kDefaultCap) {
  Theory out(context.attributes(), context.chain());
  for (auto& p : non_closed_sets(context, cap)) {
    auto closed = context.intent_closure(p);
    out.add(std::move(p), std::move(closed));
  }
  return out;
}

/// All intents, reached from the least intent by raising one attribute by one
/// degree and closing. The visited non-closed one-step raises M yield
/// M => M^down-up; with the least intent's implication these form a complete
/// set: a model N that is not an intent contains a maximal intent E below it,
/// and the one-step raise of E inside N would force a larger intent into N.
struct IntentSweep {
  std::vector<FuzzySet> intents;
  Theory seed;
};

inline IntentSweep sweep_intents(const FormalContext& context) {
  IntentSweep out{{}, Theory(context.attributes(), context.chain())};
  const auto empty = FuzzySet::empty(context.attributes(), context.chain());
  auto least = context.intent_closure(empty);
  if (least != empty) out.seed.add(empty, least);
  std::unordered_set<FuzzySet, FuzzySetHash> seen{least};
  std::deque<FuzzySet> queue{least};
  const Index top = context.chain()->top_index();
  while (!queue.empty()) {
    auto e = std::move(queue.front());
    queue.pop_front();
    for (std::size_t y = 0; y < e.size(); ++y) {
      if (e.indices()[y] == top) continue;
      FuzzySet m = e;
      ++m.indices()[y];
      auto closed = context.intent_closure(m);
      if (closed != m) out.seed.add(m, closed);
      if (seen.insert(closed).second) queue.push_back(std::move(closed));
    }
    out.intents.push_back(std::move(e));
  }
  return out;
}

enum class SeedKind {
  automatic,     // universe when L^Y is within the cap, intent sweep otherwise
  universe,      // {P => P^down-up : P non-closed}
  intent_sweep,  // one-step raises of intents
};

struct BaseOptions {
  SeedKind seed = SeedKind::automatic;
  std::uint64_t cap = kDefaultCap;
  /// Check completeness of the result: exhaustively when L^Y is within the
  /// cap, otherwise by equivalence with the (complete) seed.
  bool verify = true;
};

enum class BaseStatus {
  success,
  not_equivalent,  // the transform changed the models (possible for hedges other than globalization)
};

struct BaseResult {
  BaseStatus status = BaseStatus::success;
  PseudoIntentSystem system;  // antecedents of sigma and sigma itself
  Theory reduced;             // saturated non-redundant theory fed to the transform
  std::size_t seed_size = 0;
  bool verified = false;      // a completeness check ran
  bool complete = false;      // its verdict
};

/// Complete set -> redundancy removal -> joint saturation/non-redundancy ->
/// witness transform -> antecedents.
inline BaseResult base_from_context(const FormalContext& context, const BaseOptions& options = {}) {
  const bool enumerable = count_sets(context.attribute_count(), context.chain()->scale()) <= options.cap;
  SeedKind kind = options.seed;
  if (kind == SeedKind::automatic) kind = enumerable ? SeedKind::universe : SeedKind::intent_sweep;
  Theory seed = kind == SeedKind::universe ? universe_seed(context, options.cap) : sweep_intents(context).seed;

  BaseResult result;
  result.seed_size = seed.size();
  // Seed members are P => P^down-up and the seed is complete, so its
  // consequents are saturated.
  Theory reduced = remove_redundancy(seed, true);
  if (!is_saturated(reduced) || !is_non_redundant(reduced)) reduced = saturate_and_reduce(std::move(reduced));

  auto transformed = witness_transform(reduced);
  result.reduced = std::move(reduced);
  result.status = transformed.equivalent ? BaseStatus::success : BaseStatus::not_equivalent;
  result.system.base = std::move(transformed.sigma);
  for (const auto& imp : result.system.base) result.system.members.push_back(imp.antecedent);

  if (options.verify) {
    result.verified = true;
    result.complete = enumerable ? is_complete(result.system.base, context, options.cap)
                                 : equivalent(result.system.base, seed);
  }
  return result;
}

/// Whether `system` satisfies: P in system iff ||Q => Q^down-up||_P = 1 for
/// every other Q in the system, for each non-closed P.
inline bool verify_system(const std::vector<FuzzySet>& system, const FormalContext& context,
                          std::uint64_t cap = kDefaultCap) {
  const auto candidates = non_closed_sets(context, cap);
  const std::unordered_set<FuzzySet, FuzzySetHash> universe(candidates.begin(), candidates.end());
  std::unordered_set<FuzzySet, FuzzySetHash> members;
  std::vector<Implication> base;
  for (const auto& q : system) {
    context.check_attributes(q);
    if (!universe.contains(q)) return false;
    if (members.insert(q).second) base.emplace_back(q, context.intent_closure(q));
  }
  for (const auto& p : candidates) {
    bool holds = true;
    for (const auto& imp : base)
      if (imp.antecedent != p && !truth_in_model(imp, p).is_top()) {
        holds = false;
        break;
      }
    if (holds != members.contains(p)) return false;
  }
  return true;
}

}  // namespace gfai
