#pragma once

// Experiment harness: success ratio of the witness transform on BL chains,
// timing of the graph method against the pipeline, and base size / runtime
// as functions of context density. Results are CSV; every instance draws
// from its own sub-seed so thread count never changes a non-timing column.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "gfai/graph_method.hpp"
#include "gfai/random.hpp"

namespace gfai {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t instances = 100;
  std::size_t objects = 10;
  std::size_t attributes = 10;
  int scale = 4;
  HedgeKind hedge = HedgeKind::globalization;
  TNorm logic = TNorm::lukasiewicz;                 // fig2, fig34
  std::vector<int> idempotent_counts{2, 3, 6, 11};  // fig1
  TheoryShape shape{10, 0.3, 0.5};                  // fig1
  std::vector<int> densities;                       // bucket centres, percent
  double bucket_width = 5.0;
  int repeats = 3;                                  // timing: median of this many runs
  std::uint64_t cap = kDefaultCap;
  std::uint64_t mis_limit = 20'000'000;             // graph method: maximal sets visited
  std::size_t max_draws = 100'000;                  // rejection sampling per instance
  std::size_t spot_check = 0;                       // verify every k-th instance; 0 = off
  unsigned threads = 1;
};

inline std::vector<int> density_centres(int first, int last, int step = 5) {
  std::vector<int> out;
  for (int c = first; c <= last; c += step) out.push_back(c);
  return out;
}

inline ExperimentConfig fig1_defaults() {
  ExperimentConfig c;
  c.instances = 2000;
  c.attributes = 6;
  c.scale = 10;
  c.hedge = HedgeKind::identity;
  return c;
}

inline ExperimentConfig fig2_defaults() {
  ExperimentConfig c;
  c.instances = 500;
  c.objects = 50;
  c.attributes = 4;
  c.scale = 2;
  c.densities = density_centres(6, 91);
  return c;
}

inline ExperimentConfig fig34_defaults() {
  ExperimentConfig c;
  c.instances = 200;
  c.objects = 10;
  c.attributes = 10;
  c.scale = 4;
  c.densities = density_centres(6, 86);
  return c;
}

// ---------------------------------------------------------------------------
// Plumbing.

/// Runs job(i) for i in [0, count) on `threads` workers.
inline void run_jobs(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; !failed && (i = next++) < count;) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Median wall time in seconds of `repeats` runs of fn; the last run's value
/// is left in `result`.
template <class Fn, class Result>
double median_time(int repeats, Fn&& fn, Result& result) {
  std::vector<double> times;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    result = fn();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

inline double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Whether the context's density lies in [centre - width/2, centre + width/2),
/// decided in integers.
inline bool in_bucket(const FormalContext& context, int centre, double width) {
  std::int64_t sum = 0;
  for (Index d : context.table()) sum += d;
  const auto scaled = static_cast<double>(context.object_count() * context.attribute_count()) *
                      context.chain()->scale();
  const double twice = 200.0 * static_cast<double>(sum);
  return twice >= (2.0 * centre - width) * scaled && twice < (2.0 * centre + width) * scaled;
}

/// Draws contexts until one falls into the bucket; nullopt after max_draws.
inline std::optional<FormalContext> draw_in_bucket(Rng& rng, const ExperimentConfig& cfg, const ChainPtr& chain,
                                                   int centre) {
  for (std::size_t k = 0; k < cfg.max_draws; ++k) {
    auto context = random_context(rng, cfg.objects, cfg.attributes, chain, centre);
    if (in_bucket(context, centre, cfg.bucket_width)) return context;
  }
  return std::nullopt;
}

inline std::vector<FuzzySet> sorted(std::vector<FuzzySet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// A CSV table; `timing` marks the columns excluded from determinism checks.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<bool> timing;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os, bool include_timing = true) const {
    for (const auto& c : comments) os << "# " << c << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
      bool first = true;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!include_timing && timing[i]) continue;
        os << (first ? "" : ",") << cells[i];
        first = false;
      }
      os << '\n';
    };
    line(columns);
    for (const auto& r : rows) line(r);
  }
};

inline std::string hedge_name(HedgeKind h) {
  switch (h) {
    case HedgeKind::identity: return "identity";
    case HedgeKind::globalization: return "globalization";
    case HedgeKind::table: return "table";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Success ratio of the transform on BL chains.

struct Fig1Row {
  int idempotents = 0;
  std::size_t instances = 0;
  std::size_t successes = 0;
  double mean_formulas = 0;
  std::size_t spot_checked = 0;
  std::size_t spot_failures = 0;
  double ratio() const { return instances ? 100.0 * static_cast<double>(successes) / instances : 0.0; }
};

struct Fig1Result {
  ExperimentConfig config;
  std::vector<Fig1Row> rows;
  CsvTable table() const;
};

/// Chain for one fig1 instance: `count` idempotents, the interior ones drawn
/// uniformly without replacement.
inline ChainPtr random_bl_chain(Rng& rng, int scale, int count, HedgeKind hedge) {
  if (count < 2 || count > scale + 1)
    throw PreconditionError("idempotent count must be in 2.." + std::to_string(scale + 1));
  ChainSpec spec;
  spec.scale = scale;
  spec.tnorm = TNorm::ordinal_sum;
  spec.hedge = hedge;
  spec.idempotents.push_back(0);
  for (int v : rng.sample(1, scale - 1, count - 2)) spec.idempotents.push_back(v);
  spec.idempotents.push_back(scale);
  return ResiduatedChain::make(spec);
}

inline Fig1Result run_fig1(const ExperimentConfig& cfg) {
  Fig1Result out{cfg, {}};
  const auto universe = AttributeUniverse::make(numbered_names("y", cfg.attributes));
  for (std::size_t b = 0; b < cfg.idempotent_counts.size(); ++b) {
    const int count = cfg.idempotent_counts[b];
    std::vector<char> success(cfg.instances, 0), checked(cfg.instances, 0), failed(cfg.instances, 0);
    std::vector<std::size_t> formulas(cfg.instances, 0);
    run_jobs(cfg.instances, cfg.threads, [&](std::size_t i) {
      auto rng = Rng::for_job(cfg.seed, (b << 32) | i);
      const auto chain = random_bl_chain(rng, cfg.scale, count, cfg.hedge);
      const auto theory = random_saturated_nonredundant_theory(rng, universe, chain, cfg.shape);
      const auto result = witness_transform(theory);
      success[i] = result.equivalent;
      formulas[i] = theory.size();
      if (cfg.spot_check && i % cfg.spot_check == 0 && result.equivalent) {
        checked[i] = 1;
        const auto report = witness_check(result.sigma);
        failed[i] = !(report.witnessed && report.non_redundant && equivalent(result.sigma, theory) &&
                      is_saturated(result.sigma));
      }
    });
    Fig1Row row;
    row.idempotents = count;
    row.instances = cfg.instances;
    for (std::size_t i = 0; i < cfg.instances; ++i) {
      row.successes += success[i];
      row.spot_checked += checked[i];
      row.spot_failures += failed[i];
    }
    row.mean_formulas = cfg.instances ? std::accumulate(formulas.begin(), formulas.end(), 0.0) / cfg.instances : 0;
    out.rows.push_back(row);
  }
  return out;
}

inline CsvTable Fig1Result::table() const {
  CsvTable t;
  const auto& c = config;
  t.comments = {
      "success ratio of the witness transform on random theories",
      "seed=" + std::to_string(c.seed) + " instances=" + std::to_string(c.instances) + " scale=" +
          std::to_string(c.scale) + " hedge=" + hedge_name(c.hedge) + " attributes=" + std::to_string(c.attributes),
      "chain: BL ordinal sum; 0 and 1 idempotent, the other idempotents drawn uniformly without replacement",
      "theory: " + std::to_string(c.shape.formulas) + " raw implications; antecedent attribute present with p=" +
          fixed(c.shape.antecedent_rate, 2) + ", consequent = antecedent plus attributes with p=" +
          fixed(c.shape.consequent_rate, 2) + "; present degrees uniform on 1/n..1",
      "theory is then saturated and reduced to a non-redundant fixpoint",
  };
  t.columns = {"idempotents", "instances", "successes", "ratio_percent", "mean_formulas", "spot_checked",
               "spot_failures"};
  t.timing.assign(t.columns.size(), false);
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.idempotents), std::to_string(r.instances), std::to_string(r.successes),
                      fixed(r.ratio(), 4), fixed(r.mean_formulas, 4), std::to_string(r.spot_checked),
                      std::to_string(r.spot_failures)});
  return t;
}

// ---------------------------------------------------------------------------
// Graph method against the pipeline.

struct Fig2Row {
  int density = 0;
  std::size_t instances = 0;  // contexts timed with both methods
  std::vector<double> graph_times, alt_times;
  std::size_t capacity_excluded = 0;
  std::size_t unreachable = 0;  // bucket never hit by rejection sampling
  std::size_t mismatches = 0;
  double mean_base_size = 0;
  std::size_t spot_checked = 0;
  std::size_t spot_failures = 0;
};

struct Fig2Result {
  ExperimentConfig config;
  std::vector<Fig2Row> rows;
  CsvTable table() const;
};

inline ChainPtr experiment_chain(const ExperimentConfig& cfg) {
  if (cfg.logic == TNorm::goedel) return ResiduatedChain::goedel(cfg.scale, cfg.hedge);
  if (cfg.logic != TNorm::lukasiewicz) throw PreconditionError("fig2 and fig34 support lukasiewicz or goedel");
  return ResiduatedChain::lukasiewicz(cfg.scale, cfg.hedge);
}

inline Fig2Result run_fig2(const ExperimentConfig& cfg) {
  Fig2Result out{cfg, {}};
  const auto chain = experiment_chain(cfg);
  for (std::size_t b = 0; b < cfg.densities.size(); ++b) {
    const int centre = cfg.densities[b];
    enum Status : char { ok, capacity, unreachable };
    std::vector<char> status(cfg.instances, ok), mismatch(cfg.instances, 0), checked(cfg.instances, 0),
        failed(cfg.instances, 0);
    std::vector<double> graph_t(cfg.instances), alt_t(cfg.instances), size(cfg.instances);
    run_jobs(cfg.instances, cfg.threads, [&](std::size_t i) {
      auto rng = Rng::for_job(cfg.seed, (b << 32) | i);
      const auto context = draw_in_bucket(rng, cfg, chain, centre);
      if (!context) {
        status[i] = unreachable;
        return;
      }
      std::vector<PseudoIntentSystem> systems;
      try {
        graph_t[i] = median_time(cfg.repeats, [&] {
          const auto g = build_graph(*context, cfg.cap);
          return enumerate_systems(g, *context, cfg.mis_limit);
        }, systems);
      } catch (const CapacityError&) {
        status[i] = capacity;
        return;
      }
      BaseOptions options;
      options.cap = cfg.cap;
      options.verify = false;
      BaseResult base;
      alt_t[i] = median_time(cfg.repeats, [&] { return base_from_context(*context, options); }, base);
      size[i] = static_cast<double>(base.system.members.size());
      mismatch[i] = systems.size() != 1 || base.status != BaseStatus::success ||
                    sorted(systems[0].members) != sorted(base.system.members);
      if (cfg.spot_check && i % cfg.spot_check == 0) {
        checked[i] = 1;
        failed[i] = !(witness_check(base.system.base).witnessed && verify_system(base.system.members, *context, cfg.cap) &&
                      is_complete(base.system.base, *context, cfg.cap));
      }
    });
    Fig2Row row;
    row.density = centre;
    std::vector<double> sizes;
    for (std::size_t i = 0; i < cfg.instances; ++i) {
      if (status[i] == capacity) ++row.capacity_excluded;
      if (status[i] == unreachable) ++row.unreachable;
      if (status[i] != ok) continue;
      ++row.instances;
      row.graph_times.push_back(graph_t[i]);
      row.alt_times.push_back(alt_t[i]);
      sizes.push_back(size[i]);
      row.mismatches += mismatch[i];
      row.spot_checked += checked[i];
      row.spot_failures += failed[i];
    }
    row.mean_base_size = mean(sizes);
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline std::vector<std::string> context_comments(const ExperimentConfig& c) {
  return {
      "seed=" + std::to_string(c.seed) + " instances=" + std::to_string(c.instances) + " objects=" +
          std::to_string(c.objects) + " attributes=" + std::to_string(c.attributes) + " scale=" +
          std::to_string(c.scale) + " logic=" + (c.logic == TNorm::goedel ? "goedel" : "lukasiewicz") +
          " hedge=" + hedge_name(c.hedge),
      "context: cell degree i/n with i ~ Binomial(n, centre/100), redrawn until the density falls in "
      "[centre-" + fixed(c.bucket_width / 2, 1) + ", centre+" + fixed(c.bucket_width / 2, 1) + ")",
      "times: seconds, median of " + std::to_string(c.repeats) + " runs per instance (steady clock)",
  };
}

inline CsvTable Fig2Result::table() const {
  CsvTable t;
  t.comments = context_comments(config);
  t.comments.insert(t.comments.begin(), "graph method vs pipeline from the complete set");
  t.columns = {"density", "instances", "graph_mean_s", "graph_median_s", "alt_mean_s", "alt_median_s",
               "mean_base_size", "capacity_excluded", "unreachable", "mismatches", "spot_checked",
               "spot_failures"};
  t.timing = {false, false, true, true, true, true, false, false, false, false, false, false};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.density), std::to_string(r.instances), fixed(mean(r.graph_times), 6),
                      fixed(median(r.graph_times), 6), fixed(mean(r.alt_times), 6), fixed(median(r.alt_times), 6),
                      fixed(r.mean_base_size, 4), std::to_string(r.capacity_excluded), std::to_string(r.unreachable),
                      std::to_string(r.mismatches), std::to_string(r.spot_checked),
                      std::to_string(r.spot_failures)});
  return t;
}

// ---------------------------------------------------------------------------
// Runtime and base size against density.

struct Fig34Row {
  int density = 0;
  std::size_t instances = 0;
  std::vector<double> times, sizes;
  std::size_t capacity_excluded = 0;
  std::size_t unreachable = 0;
  std::size_t failures = 0;  // transform not equivalent
  std::size_t spot_checked = 0;
  std::size_t spot_failures = 0;
};

struct Fig34Result {
  ExperimentConfig config;
  std::vector<Fig34Row> rows;
  CsvTable table() const;
};

inline Fig34Result run_fig34(const ExperimentConfig& cfg) {
  Fig34Result out{cfg, {}};
  const auto chain = experiment_chain(cfg);
  for (std::size_t b = 0; b < cfg.densities.size(); ++b) {
    const int centre = cfg.densities[b];
    enum Status : char { ok, capacity, unreachable };
    std::vector<char> status(cfg.instances, ok), failure(cfg.instances, 0), checked(cfg.instances, 0),
        failed(cfg.instances, 0);
    std::vector<double> time(cfg.instances), size(cfg.instances);
    run_jobs(cfg.instances, cfg.threads, [&](std::size_t i) {
      auto rng = Rng::for_job(cfg.seed, (b << 32) | i);
      const auto context = draw_in_bucket(rng, cfg, chain, centre);
      if (!context) {
        status[i] = unreachable;
        return;
      }
      BaseOptions options;
      options.cap = cfg.cap;
      options.verify = false;
      BaseResult base;
      try {
        time[i] = median_time(cfg.repeats, [&] { return base_from_context(*context, options); }, base);
      } catch (const CapacityError&) {
        status[i] = capacity;
        return;
      }
      size[i] = static_cast<double>(base.system.members.size());
      failure[i] = base.status != BaseStatus::success;
      if (cfg.spot_check && i % cfg.spot_check == 0) {
        checked[i] = 1;
        options.verify = true;
        const auto verified = base_from_context(*context, options);
        bool good = verified.complete && witness_check(verified.system.base).witnessed &&
                    verified.system.members == base.system.members;
        if (count_sets(context->attribute_count(), chain->scale()) <= cfg.cap)
          good = good && verify_system(base.system.members, *context, cfg.cap);
        failed[i] = !good;
      }
    });
    Fig34Row row;
    row.density = centre;
    for (std::size_t i = 0; i < cfg.instances; ++i) {
      if (status[i] == capacity) ++row.capacity_excluded;
      if (status[i] == unreachable) ++row.unreachable;
      if (status[i] != ok) continue;
      ++row.instances;
      row.times.push_back(time[i]);
      row.sizes.push_back(size[i]);
      row.failures += failure[i];
      row.spot_checked += checked[i];
      row.spot_failures += failed[i];
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline CsvTable Fig34Result::table() const {
  CsvTable t;
  t.comments = context_comments(config);
  t.comments.insert(t.comments.begin(), "runtime and base size of the pipeline against density");
  t.columns = {"density", "instances", "time_mean_s", "time_median_s", "base_size_mean", "base_size_median",
               "capacity_excluded", "unreachable", "transform_failures", "spot_checked", "spot_failures"};
  t.timing = {false, false, true, true, false, false, false, false, false, false, false};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.density), std::to_string(r.instances), fixed(mean(r.times), 6),
                      fixed(median(r.times), 6), fixed(mean(r.sizes), 4), fixed(median(r.sizes), 1),
                      std::to_string(r.capacity_excluded), std::to_string(r.unreachable),
                      std::to_string(r.failures), std::to_string(r.spot_checked),
                      std::to_string(r.spot_failures)});
  return t;
}

// ---------------------------------------------------------------------------
// Shape statistics used to judge the curves.

/// Average ranks (ties share the mean rank).
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = (static_cast<double>(i + j) / 2.0) + 1.0;
    i = j + 1;
  }
  return out;
}

/// Pearson correlation of the ranks.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const double ma = mean(ra), mb = mean(rb);
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return da > 0 && db > 0 ? num / std::sqrt(da * db) : 0.0;
}

/// Rise then fall, tolerating a one-bucket dip on either side of the peak:
/// before the peak every value is at most the max of its next two (up to the
/// peak), after it at most the max of its previous two; both ends lie
/// strictly below the peak.
inline bool unimodal(const std::vector<double>& s) {
  if (s.size() < 3) return false;
  const auto m = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
  if (!(s.front() < s[m] && s.back() < s[m])) return false;
  for (std::size_t i = 0; i < m; ++i) {
    double next = s[i + 1];
    if (i + 2 <= m) next = std::max(next, s[i + 2]);
    if (s[i] > next) return false;
  }
  for (std::size_t i = s.size() - 1; i > m; --i) {
    double prev = s[i - 1];
    if (i >= m + 2) prev = std::max(prev, s[i - 2]);
    if (s[i] > prev) return false;
  }
  return true;
}

}  // namespace gfai
