// gfai: command-line front end for graded attribute implications.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gfai/gfai.hpp"

namespace {

using namespace gfai;

constexpr int kExitCapacity = 2;
constexpr int kExitValidation = 3;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : detail::split(text, ',')) {
    std::uint64_t v = 0;
    if (!detail::parse_uint(item, v)) throw ParseError("expected a comma-separated list of integers: '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

HedgeKind parse_hedge(const std::string& name) {
  if (name == "identity") return HedgeKind::identity;
  if (name == "globalization") return HedgeKind::globalization;
  throw ParseError("hedge must be identity or globalization");
}

SeedKind parse_seed_kind(const std::string& name) {
  if (name == "auto") return SeedKind::automatic;
  if (name == "universe") return SeedKind::universe;
  if (name == "sweep") return SeedKind::intent_sweep;
  throw ParseError("seed kind must be auto, universe or sweep");
}

void print_theory(const Theory& theory) {
  for (const auto& imp : theory) std::cout << format_implication(imp) << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct ExperimentFlags {
  std::string which;
  std::uint64_t seed = 1;
  std::optional<std::size_t> instances, objects, attributes, formulas, spot_check;
  std::optional<int> scale, repeats;
  std::optional<std::string> hedge, logic, idempotents, densities;
  std::optional<double> antecedent_rate, consequent_rate;
  std::optional<std::uint64_t> mis_limit;
  unsigned threads = 1;
};

int run_experiment(const ExperimentFlags& f, std::uint64_t cap, const std::string& out_path) {
  ExperimentConfig cfg = f.which == "fig1" ? fig1_defaults() : f.which == "fig2" ? fig2_defaults() : fig34_defaults();
  cfg.seed = f.seed;
  cfg.cap = cap;
  cfg.threads = f.threads;
  if (f.instances) cfg.instances = *f.instances;
  if (f.objects) cfg.objects = *f.objects;
  if (f.attributes) cfg.attributes = *f.attributes;
  if (f.scale) cfg.scale = *f.scale;
  if (f.repeats) cfg.repeats = *f.repeats;
  if (f.spot_check) cfg.spot_check = *f.spot_check;
  if (f.hedge) cfg.hedge = parse_hedge(*f.hedge);
  if (f.logic) {
    if (f.which == "fig1") throw PreconditionError("fig1 sweeps ordinal sums; --logic does not apply");
    if (*f.logic == "goedel") cfg.logic = TNorm::goedel;
    else if (*f.logic != "lukasiewicz") throw PreconditionError("--logic must be lukasiewicz or goedel");
  }
  if (f.idempotents) cfg.idempotent_counts = parse_int_list(*f.idempotents);
  if (f.densities) cfg.densities = parse_int_list(*f.densities);
  if (f.formulas) cfg.shape.formulas = *f.formulas;
  if (f.antecedent_rate) cfg.shape.antecedent_rate = *f.antecedent_rate;
  if (f.consequent_rate) cfg.shape.consequent_rate = *f.consequent_rate;
  if (f.mis_limit) cfg.mis_limit = *f.mis_limit;

  const CsvTable table = f.which == "fig1"   ? run_fig1(cfg).table()
                         : f.which == "fig2" ? run_fig2(cfg).table()
                                             : run_fig34(cfg).table();
  if (out_path.empty()) {
    table.write(std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    table.write(out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded attribute implications over finite residuated chains"};
  app.require_subcommand(1);
  std::uint64_t cap = kDefaultCap;
  app.add_option("--cap", cap, "Upper bound on enumerated sets of degrees")->capture_default_str();

  std::string theory_path, theory_path2, context_path, set_text, imp_text;

  auto* close_cmd = app.add_subcommand("close", "Least model of a theory containing a set");
  close_cmd->add_option("theory", theory_path)->required()->check(CLI::ExistingFile);
  close_cmd->add_option("set", set_text, "e.g. \"{p, 0.5/q}\"")->required();

  auto* entail_cmd = app.add_subcommand("entail", "Degree to which a theory entails an implication");
  entail_cmd->add_option("theory", theory_path)->required()->check(CLI::ExistingFile);
  entail_cmd->add_option("implication", imp_text, "e.g. \"{p} => {q}\"")->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "Whether two theories have the same models");
  equiv_cmd->add_option("first", theory_path)->required()->check(CLI::ExistingFile);
  equiv_cmd->add_option("second", theory_path2)->required()->check(CLI::ExistingFile);

  std::string seed_kind = "auto";
  auto* base_cmd = app.add_subcommand("base", "Base of a context given by pseudo-intents");
  base_cmd->add_option("context", context_path)->required()->check(CLI::ExistingFile);
  base_cmd->add_option("--complete-set", seed_kind, "auto, universe or sweep")->capture_default_str();

  auto* transform_cmd = app.add_subcommand("transform", "Witnessing transform of a saturated non-redundant theory");
  transform_cmd->add_option("theory", theory_path)->required()->check(CLI::ExistingFile);

  auto* witness_cmd = app.add_subcommand("witness", "Check whether antecedents witness non-redundancy");
  witness_cmd->add_option("theory", theory_path)->required()->check(CLI::ExistingFile);

  bool dump = false;
  std::uint64_t mis_limit = UINT64_MAX;
  auto* graph_cmd = app.add_subcommand("graph-base", "All systems of pseudo-intents via the graph method");
  graph_cmd->add_option("context", context_path)->required()->check(CLI::ExistingFile);
  graph_cmd->add_flag("--dump-graph", dump, "Print vertices and edges");
  graph_cmd->add_option("--mis-limit", mis_limit, "Stop after this many maximal independent sets");

  ExperimentFlags ef;
  std::string out_path;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment and write CSV");
  exp_cmd->add_option("which", ef.which)->required()->check(CLI::IsMember({"fig1", "fig2", "fig34"}));
  exp_cmd->add_option("--seed", ef.seed)->capture_default_str();
  exp_cmd->add_option("--instances", ef.instances, "Instances per row");
  exp_cmd->add_option("--objects", ef.objects);
  exp_cmd->add_option("--attributes", ef.attributes);
  exp_cmd->add_option("--scale", ef.scale, "Chain has scale+1 degrees");
  exp_cmd->add_option("--hedge", ef.hedge, "identity or globalization");
  exp_cmd->add_option("--logic", ef.logic, "fig2, fig34: lukasiewicz or goedel");
  exp_cmd->add_option("--idempotents", ef.idempotents, "fig1: idempotent counts, e.g. 2,3,6,11");
  exp_cmd->add_option("--densities", ef.densities, "Bucket centres in percent, e.g. 6,11,16");
  exp_cmd->add_option("--formulas", ef.formulas, "fig1: raw implications per theory");
  exp_cmd->add_option("--antecedent-rate", ef.antecedent_rate);
  exp_cmd->add_option("--consequent-rate", ef.consequent_rate);
  exp_cmd->add_option("--repeats", ef.repeats, "Timing runs per instance (median taken)");
  exp_cmd->add_option("--spot-check", ef.spot_check, "Verify every k-th instance");
  exp_cmd->add_option("--mis-limit", ef.mis_limit);
  exp_cmd->add_option("--threads", ef.threads)->capture_default_str();
  exp_cmd->add_option("--out", out_path, "CSV file (default: stdout)");

  std::string logic = "lukasiewicz", hedge = "identity", idempotents, hedge_table;
  int scale = 1;
  auto* validate_cmd = app.add_subcommand("validate-algebra", "Exhaustively check the residuated chain axioms");
  validate_cmd->add_option("--scale", scale)->capture_default_str();
  validate_cmd->add_option("--logic", logic, "lukasiewicz, goedel or bl")->capture_default_str();
  validate_cmd->add_option("--idempotents", idempotents, "bl: idempotent degrees, e.g. 0,0.5,1");
  validate_cmd->add_option("--hedge", hedge, "identity, globalization or table")->capture_default_str();
  validate_cmd->add_option("--hedge-table", hedge_table, "table: one degree per element, e.g. 0,0,1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*close_cmd) {
      const auto file = read_theory_file(theory_path);
      std::cout << format_set(close(parse_set(set_text, file.universe, file.chain), file.theory)) << '\n';
    } else if (*entail_cmd) {
      const auto file = read_theory_file(theory_path);
      std::cout << format_degree(entail_degree(file.theory, parse_implication(imp_text, file.universe, file.chain)))
                << '\n';
    } else if (*equiv_cmd) {
      const auto a = read_theory_file(theory_path);
      const auto b = read_theory_file(theory_path2);
      std::cout << (equivalent(a.theory, b.theory) ? "equivalent" : "not equivalent") << '\n';
    } else if (*base_cmd) {
      const auto context = read_context_file(context_path);
      BaseOptions options;
      options.cap = cap;
      options.seed = parse_seed_kind(seed_kind);
      const auto t0 = std::chrono::steady_clock::now();
      const auto result = base_from_context(context, options);
      const double elapsed = seconds_since(t0);
      std::cout << "# base (" << result.system.base.size() << " implications)\n";
      print_theory(result.system.base);
      std::cout << "# pseudo-intents\n";
      for (const auto& p : result.system.members) std::cout << format_set(p) << '\n';
      std::cout << "# complete set size: " << result.seed_size << '\n'
                << "# transform equivalent: " << (result.status == BaseStatus::success ? "yes" : "no") << '\n'
                << "# complete in context: " << (result.complete ? "yes" : "no") << '\n'
                << "# seconds: " << fixed(elapsed, 6) << '\n';
      if (result.status != BaseStatus::success || !result.complete) return kExitValidation;
    } else if (*transform_cmd) {
      const auto file = read_theory_file(theory_path);
      const auto result = witness_transform(file.theory);
      print_theory(result.sigma);
      std::cout << "# equivalent: " << (result.equivalent ? "yes" : "no") << '\n';
    } else if (*witness_cmd) {
      const auto file = read_theory_file(theory_path);
      const auto report = witness_check(file.theory);
      std::cout << "witnessed: " << (report.witnessed ? "yes" : "no") << '\n'
                << "non-redundant: " << (report.non_redundant ? "yes" : "no") << '\n';
      for (const auto& f : report.failures)
        std::cout << "failure " << f.index << ": " << format_implication(f.implication) << ": " << f.reason << '\n';
    } else if (*graph_cmd) {
      const auto context = read_context_file(context_path);
      const auto t0 = std::chrono::steady_clock::now();
      const auto graph = build_graph(context, cap);
      EnumerationStats stats;
      const auto systems = enumerate_systems(graph, context, mis_limit, &stats);
      const double elapsed = seconds_since(t0);
      if (dump) dump_graph(graph, std::cout);
      std::cout << "# vertices: " << graph.size() << ", maximal independent sets: " << stats.maximal_sets
                << ", systems: " << systems.size() << '\n';
      for (std::size_t i = 0; i < systems.size(); ++i) {
        std::cout << "# system " << i + 1 << " (" << systems[i].members.size() << " pseudo-intents)\n";
        print_theory(systems[i].base);
      }
      std::cout << "# seconds: " << fixed(elapsed, 6) << '\n';
    } else if (*exp_cmd) {
      return run_experiment(ef, cap, out_path);
    } else if (*validate_cmd) {
      std::string logic_line = logic;
      if (logic == "bl") logic_line += " " + idempotents;
      std::string hedge_line = hedge;
      if (hedge == "table") hedge_line += " " + hedge_table;
      const auto report = validate(parse_chain_spec(std::to_string(scale), logic_line, hedge_line));
      for (const auto& v : report.violations) std::cout << v.describe() << '\n';
      std::cout << (report.ok() ? "valid" : std::to_string(report.violations.size()) + " violations") << '\n';
      return report.ok() ? 0 : kExitValidation;
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
