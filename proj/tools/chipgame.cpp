// chipgame: batch front door for the chips/dominoes survival game.
//
// Exit codes: 0 success, 1 not solvable / budget exhausted / unreachable,
// 2 malformed invocation.

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "chipgame/http_api.hpp"
#include "chipgame/reports.hpp"
#include "chipgame/search.hpp"
#include "chipgame/serialize.hpp"
#include "chipgame/theory.hpp"

using namespace chipgame;

namespace {

enum class Format { Table, Doc };

struct Options {
  Format format = Format::Table;
  std::string dist;
  int players = 0;
  bool nonstandard = false;
  int target = 0;
  int max_steps = 0;
  std::int64_t max_nodes = 0;
  int max_cost = 0;
  int joker_cap = 0;
  bool no_canonical = false;
  bool dominance = false;
  int max_chips = 12;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
};

void print_doc(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

std::string dist_string(const PieceSet& s) {
  std::string out = triple_string(s.chips);
  if (s.jokers || s.dominoes)
    out += " x=" + std::to_string(s.jokers) + " d=" + std::to_string(s.dominoes);
  return out;
}

void print_script_table(const ExchangeScript& script) {
  std::cout << "  start " << to_string(script.start()) << '\n';
  int i = 0;
  for (const auto& step : script.steps()) {
    std::cout << "  " << std::setw(3) << ++i << "  " << std::left << std::setw(18)
              << to_string(step.exchange) << std::setw(10) << to_string(step.phase)
              << std::right << to_string(step.after) << '\n';
  }
}

PieceSet read_dist(const Options& o) { return canonicalize(parse_distribution(o.dist)); }

GameConfig read_config(const Options& o) {
  GameConfig config{o.players, read_dist(o)};
  validate(config, o.nonstandard);
  return config;
}

// --- commands --------------------------------------------------------------

int cmd_check(const Options& o) {
  const PieceSet initial = read_dist(o);
  const auto verdict = theory::solvable(initial);
  if (o.format == Format::Doc) {
    Json doc{{"instance", to_json(initial)}, {"verdict", to_json(verdict)}};
    if (o.players > 0) doc["trivial"] = o.players <= 3;
    print_doc(doc);
  } else {
    std::cout << dist_string(initial) << ": ";
    if (verdict.solvable) {
      std::cout << "solvable";
      if (verdict.witness)
        std::cout << " (contains " << theory::to_string(verdict.witness->id) << " = "
                  << triple_string(verdict.witness->counts) << ")";
    } else {
      std::cout << "not solvable";
    }
    std::cout << " [" << theory::to_string(verdict.method) << "]\n";
    if (o.players > 0 && o.players <= 3)
      std::cout << "note: games with " << o.players << " players are trivial\n";
  }
  return verdict.solvable ? 0 : 1;
}

int cmd_plan(const Options& o) {
  const GameConfig config = read_config(o);
  const ExchangeScript plan = theory::survival_plan(config);
  if (o.format == Format::Doc) {
    print_doc(Json{{"instance", to_json(config.initial)},
                   {"players", config.players},
                   {"cost", plan.cost()},
                   {"script", to_json(plan)}});
  } else {
    std::cout << "survival plan for " << config.players << " players from "
              << dist_string(config.initial) << '\n';
    print_script_table(plan);
    std::cout << "cost " << plan.cost() << '\n';
  }
  return 0;
}

// The theory formula matching this instance, when the instance is one of the
// analysed scenarios.
std::optional<theory::CostReport> matching_formula(int p, const PieceSet& initial) {
  auto try_report = [&](auto initial_fn, auto report_fn) -> std::optional<theory::CostReport> {
    try {
      if (canonicalize(initial_fn(p)) == initial) return report_fn(p);
    } catch (const GameError&) {
    }
    return std::nullopt;
  };
  if (auto r = try_report(theory::worst_case_initial, theory::worst_case_cost)) return r;
  if (auto r = try_report(theory::best_case_initial, theory::best_case_cost)) return r;
  if (auto r = try_report(theory::general_initial, theory::general_upper_bound)) return r;
  return std::nullopt;
}

int cmd_optimal(const Options& o) {
  const PieceSet initial = read_dist(o);
  const int target = o.target > 0 ? o.target : o.players;
  if (target <= 0) throw GameError(ErrorCode::BadRequest, "optimal needs --players or --target");
  const auto goal = search::SearchGoal::reach_dominoes(target);
  auto budget = search::default_budget(initial, goal);
  if (o.max_cost > 0) budget.max_cost = o.max_cost;
  if (o.max_nodes > 0) budget.max_nodes = o.max_nodes;
  if (o.joker_cap > 0) budget.joker_cap = o.joker_cap;
  budget.canonicalize = !o.no_canonical;
  budget.dominance = o.dominance;

  const auto result = search::min_exchanges(initial, goal, budget);
  const auto formula = o.players > 0 ? matching_formula(o.players, initial) : std::nullopt;

  if (o.format == Format::Doc) {
    print_doc(Json{{"instance", to_json(initial)},
                   {"target", target},
                   {"budget", to_json(budget)},
                   {"result", to_json(result)},
                   {"formula", formula ? to_json(*formula) : Json(nullptr)}});
  } else {
    std::cout << "instance " << dist_string(initial) << ", goal " << target << " dominoes\n"
              << "budget max-cost " << budget.max_cost << ", max-nodes " << budget.max_nodes
              << ", joker-cap " << budget.joker_cap << '\n'
              << "status " << search::to_string(result.status) << '\n';
    if (result.cost) std::cout << "oracle minimum " << *result.cost << '\n';
    if (formula) {
      std::cout << "theory " << theory::to_string(formula->scenario) << " formula "
                << formula->formula_cost;
      if (formula->cap) std::cout << " (cap " << *formula->cap << ")";
      std::cout << ", explicit plan " << formula->plan_cost;
      if (formula->policy_cost) std::cout << ", cooperative policy " << *formula->policy_cost;
      std::cout << '\n';
    }
    std::cout << "nodes expanded " << result.nodes_expanded << ", frontier peak "
              << result.frontier_peak << ", cap violations " << result.cap_violations << '\n';
    if (result.witness) print_script_table(*result.witness);
  }
  return result.status == search::SearchStatus::Optimal ? 0 : 1;
}

int cmd_verify_minimal(const Options& o) {
  const auto report = search::verify_minimal_sufficient(o.max_chips);
  if (o.format == Format::Doc) {
    print_doc(to_json(report));
  } else {
    std::cout << "checked " << report.triples_checked << " ordered triples ("
              << report.canonical_checked << " canonical) with at most " << report.max_total_chips
              << " chips\n";
    std::cout << "sufficient canonical sets: " << report.sufficient.size() << '\n';
    std::cout << "minimal sufficient sets: ";
    if (report.minimal.empty()) std::cout << "none";
    for (auto it = report.minimal.rbegin(); it != report.minimal.rend(); ++it)
      std::cout << (it == report.minimal.rbegin() ? "" : ", ") << triple_string(it->counts);
    std::cout << '\n';
    std::cout << "counterexamples: " << report.counterexamples.size() << '\n';
    for (const auto& c : report.counterexamples) std::cout << "  " << triple_string(c.counts) << '\n';
  }
  return report.counterexamples.empty() ? 0 : 1;
}

int cmd_rule1_terminal(const Options& o) {
  const PieceSet initial = read_dist(o);
  const auto report = search::rule1_only_enumerate(
      initial, o.max_nodes > 0 ? o.max_nodes : search::kDefaultRule1NodeBudget);
  if (o.format == Format::Doc) {
    print_doc(to_json(report));
  } else {
    std::cout << "Rule-1-only play from " << dist_string(initial) << " (n = " << report.n << ")\n"
              << "nodes " << report.nodes << ", max dominoes " << report.max_dominoes
              << ", invariant violations " << report.violations << '\n'
              << "terminal sets (" << report.terminals.size() << "):\n";
    for (const auto& t : report.terminals) std::cout << "  " << to_string(t) << '\n';
    if (!report.complete) std::cout << "incomplete: StateSpaceTooLarge\n";
  }
  return report.complete && report.violations == 0 ? 0 : 1;
}

int cmd_simulate(const Options& o) {
  const GameConfig config = read_config(o);
  const PolicyRun run = run_cooperative(
      config, o.max_steps > 0 ? o.max_steps : default_max_steps(config.players));
  if (o.format == Format::Doc) {
    print_doc(Json{{"instance", to_json(config.initial)},
                   {"players", config.players},
                   {"stop", std::string(to_string(run.stop))},
                   {"cost", run.script.cost()},
                   {"script", to_json(run.script)}});
  } else {
    std::cout << "cooperative play, " << config.players << " players, from "
              << dist_string(config.initial) << '\n';
    print_script_table(run.script);
    std::cout << "stopped on " << to_string(run.stop) << " after " << run.script.cost()
              << " exchanges with " << run.script.final_state().dominoes << " dominoes\n";
  }
  return run.stop == StopReason::Goal ? 0 : 1;
}

int cmd_serve(const Options& o) {
  std::string dir = o.data_dir;
  if (dir.empty()) {
    const char* env = std::getenv(service::kDataDirEnv);
    dir = env ? env : "sessions";
  }
  service::SessionStore store(dir);
  for (const auto& err : store.load_errors()) std::cerr << "skipped session file " << err << '\n';
  std::cerr << "serving " << store.ids().size() << " sessions from " << dir << " on " << o.host
            << ":" << o.port << '\n';
  return service::serve(store, o.host, o.port);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engine, planner and exact search for the chips/dominoes survival game"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output mode")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"table", Format::Table}, {"doc", Format::Doc}}));
  };
  auto add_dist = [&](CLI::App* cmd) {
    cmd->add_option("--dist", o.dist, "Initial pieces a,b,c[,x[,d]]")->required();
  };

  auto* check = app.add_subcommand("check", "Decide solvability of an initial distribution");
  add_dist(check);
  check->add_option("--players", o.players, "Group size (flags trivial games)");
  add_format(check);

  auto* plan = app.add_subcommand("plan", "Generate a survival plan");
  add_dist(plan);
  plan->add_option("--players", o.players, "Group size")->required()->check(CLI::PositiveNumber);
  plan->add_flag("--nonstandard", o.nonstandard, "Allow sets other than 2p colored chips");
  add_format(plan);

  auto* optimal = app.add_subcommand("optimal", "Exact minimum number of exchanges");
  add_dist(optimal);
  optimal->add_option("--players", o.players, "Group size; the goal is that many dominoes");
  optimal->add_option("--target", o.target, "Goal domino count (overrides --players)");
  optimal->add_option("--max-cost", o.max_cost, "Branch-and-bound ceiling");
  optimal->add_option("--max-nodes", o.max_nodes, "Expansion limit");
  optimal->add_option("--joker-cap", o.joker_cap, "Largest joker count explored");
  optimal->add_flag("--no-canonical", o.no_canonical, "Search without color canonicalization");
  optimal->add_flag("--dominance", o.dominance, "Prune dominated states");
  add_format(optimal);

  auto* verify = app.add_subcommand("verify-minimal", "Exhaustively verify the minimal sufficient sets");
  verify->add_option("--max-chips", o.max_chips, "Largest chip total enumerated")
      ->check(CLI::NonNegativeNumber);
  add_format(verify);

  auto* rule1 = app.add_subcommand("rule1-terminal", "Enumerate Rule-1-only terminal sets");
  add_dist(rule1);
  rule1->add_option("--max-nodes", o.max_nodes, "Node budget");
  add_format(rule1);

  auto* simulate = app.add_subcommand("simulate", "Replay the deterministic cooperative policy");
  add_dist(simulate);
  simulate->add_option("--players", o.players, "Group size")->required()->check(CLI::PositiveNumber);
  simulate->add_flag("--nonstandard", o.nonstandard, "Allow sets other than 2p colored chips");
  simulate->add_option("--max-steps", o.max_steps, "Step budget (default 50p + 100)");
  add_format(simulate);

  auto* serve = app.add_subcommand("serve", "Run the live-session HTTP service");
  serve->add_option("--port", o.port, "Listen port");
  serve->add_option("--host", o.host, "Listen address");
  serve->add_option("--data-dir", o.data_dir,
                    std::string("Session directory (default $") + service::kDataDirEnv +
                        " or ./sessions)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return cmd_check(o);
    if (*plan) return cmd_plan(o);
    if (*optimal) return cmd_optimal(o);
    if (*verify) return cmd_verify_minimal(o);
    if (*rule1) return cmd_rule1_terminal(o);
    if (*simulate) return cmd_simulate(o);
    if (*serve) return cmd_serve(o);
  } catch (const GameError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::BadRequest:
      case ErrorCode::InvalidConfig:
        return 2;
      default:
        return 1;
    }
  }
  return 2;
}
