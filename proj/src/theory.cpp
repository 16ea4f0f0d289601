#include "chipgame/theory.hpp"

#include <limits>

#include "chipgame/search.hpp"

namespace chipgame::theory {

namespace {

[[noreturn]] void domain_error(const std::string& what) {
  throw GameError(ErrorCode::DomainError, what);
}

const Exchange kFullSet = Exchange::rule1({Color::C1, Color::C2, Color::C3});
const Exchange kThreeJokers = Exchange::rule1({});

PieceSet jokers_only(int x, int d = 0) {
  PieceSet s;
  s.jokers = x;
  s.dominoes = d;
  return s;
}

// Rule 1 on three jokers while that is possible and the goal is unmet.
void collapse_jokers(ExchangeScript& script, Phase phase, int stop_at_dominoes) {
  while (script.final_state().jokers >= 3 &&
         script.final_state().dominoes < stop_at_dominoes)
    script.push(kThreeJokers, phase);
}

void check_players(int p) {
  if (p <= 3)
    throw GameError(ErrorCode::TrivialGame,
                    "games with " + std::to_string(p) +
                        " players are trivial: Rule 1 alone yields at most p - 1 "
                        "dominoes and Rule 2 is never reachable");
}

}  // namespace

int phi(int x) {
  if (x < 1) domain_error("phi is defined for x >= 1");
  return x % 2 == 1 ? 1 : 2;
}

int collapse_dominoes(int x) { return (x - phi(x)) / 2; }

ExchangeScript joker_collapse_plan(int x) {
  if (x < 1) domain_error("joker collapse needs x >= 1");
  ExchangeScript script(jokers_only(x));
  collapse_jokers(script, Phase::Collapse, std::numeric_limits<int>::max());
  return script;
}

ExchangeScript joker_mining_plan(int r) {
  if (r < 0) domain_error("joker mining needs r >= 0");
  ExchangeScript script(jokers_only(r, 3));
  script.push(Exchange::rule2(), Phase::Rule2);
  for (int i = 0; i < 3; ++i) script.push(kThreeJokers, Phase::Mining);
  return script;
}

ExchangeScript domino_creation_plan(int r) {
  if (r != 0 && r != 1) domain_error("domino creation is defined for r in {0, 1}");
  ExchangeScript script(jokers_only(r, 3));
  // Mine until three jokers sit next to the three dominoes.
  for (int x = r; x < 3; ++x) script.extend(joker_mining_plan(x));
  script.push(kThreeJokers, Phase::Final);
  return script;
}

std::string_view to_string(SufficientSetId id) { return id == SufficientSetId::M ? "M" : "N"; }

std::string_view to_string(VerdictMethod m) {
  return m == VerdictMethod::SubsetCheck ? "subset-check" : "search";
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Worst: return "worst";
    case Scenario::Best: return "best";
    case Scenario::General: return "general";
  }
  return "?";
}

SolvabilityVerdict solvable(const PieceSet& initial) {
  if (initial.jokers == 0 && initial.dominoes == 0) {
    const auto sorted = canonicalize(initial).chips;
    for (const SufficientSet& set : {kSetM, kSetN}) {
      if (sorted[0] >= set.counts[0] && sorted[1] >= set.counts[1] &&
          sorted[2] >= set.counts[2])
        return {true, set, VerdictMethod::SubsetCheck};
    }
    return {false, std::nullopt, VerdictMethod::SubsetCheck};
  }
  return {search::achieves_d3(initial), std::nullopt, VerdictMethod::Search};
}

ExchangeScript opening_plan(const PieceSet& initial, const SufficientSet& witness) {
  const ColorPermutation perm = canonical_permutation(initial);
  PieceSet sub;
  for (std::size_t i = 0; i < 3; ++i) sub.chips[index(perm[i])] = witness.counts[i];
  if (!initial.contains(sub))
    throw GameError(ErrorCode::NotSolvable,
                    to_string(initial) + " does not contain set " +
                        std::string(to_string(witness.id)));
  ExchangeScript script(initial);
  for (int i = 0; i < 3; ++i) {
    auto ex = max_principle_exchange(sub);
    sub = apply(sub, *ex);
    script.push(*ex, Phase::Opening);
  }
  return script;
}

ExchangeScript d3_machine_plan(const GameConfig& config) {
  check_players(config.players);
  const SolvabilityVerdict verdict = solvable(config.initial);
  if (!verdict.solvable)
    throw GameError(ErrorCode::NotSolvable,
                    to_string(config.initial) + " cannot reach three dominoes");

  ExchangeScript script(config.initial);
  if (script.final_state().dominoes >= config.players) return script;
  if (script.final_state().dominoes < 3) {
    if (verdict.witness) {
      script.extend(opening_plan(config.initial, *verdict.witness));
    } else {
      auto found = search::min_exchanges(config.initial, search::SearchGoal::reach_dominoes(3));
      if (!found.witness)
        throw GameError(ErrorCode::NotSolvable, "no three-domino witness found");
      for (const auto& step : found.witness->steps())
        script.push(step.exchange, Phase::Opening);
    }
  }
  while (script.final_state().dominoes < config.players)
    script.extend(domino_creation_plan(script.final_state().jokers >= 1 ? 1 : 0));
  return script;
}

ExchangeScript survival_plan(const GameConfig& config) {
  check_players(config.players);
  if (!solvable(config.initial).solvable)
    throw GameError(ErrorCode::NotSolvable,
                    to_string(config.initial) + " contains neither (3,3,1) nor (3,2,2)");
  try {
    PolicyRun run = run_cooperative(config);
    if (run.stop == StopReason::Goal) return std::move(run.script);
  } catch (const GameError& e) {
    if (e.code() != ErrorCode::StepBudgetExceeded) throw;
  }
  return d3_machine_plan(config);
}

// --- cost scenarios --------------------------------------------------------

PieceSet worst_case_initial(int p) {
  if (p < 4) domain_error("the worst-case scenario needs p >= 4");
  const int q = 2 * p - 7;
  PieceSet s;
  s.chips = {3 + q, 3, 1};
  return s;
}

PieceSet best_case_initial(int p) {
  if (p < 6 || (2 * p) % 3 != 0)
    domain_error("the best-case scenario needs p >= 6 with 2p divisible by 3");
  const int m = 2 * p / 3;
  PieceSet s;
  s.chips = {m, m, m};
  return s;
}

PieceSet general_initial(int p) {
  const int r = (2 * p) % 3;
  const int m = (2 * p - r) / 3;
  if (m < 3) domain_error("the general bound needs m = (2p - r) / 3 >= 3");
  PieceSet s;
  s.chips = {m + r, m, m};
  return s;
}

ExchangeScript worst_case_plan(int p) {
  const PieceSet initial = worst_case_initial(p);
  ExchangeScript script(initial);
  script.extend(opening_plan(initial, kSetM));
  // The leftover q chips are all C1.
  for (int i = 0; i < p - 3; ++i) {
    script.extend(joker_mining_plan(1));
    script.push(Exchange::rule1({Color::C1}), Phase::Final);
  }
  return script;
}

ExchangeScript best_case_plan(int p) {
  const PieceSet initial = best_case_initial(p);
  const int m = initial.chips[0];
  ExchangeScript script(initial);
  for (int i = 0; i < m; ++i) script.push(kFullSet, Phase::Opening);
  collapse_jokers(script, Phase::Collapse, p);
  if (script.final_state().dominoes < p) {
    script.push(Exchange::rule2(), Phase::Rule2);
    collapse_jokers(script, Phase::Final, p);
  }
  return script;
}

ExchangeScript general_plan(int p) {
  const PieceSet initial = general_initial(p);
  const int m = initial.chips[1];
  ExchangeScript script(initial);
  for (int i = 0; i < m; ++i) script.push(kFullSet, Phase::Opening);
  collapse_jokers(script, Phase::Collapse, p);
  while (script.final_state().dominoes < p) script.extend(domino_creation_plan(1));
  return script;
}

namespace {

std::optional<int> policy_cost(int p, const PieceSet& initial) {
  PolicyRun run = run_cooperative({p, initial});
  if (run.stop != StopReason::Goal) return std::nullopt;
  return run.script.cost();
}

}  // namespace

CostReport worst_case_cost(int p) {
  if (p < 4) domain_error("e(p) is defined for p >= 4; smaller games are trivial");
  CostReport report;
  report.players = p;
  report.scenario = Scenario::Worst;
  report.initial = worst_case_initial(p);
  report.formula_cost = 5 * p - 12;
  report.plan_cost = worst_case_plan(p).cost();
  report.policy_cost = policy_cost(p, report.initial);
  report.q = 2 * p - 7;
  return report;
}

CostReport best_case_cost(int p) {
  CostReport report;
  report.players = p;
  report.scenario = Scenario::Best;
  report.initial = best_case_initial(p);
  report.formula_cost = p + 4;
  report.plan_cost = best_case_plan(p).cost();
  report.policy_cost = policy_cost(p, report.initial);
  report.m = 2 * p / 3;
  return report;
}

CostReport general_upper_bound(int p) {
  CostReport report;
  report.players = p;
  report.scenario = Scenario::General;
  report.initial = general_initial(p);
  const int r = (2 * p) % 3;
  report.formula_cost = p + 4 * r + 8;
  report.cap = p + 16;
  report.plan_cost = general_plan(p).cost();
  report.policy_cost = policy_cost(p, report.initial);
  report.m = (2 * p - r) / 3;
  report.r = r;
  return report;
}

ExchangeScript rule1_construction(int m) {
  if (m < 1 || m % 2 == 0) domain_error("the construction needs an odd m >= 1");
  PieceSet initial;
  initial.chips = {m + 1, m, m};
  ExchangeScript script(initial);
  for (int i = 0; i < m; ++i) script.push(kFullSet, Phase::Opening);
  collapse_jokers(script, Phase::Collapse, std::numeric_limits<int>::max());
  return script;
}

}  // namespace chipgame::theory
