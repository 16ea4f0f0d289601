#pragma once

// Closed forms, constructive plans and the solvability decision. Every plan
// is an ExchangeScript built by applying its exchanges, so it always
// replays.

#include <array>
#include <optional>
#include <string_view>

#include "chipgame/game.hpp"

namespace chipgame::theory {

// 1 for odd x, 2 for even x. Throws DomainError for x < 1.
int phi(int x);

// Dominoes left after collapsing x jokers with Rule 1: (x - phi(x)) / 2.
int collapse_dominoes(int x);

// From x jokers alone to phi(x) jokers and collapse_dominoes(x) dominoes.
ExchangeScript joker_collapse_plan(int x);

// From three dominoes and r jokers: Rule 2, then three all-joker Rule 1s.
// Net effect +1 joker.
ExchangeScript joker_mining_plan(int r);

// Three dominoes and r jokers to four dominoes and one joker; r in {0, 1}.
// 9 exchanges for r = 1, 13 for r = 0.
ExchangeScript domino_creation_plan(int r);

enum class SufficientSetId : std::uint8_t { M, N };

struct SufficientSet {
  SufficientSetId id;
  std::array<int, 3> counts;
};

inline constexpr SufficientSet kSetM{SufficientSetId::M, {3, 3, 1}};
inline constexpr SufficientSet kSetN{SufficientSetId::N, {3, 2, 2}};

std::string_view to_string(SufficientSetId id);

enum class VerdictMethod : std::uint8_t { SubsetCheck, Search };

std::string_view to_string(VerdictMethod m);

struct SolvabilityVerdict {
  bool solvable = false;
  std::optional<SufficientSet> witness;
  VerdictMethod method = VerdictMethod::SubsetCheck;
};

// Colored-only sets: containment of (3,3,1), else (3,2,2), up to relabeling.
// Sets holding jokers or dominoes are decided by reachability search.
SolvabilityVerdict solvable(const PieceSet& initial);

// The three Maximum-Principle exchanges that turn the witness set into three
// dominoes and one joker, mapped onto the colors of `initial`.
ExchangeScript opening_plan(const PieceSet& initial, const SufficientSet& witness);

// Explicit machine composition: reach three dominoes (opening for a
// subset-check witness, search witness otherwise), then domino creation
// until the goal. Throws NotSolvable / TrivialGame.
ExchangeScript d3_machine_plan(const GameConfig& config);

// The cooperative policy when it reaches the goal, otherwise
// d3_machine_plan. Throws NotSolvable, or TrivialGame when p <= 3.
ExchangeScript survival_plan(const GameConfig& config);

// --- cost scenarios --------------------------------------------------------

enum class Scenario : std::uint8_t { Worst, Best, General };

std::string_view to_string(Scenario s);

struct CostReport {
  int players = 0;
  Scenario scenario = Scenario::Worst;
  PieceSet initial;
  int formula_cost = 0;
  // Replayed cost of the explicit plan the formula counts.
  int plan_cost = 0;
  // Replayed cost of the cooperative policy on the same initial set; empty
  // when the policy halts short of the goal.
  std::optional<int> policy_cost;
  std::optional<int> cap;  // p + 16, general scenario only
  std::optional<int> m;
  std::optional<int> r;
  std::optional<int> q;
};

// M = (3,3,1) plus q = 2p - 7 chips of the most frequent color.
PieceSet worst_case_initial(int p);
// (m,m,m) with 2p = 3m.
PieceSet best_case_initial(int p);
// m full sets plus the r = 2p mod 3 leftover chips on the first color.
PieceSet general_initial(int p);

// Opening on M, then (p - 3) rounds of joker mining plus one Rule 1 that
// spends a leftover colored chip: 5p - 12 exchanges.
ExchangeScript worst_case_plan(int p);
// m full-set exchanges, joker collapse, Rule 2, collapse of nine jokers.
ExchangeScript best_case_plan(int p);
// m full-set exchanges, joker collapse, then domino creation per missing
// domino.
ExchangeScript general_plan(int p);

// Throw DomainError outside their stated ranges.
CostReport worst_case_cost(int p);
CostReport best_case_cost(int p);
CostReport general_upper_bound(int p);

// From (m+1, m, m): m full-set exchanges then a joker collapse, ending with
// (3m - 1) / 2 dominoes, one colored chip and one joker. m odd.
ExchangeScript rule1_construction(int m);

}  // namespace chipgame::theory
