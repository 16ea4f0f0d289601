#pragma once

// Exact minimum-exchange search over the implicit state graph, plus the
// exhaustive desk-scale sweeps built on it.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "chipgame/game.hpp"

namespace chipgame::search {

class SearchGoal {
 public:
  enum class Kind : std::uint8_t { ReachDominoes, ReachSubset };

  // Throws DomainError for target < 1.
  static SearchGoal reach_dominoes(int target);
  // The target is stored canonicalized; containment is checked up to a
  // relabeling of colors.
  static SearchGoal reach_subset(const PieceSet& target);

  Kind kind() const { return kind_; }
  int target_dominoes() const { return target_.dominoes; }
  const PieceSet& target() const { return target_; }

  bool satisfied(const PieceSet& state) const;
  // Admissible: every exchange adds at most one domino.
  int lower_bound(const PieceSet& state) const;

 private:
  SearchGoal(Kind kind, PieceSet target) : kind_(kind), target_(target) {}

  Kind kind_;
  PieceSet target_;
};

struct SearchBudget {
  int max_cost = 0;
  std::int64_t max_nodes = 0;
  int joker_cap = 0;
  bool canonicalize = true;
  // Skip states dominated componentwise by a state already expanded at no
  // greater cost. Sound because every rule is monotone in the holdings.
  bool dominance = false;

  bool valid() const { return max_cost > 0 && max_nodes > 0 && joker_cap > 0; }
};

inline constexpr std::int64_t kDefaultMaxNodes = 2'000'000;

// max_cost is seeded from the cost of a replayed theory plan when one exists
// for the instance (a proven upper bound, so the bounded search is exact);
// joker_cap = initial pieces + 8.
SearchBudget default_budget(const PieceSet& initial, const SearchGoal& goal);

enum class SearchStatus : std::uint8_t { Optimal, UnreachableWithinBudget, BudgetExhausted };

std::string_view to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::UnreachableWithinBudget;
  std::optional<int> cost;
  std::optional<ExchangeScript> witness;
  std::int64_t nodes_expanded = 0;
  std::int64_t frontier_peak = 0;
  // Children dropped because they exceeded joker_cap.
  std::int64_t cap_violations = 0;
};

// A* with unit step cost, h = goal.lower_bound, branch-and-bound at
// budget.max_cost. Ties break on lower f, then lower h, then the
// lexicographically smaller state. Throws DomainError for an invalid budget.
SearchResult min_exchanges(const PieceSet& initial, const SearchGoal& goal,
                           const SearchBudget& budget);
SearchResult min_exchanges(const PieceSet& initial, const SearchGoal& goal);

// Whether some state with at least three dominoes is reachable.
bool achieves_d3(const PieceSet& initial, const SearchBudget& budget);
bool achieves_d3(const PieceSet& initial);

struct ChipTriple {
  std::array<int, 3> counts;
  auto operator<=>(const ChipTriple&) const = default;
};

struct MinimalSufficientReport {
  int max_total_chips = 0;
  // Ordered triples (a,b,c) with a+b+c <= max_total_chips.
  std::int64_t triples_checked = 0;
  // Distinct canonical (a >= b >= c) triples among them.
  std::int64_t canonical_checked = 0;
  std::vector<ChipTriple> sufficient;
  std::vector<ChipTriple> minimal;
  // Ordered triples where search and the subset condition disagree.
  std::vector<ChipTriple> counterexamples;

  bool confirms_theorem() const;
};

// Exhaustive check that reaching three dominoes is equivalent to containing
// (3,3,1) or (3,2,2) up to relabeling, over all small colored starts.
// Below 7 chips no sufficient set exists. Throws DomainError when negative.
MinimalSufficientReport verify_minimal_sufficient(int max_total_chips);

struct Rule1Report {
  PieceSet initial;
  int n = 0;  // initial chips, jokers included
  std::int64_t nodes = 0;
  std::vector<PieceSet> terminals;  // canonical, sorted
  int max_dominoes = 0;
  // Nodes where 2d + y != n, y < 1, or (n even and y < 2).
  std::int64_t violations = 0;
  bool complete = true;
  std::optional<ErrorCode> error;
};

inline constexpr std::int64_t kDefaultRule1NodeBudget = 5'000'000;

// Traverses every Rule-1-only play (all legal Rule 1 exchanges, not just the
// Maximum Principle one) with canonical deduplication. Throws DomainError
// when the initial set already holds dominoes.
Rule1Report rule1_only_enumerate(const PieceSet& initial,
                                 std::int64_t node_budget = kDefaultRule1NodeBudget);

}  // namespace chipgame::search
