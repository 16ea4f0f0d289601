#include "chipgame/search.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "chipgame/theory.hpp"

namespace chipgame::search {

SearchGoal SearchGoal::reach_dominoes(int target) {
  if (target < 1) throw GameError(ErrorCode::DomainError, "target dominoes must be >= 1");
  PieceSet t;
  t.dominoes = target;
  return SearchGoal(Kind::ReachDominoes, t);
}

SearchGoal SearchGoal::reach_subset(const PieceSet& target) {
  if (!target.valid()) throw GameError(ErrorCode::DomainError, "target counts must be >= 0");
  return SearchGoal(Kind::ReachSubset, canonicalize(target));
}

bool SearchGoal::satisfied(const PieceSet& state) const {
  if (kind_ == Kind::ReachDominoes) return state.dominoes >= target_.dominoes;
  return canonicalize(state).contains(target_);
}

int SearchGoal::lower_bound(const PieceSet& state) const {
  return std::max(0, target_.dominoes - state.dominoes);
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Optimal: return "optimal";
    case SearchStatus::UnreachableWithinBudget: return "unreachable-within-budget";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

SearchBudget default_budget(const PieceSet& initial, const SearchGoal& goal) {
  SearchBudget budget;
  budget.max_nodes = kDefaultMaxNodes;
  budget.joker_cap = initial.total_pieces() + 8;
  budget.max_cost = 50 * (goal.target_dominoes() + 1) + 100;
  if (goal.kind() != SearchGoal::Kind::ReachDominoes) return budget;

  const int target = goal.target_dominoes();
  if (initial.dominoes >= target) {
    budget.max_cost = 1;
  } else if (target <= 3) {
    // Rule 2 needs three dominoes, so every path to the goal is exactly
    // target - d Rule 1 exchanges.
    budget.max_cost = target - initial.dominoes;
  } else {
    try {
      budget.max_cost = std::max(1, theory::survival_plan({target, initial}).cost());
    } catch (const GameError&) {
      // No plan: keep the generic ceiling.
    }
  }
  return budget;
}

namespace {

struct Frontier {
  int f;
  int h;
  int g;
  PieceSet state;
};

// Min-heap order: f, then h, then state.
struct FrontierAfter {
  bool operator()(const Frontier& a, const Frontier& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.state > b.state;
  }
};

struct Visit {
  int g;
  std::optional<PieceSet> parent;
  std::optional<Exchange> via;
  bool closed = false;
};

ExchangeScript rebuild_witness(const PieceSet& initial, const PieceSet& goal_state,
                               const std::unordered_map<PieceSet, Visit, PieceSetHash>& seen,
                               bool canonical) {
  std::vector<Exchange> path;
  PieceSet cur = goal_state;
  while (true) {
    const Visit& v = seen.at(cur);
    if (!v.parent) break;
    path.push_back(*v.via);
    cur = *v.parent;
  }
  std::reverse(path.begin(), path.end());

  // Path exchanges are written in each parent's canonical frame; map them
  // back onto the caller's color labels while replaying.
  ExchangeScript script(initial);
  for (const Exchange& ex : path) {
    const PieceSet& at = script.final_state();
    script.push(canonical ? from_canonical_frame(ex, at) : ex, Phase::Opening);
  }
  annotate_phases(script);
  return script;
}

}  // namespace

SearchResult min_exchanges(const PieceSet& initial, const SearchGoal& goal,
                           const SearchBudget& budget) {
  if (!budget.valid())
    throw GameError(ErrorCode::DomainError, "search budget values must all be positive");
  if (!initial.valid())
    throw GameError(ErrorCode::DomainError, "initial counts must be nonnegative");

  auto normal = [&](const PieceSet& s) { return budget.canonicalize ? canonicalize(s) : s; };

  SearchResult result;
  std::unordered_map<PieceSet, Visit, PieceSetHash> seen;
  std::priority_queue<Frontier, std::vector<Frontier>, FrontierAfter> frontier;
  std::vector<std::pair<PieceSet, int>> expanded;  // for dominance checks

  const PieceSet start = normal(initial);
  const int h0 = goal.lower_bound(start);
  if (h0 > budget.max_cost) return result;
  seen.emplace(start, Visit{0, std::nullopt, std::nullopt});
  frontier.push({h0, h0, 0, start});
  result.frontier_peak = 1;

  while (!frontier.empty()) {
    const Frontier node = frontier.top();
    frontier.pop();
    Visit& visit = seen.at(node.state);
    if (visit.closed || node.g > visit.g) continue;

    if (goal.satisfied(node.state)) {
      result.status = SearchStatus::Optimal;
      result.cost = node.g;
      result.witness = rebuild_witness(initial, node.state, seen, budget.canonicalize);
      return result;
    }
    if (result.nodes_expanded >= budget.max_nodes) {
      result.status = SearchStatus::BudgetExhausted;
      return result;
    }
    visit.closed = true;
    ++result.nodes_expanded;

    if (budget.dominance) {
      const bool dominated = std::any_of(expanded.begin(), expanded.end(), [&](const auto& e) {
        return e.second <= node.g && e.first.contains(node.state);
      });
      if (dominated) continue;
      expanded.emplace_back(node.state, node.g);
    }

    for (const Exchange& ex : legal_exchanges(node.state)) {
      const PieceSet child = normal(apply(node.state, ex));
      if (child.jokers > budget.joker_cap) {
        ++result.cap_violations;
        continue;
      }
      const int g = node.g + 1;
      const int h = goal.lower_bound(child);
      if (g + h > budget.max_cost) continue;
      auto it = seen.find(child);
      if (it != seen.end() && (it->second.closed || it->second.g <= g)) continue;
      seen.insert_or_assign(child, Visit{g, node.state, ex});
      frontier.push({g + h, h, g, child});
    }
    result.frontier_peak =
        std::max<std::int64_t>(result.frontier_peak, static_cast<std::int64_t>(frontier.size()));
  }
  return result;
}

SearchResult min_exchanges(const PieceSet& initial, const SearchGoal& goal) {
  return min_exchanges(initial, goal, default_budget(initial, goal));
}

bool achieves_d3(const PieceSet& initial, const SearchBudget& budget) {
  if (initial.dominoes >= 3) return true;
  return min_exchanges(initial, SearchGoal::reach_dominoes(3), budget).status ==
         SearchStatus::Optimal;
}

bool achieves_d3(const PieceSet& initial) {
  return achieves_d3(initial, default_budget(initial, SearchGoal::reach_dominoes(3)));
}

// --- sweeps ----------------------------------------------------------------

bool MinimalSufficientReport::confirms_theorem() const {
  const std::vector<ChipTriple> expected{{{3, 2, 2}}, {{3, 3, 1}}};
  return counterexamples.empty() &&
         (max_total_chips < 7 ? minimal.empty() : minimal == expected);
}

namespace {

bool contains_m_or_n(std::array<int, 3> sorted) {
  return (sorted[0] >= 3 && sorted[1] >= 3 && sorted[2] >= 1) ||
         (sorted[0] >= 3 && sorted[1] >= 2 && sorted[2] >= 2);
}

bool dominated_by(const ChipTriple& small, const ChipTriple& big) {
  for (std::size_t i = 0; i < 3; ++i)
    if (small.counts[i] > big.counts[i]) return false;
  return true;
}

}  // namespace

MinimalSufficientReport verify_minimal_sufficient(int max_total_chips) {
  if (max_total_chips < 0)
    throw GameError(ErrorCode::DomainError, "max_total_chips must be nonnegative");
  MinimalSufficientReport report;
  report.max_total_chips = max_total_chips;
  std::set<ChipTriple> canonical, sufficient;

  for (int a = 0; a <= max_total_chips; ++a) {
    for (int b = 0; a + b <= max_total_chips; ++b) {
      for (int c = 0; a + b + c <= max_total_chips; ++c) {
        PieceSet start;
        start.chips = {a, b, c};
        const ChipTriple sorted{canonicalize(start).chips};
        const bool reached = achieves_d3(start);
        ++report.triples_checked;
        canonical.insert(sorted);
        if (reached) sufficient.insert(sorted);
        if (reached != contains_m_or_n(sorted.counts))
          report.counterexamples.push_back({{a, b, c}});
      }
    }
  }
  report.canonical_checked = static_cast<std::int64_t>(canonical.size());
  report.sufficient.assign(sufficient.begin(), sufficient.end());
  // Sorted triples: t' is a sub-multiset of t up to relabeling iff t' <= t
  // componentwise.
  for (const ChipTriple& t : report.sufficient) {
    const bool has_smaller = std::any_of(sufficient.begin(), sufficient.end(),
                                         [&](const ChipTriple& o) {
                                           return o != t && dominated_by(o, t);
                                         });
    if (!has_smaller) report.minimal.push_back(t);
  }
  return report;
}

Rule1Report rule1_only_enumerate(const PieceSet& initial, std::int64_t node_budget) {
  if (initial.dominoes != 0)
    throw GameError(ErrorCode::DomainError, "Rule-1-only enumeration starts without dominoes");
  if (!initial.valid()) throw GameError(ErrorCode::DomainError, "counts must be nonnegative");

  Rule1Report report;
  report.initial = initial;
  report.n = initial.total_chips();
  const int n = report.n;

  std::unordered_set<PieceSet, PieceSetHash> visited;
  std::set<PieceSet> terminals;
  std::vector<PieceSet> stack{canonicalize(initial)};
  visited.insert(stack.back());

  while (!stack.empty()) {
    const PieceSet state = stack.back();
    stack.pop_back();
    if (report.nodes >= node_budget) {
      report.complete = false;
      report.error = ErrorCode::StateSpaceTooLarge;
      break;
    }
    ++report.nodes;

    const int y = state.total_chips();
    if (2 * state.dominoes + y != n || (n >= 1 && y < 1) || (n % 2 == 0 && n >= 1 && y < 2))
      ++report.violations;
    report.max_dominoes = std::max(report.max_dominoes, state.dominoes);

    bool terminal = true;
    for (const Exchange& ex : legal_exchanges(state)) {
      if (!ex.is_rule1()) continue;
      terminal = false;
      const PieceSet child = canonicalize(apply(state, ex));
      if (visited.insert(child).second) stack.push_back(child);
    }
    if (terminal) terminals.insert(state);
  }
  report.terminals.assign(terminals.begin(), terminals.end());
  return report;
}

}  // namespace chipgame::search
