#include "chipgame/reports.hpp"

namespace chipgame {

namespace {

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json triples(const std::vector<search::ChipTriple>& ts) {
  Json out = Json::array();
  for (const auto& t : ts) out.push_back(t.counts);
  return out;
}

}  // namespace

std::string triple_string(const std::array<int, 3>& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

Json to_json(const theory::SolvabilityVerdict& v) {
  Json witness = nullptr;
  if (v.witness)
    witness = Json{{"id", std::string(theory::to_string(v.witness->id))},
                   {"counts", v.witness->counts}};
  return Json{{"solvable", v.solvable},
              {"witness", witness},
              {"method", std::string(theory::to_string(v.method))}};
}

Json to_json(const theory::CostReport& r) {
  return Json{{"players", r.players},
              {"scenario", std::string(theory::to_string(r.scenario))},
              {"initial", to_json(r.initial)},
              {"formulaCost", r.formula_cost},
              {"planCost", r.plan_cost},
              {"policyCost", optional_int(r.policy_cost)},
              {"cap", optional_int(r.cap)},
              {"m", optional_int(r.m)},
              {"r", optional_int(r.r)},
              {"q", optional_int(r.q)}};
}

Json to_json(const search::SearchResult& r) {
  return Json{{"status", std::string(search::to_string(r.status))},
              {"cost", optional_int(r.cost)},
              {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)},
              {"nodesExpanded", r.nodes_expanded},
              {"frontierPeak", r.frontier_peak},
              {"capViolations", r.cap_violations}};
}

Json to_json(const search::SearchBudget& b) {
  return Json{{"maxCost", b.max_cost},
              {"maxNodes", b.max_nodes},
              {"jokerCap", b.joker_cap},
              {"canonicalize", b.canonicalize},
              {"dominance", b.dominance}};
}

Json to_json(const search::MinimalSufficientReport& r) {
  return Json{{"maxTotalChips", r.max_total_chips},
              {"triplesChecked", r.triples_checked},
              {"canonicalChecked", r.canonical_checked},
              {"sufficient", triples(r.sufficient)},
              {"minimal", triples(r.minimal)},
              {"counterexamples", triples(r.counterexamples)},
              {"confirmed", r.confirms_theorem()}};
}

Json to_json(const search::Rule1Report& r) {
  Json terminals = Json::array();
  for (const auto& t : r.terminals) terminals.push_back(to_json(t));
  return Json{{"instance", to_json(r.initial)},
              {"n", r.n},
              {"nodes", r.nodes},
              {"terminals", terminals},
              {"maxDominoes", r.max_dominoes},
              {"violations", r.violations},
              {"complete", r.complete},
              {"error", r.error ? Json(std::string(to_string(*r.error))) : Json(nullptr)}};
}

}  // namespace chipgame
