#pragma once

// Machine-readable documents for verdicts, cost reports and search results.

#include "chipgame/search.hpp"
#include "chipgame/serialize.hpp"
#include "chipgame/theory.hpp"

namespace chipgame {

Json to_json(const theory::SolvabilityVerdict& v);
Json to_json(const theory::CostReport& r);
Json to_json(const search::SearchResult& r);
Json to_json(const search::SearchBudget& b);
Json to_json(const search::MinimalSufficientReport& r);
Json to_json(const search::Rule1Report& r);

// "(a,b,c)" for chip triples.
std::string triple_string(const std::array<int, 3>& t);

}  // namespace chipgame
