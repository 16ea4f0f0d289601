#pragma once

// JSON wire format shared by the CLI document mode, the HTTP service and the
// session files:
//   PieceSet  {"chips":[a,b,c],"jokers":x,"dominoes":d}
//   Exchange  {"rule":1,"colors":["C1","C2"],"jokers":1} | {"rule":2}
//   script    [{"before":..,"exchange":..,"after":..,"phase":".."}, ...]
// Parsing failures throw GameError(BadRequest).

#include <json.hpp>

#include "chipgame/game.hpp"

namespace chipgame {

using Json = nlohmann::json;

Json to_json(const PieceSet& s);
Json to_json(const Exchange& ex);
Json to_json(const ScriptStep& step);
// The bare step array.
Json to_json(const ExchangeScript& script);

PieceSet piece_set_from_json(const Json& j);
Exchange exchange_from_json(const Json& j);
// Rebuilds a script from a step array by replaying its exchanges from
// `start`; recorded before/after values must agree with the replay.
ExchangeScript script_from_json(const PieceSet& start, const Json& steps);

// Parses "a,b,c[,x[,d]]" into a PieceSet. Throws BadRequest.
PieceSet parse_distribution(std::string_view text);

}  // namespace chipgame
