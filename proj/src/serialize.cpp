#include "chipgame/serialize.hpp"

#include <charconv>

namespace chipgame {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw GameError(ErrorCode::BadRequest, what);
}

int count_field(const Json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  auto n = v.get<std::int64_t>();
  if (n < 0 || n > 1'000'000) bad(std::string("field \"") + key + "\" out of range");
  return static_cast<int>(n);
}

}  // namespace

Json to_json(const PieceSet& s) {
  return Json{{"chips", s.chips}, {"jokers", s.jokers}, {"dominoes", s.dominoes}};
}

Json to_json(const Exchange& ex) {
  if (ex.is_rule2()) return Json{{"rule", 2}};
  Json colors = Json::array();
  for (Color c : ex.colors().colors()) colors.push_back(std::string(to_string(c)));
  return Json{{"rule", 1}, {"colors", colors}, {"jokers", ex.jokers_used()}};
}

Json to_json(const ScriptStep& step) {
  return Json{{"before", to_json(step.before)},
              {"exchange", to_json(step.exchange)},
              {"after", to_json(step.after)},
              {"phase", std::string(to_string(step.phase))}};
}

Json to_json(const ExchangeScript& script) {
  Json out = Json::array();
  for (const auto& step : script.steps()) out.push_back(to_json(step));
  return out;
}

PieceSet piece_set_from_json(const Json& j) {
  if (!j.is_object()) bad("piece set must be an object");
  if (!j.contains("chips") || !j.at("chips").is_array() || j.at("chips").size() != 3)
    bad("\"chips\" must be an array of three counts");
  PieceSet s;
  for (std::size_t i = 0; i < 3; ++i) {
    const Json& v = j.at("chips")[i];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
        v.get<std::int64_t>() > 1'000'000)
      bad("chip counts must be nonnegative integers");
    s.chips[i] = v.get<int>();
  }
  s.jokers = j.contains("jokers") ? count_field(j, "jokers") : 0;
  s.dominoes = j.contains("dominoes") ? count_field(j, "dominoes") : 0;
  return s;
}

Exchange exchange_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rule") || !j.at("rule").is_number_integer())
    bad("exchange needs an integer \"rule\"");
  int rule = j.at("rule").get<int>();
  if (rule == 2) return Exchange::rule2();
  if (rule != 1) bad("rule must be 1 or 2");
  ColorSet colors;
  if (j.contains("colors")) {
    if (!j.at("colors").is_array()) bad("\"colors\" must be an array");
    for (const Json& c : j.at("colors")) {
      if (!c.is_string()) bad("colors are strings C1, C2, C3");
      auto color = parse_color(c.get<std::string>());
      if (!color) bad("unknown color " + c.get<std::string>());
      if (colors.contains(*color)) bad("colors in one Rule 1 must be distinct");
      colors.insert(*color);
    }
  }
  Exchange ex = Exchange::rule1(colors);
  if (j.contains("jokers") && count_field(j, "jokers") != ex.jokers_used())
    bad("Rule 1 with " + std::to_string(colors.size()) + " colors uses exactly " +
        std::to_string(ex.jokers_used()) + " jokers");
  return ex;
}

ExchangeScript script_from_json(const PieceSet& start, const Json& steps) {
  if (!steps.is_array()) bad("script must be an array");
  ExchangeScript script(start);
  for (const Json& step : steps) {
    if (!step.is_object() || !step.contains("exchange")) bad("script step needs an exchange");
    Phase phase = Phase::Opening;
    if (step.contains("phase")) {
      auto p = step.at("phase").is_string()
                   ? parse_phase(step.at("phase").get<std::string>())
                   : std::nullopt;
      if (!p) bad("unknown phase tag");
      phase = *p;
    }
    if (step.contains("before") && piece_set_from_json(step.at("before")) != script.final_state())
      bad("script steps do not chain");
    script.push(exchange_from_json(step.at("exchange")), phase);
    if (step.contains("after") && piece_set_from_json(step.at("after")) != script.final_state())
      bad("script step records a wrong result");
  }
  return script;
}

PieceSet parse_distribution(std::string_view text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view field = text.substr(pos, comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    int value = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size() || value < 0)
      bad("distribution must look like a,b,c[,x[,d]] with nonnegative integers, got \"" +
          std::string(text) + "\"");
    values.push_back(value);
    pos = comma + 1;
  }
  if (values.size() < 3 || values.size() > 5)
    bad("distribution must have 3 to 5 fields, got " + std::to_string(values.size()));
  PieceSet s;
  s.chips = {values[0], values[1], values[2]};
  if (values.size() > 3) s.jokers = values[3];
  if (values.size() > 4) s.dominoes = values[4];
  return s;
}

}  // namespace chipgame
