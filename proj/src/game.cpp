#include "chipgame/game.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace chipgame {

std::string_view to_string(Color c) {
  switch (c) {
    case Color::C1: return "C1";
    case Color::C2: return "C2";
    case Color::C3: return "C3";
  }
  return "?";
}

std::optional<Color> parse_color(std::string_view s) {
  for (Color c : kColors)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::vector<Color> ColorSet::colors() const {
  std::vector<Color> out;
  for (Color c : kColors)
    if (contains(c)) out.push_back(c);
  return out;
}

int PieceSet::represented_colors() const {
  return static_cast<int>(
      std::count_if(chips.begin(), chips.end(), [](int n) { return n > 0; }));
}

bool PieceSet::valid() const {
  return std::all_of(chips.begin(), chips.end(), [](int n) { return n >= 0; }) &&
         jokers >= 0 && dominoes >= 0;
}

bool PieceSet::contains(const PieceSet& other) const {
  for (std::size_t i = 0; i < 3; ++i)
    if (chips[i] < other.chips[i]) return false;
  return jokers >= other.jokers && dominoes >= other.dominoes;
}

PieceSet PieceSet::operator+(const PieceSet& other) const {
  PieceSet out = *this;
  for (std::size_t i = 0; i < 3; ++i) out.chips[i] += other.chips[i];
  out.jokers += other.jokers;
  out.dominoes += other.dominoes;
  return out;
}

std::string to_string(const PieceSet& s) {
  std::ostringstream os;
  os << "(" << s.chips[0] << "," << s.chips[1] << "," << s.chips[2]
     << " x=" << s.jokers << " d=" << s.dominoes << ")";
  return os.str();
}

std::string to_string(const Exchange& ex) {
  if (ex.is_rule2()) return "Rule2";
  std::string out = "Rule1{";
  bool first = true;
  for (Color c : ex.colors().colors()) {
    if (!first) out += ",";
    out += to_string(c);
    first = false;
  }
  out += "}";
  if (ex.jokers_used() > 0) out += "+" + std::to_string(ex.jokers_used()) + "j";
  return out;
}

void validate(const GameConfig& config, bool allow_nonstandard) {
  if (config.players < 1)
    throw GameError(ErrorCode::InvalidConfig, "players must be positive");
  if (!config.initial.valid())
    throw GameError(ErrorCode::InvalidConfig, "piece counts must be nonnegative");
  if (!allow_nonstandard && !config.is_standard())
    throw GameError(ErrorCode::InvalidConfig,
                    "non-standard initial set " + to_string(config.initial) +
                        " for " + std::to_string(config.players) +
                        " players (expected 2p colored chips); flag it as non-standard");
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Opening: return "opening";
    case Phase::Collapse: return "collapse";
    case Phase::Rule2: return "rule2";
    case Phase::Mining: return "mining";
    case Phase::Final: return "final";
  }
  return "?";
}

std::optional<Phase> parse_phase(std::string_view s) {
  for (Phase p : {Phase::Opening, Phase::Collapse, Phase::Rule2, Phase::Mining,
                  Phase::Final})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

std::string_view to_string(StopReason r) {
  return r == StopReason::Goal ? "goal" : "halt";
}

// --- scripts ---------------------------------------------------------------

const PieceSet& ExchangeScript::push(const Exchange& ex, Phase phase) {
  PieceSet before = final_state();
  PieceSet after = apply(before, ex);
  steps_.push_back({before, ex, after, phase});
  return steps_.back().after;
}

void ExchangeScript::extend(const ExchangeScript& other) {
  for (const auto& step : other.steps()) push(step.exchange, step.phase);
}

void validate_script(const ExchangeScript& script) {
  PieceSet cur = script.start();
  for (std::size_t i = 0; i < script.steps().size(); ++i) {
    const auto& step = script.steps()[i];
    if (step.before != cur)
      throw GameError(ErrorCode::IllegalExchange,
                      "script step " + std::to_string(i) + " does not chain");
    PieceSet after = apply(step.before, step.exchange);
    if (after != step.after)
      throw GameError(ErrorCode::IllegalExchange,
                      "script step " + std::to_string(i) + " records a wrong result");
    cur = after;
  }
}

// --- rules -----------------------------------------------------------------

namespace {

std::string missing_resource(const PieceSet& state, const Exchange& ex) {
  if (ex.is_rule2())
    return "Rule 2 requires 3 dominoes, have " + std::to_string(state.dominoes);
  for (Color c : ex.colors().colors())
    if (state.chip(c) < 1)
      return "Rule 1 requires a " + std::string(to_string(c)) + " chip, have none";
  return "Rule 1 requires " + std::to_string(ex.jokers_used()) + " jokers, have " +
         std::to_string(state.jokers);
}

}  // namespace

bool is_legal(const PieceSet& state, const Exchange& ex) {
  if (ex.is_rule2()) return state.dominoes >= 3;
  for (Color c : ex.colors().colors())
    if (state.chip(c) < 1) return false;
  return state.jokers >= ex.jokers_used();
}

PieceSet apply(const PieceSet& state, const Exchange& ex) {
  if (!is_legal(state, ex))
    throw GameError(ErrorCode::IllegalExchange,
                    to_string(ex) + " on " + to_string(state) + ": " +
                        missing_resource(state, ex));
  PieceSet out = state;
  if (ex.is_rule2()) {
    out.dominoes -= 3;
    out.jokers += 7;
    return out;
  }
  for (Color c : ex.colors().colors()) out.chips[index(c)] -= 1;
  out.jokers += 1 - ex.jokers_used();
  out.dominoes += 1;
  return out;
}

std::vector<Exchange> legal_exchanges(const PieceSet& state) {
  std::vector<Exchange> out;
  // Subsets by bitmask; order is deterministic (larger color sets last).
  for (std::uint8_t bits = 0; bits < 8; ++bits) {
    Exchange ex = Exchange::rule1(ColorSet::from_bits(bits));
    if (is_legal(state, ex)) out.push_back(ex);
  }
  if (state.dominoes >= 3) out.push_back(Exchange::rule2());
  return out;
}

std::optional<Exchange> max_principle_exchange(const PieceSet& state) {
  ColorSet represented;
  for (Color c : kColors)
    if (state.chip(c) > 0) represented.insert(c);
  Exchange ex = Exchange::rule1(represented);
  if (!is_legal(state, ex)) return std::nullopt;
  return ex;
}

std::optional<PolicyStep> cooperative_step(const PieceSet& state) {
  if (auto ex = max_principle_exchange(state)) return PolicyStep{apply(state, *ex), *ex};
  if (state.dominoes >= 3) {
    Exchange ex = Exchange::rule2();
    return PolicyStep{apply(state, ex), ex};
  }
  return std::nullopt;
}

PolicyRun run_cooperative(const GameConfig& config, int max_steps) {
  if (max_steps <= 0)
    throw GameError(ErrorCode::DomainError, "max_steps must be positive");
  ExchangeScript script(config.initial);
  while (script.final_state().dominoes < config.players) {
    auto step = cooperative_step(script.final_state());
    if (!step) {
      annotate_phases(script);
      return {std::move(script), StopReason::Halt};
    }
    if (script.cost() >= max_steps)
      throw GameError(ErrorCode::StepBudgetExceeded,
                      "cooperative policy did not finish within " +
                          std::to_string(max_steps) + " steps");
    script.push(step->exchange, Phase::Opening);
  }
  annotate_phases(script);
  return {std::move(script), StopReason::Goal};
}

void annotate_phases(ExchangeScript& script) {
  const auto& steps = script.steps();
  std::optional<std::size_t> first_rule2, last_rule2;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].exchange.is_rule2()) {
      if (!first_rule2) first_rule2 = i;
      last_rule2 = i;
    }
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Exchange& ex = steps[i].exchange;
    Phase phase;
    if (ex.is_rule2())
      phase = Phase::Rule2;
    else if (!first_rule2 || i < *first_rule2)
      phase = ex.colors().size() > 0 ? Phase::Opening : Phase::Collapse;
    else if (i > *last_rule2)
      phase = Phase::Final;
    else
      phase = Phase::Mining;
    script.set_phase(i, phase);
  }
}

// --- color symmetry --------------------------------------------------------

std::array<ColorPermutation, 6> all_permutations() {
  std::array<ColorPermutation, 6> out{};
  ColorPermutation p = kColors;
  std::size_t i = 0;
  do {
    out[i++] = p;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

PieceSet permute(const PieceSet& s, const ColorPermutation& perm) {
  PieceSet out = s;
  for (std::size_t i = 0; i < 3; ++i) out.chips[i] = s.chips[index(perm[i])];
  return out;
}

Exchange permute(const Exchange& ex, const ColorPermutation& perm) {
  if (ex.is_rule2()) return ex;
  ColorSet out;
  for (std::size_t i = 0; i < 3; ++i)
    if (ex.colors().contains(perm[i])) out.insert(kColors[i]);
  return Exchange::rule1(out);
}

ColorPermutation canonical_permutation(const PieceSet& s) {
  ColorPermutation perm = kColors;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](Color a, Color b) { return s.chip(a) > s.chip(b); });
  return perm;
}

PieceSet canonicalize(const PieceSet& s) {
  return permute(s, canonical_permutation(s));
}

Exchange from_canonical_frame(const Exchange& ex, const PieceSet& s) {
  if (ex.is_rule2()) return ex;
  ColorPermutation perm = canonical_permutation(s);
  ColorSet out;
  for (std::size_t i = 0; i < 3; ++i)
    if (ex.colors().contains(kColors[i])) out.insert(perm[i]);
  return Exchange::rule1(out);
}

}  // namespace chipgame
