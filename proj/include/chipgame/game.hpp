#pragma once

// Pooled game state, the two exchange rules in joker form, and the
// deterministic cooperative policy (Maximum Principle, Rule 1 before Rule 2).

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chipgame/error.hpp"

namespace chipgame {

enum class Color : std::uint8_t { C1 = 0, C2 = 1, C3 = 2 };

inline constexpr std::array<Color, 3> kColors{Color::C1, Color::C2, Color::C3};

constexpr std::size_t index(Color c) { return static_cast<std::size_t>(c); }

std::string_view to_string(Color c);
std::optional<Color> parse_color(std::string_view s);

// A set of distinct colors, at most three.
class ColorSet {
 public:
  constexpr ColorSet() = default;
  constexpr ColorSet(std::initializer_list<Color> colors) {
    for (Color c : colors) insert(c);
  }
  static constexpr ColorSet from_bits(std::uint8_t bits) {
    ColorSet s;
    s.bits_ = bits & 0b111;
    return s;
  }

  constexpr void insert(Color c) { bits_ |= std::uint8_t(1u << index(c)); }
  constexpr bool contains(Color c) const { return bits_ & (1u << index(c)); }
  constexpr int size() const {
    return (bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1);
  }
  constexpr std::uint8_t bits() const { return bits_; }

  std::vector<Color> colors() const;

  constexpr auto operator<=>(const ColorSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

// Pooled holdings of the whole group: chips per color, jokers and dominoes.
struct PieceSet {
  std::array<int, 3> chips{0, 0, 0};
  int jokers = 0;
  int dominoes = 0;

  int chip(Color c) const { return chips[index(c)]; }
  int colored() const { return chips[0] + chips[1] + chips[2]; }
  // y in the conservation law n = 2d + y: every chip, jokers included.
  int total_chips() const { return colored() + jokers; }
  int total_pieces() const { return total_chips() + dominoes; }
  int represented_colors() const;
  bool valid() const;

  // Multiset containment, colors matched label-for-label.
  bool contains(const PieceSet& other) const;

  PieceSet operator+(const PieceSet& other) const;

  auto operator<=>(const PieceSet&) const = default;
};

std::string to_string(const PieceSet& s);

struct PieceSetHash {
  std::size_t operator()(const PieceSet& s) const noexcept {
    std::size_t h = 0;
    for (int v : {s.chips[0], s.chips[1], s.chips[2], s.jokers, s.dominoes})
      h = h * 1000003u ^ static_cast<std::size_t>(v);
    return h;
  }
};

// One Rule 1 instance (named colors plus 3 - r jokers) or a Rule 2 instance.
class Exchange {
 public:
  static Exchange rule1(ColorSet colors) { return Exchange(1, colors); }
  static Exchange rule2() { return Exchange(2, {}); }

  int rule() const { return rule_; }
  bool is_rule1() const { return rule_ == 1; }
  bool is_rule2() const { return rule_ == 2; }
  ColorSet colors() const { return colors_; }
  int jokers_used() const { return is_rule1() ? 3 - colors_.size() : 0; }

  auto operator<=>(const Exchange&) const = default;

 private:
  Exchange(int rule, ColorSet colors) : rule_(rule), colors_(colors) {}

  int rule_;
  ColorSet colors_;
};

std::string to_string(const Exchange& ex);

struct GameConfig {
  int players = 0;
  PieceSet initial;

  // Every player starts with two colored chips and nothing else.
  bool is_standard() const {
    return initial.jokers == 0 && initial.dominoes == 0 &&
           initial.colored() == 2 * players;
  }
};

// Throws InvalidConfig on p < 1, negative counts, or a non-standard initial
// set when allow_nonstandard is false.
void validate(const GameConfig& config, bool allow_nonstandard);

enum class Phase : std::uint8_t { Opening, Collapse, Rule2, Mining, Final };

std::string_view to_string(Phase p);
std::optional<Phase> parse_phase(std::string_view s);

struct ScriptStep {
  PieceSet before;
  Exchange exchange;
  PieceSet after;
  Phase phase;

  bool operator==(const ScriptStep&) const = default;
};

// An ordered, replayable sequence of exchanges. Steps always chain: each
// step's `after` is the next step's `before`.
class ExchangeScript {
 public:
  explicit ExchangeScript(PieceSet start = {}) : start_(start) {}

  const PieceSet& start() const { return start_; }
  const PieceSet& final_state() const {
    return steps_.empty() ? start_ : steps_.back().after;
  }
  const std::vector<ScriptStep>& steps() const { return steps_; }
  int cost() const { return static_cast<int>(steps_.size()); }
  bool empty() const { return steps_.empty(); }

  // Applies `ex` to the current final state; throws IllegalExchange.
  const PieceSet& push(const Exchange& ex, Phase phase);

  // Appends the exchanges of `other` replayed from this script's final
  // state, keeping their phase tags. `other` need not start at the same
  // state; only its exchanges are reused.
  void extend(const ExchangeScript& other);

  void set_phase(std::size_t i, Phase phase) { steps_.at(i).phase = phase; }

  bool operator==(const ExchangeScript&) const = default;

 private:
  PieceSet start_;
  std::vector<ScriptStep> steps_;
};

// Throws IllegalExchange when any step fails to replay or the chain breaks.
void validate_script(const ExchangeScript& script);

// --- rules -----------------------------------------------------------------

bool is_legal(const PieceSet& state, const Exchange& ex);

PieceSet apply(const PieceSet& state, const Exchange& ex);

std::vector<Exchange> legal_exchanges(const PieceSet& state);

// Rule 1 with the fewest jokers: one chip of every represented color (up to
// three) plus 3 - r jokers. Never returns Rule 2.
std::optional<Exchange> max_principle_exchange(const PieceSet& state);

struct PolicyStep {
  PieceSet next;
  Exchange exchange;
};

// nullopt means halt.
std::optional<PolicyStep> cooperative_step(const PieceSet& state);

enum class StopReason : std::uint8_t { Goal, Halt };

std::string_view to_string(StopReason r);

struct PolicyRun {
  ExchangeScript script;
  StopReason stop;
};

inline int default_max_steps(int players) { return 50 * players + 100; }

// Iterates cooperative_step until dominoes >= players or no move remains.
// Throws StepBudgetExceeded when max_steps is reached first.
PolicyRun run_cooperative(const GameConfig& config, int max_steps);
inline PolicyRun run_cooperative(const GameConfig& config) {
  return run_cooperative(config, default_max_steps(config.players));
}

// Retags every step of a script from its shape: Rule 2 steps are `rule2`;
// Rule 1 steps after the last Rule 2 are `final`, those between Rule 2s are
// `mining`; before the first Rule 2 they are `opening` when colored chips are
// spent and `collapse` when only jokers are.
void annotate_phases(ExchangeScript& script);

// --- color symmetry --------------------------------------------------------

// perm[i] is the color that moves to position i.
using ColorPermutation = std::array<Color, 3>;

std::array<ColorPermutation, 6> all_permutations();

PieceSet permute(const PieceSet& s, const ColorPermutation& perm);
Exchange permute(const Exchange& ex, const ColorPermutation& perm);

// Chip counts sorted nonincreasing; jokers and dominoes unchanged.
PieceSet canonicalize(const PieceSet& s);

// The (stable) permutation that canonicalize applies to `s`.
ColorPermutation canonical_permutation(const PieceSet& s);

// Maps an exchange expressed in the canonical frame of `s` back to the
// original color labels.
Exchange from_canonical_frame(const Exchange& ex, const PieceSet& s);

}  // namespace chipgame
