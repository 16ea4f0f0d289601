#include <doctest.h>

#include <algorithm>

#include "chipgame/game.hpp"
#include "chipgame/serialize.hpp"
#include "oracle.hpp"

using namespace chipgame;
using C = Color;

namespace {

PieceSet ps(int a, int b, int c, int x = 0, int d = 0) { return PieceSet{{a, b, c}, x, d}; }

oracle::State to_oracle(const PieceSet& s) {
  return {s.chips[0], s.chips[1], s.chips[2], s.jokers, s.dominoes};
}

oracle::Move to_oracle(const Exchange& ex) {
  if (ex.is_rule2()) return {2, {0, 0, 0, 0}};
  std::array<int, 4> bag{};
  for (Color c : ex.colors().colors()) bag[index(c)] = 1;
  bag[3] = ex.jokers_used();
  return {1, bag};
}

// Every state with at most `limit` pieces in total.
std::vector<PieceSet> small_states(int limit) {
  std::vector<PieceSet> out;
  for (int a = 0; a <= limit; ++a)
    for (int b = 0; a + b <= limit; ++b)
      for (int c = 0; a + b + c <= limit; ++c)
        for (int x = 0; a + b + c + x <= limit; ++x)
          for (int d = 0; a + b + c + x + d <= limit; ++d) out.push_back(ps(a, b, c, x, d));
  return out;
}

}  // namespace

TEST_CASE("apply: rule examples") {
  CHECK(apply(ps(1, 1, 1), Exchange::rule1({C::C1, C::C2, C::C3})) == ps(0, 0, 0, 1, 1));
  CHECK(apply(ps(0, 0, 0, 0, 3), Exchange::rule2()) == ps(0, 0, 0, 7, 0));
  CHECK(apply(ps(0, 0, 0, 3, 0), Exchange::rule1({})) == ps(0, 0, 0, 1, 1));
}

TEST_CASE("apply: illegal exchanges name the missing resource") {
  try {
    apply(ps(0, 0, 0, 0, 2), Exchange::rule2());
    FAIL("expected IllegalExchange");
  } catch (const GameError& e) {
    CHECK(e.code() == ErrorCode::IllegalExchange);
    CHECK(std::string(e.what()).find("3 dominoes") != std::string::npos);
  }
  CHECK_THROWS_AS(apply(ps(1, 0, 0, 1), Exchange::rule1({C::C1})), GameError);
  CHECK_THROWS_AS(apply(ps(0, 1, 1, 1), Exchange::rule1({C::C1, C::C2})), GameError);
}

TEST_CASE("legal_exchanges: examples") {
  CHECK(legal_exchanges(ps(1, 1, 0)).empty());
  auto got = legal_exchanges(ps(1, 1, 1, 1));
  std::vector<Exchange> want{Exchange::rule1({C::C1, C::C2, C::C3}),
                             Exchange::rule1({C::C1, C::C2}), Exchange::rule1({C::C1, C::C3}),
                             Exchange::rule1({C::C2, C::C3})};
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  CHECK(got == want);
  CHECK(legal_exchanges(ps(0, 0, 0, 0, 3)) == std::vector<Exchange>{Exchange::rule2()});
}

TEST_CASE("legal_exchanges and apply agree with the brute-force oracle") {
  for (const PieceSet& s : small_states(9)) {
    std::vector<oracle::Move> got;
    for (const Exchange& ex : legal_exchanges(s)) {
      got.push_back(to_oracle(ex));
      REQUIRE(is_legal(s, ex));
      CHECK(to_oracle(apply(s, ex)) == oracle::step(to_oracle(s), to_oracle(ex)));
    }
    std::sort(got.begin(), got.end());
    CHECK_MESSAGE(got == oracle::moves(to_oracle(s)), to_string(s));
  }
}

TEST_CASE("conservation: one Rule 1 keeps 2d + y, Rule 2 adds 1 to it") {
  for (const PieceSet& s : small_states(8))
    for (const Exchange& ex : legal_exchanges(s)) {
      PieceSet t = apply(s, ex);
      int before = 2 * s.dominoes + s.total_chips();
      int after = 2 * t.dominoes + t.total_chips();
      CHECK(after == before + (ex.is_rule2() ? 1 : 0));
      if (ex.is_rule2()) {
        CHECK(t.dominoes == s.dominoes - 3);
        CHECK(t.jokers == s.jokers + 7);
        CHECK(t.chips == s.chips);
      }
    }
}

TEST_CASE("color symmetry: permuting colors commutes with the rules") {
  for (const PieceSet& s : small_states(8))
    for (const auto& perm : all_permutations()) {
      PieceSet ps_ = permute(s, perm);
      auto legal = legal_exchanges(s);
      auto legal_p = legal_exchanges(ps_);
      REQUIRE(legal.size() == legal_p.size());
      for (const Exchange& ex : legal) {
        Exchange exp = permute(ex, perm);
        REQUIRE(is_legal(ps_, exp));
        CHECK(apply(ps_, exp) == permute(apply(s, ex), perm));
      }
    }
}

TEST_CASE("exchanges commute when both orders are legal") {
  for (const PieceSet& s : small_states(8)) {
    auto legal = legal_exchanges(s);
    for (const Exchange& a : legal)
      for (const Exchange& b : legal) {
        PieceSet sa = apply(s, a);
        PieceSet sb = apply(s, b);
        if (is_legal(sa, b) && is_legal(sb, a)) CHECK(apply(sa, b) == apply(sb, a));
      }
  }
}

TEST_CASE("max_principle_exchange: examples") {
  CHECK(max_principle_exchange(ps(1, 1, 0, 2)) == Exchange::rule1({C::C1, C::C2}));
  CHECK(max_principle_exchange(ps(2, 2, 2, 5)) == Exchange::rule1({C::C1, C::C2, C::C3}));
  CHECK_FALSE(max_principle_exchange(ps(1, 0, 0, 1)).has_value());
}

TEST_CASE("max_principle_exchange uses every represented color") {
  for (const PieceSet& s : small_states(8)) {
    auto ex = max_principle_exchange(s);
    int r = std::min(3, s.represented_colors());
    bool feasible = s.jokers >= 3 - r;
    REQUIRE(ex.has_value() == feasible);
    if (ex) {
      CHECK(ex->colors().size() == r);
      CHECK(ex->jokers_used() == 3 - r);
      CHECK(is_legal(s, *ex));
    }
  }
}

TEST_CASE("cooperative_step: Rule 1 before Rule 2") {
  auto a = cooperative_step(ps(1, 0, 0, 1, 3));
  REQUIRE(a);
  CHECK(a->exchange == Exchange::rule2());
  CHECK(a->next == ps(1, 0, 0, 8, 0));

  auto b = cooperative_step(ps(1, 1, 1, 0, 3));
  REQUIRE(b);
  CHECK(b->exchange == Exchange::rule1({C::C1, C::C2, C::C3}));

  CHECK_FALSE(cooperative_step(ps(0, 0, 0, 2, 2)).has_value());
}

TEST_CASE("run_cooperative: examples") {
  PolicyRun worst = run_cooperative({4, ps(4, 3, 1)});
  CHECK(worst.stop == StopReason::Goal);
  CHECK(worst.script.cost() == 8);
  CHECK(worst.script.final_state().dominoes == 4);

  PolicyRun best = run_cooperative({6, ps(4, 4, 4)});
  CHECK(best.stop == StopReason::Goal);
  CHECK(best.script.cost() == 10);
  CHECK(best.script.final_state().dominoes == 6);

  PolicyRun stuck = run_cooperative({4, ps(8, 0, 0)});
  CHECK(stuck.stop == StopReason::Halt);
  CHECK(stuck.script.cost() == 0);
}

TEST_CASE("run_cooperative: step budget") {
  CHECK_THROWS_AS(run_cooperative({6, ps(4, 4, 4)}, 3), GameError);
  try {
    run_cooperative({6, ps(4, 4, 4)}, 3);
  } catch (const GameError& e) {
    CHECK(e.code() == ErrorCode::StepBudgetExceeded);
  }
}

TEST_CASE("run_cooperative: deterministic and replayable") {
  for (int p = 4; p <= 9; ++p) {
    GameConfig cfg{p, ps(2 * p - 4, 3, 1)};
    PolicyRun a = run_cooperative(cfg);
    PolicyRun b = run_cooperative(cfg);
    CHECK(to_json(a.script).dump() == to_json(b.script).dump());
    CHECK_NOTHROW(validate_script(a.script));
  }
}

TEST_CASE("canonicalize: examples and soundness") {
  CHECK(canonicalize(ps(1, 3, 2)) == ps(3, 2, 1));
  CHECK(canonicalize(ps(0, 0, 0, 4, 2)) == ps(0, 0, 0, 4, 2));
  for (const PieceSet& s : small_states(7)) {
    PieceSet c = canonicalize(s);
    CHECK(canonicalize(c) == c);
    CHECK(permute(s, canonical_permutation(s)) == c);
    // Moves in the canonical frame map back to legal moves with the same effect.
    for (const Exchange& ex : legal_exchanges(c)) {
      Exchange back = from_canonical_frame(ex, s);
      REQUIRE(is_legal(s, back));
      CHECK(canonicalize(apply(s, back)) == canonicalize(apply(c, ex)));
    }
  }
}

TEST_CASE("validate: configs") {
  CHECK_NOTHROW(validate({4, ps(4, 3, 1)}, false));
  CHECK_THROWS_AS(validate({4, ps(5, 3, 1)}, false), GameError);
  CHECK_NOTHROW(validate({4, ps(5, 3, 1)}, true));
  CHECK_THROWS_AS(validate({0, ps(0, 0, 0)}, true), GameError);
  CHECK_THROWS_AS(validate({2, ps(-1, 3, 2)}, true), GameError);
}

TEST_CASE("annotate_phases tags the policy run") {
  PolicyRun run = run_cooperative({4, ps(4, 3, 1)});
  const auto& st = run.script.steps();
  REQUIRE(st.size() == 8);
  CHECK(st[0].phase == Phase::Opening);
  CHECK(st[3].phase == Phase::Rule2);
  CHECK(st.back().phase == Phase::Final);
}

TEST_CASE("validate_script rejects broken chains") {
  ExchangeScript s(ps(1, 1, 1));
  s.push(Exchange::rule1({C::C1, C::C2, C::C3}), Phase::Opening);
  CHECK_NOTHROW(validate_script(s));
  CHECK_THROWS_AS(s.push(Exchange::rule2(), Phase::Rule2), GameError);
}
