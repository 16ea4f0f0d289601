#include <doctest.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "chipgame/session.hpp"
#include "temp_dir.hpp"

using namespace chipgame;
using namespace chipgame::service;
using C = Color;

namespace {

PieceSet ps(int a, int b, int c, int x = 0, int d = 0) { return PieceSet{{a, b, c}, x, d}; }

StoreOptions fixed_options() {
  auto counter = std::make_shared<int>(0);
  return {[] { return std::string("2026-01-01T00:00:00.000Z"); },
          [counter] { return "s" + std::to_string(++*counter); }};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const GameError& e) {
    return e.code();
  }
  FAIL("expected GameError");
  return ErrorCode::BadRequest;
}

}  // namespace

TEST_CASE("create: verdicts, trivial flag, status") {
  TempDir dir;
  SessionStore store(dir.path(), fixed_options());

  Session a = store.create({4, ps(4, 3, 1)}, std::nullopt);
  CHECK(a.status == SessionStatus::Running);
  CHECK(a.verdict.solvable);
  CHECK(a.verdict.witness->id == theory::SufficientSetId::M);
  CHECK(std::filesystem::exists(dir.path() / (a.id + ".json")));

  Session b = store.create({4, ps(8, 0, 0)}, std::nullopt);
  CHECK_FALSE(b.verdict.solvable);
  CHECK(b.status == SessionStatus::Stuck);

  Session c = store.create({3, ps(3, 2, 1)}, std::nullopt);
  CHECK(c.trivial);

  CHECK(code_of([&] { store.create({4, ps(5, 3, 1)}, std::nullopt); }) ==
        ErrorCode::InvalidConfig);
  CHECK_NOTHROW(store.create({4, ps(5, 3, 1)}, std::nullopt, true));
}

TEST_CASE("record_exchange, undo and status") {
  TempDir dir;
  SessionStore store(dir.path(), fixed_options());
  Session s = store.create({1, ps(1, 1, 0, 0, 0)}, std::nullopt, true);
  CHECK(s.status == SessionStatus::Stuck);

  Session r = store.create({2, ps(1, 1, 1, 0, 0)}, "2026-01-01T00:15:00Z", true);
  CHECK(r.deadline == "2026-01-01T00:15:00Z");
  Session after = store.record_exchange(r.id, Exchange::rule1({C::C1, C::C2, C::C3}));
  CHECK(after.current == ps(0, 0, 0, 1, 1));
  CHECK(after.history.size() == 1);

  CHECK(store.undo(r.id).current == ps(1, 1, 1));
  CHECK(code_of([&] { store.undo(r.id); }) == ErrorCode::NothingToUndo);

  Session two = store.create({4, ps(0, 0, 0, 3, 2)}, std::nullopt, true);
  CHECK(code_of([&] { store.record_exchange(two.id, Exchange::rule2()); }) ==
        ErrorCode::IllegalExchange);

  Session one = store.create({1, ps(1, 1, 1)}, std::nullopt, true);
  Session won = store.record_exchange(one.id, Exchange::rule1({C::C1, C::C2, C::C3}));
  CHECK(won.status == SessionStatus::Survived);
  CHECK(code_of([&] { store.record_exchange(one.id, Exchange::rule1({})); }) ==
        ErrorCode::SessionNotRunning);
  CHECK(store.undo(one.id).status == SessionStatus::Running);

  CHECK(code_of([&] { store.get("missing"); }) == ErrorCode::UnknownSession);
}

TEST_CASE("failed record_exchange leaves the file byte-identical") {
  TempDir dir;
  SessionStore store(dir.path(), fixed_options());
  Session s = store.create({4, ps(4, 3, 1)}, std::nullopt);
  store.record_exchange(s.id, Exchange::rule1({C::C1, C::C2, C::C3}));
  const auto file = dir.path() / (s.id + ".json");
  const std::string before = slurp(file);
  CHECK_THROWS(store.record_exchange(s.id, Exchange::rule2()));
  CHECK_THROWS(store.record_exchange(s.id, Exchange::rule1({})));
  CHECK(slurp(file) == before);
  CHECK(store.get(s.id).history.size() == 1);
}

TEST_CASE("suggestions") {
  TempDir dir;
  SessionStore store(dir.path(), fixed_options());

  Session w = store.create({4, ps(4, 3, 1)}, std::nullopt);
  Suggestion first = store.suggestion(w.id);
  REQUIRE(first.exchange);
  CHECK(*first.exchange == Exchange::rule1({C::C1, C::C2, C::C3}));
  CHECK(first.rationale == Phase::Opening);
  CHECK(first.remaining_plan_cost == 8);

  Session r2 = store.create({4, ps(1, 0, 0, 1, 3)}, std::nullopt, true);
  Suggestion s2 = store.suggestion(r2.id);
  CHECK(s2.exchange == Exchange::rule2());
  CHECK(s2.rationale == Phase::Rule2);

  Session one = store.create({1, ps(1, 1, 1)}, std::nullopt, true);
  store.record_exchange(one.id, Exchange::rule1({C::C1, C::C2, C::C3}));
  CHECK_FALSE(store.suggestion(one.id).exchange.has_value());
}

TEST_CASE("following suggestions survives in exactly the plan cost") {
  TempDir dir;
  SessionStore store(dir.path(), fixed_options());
  for (int p = 4; p <= 9; ++p)
    for (PieceSet init : {theory::worst_case_initial(p), ps(p, p - 2, 2)}) {
      Session s = store.create({p, init}, std::nullopt);
      const int cost = theory::survival_plan({p, init}).cost();
      int steps = 0;
      while (store.get(s.id).status == SessionStatus::Running) {
        Suggestion sg = store.suggestion(s.id);
        REQUIRE(sg.exchange);
        store.record_exchange(s.id, *sg.exchange);
        ++steps;
      }
      CHECK(store.get(s.id).status == SessionStatus::Survived);
      CHECK(steps == cost);
    }
}

TEST_CASE("plan is cached and starts at the current state") {
  TempDir dir;
  SessionStore store(dir.path(), fixed_options());
  Session s = store.create({6, ps(4, 4, 4)}, std::nullopt);
  ExchangeScript plan = store.plan(s.id);
  CHECK(plan.cost() == 10);
  CHECK(store.get(s.id).plan_cache.has_value());
  store.record_exchange(s.id, plan.steps()[0].exchange);
  CHECK_FALSE(store.get(s.id).plan_cache.has_value());
  CHECK(store.plan(s.id).start() == store.get(s.id).current);
  CHECK(store.plan(s.id).cost() == 9);
}

TEST_CASE("reload replays history and skips corrupt documents") {
  TempDir dir;
  std::string id;
  {
    SessionStore store(dir.path(), fixed_options());
    Session s = store.create({4, ps(4, 3, 1)}, "2026-01-01T00:15:00Z");
    id = s.id;
    store.record_exchange(id, Exchange::rule1({C::C1, C::C2, C::C3}));
    store.record_exchange(id, Exchange::rule1({C::C1, C::C2}));
    store.plan(id);
  }
  {
    std::ofstream(dir.path() / "junk.json") << "{ not json";
    Json doc = Json::parse(slurp(dir.path() / (id + ".json")));
    doc["id"] = "tampered";
    doc["current"]["dominoes"] = 3;
    std::ofstream(dir.path() / "tampered.json") << doc.dump();
  }
  SessionStore reloaded(dir.path(), fixed_options());
  Session s = reloaded.get(id);
  CHECK(s.history.size() == 2);
  CHECK(s.current == ps(2, 1, 0, 1, 2));
  CHECK(s.deadline == "2026-01-01T00:15:00Z");
  CHECK(s.plan_cache.has_value());
  CHECK(reloaded.load_errors().size() == 2);
  CHECK(code_of([&] { reloaded.get("tampered"); }) == ErrorCode::UnknownSession);
}

TEST_CASE("concurrent mutations on one session are serialized") {
  TempDir dir;
  SessionStore store(dir.path());
  Session s = store.create({40, ps(30, 30, 20)}, std::nullopt);
  std::atomic<int> ok{0};
  std::atomic<int> torn{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&] {
      for (int i = 0; i < 5; ++i) {
        try {
          store.record_exchange(s.id, Exchange::rule1({C::C1, C::C2, C::C3}));
          ++ok;
        } catch (const GameError&) {
        }
        try {
          check_replay(store.get(s.id));
        } catch (const GameError&) {
          ++torn;
        }
      }
    });
  for (auto& th : threads) th.join();
  CHECK(torn == 0);
  Session end = store.get(s.id);
  CHECK(ok == 20);
  CHECK(static_cast<int>(end.history.size()) == ok.load());
  CHECK(end.current == ps(30 - ok, 30 - ok, 20 - ok, ok, ok));
}
