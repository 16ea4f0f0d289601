#include <doctest.h>

#include <httplib.h>

#include <thread>

#include "chipgame/http_api.hpp"
#include "temp_dir.hpp"

using namespace chipgame;
using namespace chipgame::service;

namespace {

// A live server on an ephemeral loopback port for the duration of a test.
struct LiveServer {
  TempDir dir;
  SessionStore store{dir.path()};
  httplib::Server server;
  std::thread thread;
  int port = 0;

  LiveServer() {
    register_routes(server, store);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~LiveServer() {
    server.stop();
    thread.join();
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

Json body(const httplib::Result& r) { return Json::parse(r->body); }

}  // namespace

TEST_CASE("http: full session round trip") {
  LiveServer live;
  auto cli = live.client();

  auto health = cli.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);

  auto created = cli.Post("/sessions",
                          R"({"players":4,"initial":{"chips":[4,3,1]},"deadline":"2026-01-01T00:15:00Z"})",
                          "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  Json session = body(created);
  const std::string id = session.at("id");
  CHECK(session.at("status") == "running");
  CHECK(session.at("verdict").at("solvable") == true);
  CHECK(session.at("verdict").at("witness").at("id") == "M");

  auto got = cli.Get("/sessions/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  CHECK(body(got).at("current") == session.at("current"));

  auto plan = cli.Get("/sessions/" + id + "/plan");
  REQUIRE(plan);
  CHECK(plan->status == 200);
  CHECK(body(plan).at("cost") == 8);

  // Follow suggestions to survival.
  int steps = 0;
  for (;;) {
    auto sg = cli.Get("/sessions/" + id + "/suggestion");
    REQUIRE(sg);
    REQUIRE(sg->status == 200);
    Json s = body(sg);
    if (s.at("exchange").is_null()) break;
    if (steps == 0) {
      CHECK(s.at("rationale") == "opening");
      CHECK(s.at("remainingPlanCost") == 8);
    }
    Json req{{"exchange", s.at("exchange")}};
    auto rec = cli.Post("/sessions/" + id + "/exchanges", req.dump(), "application/json");
    REQUIRE(rec);
    REQUIRE(rec->status == 200);
    ++steps;
  }
  CHECK(steps == 8);
  CHECK(body(cli.Get("/sessions/" + id)).at("status") == "survived");

  auto undo = cli.Post("/sessions/" + id + "/undo", "", "application/json");
  REQUIRE(undo);
  CHECK(undo->status == 200);
  CHECK(body(undo).at("status") == "running");
}

TEST_CASE("http: error mapping") {
  LiveServer live;
  auto cli = live.client();

  auto missing = cli.Get("/sessions/nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(body(missing).at("code") == "UnknownSession");

  auto bad_json = cli.Post("/sessions", "{", "application/json");
  REQUIRE(bad_json);
  CHECK(bad_json->status == 400);
  CHECK(body(bad_json).at("code") == "BadRequest");

  auto invalid = cli.Post("/sessions", R"({"players":4,"initial":{"chips":[5,3,1]}})",
                          "application/json");
  REQUIRE(invalid);
  CHECK(invalid->status == 400);
  CHECK(body(invalid).at("code") == "InvalidConfig");

  auto flagged = cli.Post("/sessions",
                          R"({"players":4,"initial":{"chips":[0,0,0],"jokers":3,"dominoes":2},"nonstandard":true})",
                          "application/json");
  REQUIRE(flagged);
  REQUIRE(flagged->status == 201);
  const std::string id = body(flagged).at("id");

  auto illegal =
      cli.Post("/sessions/" + id + "/exchanges", R"({"exchange":{"rule":2}})", "application/json");
  REQUIRE(illegal);
  CHECK(illegal->status == 409);
  CHECK(body(illegal).at("code") == "IllegalExchange");
  CHECK(body(illegal).at("message").get<std::string>().find("3 dominoes") != std::string::npos);

  auto nothing = cli.Post("/sessions/" + id + "/undo", "", "application/json");
  REQUIRE(nothing);
  CHECK(nothing->status == 409);
  CHECK(body(nothing).at("code") == "NothingToUndo");

  auto malformed = cli.Post("/sessions/" + id + "/exchanges",
                            R"({"exchange":{"rule":1,"colors":["C1","C1"]}})", "application/json");
  REQUIRE(malformed);
  CHECK(malformed->status == 400);
}

TEST_CASE("http: status codes for domain errors") {
  CHECK(http_status(ErrorCode::UnknownSession) == 404);
  CHECK(http_status(ErrorCode::InvalidConfig) == 400);
  CHECK(http_status(ErrorCode::IllegalExchange) == 409);
  CHECK(http_status(ErrorCode::NothingToUndo) == 409);
  CHECK(http_status(ErrorCode::SessionNotRunning) == 409);
}
