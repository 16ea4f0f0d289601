#include "chipgame/http_api.hpp"

#include <httplib.h>

namespace chipgame::service {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::InvalidConfig:
    case ErrorCode::BadRequest:
    case ErrorCode::DomainError: return 400;
    case ErrorCode::IllegalExchange:
    case ErrorCode::NothingToUndo:
    case ErrorCode::SessionNotRunning:
    case ErrorCode::NotSolvable:
    case ErrorCode::TrivialGame:
    case ErrorCode::StepBudgetExceeded:
    case ErrorCode::StateSpaceTooLarge: return 409;
  }
  return 500;
}

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, http_status(code), Json{{"code", std::string(to_string(code))}, {"message", message}});
}

Json parse_body(const httplib::Request& req) {
  Json body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object())
    throw GameError(ErrorCode::BadRequest, "request body must be a JSON object");
  return body;
}

// Wraps a handler so domain errors become {code, message} responses.
template <typename F>
httplib::Server::Handler guarded(F handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const GameError& e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception& e) {
      send_json(res, 500, Json{{"code", "InternalError"}, {"message", e.what()}});
    }
  };
}

GameConfig config_from_body(const Json& body) {
  if (!body.contains("players") || !body.at("players").is_number_integer())
    throw GameError(ErrorCode::InvalidConfig, "\"players\" must be an integer");
  if (!body.contains("initial"))
    throw GameError(ErrorCode::InvalidConfig, "\"initial\" piece set is required");
  GameConfig config;
  config.players = body.at("players").get<int>();
  try {
    config.initial = piece_set_from_json(body.at("initial"));
  } catch (const GameError& e) {
    throw GameError(ErrorCode::InvalidConfig, e.what());
  }
  return config;
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, Json{{"status", "ok"}});
  });

  server.Post("/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    std::optional<std::string> deadline;
    if (body.contains("deadline") && !body.at("deadline").is_null()) {
      if (!body.at("deadline").is_string())
        throw GameError(ErrorCode::InvalidConfig, "\"deadline\" must be a timestamp string");
      deadline = body.at("deadline").get<std::string>();
    }
    const bool nonstandard = body.value("nonstandard", false);
    send_json(res, 201, to_json(store.create(config_from_body(body), deadline, nonstandard)));
  }));

  server.Get(R"(/sessions/([^/]+))",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, to_json(store.get(req.matches[1])));
             }));

  server.Post(R"(/sessions/([^/]+)/exchanges)",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
                const Json body = parse_body(req);
                if (!body.contains("exchange"))
                  throw GameError(ErrorCode::BadRequest, "\"exchange\" is required");
                Exchange ex = exchange_from_json(body.at("exchange"));
                send_json(res, 200, to_json(store.record_exchange(req.matches[1], ex)));
              }));

  server.Post(R"(/sessions/([^/]+)/undo)",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, to_json(store.undo(req.matches[1])));
              }));

  server.Get(R"(/sessions/([^/]+)/suggestion)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, to_json(store.suggestion(req.matches[1])));
             }));

  server.Get(R"(/sessions/([^/]+)/plan)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               ExchangeScript plan = store.plan(req.matches[1]);
               send_json(res, 200,
                         Json{{"start", to_json(plan.start())},
                              {"cost", plan.cost()},
                              {"script", to_json(plan)}});
             }));
}

int serve(SessionStore& store, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, store);
  if (!server.listen(host, port)) return 1;
  return 0;
}

}  // namespace chipgame::service
