#pragma once

#include <string>

#include "chipgame/session.hpp"

namespace httplib {
class Server;
}

namespace chipgame::service {

// Environment variable naming the session data directory.
inline constexpr const char* kDataDirEnv = "CHIPGAME_DATA_DIR";

// HTTP status used for each error code.
int http_status(ErrorCode code);

// Installs the session routes on `server`:
//   POST /sessions                     {players, initial, deadline?, nonstandard?}
//   GET  /sessions/{id}
//   POST /sessions/{id}/exchanges      {exchange}
//   POST /sessions/{id}/undo
//   GET  /sessions/{id}/suggestion
//   GET  /sessions/{id}/plan
//   GET  /healthz
// Errors are {code, message}.
void register_routes(httplib::Server& server, SessionStore& store);

// Blocks serving on host:port until the server is stopped.
int serve(SessionStore& store, const std::string& host, int port);

}  // namespace chipgame::service
