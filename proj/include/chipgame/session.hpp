#pragma once

// Live-session tracking for a facilitator: one pooled game per session,
// persisted as one JSON document per session in a data directory.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "chipgame/game.hpp"
#include "chipgame/serialize.hpp"
#include "chipgame/theory.hpp"

namespace chipgame::service {

enum class SessionStatus : std::uint8_t { Setup, Running, Survived, Stuck };

std::string_view to_string(SessionStatus s);

struct HistoryEntry {
  Exchange exchange;
  std::string timestamp;
};

struct Session {
  std::string id;
  GameConfig config;
  bool nonstandard = false;
  PieceSet current;
  std::vector<HistoryEntry> history;
  SessionStatus status = SessionStatus::Setup;
  std::optional<std::string> deadline;
  std::optional<ExchangeScript> plan_cache;
  theory::SolvabilityVerdict verdict;
  bool trivial = false;
  std::string created_at;
};

struct Suggestion {
  std::optional<Exchange> exchange;
  std::optional<Phase> rationale;
  std::optional<int> remaining_plan_cost;
};

// survived <=> dominoes >= p; stuck <=> no legal exchange and not survived.
SessionStatus compute_status(const GameConfig& config, const PieceSet& current);

// Throws IllegalExchange when the history does not replay from the initial
// set, or the replay disagrees with `current`.
void check_replay(const Session& s);

Json to_json(const Session& s);
Json to_json(const Suggestion& s);
Session session_from_json(const Json& j);

struct StoreOptions {
  // Returns an ISO-8601 UTC timestamp.
  std::function<std::string()> clock;
  std::function<std::string()> id_generator;
};

std::string utc_now();

// Thread-safe store. Mutations of one session are serialized; reads copy a
// consistent snapshot. Every mutation is written to disk (write temp file,
// then rename) before it becomes visible in memory, so a failed call leaves
// both the file and the in-memory session untouched.
class SessionStore {
 public:
  // Loads every *.json session in `dir` (created if missing). Sessions that
  // fail replay integrity are skipped and listed in load_errors().
  explicit SessionStore(std::filesystem::path dir, StoreOptions options = {});

  Session create(const GameConfig& config, std::optional<std::string> deadline,
                 bool nonstandard = false);
  Session get(const std::string& id) const;
  Session record_exchange(const std::string& id, const Exchange& ex);
  Session undo(const std::string& id);
  Suggestion suggestion(const std::string& id);
  // The remaining plan from the current state (cached on the session).
  ExchangeScript plan(const std::string& id);

  std::vector<std::string> ids() const;
  const std::vector<std::string>& load_errors() const { return load_errors_; }
  const std::filesystem::path& directory() const { return dir_; }

 private:
  struct Slot {
    mutable std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  void persist(const Session& s) const;
  std::filesystem::path path_for(const std::string& id) const;

  std::filesystem::path dir_;
  StoreOptions options_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
  std::vector<std::string> load_errors_;
};

}  // namespace chipgame::service
