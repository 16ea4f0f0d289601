#include "chipgame/session.hpp"

#include "chipgame/reports.hpp"

#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

namespace chipgame::service {

namespace fs = std::filesystem;

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Setup: return "setup";
    case SessionStatus::Running: return "running";
    case SessionStatus::Survived: return "survived";
    case SessionStatus::Stuck: return "stuck";
  }
  return "?";
}

namespace {

std::optional<SessionStatus> parse_status(std::string_view s) {
  for (SessionStatus st : {SessionStatus::Setup, SessionStatus::Running,
                           SessionStatus::Survived, SessionStatus::Stuck})
    if (to_string(st) == s) return st;
  return std::nullopt;
}

std::string random_id() {
  thread_local std::mt19937_64 engine{std::random_device{}()};
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << engine();
  return os.str();
}

bool safe_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
  return true;
}

[[noreturn]] void unknown(const std::string& id) {
  throw GameError(ErrorCode::UnknownSession, "no session with id \"" + id + "\"");
}

Json plan_json(const ExchangeScript& plan) {
  return Json{{"start", to_json(plan.start())},
              {"cost", plan.cost()},
              {"script", to_json(plan)}};
}

}  // namespace

std::string utc_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const std::time_t t = system_clock::to_time_t(now);
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

SessionStatus compute_status(const GameConfig& config, const PieceSet& current) {
  if (current.dominoes >= config.players) return SessionStatus::Survived;
  if (legal_exchanges(current).empty()) return SessionStatus::Stuck;
  return SessionStatus::Running;
}

void check_replay(const Session& s) {
  PieceSet cur = s.config.initial;
  for (const auto& entry : s.history) cur = apply(cur, entry.exchange);
  if (cur != s.current)
    throw GameError(ErrorCode::IllegalExchange,
                    "session " + s.id + ": history replays to " + to_string(cur) +
                        " but current is " + to_string(s.current));
  if (compute_status(s.config, s.current) != s.status)
    throw GameError(ErrorCode::IllegalExchange,
                    "session " + s.id + ": stored status disagrees with its state");
}

Json to_json(const Session& s) {
  Json history = Json::array();
  for (const auto& h : s.history)
    history.push_back(Json{{"exchange", chipgame::to_json(h.exchange)}, {"timestamp", h.timestamp}});
  return Json{
      {"id", s.id},
      {"players", s.config.players},
      {"initial", chipgame::to_json(s.config.initial)},
      {"nonstandard", s.nonstandard},
      {"current", chipgame::to_json(s.current)},
      {"history", history},
      {"status", std::string(to_string(s.status))},
      {"deadline", s.deadline ? Json(*s.deadline) : Json(nullptr)},
      {"planCache", s.plan_cache ? plan_json(*s.plan_cache) : Json(nullptr)},
      {"verdict", chipgame::to_json(s.verdict)},
      {"trivial", s.trivial},
      {"createdAt", s.created_at},
  };
}

Json to_json(const Suggestion& s) {
  return Json{
      {"exchange", s.exchange ? chipgame::to_json(*s.exchange) : Json(nullptr)},
      {"rationale", s.rationale ? Json(std::string(to_string(*s.rationale))) : Json(nullptr)},
      {"remainingPlanCost", s.remaining_plan_cost ? Json(*s.remaining_plan_cost) : Json(nullptr)},
  };
}

Session session_from_json(const Json& j) {
  try {
    Session s;
    s.id = j.at("id").get<std::string>();
    s.config.players = j.at("players").get<int>();
    s.config.initial = piece_set_from_json(j.at("initial"));
    s.nonstandard = j.value("nonstandard", false);
    s.current = piece_set_from_json(j.at("current"));
    for (const Json& h : j.at("history"))
      s.history.push_back({exchange_from_json(h.at("exchange")), h.at("timestamp").get<std::string>()});
    auto status = parse_status(j.at("status").get<std::string>());
    if (!status) throw GameError(ErrorCode::BadRequest, "unknown session status");
    s.status = *status;
    if (!j.at("deadline").is_null()) s.deadline = j.at("deadline").get<std::string>();
    const Json& plan = j.at("planCache");
    if (!plan.is_null())
      s.plan_cache = script_from_json(piece_set_from_json(plan.at("start")), plan.at("script"));
    const Json& v = j.at("verdict");
    s.verdict.solvable = v.at("solvable").get<bool>();
    s.verdict.method = v.at("method").get<std::string>() == "search"
                           ? theory::VerdictMethod::Search
                           : theory::VerdictMethod::SubsetCheck;
    if (!v.at("witness").is_null())
      s.verdict.witness = v.at("witness").at("id").get<std::string>() == "M" ? theory::kSetM
                                                                             : theory::kSetN;
    s.trivial = j.at("trivial").get<bool>();
    s.created_at = j.value("createdAt", "");
    return s;
  } catch (const Json::exception& e) {
    throw GameError(ErrorCode::BadRequest, std::string("malformed session document: ") + e.what());
  }
}

// --- store -----------------------------------------------------------------

SessionStore::SessionStore(fs::path dir, StoreOptions options)
    : dir_(std::move(dir)), options_(std::move(options)) {
  if (!options_.clock) options_.clock = utc_now;
  if (!options_.id_generator) options_.id_generator = random_id;
  fs::create_directories(dir_);
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    try {
      std::ifstream in(entry.path());
      Session s = session_from_json(Json::parse(in));
      check_replay(s);
      auto slot = std::make_shared<Slot>();
      slot->session = std::move(s);
      slots_.emplace(slot->session.id, std::move(slot));
    } catch (const std::exception& e) {
      load_errors_.push_back(entry.path().filename().string() + ": " + e.what());
    }
  }
}

fs::path SessionStore::path_for(const std::string& id) const { return dir_ / (id + ".json"); }

void SessionStore::persist(const Session& s) const {
  const fs::path target = path_for(s.id);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_json(s).dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed to write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = slots_.find(id);
  if (it == slots_.end()) unknown(id);
  return it->second;
}

Session SessionStore::create(const GameConfig& config, std::optional<std::string> deadline,
                             bool nonstandard) {
  validate(config, nonstandard);
  Session s;
  s.config = config;
  s.nonstandard = nonstandard;
  s.current = config.initial;
  s.deadline = std::move(deadline);
  s.verdict = theory::solvable(config.initial);
  s.trivial = config.players <= 3;
  s.status = compute_status(config, s.current);
  s.created_at = options_.clock();

  std::unique_lock lock(map_mutex_);
  do {
    s.id = options_.id_generator();
  } while (!safe_id(s.id) || slots_.count(s.id));
  persist(s);
  auto slot = std::make_shared<Slot>();
  slot->session = s;
  slots_.emplace(s.id, std::move(slot));
  return s;
}

Session SessionStore::get(const std::string& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  return slot->session;
}

Session SessionStore::record_exchange(const std::string& id, const Exchange& ex) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  const Session& cur = slot->session;
  if (cur.status != SessionStatus::Running)
    throw GameError(ErrorCode::SessionNotRunning,
                    "session " + id + " is " + std::string(to_string(cur.status)));
  Session next = cur;
  next.current = apply(cur.current, ex);
  next.history.push_back({ex, options_.clock()});
  next.status = compute_status(next.config, next.current);
  next.plan_cache.reset();
  persist(next);
  slot->session = std::move(next);
  return slot->session;
}

Session SessionStore::undo(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  const Session& cur = slot->session;
  if (cur.history.empty())
    throw GameError(ErrorCode::NothingToUndo, "session " + id + " has no exchanges to undo");
  Session next = cur;
  next.history.pop_back();
  next.current = next.config.initial;
  for (const auto& h : next.history) next.current = apply(next.current, h.exchange);
  next.status = compute_status(next.config, next.current);
  next.plan_cache.reset();
  persist(next);
  slot->session = std::move(next);
  return slot->session;
}

Suggestion SessionStore::suggestion(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  const Session& s = slot->session;
  Suggestion out;
  if (s.status != SessionStatus::Running) return out;
  auto step = cooperative_step(s.current);
  if (!step) return out;
  out.exchange = step->exchange;

  // Tag the suggested exchange within the whole game: the recorded history
  // followed by the policy's continuation.
  ExchangeScript game(s.config.initial);
  for (const auto& h : s.history) game.push(h.exchange, Phase::Opening);
  game.push(step->exchange, Phase::Opening);
  try {
    GameConfig rest{s.config.players, game.final_state()};
    game.extend(run_cooperative(rest).script);
  } catch (const GameError&) {
  }
  annotate_phases(game);
  out.rationale = game.steps()[s.history.size()].phase;

  try {
    ExchangeScript plan = theory::survival_plan({s.config.players, s.current});
    out.remaining_plan_cost = plan.cost();
    Session next = s;
    next.plan_cache = std::move(plan);
    persist(next);
    slot->session = std::move(next);
  } catch (const GameError&) {
  }
  return out;
}

ExchangeScript SessionStore::plan(const std::string& id) {
  auto slot = find(id);
  std::lock_guard lock(slot->mutex);
  const Session& s = slot->session;
  if (s.plan_cache && s.plan_cache->start() == s.current) return *s.plan_cache;
  ExchangeScript plan = theory::survival_plan({s.config.players, s.current});
  Session next = s;
  next.plan_cache = plan;
  persist(next);
  slot->session = std::move(next);
  return plan;
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(map_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : slots_) out.push_back(id);
  return out;
}

}  // namespace chipgame::service
