#include "vpr/protocol.hpp"

#include <random>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "vpr/errors.hpp"
#include "vpr/persistence.hpp"
#include "vpr/prompt.hpp"

namespace vpr {

using nlohmann::json;

namespace {

struct FrameError {
  std::string code;
  std::string message;
};

json error_frame(const std::string& code, const std::string& message) {
  return {{"kind", "error"}, {"code", code}, {"message", message}};
}

template <class T>
T opt(const json& f, const char* key, T fallback) {
  if (!f.contains(key)) return fallback;
  try {
    return f.at(key).get<T>();
  } catch (const json::exception&) {
    throw FrameError{"bad_frame", std::string("field '") + key + "' has the wrong type"};
  }
}

std::string required_string(const json& f, const char* key) {
  if (!f.contains(key)) throw FrameError{"bad_frame", std::string("missing field '") + key + "'"};
  if (!f.at(key).is_string()) throw FrameError{"bad_frame", std::string("field '") + key + "' must be a string"};
  return f.at(key).get<std::string>();
}

void check_range(const char* what, long v, long lo, long hi) {
  if (v < lo || v > hi)
    throw FrameError{"config_error", std::string(what) + " must lie in [" + std::to_string(lo) + "," + std::to_string(hi) + "]"};
}

EpisodeConfig config_from_frame(const json& f, EpisodeConfig c) {
  c.env = env_from_string(required_string(f, "env"));
  c.reward_mode = reward_mode_from_string(opt<std::string>(f, "reward_mode", std::string(to_string(c.reward_mode))));
  c.seat = seat_from_string(opt<std::string>(f, "seat", std::string(to_string(c.seat))));
  if (f.contains("opponent")) c.opponent = Policy::from_string(opt<std::string>(f, "opponent", ""));
  c.opponent_random_share = opt<double>(f, "opponent_random_share", c.opponent_random_share);
  const auto verifier = opt<std::string>(f, "verifier", c.verifier.ttt == TttVerifier::mcts ? "mcts" : "minimax");
  if (verifier != "mcts" && verifier != "minimax") throw FrameError{"config_error", "verifier must be mcts or minimax"};
  c.verifier.ttt = verifier == "mcts" ? TttVerifier::mcts : TttVerifier::minimax;
  c.verifier.search.n_simulations = opt<int>(f, "n_simulations", c.verifier.search.n_simulations);
  check_range("n_simulations", c.verifier.search.n_simulations, 1, 200000);
  if (c.opponent.kind() == PolicyKind::mcts_player) check_range("opponent simulations", c.opponent.search().n_simulations, 1, 200000);
  c.mcpr.rollouts = opt<int>(f, "mcpr_rollouts", c.mcpr.rollouts);
  check_range("mcpr_rollouts", c.mcpr.rollouts, 1, 10000);
  if (f.contains("options")) {
    const auto& o = f.at("options");
    if (!o.is_object()) throw FrameError{"bad_frame", "options must be an object"};
    c.options.sudoku_blanks = opt<int>(o, "sudoku_blanks", c.options.sudoku_blanks);
    c.options.mine_rows = opt<int>(o, "mine_rows", c.options.mine_rows);
    c.options.mine_cols = opt<int>(o, "mine_cols", c.options.mine_cols);
    c.options.mine_count = opt<int>(o, "mine_count", c.options.mine_count);
    c.options.mine_flood_fill = opt<bool>(o, "mine_flood_fill", c.options.mine_flood_fill);
  }
  check_range("sudoku_blanks", c.options.sudoku_blanks, 0, 64);
  check_range("mine_rows", c.options.mine_rows, 2, 10);
  check_range("mine_cols", c.options.mine_cols, 2, 10);
  check_range("mine_count", c.options.mine_count, 1, c.options.mine_rows * c.options.mine_cols - 1);
  return c;
}

json strings(const ActionSet& set) {
  json out = json::array();
  for (const auto& a : set) out.push_back(format_action(a));
  return out;
}

json outcome_frame(const Outcome& o) {
  return {{"success", o.success},   {"return", o.ret},         {"completion_rate", o.completion_rate},
          {"forfeit", o.forfeit},   {"truncated", o.truncated}};
}

json state_fields(const std::string& id, const Episode& ep) {
  return {{"kind", "result"},
          {"session", id},
          {"turn", ep.trajectory().length()},
          {"observation", ep.observation()},
          {"legal_actions", strings(ep.legal())},
          {"done", ep.done()}};
}

}  // namespace

SessionManager::SessionManager(ServerOptions opts, Clock clock)
    : opts_(std::move(opts)), clock_(std::move(clock)), id_salt_(std::random_device{}()) {
  if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
  id_salt_ = (id_salt_ << 32) ^ std::random_device{}();
  if (!opts_.prompt_dir.empty())
    for (auto env : {EnvKind::tictactoe, EnvKind::sudoku, EnvKind::minesweeper})
      templates_[env] = load_prompt_template(opts_.prompt_dir, env);
}

std::string SessionManager::new_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(mix64(id_salt_ + ++counter_)));
  return buf;
}

void SessionManager::expire_locked(std::chrono::steady_clock::time_point now) {
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > opts_.idle_timeout) {
      spdlog::debug("session {} expired", it->first);
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

void SessionManager::expire_idle() {
  std::lock_guard lock(mu_);
  expire_locked(clock_());
}

std::size_t SessionManager::live_sessions() {
  std::lock_guard lock(mu_);
  expire_locked(clock_());
  return sessions_.size();
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) {
  std::lock_guard lock(mu_);
  const auto now = clock_();
  expire_locked(now);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw FrameError{"session_not_found", "no live session '" + id + "'"};
  it->second->last_used = now;
  return it->second;
}

json SessionManager::reset(const json& frame) {
  const auto cfg = config_from_frame(frame, opts_.defaults);
  const auto seed = opt<std::uint64_t>(frame, "seed", 0);
  auto episode = std::make_unique<Episode>(cfg, seed);

  std::shared_ptr<Session> session;
  std::string id;
  if (frame.contains("session")) {
    id = required_string(frame, "session");
    session = find(id);
  } else {
    std::lock_guard lock(mu_);
    expire_locked(clock_());
    if (sessions_.size() >= opts_.max_sessions) throw FrameError{"too_many_sessions", "session limit reached"};
    id = new_id();
    session = std::make_shared<Session>();
    session->last_used = clock_();
    sessions_[id] = session;
    spdlog::debug("session {} opened ({})", id, to_string(cfg.env));
  }
  std::lock_guard lock(session->mu);
  session->episode = std::move(episode);
  json out = state_fields(id, *session->episode);
  if (auto it = templates_.find(cfg.env); it != templates_.end())
    out["prompt"] = render_prompt(it->second, *session->episode);
  return out;
}

json SessionManager::step(const json& frame) {
  const auto id = required_string(frame, "session");
  const auto action = required_string(frame, "action");
  auto session = find(id);
  std::lock_guard lock(session->mu);
  auto& ep = *session->episode;
  if (ep.done()) throw FrameError{"episode_done", "episode in session '" + id + "' is over; send reset"};
  const auto r = ep.step_text(action);
  json out = state_fields(id, ep);
  out["verdict"] = {{"valid", r.verdict.valid}, {"oracle_valid_set", strings(r.verdict.oracle_valid_set)}};
  out["reward"] = r.reward;
  out["reward_vpr"] = r.reward_vpr;
  out["forfeit"] = r.forfeit;
  if (r.forfeit) out["error"] = r.error;
  if (r.opponent_reply) out["opponent_reply"] = format_action(*r.opponent_reply);
  if (r.done) out["outcome"] = outcome_frame(ep.trajectory().outcome);
  return out;
}

json SessionManager::handle(const json& frame) {
  try {
    if (!frame.is_object()) return error_frame("bad_frame", "frame must be a JSON object");
    const auto kind = required_string(frame, "kind");
    if (kind == "reset") return reset(frame);
    if (kind == "step") return step(frame);
    return error_frame("bad_frame", "unknown frame kind '" + kind + "'");
  } catch (const FrameError& e) {
    return error_frame(e.code, e.message);
  } catch (const Error& e) {
    return error_frame(e.code(), e.what());
  } catch (const std::exception& e) {
    spdlog::warn("internal error while handling a frame: {}", e.what());
    return error_frame("internal", e.what());
  }
}

std::string SessionManager::handle_line(std::string_view line) {
  json reply;
  try {
    reply = handle(json::parse(line));
  } catch (const json::exception& e) {
    reply = error_frame("bad_json", e.what());
  }
  // Invalid UTF-8 echoed back from the request must not break serialisation.
  return reply.dump(-1, ' ', false, json::error_handler_t::replace);
}

void serve_stdio(SessionManager& mgr, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << mgr.handle_line(line) << '\n';
    out.flush();
  }
}

void serve_http(SessionManager& mgr, const std::string& host, int port) {
  httplib::Server server;
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok\n", "text/plain"); });
  server.Post("/v1/frames", [&mgr](const httplib::Request& req, httplib::Response& res) {
    std::string body;
    std::size_t start = 0;
    while (start <= req.body.size()) {
      auto end = req.body.find('\n', start);
      if (end == std::string::npos) end = req.body.size();
      const std::string_view line(req.body.data() + start, end - start);
      if (line.find_first_not_of(" \t\r") != std::string_view::npos) body += mgr.handle_line(line) + '\n';
      start = end + 1;
    }
    res.set_content(body, "application/x-ndjson");
  });
  spdlog::info("serving on http://{}:{}", host, port);
  if (!server.listen(host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace vpr
