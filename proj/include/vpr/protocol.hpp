#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "vpr/episode.hpp"

namespace vpr {

// Episode wire protocol: newline-delimited JSON frames.
//
// Requests
//   {"kind":"reset","env":"sudoku","seed":1,"reward_mode":"vpr", ...}
//     optional: "session" (restart that session), "seat", "opponent",
//     "opponent_random_share", "verifier" ("mcts"|"minimax"),
//     "n_simulations", "mcpr_rollouts", "options" {sudoku_blanks, mine_rows,
//     mine_cols, mine_count, mine_flood_fill}
//   {"kind":"step","session":"...","action":"<answer>...</answer>"}
// Responses
//   {"kind":"result", "session", "turn", "observation", "legal_actions",
//    "done", ...} with "prompt" after a reset and "verdict", "reward",
//    "reward_vpr", "forfeit", "opponent_reply", "outcome" after a step
//   {"kind":"error","code":"...","message":"..."}

struct ServerOptions {
  std::chrono::steady_clock::duration idle_timeout{std::chrono::minutes(10)};
  std::size_t max_sessions{1024};
  /// Empty: no "prompt" field in reset results.
  std::filesystem::path prompt_dir;
  /// Starting point for every reset; request fields override it.
  EpisodeConfig defaults;
};

class SessionManager {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit SessionManager(ServerOptions opts, Clock clock = nullptr);

  /// Never throws; failures come back as error frames.
  nlohmann::json handle(const nlohmann::json& frame);
  /// Parses one line and serialises the reply without a trailing newline.
  std::string handle_line(std::string_view line);

  std::size_t live_sessions();
  /// Drops sessions idle for longer than the timeout.
  void expire_idle();

 private:
  struct Session {
    std::mutex mu;
    std::unique_ptr<Episode> episode;
    std::chrono::steady_clock::time_point last_used;
  };

  nlohmann::json reset(const nlohmann::json& frame);
  nlohmann::json step(const nlohmann::json& frame);
  std::shared_ptr<Session> find(const std::string& id);
  std::string new_id();
  void expire_locked(std::chrono::steady_clock::time_point now);

  ServerOptions opts_;
  Clock clock_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_{0};
  std::uint64_t id_salt_;
  std::map<EnvKind, std::string> templates_;
};

/// Reads frames line by line until EOF and writes one reply line per frame.
void serve_stdio(SessionManager& mgr, std::istream& in, std::ostream& out);

/// POST /v1/frames with an NDJSON body (one or more frames) answers with an
/// NDJSON body of replies; GET /healthz answers "ok". Blocks until stopped.
/// Throws IoError when the address cannot be bound.
void serve_http(SessionManager& mgr, const std::string& host, int port);

}  // namespace vpr
