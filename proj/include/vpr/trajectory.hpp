#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vpr/action.hpp"
#include "vpr/game_state.hpp"

namespace vpr {

enum class RewardMode { vpr, outcome, mcpr };

std::string_view to_string(RewardMode m) noexcept;
/// Throws ConfigError on an unknown tag.
RewardMode reward_mode_from_string(std::string_view s);

/// Binary oracle outcome for one taken action, together with the full set of
/// actions the oracle accepts in that state.
struct VerifierVerdict {
  int valid{0};
  ActionSet oracle_valid_set;
  /// Free-form diagnostic (search statistics summary, posterior summary).
  std::optional<std::string> oracle_meta;

  bool operator==(const VerifierVerdict&) const = default;
};

/// Builds a verdict with `valid = I(taken in set)`.
VerifierVerdict make_verdict(const Action& taken, ActionSet oracle_valid_set,
                             std::optional<std::string> meta = std::nullopt);

struct TurnRecord {
  int turn_index{1};
  std::string observation_text;
  /// Empty when the response could not be parsed.
  std::optional<Action> action;
  /// Raw agent response, kept only for forfeited turns.
  std::optional<std::string> response;
  std::optional<VerifierVerdict> verdict;
  int reward_vpr{0};
  /// Reward under the trajectory's reward mode (vpr, outcome or mcpr).
  double reward{0.0};
  /// Tic-Tac-Toe only: the opponent's reply that followed this action.
  std::optional<Action> opponent_reply;
  bool terminal{false};

  bool operator==(const TurnRecord&) const = default;
};

struct Outcome {
  bool terminal{false};
  bool success{false};
  /// Game-theoretic return for Tic-Tac-Toe, I(success) otherwise.
  double ret{0.0};
  double completion_rate{0.0};
  /// Episode ended because of a malformed response or an illegal move. The
  /// offending turn is the last record.
  bool forfeit{false};
  /// Episode ended because the horizon was exhausted.
  bool truncated{false};

  bool operator==(const Outcome&) const = default;
};

struct Trajectory {
  EnvKind env{EnvKind::tictactoe};
  std::uint64_t seed{0};
  EnvOptions options;
  RewardMode reward_mode{RewardMode::vpr};
  /// Tic-Tac-Toe only: the agent's mark and any opponent moves made before
  /// the agent's first turn.
  Mark agent_mark{Mark::X};
  std::vector<Action> opening;
  std::vector<TurnRecord> turns;
  Outcome outcome;

  std::size_t length() const noexcept { return turns.size(); }
  bool closed() const noexcept { return outcome.terminal; }

  bool operator==(const Trajectory&) const = default;
};

/// Appends `rec` and returns the extended trajectory. The record must carry
/// turn_index = length + 1 and the trajectory must still be open; otherwise
/// SequenceError. A terminal record closes the trajectory.
Trajectory append_turn(Trajectory traj, TurnRecord rec);

}  // namespace vpr
