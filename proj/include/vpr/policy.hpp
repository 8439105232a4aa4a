#pragma once

#include <string>
#include <vector>

#include "vpr/game_state.hpp"
#include "vpr/rng.hpp"
#include "vpr/search_oracle.hpp"

namespace vpr {

enum class PolicyKind { uniform_random, oracle_following, epsilon_oracle, mcts_player, scripted_replay };

/// Scripted, non-learning policies used as agents, opponents and rollout
/// policies. Value type; choose() is const and thread-safe.
class Policy {
 public:
  static Policy uniform_random();
  /// Uniform over the exact oracle set (minimax, constraint or posterior).
  static Policy oracle_following();
  /// Uniform legal move with probability eps, oracle-following otherwise.
  static Policy epsilon_oracle(double eps);
  /// Tic-Tac-Toe only: robust child of a fresh search per move.
  static Policy mcts_player(SearchVerdictConfig cfg);
  /// Plays the i-th listed action on the i-th call of an episode.
  static Policy scripted_replay(std::vector<Action> actions);

  /// `turn` is the 1-based decision index of this policy in the episode.
  /// Throws TerminalError on finished states, ConfigError when the policy
  /// does not support the environment and ReplayError when a script runs out.
  Action choose(const GameState& s, int turn, Rng& rng) const;

  PolicyKind kind() const noexcept { return kind_; }
  double epsilon() const noexcept { return eps_; }
  const SearchVerdictConfig& search() const noexcept { return search_; }
  const std::vector<Action>& script() const noexcept { return script_; }
  std::string name() const;

  /// Parses "random", "oracle", "epsilon:<eps>", "mcts:<n_simulations>".
  static Policy from_string(std::string_view text);

 private:
  PolicyKind kind_{PolicyKind::uniform_random};
  double eps_{0.0};
  SearchVerdictConfig search_;
  std::vector<Action> script_;
};

}  // namespace vpr
