#pragma once

#include <cstdint>
#include <vector>

#include "vpr/policy.hpp"
#include "vpr/trajectory.hpp"

namespace vpr {

/// r_t = verdict.valid. Throws MissingVerdictError when a turn has no verdict.
std::vector<double> vpr_rewards(const Trajectory& traj);

/// Zero everywhere except the last turn, which carries the episode return
/// (I(success), or the signed game result for Tic-Tac-Toe). Throws
/// NonTerminalError on an open trajectory.
std::vector<double> outcome_rewards(const Trajectory& traj);

struct McprConfig {
  int rollouts{100};
  /// Plays the agent's side of every rollout.
  Policy policy{Policy::uniform_random()};
  /// Plays the other side in Tic-Tac-Toe rollouts.
  Policy opponent{Policy::uniform_random()};
};

/// Return of a finished (or horizon-truncated) state from the agent's side.
/// Truncated episodes are failures.
double realized_return(const GameState& s, Mark agent_mark);

/// Mean return of cfg.rollouts playouts from `s`, where the agent is to move
/// and has `agent_turns_left` decisions before the horizon. Terminal states
/// return their realized value without rollouts.
double mc_value(const GameState& s, Mark agent_mark, int agent_turns_left, const McprConfig& cfg,
                std::uint64_t seed);

/// Seed of the rollouts that estimate the value before agent turn t.
std::uint64_t mcpr_seed(std::uint64_t seed, int turn) noexcept;

/// Agent decision states s_1..s_T rebuilt from the trajectory's seed, opening,
/// actions and opponent replies, followed by the state after the last turn.
/// A forfeited last turn is not applied. Throws ReplayError when a recorded
/// move does not apply.
std::vector<GameState> replay_states(const Trajectory& traj);

/// r_t = V(s_{t+1}) - V(s_t) with V the rollout estimate seeded per turn from
/// `seed`; V(s_{T+1}) is the realized return. Throws NonTerminalError on an
/// open trajectory and ConfigError when cfg.rollouts < 1.
std::vector<double> mcpr_rewards(const Trajectory& traj, const McprConfig& cfg, std::uint64_t seed);

}  // namespace vpr
