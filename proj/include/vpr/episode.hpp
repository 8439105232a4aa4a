#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vpr/policy.hpp"
#include "vpr/rewards.hpp"
#include "vpr/trajectory.hpp"
#include "vpr/verifier.hpp"

namespace vpr {

enum class Seat { first, second };

std::string_view to_string(Seat s) noexcept;
Seat seat_from_string(std::string_view s);

struct EpisodeConfig {
  EnvKind env{EnvKind::tictactoe};
  EnvOptions options;
  RewardMode reward_mode{RewardMode::vpr};
  VerifierConfig verifier;
  /// Tic-Tac-Toe only.
  Seat seat{Seat::first};
  Policy opponent{Policy::mcts_player(SearchVerdictConfig{})};
  /// Share of episodes whose opponent is uniform random instead of
  /// `opponent`; drawn once per episode.
  double opponent_random_share{0.5};
  McprConfig mcpr;
};

/// Result of one agent turn.
struct StepResult {
  VerifierVerdict verdict;
  int reward_vpr{0};
  double reward{0.0};
  std::optional<Action> opponent_reply;
  bool done{false};
  bool forfeit{false};
  /// Why the turn forfeited.
  std::string error;
};

/// One live episode: applies agent turns, asks the verifier, answers with the
/// opponent and assigns rewards under the configured mode. Deterministic in
/// (config, seed).
class Episode {
 public:
  Episode(EpisodeConfig cfg, std::uint64_t seed);

  const EpisodeConfig& config() const noexcept { return cfg_; }
  const GameState& state() const noexcept { return state_; }
  const Trajectory& trajectory() const noexcept { return traj_; }
  bool done() const noexcept { return traj_.closed(); }
  std::string observation() const { return render_observation(state_); }
  ActionSet legal() const { return done() ? ActionSet{} : legal_actions(state_); }
  int horizon() const noexcept;
  /// The opponent this episode drew.
  const Policy& opponent() const noexcept { return opponent_; }

  /// Plays a parsed action. An illegal action forfeits. Throws SequenceError
  /// once the episode is over.
  StepResult step(const Action& a);
  /// Parses a raw agent response; malformed text forfeits.
  StepResult step_text(std::string_view response);

 private:
  StepResult forfeit_turn(std::optional<Action> a, std::string response, std::string why);
  StepResult finish_turn(TurnRecord rec, bool forfeit);
  Outcome close_outcome(bool forfeit) const;
  double value_before(int turn);

  EpisodeConfig cfg_;
  std::uint64_t seed_;
  GameState state_;
  Trajectory traj_;
  Policy opponent_;
  Rng opp_rng_;
  int opp_turns_{0};
  std::optional<double> cached_value_;
};

/// Runs `agent` until the episode ends.
Trajectory run_episode(const EpisodeConfig& cfg, const Policy& agent, std::uint64_t seed);

struct EvalConfig {
  EpisodeConfig episode;
  int n_games{1024};
  int n_runs{5};
  std::uint64_t seed{0};
  /// Worker threads; 0 uses the hardware concurrency. The summary does not
  /// depend on this.
  int workers{0};
};

struct RunMetrics {
  double mean_return{0.0};
  double success_rate{0.0};
  double completion_rate{0.0};
  double forfeit_rate{0.0};
};

struct MeanStd {
  double mean{0.0};
  /// Population standard deviation across runs.
  double std{0.0};
};

struct EvalSummary {
  std::vector<RunMetrics> runs;
  MeanStd mean_return;
  MeanStd success_rate;
  MeanStd completion_rate;
};

/// Seed of game g in run r.
std::uint64_t eval_game_seed(std::uint64_t base, int run, int game) noexcept;

/// n_runs runs of n_games episodes each; game seeds depend only on
/// (cfg.seed, run, game), so two policies evaluated with the same config
/// meet the same boards. Games are spread over cfg.workers threads and
/// summed in game order. Throws ConfigError when n_games or n_runs < 1 or
/// workers < 0.
EvalSummary evaluate(const EvalConfig& cfg, const Policy& agent);

}  // namespace vpr
