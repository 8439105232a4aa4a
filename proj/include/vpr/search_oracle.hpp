#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vpr/action.hpp"
#include "vpr/tictactoe.hpp"

namespace vpr {

struct SearchVerdictConfig {
  int n_simulations{10000};
  double uct_c{std::sqrt(2.0)};
  double tie_tolerance{1e-9};
  std::uint64_t seed{0};
  /// Solver backups: a node whose children are all proven (or that has a
  /// proven winning child) becomes proven itself, and proven nodes report
  /// their exact value instead of the playout mean.
  bool solve{true};
};

struct ActionStats {
  Place action;
  /// Mean playout value from the root mover's perspective; meaningful only
  /// when visits > 0.
  double mean_value{0.0};
  int visits{0};
  /// Exact value from the root mover's perspective once the solver proved it.
  std::optional<int> proven;

  /// Q estimate used by the verifier: the proven value when known, else the
  /// playout mean.
  double value() const noexcept { return proven ? *proven : mean_value; }
};

/// Root statistics of one UCT search. One entry per legal action.
struct SearchStats {
  std::vector<ActionStats> actions;
  int total_simulations{0};

  const ActionStats& at(const Place& a) const;
  /// Robust-child rule, solver aware: highest proven value first (unproven
  /// children count as 0), then visits, then mean value.
  Place best_move() const;
};

/// UCT search: select with the UCB1 rule, expand one node, play a uniform
/// random playout to the end, and back the result up with a sign flip per
/// ply. With cfg.solve, proven subtrees are not re-simulated: selection
/// treats a proven child as its exact value and a proven leaf backs up that
/// value directly. Deterministic in cfg.seed. Throws TerminalError on a finished game and
/// ConfigError when n_simulations < 1 or tie_tolerance < 0.
SearchStats mcts_search(const TttState& s, const SearchVerdictConfig& cfg);

/// Visited actions whose value() is within `tie_tolerance` of the best.
ActionSet argmax_set(const SearchStats& stats, double tie_tolerance);

/// Oracle-valid set of the search verifier.
ActionSet search_oracle_set(const TttState& s, const SearchVerdictConfig& cfg);

struct MinimaxResult {
  /// Game value for the side to move: -1, 0 or +1.
  int value{0};
  /// Every value-maximising move; empty on finished games.
  ActionSet optimal_set;
};

/// Exact negamax over the full game tree, memoised across calls.
MinimaxResult minimax(const TttState& s);
int minimax_value(const TttState& s);

/// Share of (position, uniformly sampled action) pairs on which search and
/// minimax membership disagree. Actions are drawn from a stream that depends
/// only on cfg.seed and the position index, so different simulation budgets
/// with the same seed are paired. Throws EmptyInputError on no positions and
/// TerminalError on a finished one.
double disagreement_rate(const SearchVerdictConfig& cfg, std::span<const TttState> positions);

/// Every state reachable from the empty board (terminal ones included).
std::vector<TttState> all_reachable_states();

/// `n` positions drawn uniformly without replacement from the distinct
/// reachable ongoing states (with replacement once those run out).
/// Deterministic in `seed`.
std::vector<TttState> sample_positions(std::size_t n, std::uint64_t seed);

}  // namespace vpr
