#pragma once

#include <cstdint>

#include "vpr/game_state.hpp"
#include "vpr/search_oracle.hpp"
#include "vpr/trajectory.hpp"

namespace vpr {

enum class TttVerifier { mcts, minimax };

struct VerifierConfig {
  /// Tic-Tac-Toe oracle. Training uses search; minimax is the exact reference.
  TttVerifier ttt{TttVerifier::mcts};
  SearchVerdictConfig search;

  bool operator==(const VerifierConfig& o) const {
    return ttt == o.ttt && search.n_simulations == o.search.n_simulations &&
           search.uct_c == o.search.uct_c && search.tie_tolerance == o.search.tie_tolerance &&
           search.seed == o.search.seed && search.solve == o.search.solve;
  }
};

/// Oracle-valid set of an ongoing state. For search, `search_seed` overrides
/// cfg.search.seed. Throws TerminalError on finished states.
ActionSet oracle_valid_set(const GameState& s, const VerifierConfig& cfg, std::uint64_t search_seed);

/// Exact oracle set: minimax for Tic-Tac-Toe, the constraint and posterior
/// oracles otherwise.
ActionSet exact_oracle_set(const GameState& s);

/// Verdict for a legal action on an ongoing state.
VerifierVerdict verify(const GameState& s, const Action& a, const VerifierConfig& cfg,
                       std::uint64_t search_seed);

}  // namespace vpr
