#include "vpr/verifier.hpp"

#include <string>

#include "vpr/constraint_oracle.hpp"
#include "vpr/errors.hpp"
#include "vpr/posterior_oracle.hpp"

namespace vpr {

namespace {

std::string search_meta(const SearchStats& st) {
  std::string out = "n=" + std::to_string(st.total_simulations);
  for (const auto& a : st.actions) {
    out += ' ';
    out += format_action(a.action);
    out += ':' + std::to_string(a.value()) + '/' + std::to_string(a.visits);
  }
  return out;
}

}  // namespace

ActionSet oracle_valid_set(const GameState& s, const VerifierConfig& cfg, std::uint64_t search_seed) {
  if (is_terminal(s)) throw TerminalError("no oracle set on a finished episode");
  if (const auto* t = std::get_if<TttState>(&s)) {
    if (cfg.ttt == TttVerifier::minimax) return minimax(*t).optimal_set;
    auto sc = cfg.search;
    sc.seed = search_seed;
    return search_oracle_set(*t, sc);
  }
  return exact_oracle_set(s);
}

ActionSet exact_oracle_set(const GameState& s) {
  if (const auto* t = std::get_if<TttState>(&s)) {
    if (!t->ongoing()) throw TerminalError("no oracle set on a finished game");
    return minimax(*t).optimal_set;
  }
  if (const auto* e = std::get_if<SudokuEpisode>(&s)) return oracle_valid_constraint(*e);
  return oracle_valid_probabilistic(std::get<MineBoard>(s));
}

VerifierVerdict verify(const GameState& s, const Action& a, const VerifierConfig& cfg,
                       std::uint64_t search_seed) {
  if (is_terminal(s)) throw TerminalError("no verdict on a finished episode");
  if (const auto* t = std::get_if<TttState>(&s)) {
    if (cfg.ttt == TttVerifier::minimax) return make_verdict(a, minimax(*t).optimal_set, "minimax");
    auto sc = cfg.search;
    sc.seed = search_seed;
    const auto stats = mcts_search(*t, sc);
    return make_verdict(a, argmax_set(stats, sc.tie_tolerance), search_meta(stats));
  }
  if (const auto* e = std::get_if<SudokuEpisode>(&s)) {
    const auto* f = std::get_if<Fill>(&a);
    if (!f) throw IllegalMoveError("sudoku verdict needs a fill action");
    return verify_fill(*e, *f);
  }
  return verdict_probabilistic(std::get<MineBoard>(s), a);
}

}  // namespace vpr
