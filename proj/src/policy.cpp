#include "vpr/policy.hpp"

#include <iterator>

#include "vpr/errors.hpp"
#include "vpr/verifier.hpp"

namespace vpr {

namespace {

Action pick(const ActionSet& set, Rng& rng) {
  if (set.empty()) throw EmptyInputError("no action to choose from");
  auto it = set.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(uniform_index(rng, set.size())));
  return *it;
}

}  // namespace

Policy Policy::uniform_random() { return Policy{}; }

Policy Policy::oracle_following() {
  Policy p;
  p.kind_ = PolicyKind::oracle_following;
  return p;
}

Policy Policy::epsilon_oracle(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ConfigError("epsilon must lie in [0,1]");
  Policy p;
  p.kind_ = PolicyKind::epsilon_oracle;
  p.eps_ = eps;
  return p;
}

Policy Policy::mcts_player(SearchVerdictConfig cfg) {
  if (cfg.n_simulations < 1) throw ConfigError("mcts player needs at least one simulation");
  Policy p;
  p.kind_ = PolicyKind::mcts_player;
  p.search_ = cfg;
  return p;
}

Policy Policy::scripted_replay(std::vector<Action> actions) {
  Policy p;
  p.kind_ = PolicyKind::scripted_replay;
  p.script_ = std::move(actions);
  return p;
}

Action Policy::choose(const GameState& s, int turn, Rng& rng) const {
  if (is_terminal(s)) throw TerminalError("policy asked to move in a finished episode");
  switch (kind_) {
    case PolicyKind::uniform_random: return pick(legal_actions(s), rng);
    case PolicyKind::oracle_following: return pick(exact_oracle_set(s), rng);
    case PolicyKind::epsilon_oracle: {
      const bool explore = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < eps_;
      return pick(explore ? legal_actions(s) : exact_oracle_set(s), rng);
    }
    case PolicyKind::mcts_player: {
      const auto* t = std::get_if<TttState>(&s);
      if (!t) throw ConfigError("mcts player only plays tic-tac-toe");
      auto cfg = search_;
      cfg.seed = rng();
      return mcts_search(*t, cfg).best_move();
    }
    case PolicyKind::scripted_replay:
      if (turn < 1 || turn > static_cast<int>(script_.size()))
        throw ReplayError("script has no action for turn " + std::to_string(turn));
      return script_[static_cast<std::size_t>(turn - 1)];
  }
  throw ConfigError("unknown policy");
}

std::string Policy::name() const {
  switch (kind_) {
    case PolicyKind::uniform_random: return "random";
    case PolicyKind::oracle_following: return "oracle";
    case PolicyKind::epsilon_oracle: return "epsilon:" + std::to_string(eps_);
    case PolicyKind::mcts_player: return "mcts:" + std::to_string(search_.n_simulations);
    case PolicyKind::scripted_replay: return "script:" + std::to_string(script_.size());
  }
  return "?";
}

Policy Policy::from_string(std::string_view text) {
  if (text == "random") return uniform_random();
  if (text == "oracle") return oracle_following();
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto head = text.substr(0, colon);
    const auto tail = std::string(text.substr(colon + 1));
    try {
      std::size_t used = 0;
      if (head == "epsilon") {
        const double eps = std::stod(tail, &used);
        if (used == tail.size()) return epsilon_oracle(eps);
      } else if (head == "mcts") {
        const int n = std::stoi(tail, &used);
        SearchVerdictConfig cfg;
        cfg.n_simulations = n;
        if (used == tail.size()) return mcts_player(cfg);
      }
    } catch (const std::logic_error&) {
    }
  }
  throw ConfigError("unknown policy '" + std::string(text) + "'");
}

}  // namespace vpr
