#include "vpr/rewards.hpp"

#include "vpr/errors.hpp"

namespace vpr {

std::vector<double> vpr_rewards(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.turns.size());
  for (const auto& t : traj.turns) {
    if (!t.verdict) throw MissingVerdictError("turn " + std::to_string(t.turn_index) + " has no verdict");
    out.push_back(t.verdict->valid);
  }
  return out;
}

std::vector<double> outcome_rewards(const Trajectory& traj) {
  if (!traj.closed()) throw NonTerminalError("outcome reward needs a finished trajectory");
  std::vector<double> out(traj.turns.size(), 0.0);
  if (!out.empty()) out.back() = traj.outcome.ret;
  return out;
}

double realized_return(const GameState& s, Mark agent_mark) {
  if (const auto* t = std::get_if<TttState>(&s)) return t->ongoing() ? 0.0 : ttt_return(*t, agent_mark);
  if (const auto* e = std::get_if<SudokuEpisode>(&s)) return e->current == e->solution ? 1.0 : 0.0;
  return std::get<MineBoard>(s).status == MineStatus::won ? 1.0 : 0.0;
}

double mc_value(const GameState& s, Mark agent_mark, int agent_turns_left, const McprConfig& cfg,
                std::uint64_t seed) {
  if (cfg.rollouts < 1) throw ConfigError("mc-pr needs at least one rollout");
  if (is_terminal(s) || agent_turns_left <= 0) return realized_return(s, agent_mark);
  Rng rng(seed);
  double total = 0.0;
  for (int k = 0; k < cfg.rollouts; ++k) {
    GameState cur = s;
    int agent_turns = 0, opp_turns = 0;
    while (!is_terminal(cur) && agent_turns < agent_turns_left) {
      const auto* t = std::get_if<TttState>(&cur);
      if (t && t->to_move != agent_mark) {
        cur = apply_action(cur, cfg.opponent.choose(cur, ++opp_turns, rng));
      } else {
        cur = apply_action(cur, cfg.policy.choose(cur, ++agent_turns, rng));
      }
    }
    // The opponent's reply to the agent's last move belongs to that turn.
    if (const auto* t = std::get_if<TttState>(&cur); t && t->ongoing() && t->to_move != agent_mark)
      cur = apply_action(cur, cfg.opponent.choose(cur, ++opp_turns, rng));
    total += realized_return(cur, agent_mark);
  }
  return total / cfg.rollouts;
}

std::uint64_t mcpr_seed(std::uint64_t seed, int turn) noexcept {
  return derive_seed(seed, {stream::kRollout, static_cast<std::uint64_t>(turn)});
}

std::vector<GameState> replay_states(const Trajectory& traj) {
  std::vector<GameState> out;
  try {
    GameState s = initial_state(traj.env, traj.seed, traj.options);
    for (const auto& a : traj.opening) s = apply_action(s, a);
    for (std::size_t i = 0; i < traj.turns.size(); ++i) {
      const auto& rec = traj.turns[i];
      out.push_back(s);
      if (traj.outcome.forfeit && i + 1 == traj.turns.size()) break;
      if (!rec.action) throw ReplayError("turn " + std::to_string(rec.turn_index) + " has no action");
      s = apply_action(s, *rec.action);
      if (rec.opponent_reply) s = apply_action(s, *rec.opponent_reply);
    }
    out.push_back(s);
  } catch (const ReplayError&) {
    throw;
  } catch (const Error& e) {
    throw ReplayError(std::string("cannot rebuild recorded state: ") + e.what());
  }
  return out;
}

std::vector<double> mcpr_rewards(const Trajectory& traj, const McprConfig& cfg, std::uint64_t seed) {
  if (!traj.closed()) throw NonTerminalError("mc-pr rewards need a finished trajectory");
  if (cfg.rollouts < 1) throw ConfigError("mc-pr needs at least one rollout");
  const auto states = replay_states(traj);
  const int T = static_cast<int>(traj.turns.size());
  const int H = horizon(traj.env, traj.options);
  std::vector<double> value(T + 1);
  for (int t = 1; t <= T; ++t)
    value[t - 1] = mc_value(states[t - 1], traj.agent_mark, H - t + 1, cfg, mcpr_seed(seed, t));
  value[T] = traj.outcome.ret;
  std::vector<double> out(T);
  for (int t = 0; t < T; ++t) out[t] = value[t + 1] - value[t];
  return out;
}

}  // namespace vpr
