#include "vpr/episode.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vpr/errors.hpp"

namespace vpr {

std::string_view to_string(Seat s) noexcept { return s == Seat::first ? "first" : "second"; }

Seat seat_from_string(std::string_view s) {
  if (s == "first" || s == "1st") return Seat::first;
  if (s == "second" || s == "2nd") return Seat::second;
  throw ConfigError("unknown seat '" + std::string(s) + "'");
}

Episode::Episode(EpisodeConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      seed_(seed),
      state_(initial_state(cfg_.env, seed, cfg_.options)),
      opp_rng_(derive_seed(seed, {stream::kOpponent})) {
  if (!(cfg_.opponent_random_share >= 0.0 && cfg_.opponent_random_share <= 1.0))
    throw ConfigError("opponent_random_share must lie in [0,1]");
  traj_.env = cfg_.env;
  traj_.seed = seed;
  traj_.options = cfg_.options;
  traj_.reward_mode = cfg_.reward_mode;
  opponent_ = cfg_.opponent;
  if (cfg_.env != EnvKind::tictactoe) return;

  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(opp_rng_);
  if (u < cfg_.opponent_random_share) opponent_ = Policy::uniform_random();
  traj_.agent_mark = cfg_.seat == Seat::first ? Mark::X : Mark::O;
  if (cfg_.seat == Seat::second) {
    const Action a = opponent_.choose(state_, ++opp_turns_, opp_rng_);
    state_ = apply_action(state_, a);
    traj_.opening.push_back(a);
  }
}

int Episode::horizon() const noexcept { return vpr::horizon(cfg_.env, cfg_.options); }

double Episode::value_before(int turn) {
  if (!cached_value_) {
    const int left = horizon() - turn + 1;
    cached_value_ = mc_value(state_, traj_.agent_mark, left, cfg_.mcpr, mcpr_seed(seed_, turn));
  }
  return *cached_value_;
}

Outcome Episode::close_outcome(bool forfeit) const {
  Outcome o;
  o.terminal = true;
  o.forfeit = forfeit;
  o.truncated = !forfeit && !is_terminal(state_);
  const bool early = forfeit || o.truncated;
  if (const auto* t = std::get_if<TttState>(&state_)) {
    o.ret = forfeit ? -1.0 : (t->ongoing() ? 0.0 : ttt_return(*t, traj_.agent_mark));
    o.success = o.ret > 0.0;
  } else if (const auto* e = std::get_if<SudokuEpisode>(&state_)) {
    const auto m = sudoku_metrics(*e, early);
    o.success = !forfeit && m.success;
    o.completion_rate = m.completion_rate;
    o.ret = o.success ? 1.0 : 0.0;
  } else {
    const auto m = mine_metrics(std::get<MineBoard>(state_), early);
    o.success = !forfeit && m.success;
    o.completion_rate = m.completion_rate;
    o.ret = o.success ? 1.0 : 0.0;
  }
  return o;
}

StepResult Episode::finish_turn(TurnRecord rec, bool forfeit) {
  const int t = rec.turn_index;
  const bool closes = forfeit || is_terminal(state_) || t >= horizon();
  std::optional<Outcome> outcome;
  if (closes) outcome = close_outcome(forfeit);

  switch (cfg_.reward_mode) {
    case RewardMode::vpr: rec.reward = rec.reward_vpr; break;
    case RewardMode::outcome: rec.reward = closes ? outcome->ret : 0.0; break;
    case RewardMode::mcpr: {
      // value_before(t) was cached on the previous turn (or computed now for
      // t = 1) from the state the agent faced.
      const double before = *cached_value_;
      cached_value_.reset();
      const double after = closes ? outcome->ret : value_before(t + 1);
      rec.reward = after - before;
      break;
    }
  }
  rec.terminal = closes;

  StepResult out;
  out.verdict = *rec.verdict;
  out.reward_vpr = rec.reward_vpr;
  out.reward = rec.reward;
  out.opponent_reply = rec.opponent_reply;
  out.done = closes;
  out.forfeit = forfeit;
  traj_ = append_turn(std::move(traj_), std::move(rec));
  if (outcome) traj_.outcome = *outcome;
  return out;
}

StepResult Episode::forfeit_turn(std::optional<Action> a, std::string response, std::string why) {
  const int t = static_cast<int>(traj_.length()) + 1;
  if (cfg_.reward_mode == RewardMode::mcpr) value_before(t);
  TurnRecord rec;
  rec.turn_index = t;
  rec.observation_text = observation();
  rec.action = a;
  rec.response = std::move(response);
  auto set = oracle_valid_set(state_, cfg_.verifier, derive_seed(seed_, {stream::kVerifier, static_cast<std::uint64_t>(t)}));
  rec.verdict = a ? make_verdict(*a, std::move(set)) : VerifierVerdict{0, std::move(set), std::nullopt};
  rec.verdict->valid = 0;
  rec.reward_vpr = 0;
  auto out = finish_turn(std::move(rec), true);
  out.error = std::move(why);
  return out;
}

StepResult Episode::step(const Action& a) {
  if (done()) throw SequenceError("episode is over");
  if (!legal_actions(state_).count(a)) return forfeit_turn(a, format_action(a), "illegal move " + format_action(a));

  const int t = static_cast<int>(traj_.length()) + 1;
  if (cfg_.reward_mode == RewardMode::mcpr) value_before(t);
  TurnRecord rec;
  rec.turn_index = t;
  rec.observation_text = observation();
  rec.action = a;
  rec.verdict = verify(state_, a, cfg_.verifier, derive_seed(seed_, {stream::kVerifier, static_cast<std::uint64_t>(t)}));
  rec.reward_vpr = rec.verdict->valid;
  state_ = apply_action(state_, a);
  if (std::holds_alternative<TttState>(state_) && !is_terminal(state_)) {
    const Action reply = opponent_.choose(state_, ++opp_turns_, opp_rng_);
    state_ = apply_action(state_, reply);
    rec.opponent_reply = reply;
  }
  return finish_turn(std::move(rec), false);
}

StepResult Episode::step_text(std::string_view response) {
  if (done()) throw SequenceError("episode is over");
  try {
    return step(parse_action(response, cfg_.env, action_dims(state_)));
  } catch (const FormatError& e) {
    return forfeit_turn(std::nullopt, std::string(response), e.what());
  } catch (const OutOfRangeError& e) {
    return forfeit_turn(std::nullopt, std::string(response), e.what());
  }
}

Trajectory run_episode(const EpisodeConfig& cfg, const Policy& agent, std::uint64_t seed) {
  Episode ep(cfg, seed);
  Rng rng(derive_seed(seed, {stream::kPolicy}));
  while (!ep.done()) ep.step(agent.choose(ep.state(), static_cast<int>(ep.trajectory().length()) + 1, rng));
  return ep.trajectory();
}

std::uint64_t eval_game_seed(std::uint64_t base, int run, int game) noexcept {
  return derive_seed(base, {stream::kEval, static_cast<std::uint64_t>(run), static_cast<std::uint64_t>(game)});
}

namespace {

MeanStd mean_std(const std::vector<RunMetrics>& runs, double RunMetrics::*field) {
  MeanStd m;
  for (const auto& r : runs) m.mean += r.*field;
  m.mean /= static_cast<double>(runs.size());
  double sq = 0.0;
  for (const auto& r : runs) sq += (r.*field - m.mean) * (r.*field - m.mean);
  m.std = std::sqrt(sq / static_cast<double>(runs.size()));
  return m;
}

}  // namespace

EvalSummary evaluate(const EvalConfig& cfg, const Policy& agent) {
  if (cfg.n_games < 1 || cfg.n_runs < 1) throw ConfigError("evaluation needs n_games >= 1 and n_runs >= 1");
  if (cfg.workers < 0) throw ConfigError("workers must be >= 0");
  const auto total = static_cast<std::size_t>(cfg.n_games) * static_cast<std::size_t>(cfg.n_runs);
  std::vector<Outcome> outcomes(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const int r = static_cast<int>(i / static_cast<std::size_t>(cfg.n_games));
      const int g = static_cast<int>(i % static_cast<std::size_t>(cfg.n_games));
      try {
        outcomes[i] = run_episode(cfg.episode, agent, eval_game_seed(cfg.seed, r, g)).outcome;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto n_workers = std::min<std::size_t>(total, cfg.workers == 0 ? hw : static_cast<unsigned>(cfg.workers));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  EvalSummary out;
  for (int r = 0; r < cfg.n_runs; ++r) {
    RunMetrics m;
    for (int g = 0; g < cfg.n_games; ++g) {
      const auto& o = outcomes[static_cast<std::size_t>(r) * static_cast<std::size_t>(cfg.n_games) + static_cast<std::size_t>(g)];
      m.mean_return += o.ret;
      m.success_rate += o.success ? 1.0 : 0.0;
      m.completion_rate += o.completion_rate;
      m.forfeit_rate += o.forfeit ? 1.0 : 0.0;
    }
    const double n = cfg.n_games;
    m.mean_return /= n;
    m.success_rate /= n;
    m.completion_rate /= n;
    m.forfeit_rate /= n;
    out.runs.push_back(m);
  }
  out.mean_return = mean_std(out.runs, &RunMetrics::mean_return);
  out.success_rate = mean_std(out.runs, &RunMetrics::success_rate);
  out.completion_rate = mean_std(out.runs, &RunMetrics::completion_rate);
  return out;
}

}  // namespace vpr
