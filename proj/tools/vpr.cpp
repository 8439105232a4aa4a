#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "vpr/episode.hpp"
#include "vpr/errors.hpp"
#include "vpr/game_state.hpp"
#include "vpr/persistence.hpp"
#include "vpr/prompt.hpp"
#include "vpr/protocol.hpp"
#include "vpr/search_oracle.hpp"
#include "vpr/sudoku.hpp"
#include "vpr/theory.hpp"

namespace {

using namespace vpr;

// Flags shared by every subcommand that runs episodes.
struct EpisodeFlags {
  std::string env{"tictactoe"};
  std::string reward_mode{"vpr"};
  std::string verifier{"mcts"};
  int n_simulations{10000};
  std::string seat{"first"};
  std::string opponent{"mcts:10000"};
  double opponent_random_share{0.5};
  int mcpr_rollouts{100};
  int sudoku_blanks{kSudokuDefaultBlanks};
  int mine_rows{5};
  int mine_cols{5};
  int mine_count{5};
  bool mine_flood_fill{false};

  EpisodeConfig build() const {
    EpisodeConfig c;
    c.env = env_from_string(env);
    c.reward_mode = reward_mode_from_string(reward_mode);
    if (verifier == "mcts")
      c.verifier.ttt = TttVerifier::mcts;
    else if (verifier == "minimax")
      c.verifier.ttt = TttVerifier::minimax;
    else
      throw ConfigError("unknown verifier '" + verifier + "'");
    c.verifier.search.n_simulations = n_simulations;
    c.seat = seat_from_string(seat);
    c.opponent = Policy::from_string(opponent);
    if (opponent_random_share < 0.0 || opponent_random_share > 1.0)
      throw ConfigError("opponent_random_share must lie in [0,1]");
    c.opponent_random_share = opponent_random_share;
    c.mcpr.rollouts = mcpr_rollouts;
    c.options.sudoku_blanks = sudoku_blanks;
    c.options.mine_rows = mine_rows;
    c.options.mine_cols = mine_cols;
    c.options.mine_count = mine_count;
    c.options.mine_flood_fill = mine_flood_fill;
    return c;
  }
};

void add_episode_flags(CLI::App* app, EpisodeFlags& f) {
  app->add_option("--env", f.env, "tictactoe | sudoku | minesweeper")->capture_default_str();
  app->add_option("--reward-mode", f.reward_mode, "vpr | outcome | mcpr")->capture_default_str();
  app->add_option("--verifier", f.verifier, "Tic-Tac-Toe verifier: mcts | minimax")->capture_default_str();
  app->add_option("--n-simulations", f.n_simulations, "search verifier budget")->capture_default_str();
  app->add_option("--seat", f.seat, "first | second")->capture_default_str();
  app->add_option("--opponent", f.opponent, "random | oracle | epsilon:<e> | mcts:<n>")->capture_default_str();
  app->add_option("--opponent-random-share", f.opponent_random_share, "share of games against a random opponent")
      ->capture_default_str();
  app->add_option("--mcpr-rollouts", f.mcpr_rollouts)->capture_default_str();
  app->add_option("--sudoku-blanks", f.sudoku_blanks)->capture_default_str();
  app->add_option("--mine-rows", f.mine_rows)->capture_default_str();
  app->add_option("--mine-cols", f.mine_cols)->capture_default_str();
  app->add_option("--mine-count", f.mine_count)->capture_default_str();
  app->add_flag("--mine-flood-fill", f.mine_flood_fill);
}

int cmd_play(const EpisodeFlags& f, const std::string& policy, int episodes, std::uint64_t seed,
             const std::string& out, bool verbose) {
  const auto cfg = f.build();
  const auto agent = Policy::from_string(policy);
  std::vector<EpisodeLog> logs;
  for (int i = 0; i < episodes; ++i) {
    const auto traj = run_episode(cfg, agent, eval_game_seed(seed, 0, i));
    double total = 0.0;
    for (const auto& t : traj.turns) {
      total += t.reward;
      if (verbose)
        std::printf("  turn %d  %s  valid=%d  reward=%.6g\n", t.turn_index,
                    t.action ? format_action(*t.action).c_str() : "<unparsed>", t.reward_vpr, t.reward);
    }
    std::printf("episode %d seed=%llu turns=%zu success=%d return=%g cr=%.4f forfeit=%d reward_sum=%.6g\n", i,
                static_cast<unsigned long long>(traj.seed), traj.length(), traj.outcome.success ? 1 : 0,
                traj.outcome.ret, traj.outcome.completion_rate, traj.outcome.forfeit ? 1 : 0, total);
    logs.push_back({cfg, traj});
  }
  if (!out.empty()) {
    const auto n = persist_trajectories(logs, out);
    spdlog::info("wrote {} trajectories to {}", n, out);
  }
  return 0;
}

void print_summary(const std::string& label, const EvalSummary& s) {
  std::printf("%s  return %.4f +- %.4f  SR %.2f +- %.2f  CR %.2f +- %.2f\n", label.c_str(), s.mean_return.mean,
              s.mean_return.std, 100.0 * s.success_rate.mean, 100.0 * s.success_rate.std,
              100.0 * s.completion_rate.mean, 100.0 * s.completion_rate.std);
}

int cmd_eval(const EpisodeFlags& f, const std::string& policy, int games, int runs, std::uint64_t seed,
             int workers, bool both_seats) {
  EvalConfig e;
  e.episode = f.build();
  e.n_games = games;
  e.n_runs = runs;
  e.seed = seed;
  e.workers = workers;
  const auto agent = Policy::from_string(policy);
  if (both_seats && e.episode.env == EnvKind::tictactoe) {
    for (Seat seat : {Seat::first, Seat::second}) {
      e.episode.seat = seat;
      print_summary(agent.name() + " seat=" + std::string(to_string(seat)), evaluate(e, agent));
    }
  } else {
    print_summary(agent.name(), evaluate(e, agent));
  }
  return 0;
}

int cmd_ablate(const std::vector<int>& budgets, int positions, int games, std::uint64_t seed, int workers) {
  const auto sample = sample_positions(static_cast<std::size_t>(positions), seed);
  std::printf("%8s  %10s  %12s  %12s\n", "N", "eps_bar", "return_1st", "return_2nd");
  for (int n : budgets) {
    SearchVerdictConfig sc;
    sc.n_simulations = n;
    sc.seed = seed;
    const double eps = disagreement_rate(sc, sample);
    double ret[2] = {0.0, 0.0};
    if (games > 0) {
      // The agent plays the search verifier's own preferred move at budget N
      // against the fixed strong opponent.
      EvalConfig e;
      e.episode.env = EnvKind::tictactoe;
      e.episode.verifier.ttt = TttVerifier::minimax;
      e.episode.opponent_random_share = 0.0;
      e.n_games = games;
      e.n_runs = 1;
      e.seed = seed;
      e.workers = workers;
      SearchVerdictConfig agent_cfg;
      agent_cfg.n_simulations = n;
      const auto agent = Policy::mcts_player(agent_cfg);
      for (int k = 0; k < 2; ++k) {
        e.episode.seat = k == 0 ? Seat::first : Seat::second;
        ret[k] = evaluate(e, agent).mean_return.mean;
      }
    }
    std::printf("%8d  %10.4f  %12.4f  %12.4f\n", n, eps, ret[0], ret[1]);
  }
  return 0;
}

int cmd_theory(const std::string& which, std::size_t samples, std::uint64_t seed, int instances) {
  using namespace vpr::theory;
  const bool all = which == "all";
  if (all || which == "scaling") {
    std::printf("# scaling: p T estimator mc_mean analytic_se closed_form z\n");
    for (double p : {0.3, 0.5, 0.7})
      for (int T : {1, 5, 10, 20})
        for (Estimator est : {Estimator::vpr, Estimator::outcome}) {
          const BernoulliRegime reg{p, T};
          const auto cell = derive_seed(seed, {static_cast<std::uint64_t>(T), static_cast<std::uint64_t>(p * 10)});
          const auto r = mc_gradient(reg, est, samples, cell);
          const double z = r.analytic_standard_error > 0 ? (r.mean - r.closed_form) / r.analytic_standard_error : 0.0;
          std::printf("%.1f %2d %-7s %.6e %.3e %.6e %+.2f\n", p, T, std::string(to_string(est)).c_str(), r.mean,
                      r.analytic_standard_error, r.closed_form, z);
        }
  }
  if (all || which == "imitation") {
    double worst_il = 0.0, worst_base = 0.0, worst_fd = 0.0;
    for (int i = 0; i < instances; ++i) {
      const auto fb = random_bandit(derive_seed(seed, {1, static_cast<std::uint64_t>(i)}));
      Rng rng(derive_seed(seed, {2, static_cast<std::uint64_t>(i)}));
      std::vector<double> b(fb.states());
      for (auto& x : b) x = std::normal_distribution<double>(0.0, 3.0)(rng);
      const auto g0 = exact_gradient_finite(fb, fb.verifier);
      const auto gb = exact_gradient_finite(fb, fb.verifier, b);
      for (std::size_t k = 0; k < g0.size(); ++k) worst_base = std::max(worst_base, std::abs(g0[k] - gb[k]));
      worst_il = std::max(worst_il, imitation_equivalence_check(fb));
      worst_fd = std::max(worst_fd, relative_error(g0, finite_difference_gradient(fb, fb.verifier)));
    }
    std::printf("# imitation: instances=%d max_imitation_gap=%.3e max_baseline_gap=%.3e max_fd_rel_error=%.3e\n",
                instances, worst_il, worst_base, worst_fd);
  }
  if (all || which == "bias") {
    for (double flip : {0.05, 0.1, 0.2}) {
      int violations = 0;
      double max_ratio = 0.0;
      for (int i = 0; i < instances; ++i) {
        const auto fb = random_bandit(derive_seed(seed, {3, static_cast<std::uint64_t>(i)}));
        const auto r = bias_bound_check(fb, fb.verifier, flip, derive_seed(seed, {4, static_cast<std::uint64_t>(i)}));
        if (!r.holds()) ++violations;
        if (r.bound() > 0) max_ratio = std::max(max_ratio, r.bias_norm / r.bound());
      }
      std::printf("# bias: flip=%.2f instances=%d violations=%d max_bias_over_bound=%.4f\n", flip, instances,
                  violations, max_ratio);
    }
  }
  return 0;
}

int cmd_gen_sudoku(std::uint64_t seed, int count, int blanks, bool render) {
  for (int i = 0; i < count; ++i) {
    const auto s = seed + static_cast<std::uint64_t>(i);
    const auto ep = sudoku_generate(s, blanks);
    if (render) {
      EnvOptions o;
      o.sudoku_blanks = blanks;
      std::printf("%s\n", render_observation(initial_state(EnvKind::sudoku, s, o)).c_str());
    } else {
      std::printf("%s %s\n", grid_to_string(ep.puzzle).c_str(), grid_to_string(ep.solution).c_str());
    }
  }
  return 0;
}

int cmd_serve(const EpisodeFlags& f, const std::string& http, int idle_seconds, std::size_t max_sessions,
              const std::string& prompt_dir, bool no_prompt) {
  ServerOptions o;
  o.defaults = f.build();
  o.idle_timeout = std::chrono::seconds(idle_seconds);
  o.max_sessions = max_sessions;
  if (!no_prompt) o.prompt_dir = prompt_dir.empty() ? default_prompt_dir() : std::filesystem::path(prompt_dir);
  SessionManager mgr(o);
  if (http.empty()) {
    std::ios::sync_with_stdio(false);
    serve_stdio(mgr, std::cin, std::cout);
    return 0;
  }
  const auto colon = http.rfind(':');
  if (colon == std::string::npos) throw ConfigError("--http expects host:port");
  serve_http(mgr, http.substr(0, colon), std::stoi(http.substr(colon + 1)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Logs go to stderr so stdout stays clean for reports and the stdio protocol.
  spdlog::set_default_logger(spdlog::stderr_color_mt("vpr"));
  if (const char* level = std::getenv("VPR_LOG_LEVEL")) spdlog::set_level(spdlog::level::from_str(level));

  CLI::App app{"Verifier-annotated episodes for Tic-Tac-Toe, Sudoku and Minesweeper"};
  app.set_config("--config", "", "key = value file; [section] names match subcommands");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  EpisodeFlags ef;
  std::string policy{"oracle"};
  std::uint64_t seed{0};
  int workers{0};

  auto* play = app.add_subcommand("play", "run episodes and print a line per episode");
  add_episode_flags(play, ef);
  int episodes{1};
  std::string out;
  bool verbose{false};
  play->add_option("--policy", policy, "agent policy")->capture_default_str();
  play->add_option("--episodes", episodes)->capture_default_str()->check(CLI::PositiveNumber);
  play->add_option("--seed", seed)->capture_default_str();
  play->add_option("--out", out, "trajectory file, one JSON object per line");
  play->add_flag("-v,--verbose", verbose, "print every turn");

  auto* eval = app.add_subcommand("eval", "mean and std of return, SR and CR over evaluation runs");
  add_episode_flags(eval, ef);
  int games{1024}, runs{5};
  bool both_seats{false};
  eval->add_option("--policy", policy)->capture_default_str();
  eval->add_option("--games", games)->capture_default_str();
  eval->add_option("--runs", runs)->capture_default_str();
  eval->add_option("--seed", seed)->capture_default_str();
  eval->add_option("--workers", workers, "0 = hardware concurrency")->capture_default_str();
  eval->add_flag("--both-seats", both_seats, "Tic-Tac-Toe: report first and second seat");

  auto* ablate = app.add_subcommand("ablate-oracle", "search verifier disagreement and play strength vs budget");
  std::vector<int> budgets{100, 1000, 10000};
  int positions{200}, ablate_games{128};
  ablate->add_option("--budgets", budgets)->capture_default_str()->delimiter(',');
  ablate->add_option("--positions", positions)->capture_default_str();
  ablate->add_option("--games", ablate_games, "games per seat; 0 skips play")->capture_default_str();
  ablate->add_option("--seed", seed)->capture_default_str();
  ablate->add_option("--workers", workers)->capture_default_str();

  auto* theory = app.add_subcommand("theory", "numerical checks of the gradient results");
  std::string which{"all"};
  std::size_t samples{100000};
  int instances{20};
  theory->add_option("--check", which, "scaling | imitation | bias | all")
      ->capture_default_str()
      ->check(CLI::IsMember({"scaling", "imitation", "bias", "all"}));
  theory->add_option("--samples", samples)->capture_default_str();
  theory->add_option("--instances", instances)->capture_default_str();
  theory->add_option("--seed", seed)->capture_default_str();

  auto* gen = app.add_subcommand("gen-sudoku", "print seeded puzzles with their unique solution");
  int count{1}, blanks{kSudokuDefaultBlanks};
  bool render{false};
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--count", count)->capture_default_str();
  gen->add_option("--blanks", blanks)->capture_default_str();
  gen->add_flag("--render", render, "print the observation grid instead of digit strings");

  auto* serve = app.add_subcommand("serve", "episode protocol over stdio (default) or HTTP");
  add_episode_flags(serve, ef);
  std::string http, prompt_dir;
  int idle{600};
  std::size_t max_sessions{1024};
  bool no_prompt{false};
  serve->add_option("--http", http, "host:port; stdio when absent");
  serve->add_option("--idle-timeout", idle, "seconds")->capture_default_str();
  serve->add_option("--max-sessions", max_sessions)->capture_default_str();
  serve->add_option("--prompt-dir", prompt_dir);
  serve->add_flag("--no-prompt", no_prompt, "omit rendered prompts from reset results");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*play) return cmd_play(ef, policy, episodes, seed, out, verbose);
    if (*eval) return cmd_eval(ef, policy, games, runs, seed, workers, both_seats);
    if (*ablate) return cmd_ablate(budgets, positions, ablate_games, seed, workers);
    if (*theory) return cmd_theory(which, samples, seed, instances);
    if (*gen) return cmd_gen_sudoku(seed, count, blanks, render);
    if (*serve) return cmd_serve(ef, http, idle, max_sessions, prompt_dir, no_prompt);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
