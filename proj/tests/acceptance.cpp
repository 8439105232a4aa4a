// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails. Tolerances and seeds are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "naive_oracles.hpp"
#include "vpr/advantage.hpp"
#include "vpr/episode.hpp"
#include "vpr/game_state.hpp"
#include "vpr/posterior_oracle.hpp"
#include "vpr/render.hpp"
#include "vpr/rewards.hpp"
#include "vpr/search_oracle.hpp"
#include "vpr/sudoku.hpp"
#include "vpr/theory.hpp"

using namespace vpr;

namespace {

constexpr std::uint64_t kSeed = 20261016;

// Gradient scaling.
constexpr std::size_t kScalingSamples = 100000;
constexpr double kScalingBandSe = 3.0;
constexpr double kRatioRelTol = 8 * std::numeric_limits<double>::epsilon();
constexpr double kScalingSeconds = 60.0;
// Baseline invariance and imitation.
constexpr int kBanditInstances = 20;
constexpr double kExactTol = 1e-12;
constexpr double kFdRelTol = 1e-6;
// Bias bound.
constexpr int kBiasInstances = 100;
// Posterior.
constexpr int kPosteriorFixtures = 500;
// Sudoku.
constexpr int kSudokuSeeds = 100;
constexpr int kWrongFills = 50;
// Tic-Tac-Toe.
constexpr int kEvalGames = 1024;
constexpr int kEvalRuns = 5;
constexpr int kStrongBudget = 10000;
constexpr int kAblationPositions = 200;
constexpr double kMaxDisagreement = 0.05;
// Advantage.
constexpr int kAdvantageBatches = 1000;
constexpr double kZeroMeanTol = 1e-12;
constexpr int kTelescopeTrajectories = 100;
constexpr int kTelescopeRollouts = 16;
constexpr double kTelescopeTol = 1e-12;
// Paired dominance.
constexpr int kPairedSeeds = 1024;

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s  %-24s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void gradient_scaling() {
  using namespace vpr::theory;
  const auto start = std::chrono::steady_clock::now();
  int cells = 0, outside = 0, ratio_bad = 0;
  double worst_z = 0.0;
  for (double p : {0.3, 0.5, 0.7})
    for (int T : {1, 5, 10, 20}) {
      const BernoulliRegime reg{p, T};
      const auto cf = bernoulli_closed_forms(reg);
      if (std::abs(cf.or_norm * std::pow(p, -(T - 1)) - cf.vpr_norm) > kRatioRelTol * cf.vpr_norm) ++ratio_bad;
      for (Estimator est : {Estimator::vpr, Estimator::outcome}) {
        const auto seed = derive_seed(kSeed, {1, static_cast<std::uint64_t>(cells)});
        const auto r = mc_gradient(reg, est, kScalingSamples, seed);
        ++cells;
        const double dev = std::abs(r.mean - r.closed_form);
        // Cells with zero variance are constant draws; allow summation round-off.
        const double band = kScalingBandSe * r.analytic_standard_error + 64 * std::numeric_limits<double>::epsilon() * r.closed_form;
        if (dev > band) ++outside;
        if (r.analytic_standard_error > 0) worst_z = std::max(worst_z, dev / r.analytic_standard_error);
      }
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report("gradient-scaling", outside == 0 && ratio_bad == 0 && secs < kScalingSeconds,
         fmt("cells=%d outside_3se=%d max|z|=%.2f ratio_violations=%d time=%.2fs", cells, outside, worst_z, ratio_bad,
             secs));
}

void baseline_invariance() {
  using namespace vpr::theory;
  double worst_il = 0.0, worst_base = 0.0, worst_fd = 0.0;
  for (int i = 0; i < kBanditInstances; ++i) {
    const auto fb = random_bandit(derive_seed(kSeed, {2, static_cast<std::uint64_t>(i)}));
    std::mt19937_64 rng(derive_seed(kSeed, {3, static_cast<std::uint64_t>(i)}));
    std::vector<double> b(fb.states());
    for (auto& x : b) x = std::normal_distribution<double>(0.0, 3.0)(rng);
    const auto g0 = exact_gradient_finite(fb, fb.verifier);
    const auto gb = exact_gradient_finite(fb, fb.verifier, b);
    for (std::size_t k = 0; k < g0.size(); ++k) worst_base = std::max(worst_base, std::abs(g0[k] - gb[k]));
    worst_il = std::max(worst_il, imitation_equivalence_check(fb));
    worst_fd = std::max(worst_fd, relative_error(g0, finite_difference_gradient(fb, fb.verifier)));
  }
  report("baseline-invariance", worst_il <= kExactTol && worst_base <= kExactTol && worst_fd <= kFdRelTol,
         fmt("instances=%d imitation_gap=%.2e baseline_gap=%.2e fd_rel_err=%.2e", kBanditInstances, worst_il,
             worst_base, worst_fd));
}

void bias_bound() {
  using namespace vpr::theory;
  int violations = 0, checks = 0;
  double worst = 0.0;
  for (double flip : {0.05, 0.1, 0.2})
    for (int i = 0; i < kBiasInstances; ++i) {
      const auto fb = random_bandit(derive_seed(kSeed, {4, static_cast<std::uint64_t>(i)}));
      const auto flip_seed = derive_seed(kSeed, {5, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(flip * 100)});
      const auto r = bias_bound_check(fb, fb.verifier, flip, flip_seed);
      ++checks;
      if (!r.holds()) ++violations;
      if (r.bound() > 0) worst = std::max(worst, r.bias_norm / r.bound());
    }
  report("bias-bound", violations == 0,
         fmt("checks=%d violations=%d max_bias/bound=%.4f", checks, violations, worst));
}

void posterior_equivalence() {
  std::mt19937_64 rng(kSeed);
  int mismatches = 0, mass_bad = 0;
  for (int k = 0; k < kPosteriorFixtures; ++k) {
    const auto b = naive::random_midgame(rng, 4, 3);
    const auto pm = enumerate_consistent(b);
    const auto ref = naive::posterior_all_subsets(observe(b), b.mine_count());
    // Same denominator on both sides, so equal numerators mean equal rationals.
    if (pm.config_count != ref.configs || pm.membership != ref.membership) ++mismatches;
    std::uint64_t mass = 0;
    for (auto m : pm.membership) mass += m;
    if (mass != pm.config_count * static_cast<std::uint64_t>(pm.remaining_mines)) ++mass_bad;
  }
  report("posterior-equivalence", mismatches == 0 && mass_bad == 0,
         fmt("fixtures=%d mismatches=%d mass_violations=%d", kPosteriorFixtures, mismatches, mass_bad));
}

void sudoku_soundness() {
  int bad_blanks = 0, not_unique = 0, solved = 0;
  double cr_sum = 0.0;
  EpisodeConfig cfg;
  cfg.env = EnvKind::sudoku;
  for (int s = 0; s < kSudokuSeeds; ++s) {
    const auto ep = sudoku_generate(static_cast<std::uint64_t>(s));
    if (ep.initial_blanks() != 40) ++bad_blanks;
    if (count_solutions(ep.puzzle, 2) != 1) ++not_unique;
    const auto t = run_episode(cfg, Policy::oracle_following(), static_cast<std::uint64_t>(s));
    if (t.outcome.success) ++solved;
    cr_sum += t.outcome.completion_rate;
  }
  const std::string sr = fmt("%.2f", 100.0 * solved / kSudokuSeeds);
  const std::string cr = fmt("%.2f", 100.0 * cr_sum / kSudokuSeeds);

  // Wrong but locally consistent fills leave no completion.
  std::mt19937_64 rng(kSeed);
  int sampled = 0, survivors = 0;
  for (int s = 0; sampled < kWrongFills; ++s) {
    const auto ep = sudoku_generate(derive_seed(kSeed, {6, static_cast<std::uint64_t>(s)}));
    std::vector<Fill> wrong;
    for (const auto& a : sudoku_legal(ep)) {
      const auto& f = std::get<Fill>(a);
      if (ep.solution[(f.row - 1) * 9 + (f.col - 1)] != f.digit) wrong.push_back(f);
    }
    if (wrong.empty()) continue;
    const auto& f = wrong[rng() % wrong.size()];
    auto g = ep.current;
    g[(f.row - 1) * 9 + (f.col - 1)] = f.digit;
    if (count_solutions(g, 2) != 0) ++survivors;
    ++sampled;
  }
  report("sudoku-soundness",
         bad_blanks == 0 && not_unique == 0 && sr == "100.00" && cr == "100.00" && survivors == 0,
         fmt("seeds=%d blanks_bad=%d non_unique=%d SR=%s CR=%s wrong_fills=%d with_solutions=%d", kSudokuSeeds,
             bad_blanks, not_unique, sr.c_str(), cr.c_str(), sampled, survivors));
}

void tictactoe_oracles() {
  // Exact values against an independent solver, and the negamax identity.
  naive::TttMinimax ref;
  int value_bad = 0, identity_bad = 0, states = 0;
  for (const auto& s : all_reachable_states()) {
    ++states;
    if (!s.ongoing()) continue;
    const int v = minimax_value(s);
    if (v != ref.value(s)) ++value_bad;
    int best = -2;
    for (const auto& a : ttt_legal(s)) best = std::max(best, -minimax_value(ttt_apply(s, std::get<Place>(a))));
    if (best != v) ++identity_bad;
  }
  const int empty = minimax_value(ttt_initial());

  EvalConfig e;
  e.episode.env = EnvKind::tictactoe;
  e.episode.verifier.ttt = TttVerifier::minimax;
  e.episode.opponent_random_share = 0.0;
  SearchVerdictConfig strong;
  strong.n_simulations = kStrongBudget;
  e.episode.opponent = Policy::mcts_player(strong);
  e.n_games = kEvalGames;
  e.n_runs = kEvalRuns;
  e.seed = kSeed;
  std::string returns[2];
  bool exact = true;
  for (int k = 0; k < 2; ++k) {
    e.episode.seat = k == 0 ? Seat::first : Seat::second;
    const auto sum = evaluate(e, Policy::oracle_following());
    returns[k] = fmt("%.2f+-%.2f", sum.mean_return.mean, sum.mean_return.std);
    exact = exact && sum.mean_return.mean == 0.0 && sum.mean_return.std == 0.0;
  }

  const auto positions = sample_positions(kAblationPositions, kSeed);
  std::vector<double> eps;
  for (int n : {100, 1000, 10000}) {
    SearchVerdictConfig c;
    c.n_simulations = n;
    c.seed = kSeed;
    eps.push_back(disagreement_rate(c, positions));
  }
  const bool monotone = eps[1] <= eps[0] && eps[2] <= eps[1];
  report("tictactoe-oracles",
         empty == 0 && value_bad == 0 && identity_bad == 0 && exact && eps[2] <= kMaxDisagreement && monotone,
         fmt("states=%d empty_value=%d value_mismatch=%d negamax_bad=%d return_1st=%s return_2nd=%s "
             "eps(100,1000,10000)=%.4f,%.4f,%.4f",
             states, empty, value_bad, identity_bad, returns[0].c_str(), returns[1].c_str(), eps[0], eps[1],
             eps[2]));

  // Not a criterion: the same ablation without solver backups.
  std::vector<double> plain;
  for (int n : {100, 1000, 10000}) {
    SearchVerdictConfig c;
    c.n_simulations = n;
    c.seed = kSeed;
    c.solve = false;
    plain.push_back(disagreement_rate(c, positions));
  }
  std::printf("INFO  %-24s plain UCT eps(100,1000,10000)=%.4f,%.4f,%.4f\n", "tictactoe-oracles", plain[0], plain[1],
              plain[2]);
}

void advantage_pipeline() {
  std::mt19937_64 rng(kSeed);
  int zero_mean_bad = 0, fallback_bad = 0, recompute_bad = 0;
  for (int k = 0; k < kAdvantageBatches; ++k) {
    const auto K = 1 + rng() % 12;
    RaggedBatch r(K);
    for (auto& traj : r) {
      traj.resize(1 + rng() % 10);
      const bool binary = rng() % 2;
      for (auto& x : traj) x = binary ? static_cast<double>(rng() % 2) : std::normal_distribution<double>(0, 2)(rng);
    }
    const auto b = normalize_advantages(r);
    std::size_t T = 0;
    for (const auto& traj : r) T = std::max(T, traj.size());
    for (std::size_t t = 0; t < T; ++t) {
      std::vector<double> group;
      for (const auto& traj : r)
        if (t < traj.size()) group.push_back(traj[t]);
      const bool expect_fallback = group.size() < 4;
      if (b.fallback[t] != expect_fallback || b.active[t] != static_cast<int>(group.size())) ++fallback_bad;
      if (expect_fallback) continue;
      // Two-pass population statistics, computed here independently.
      double mu = 0.0;
      for (double x : group) mu += x;
      mu /= static_cast<double>(group.size());
      double var = 0.0;
      for (double x : group) var += (x - mu) * (x - mu);
      const double sigma = std::sqrt(var / static_cast<double>(group.size()));
      double sum = 0.0;
      for (std::size_t i = 0; i < K; ++i) {
        if (t >= r[i].size()) continue;
        const double a = b.advantages[i][t];
        sum += a;
        if (std::abs(a - (r[i][t] - mu) / (sigma + 1e-6)) > 1e-9) ++recompute_bad;
      }
      if (std::abs(sum / static_cast<double>(group.size())) > kZeroMeanTol) ++zero_mean_bad;
    }
  }

  // MC-PR rewards telescope to the realized return minus the first value estimate.
  int telescope_bad = 0;
  double worst = 0.0;
  for (int k = 0; k < kTelescopeTrajectories; ++k) {
    EpisodeConfig cfg;
    cfg.env = static_cast<EnvKind>(k % 3);
    cfg.reward_mode = RewardMode::mcpr;
    cfg.mcpr.rollouts = kTelescopeRollouts;
    cfg.verifier.ttt = TttVerifier::minimax;
    cfg.opponent = Policy::uniform_random();
    cfg.seat = (k / 3) % 2 ? Seat::second : Seat::first;
    const auto seed = derive_seed(kSeed, {7, static_cast<std::uint64_t>(k)});
    const auto t = run_episode(cfg, Policy::epsilon_oracle(0.3), seed);
    double sum = 0.0;
    for (const auto& turn : t.turns) sum += turn.reward;
    const auto states = replay_states(t);
    const double v1 = mc_value(states.front(), t.agent_mark, horizon(cfg.env, t.options), cfg.mcpr, mcpr_seed(seed, 1));
    const double gap = std::abs(sum - (t.outcome.ret - v1));
    worst = std::max(worst, gap);
    if (gap > kTelescopeTol) ++telescope_bad;
  }

  const double spot = clipped_term(1.5, 1.0, 0.2);
  const double spot_neg = clipped_term(0.5, -1.0, 0.2);
  const double spot_batch = clipped_surrogate({{{1.5, 1.0}, {0.5}}, {{1.0, 2.0}, {-1.0}}, 0.2});
  // 1.2 + 2.0 for the first trajectory, -0.8 for the second, averaged over two.
  const bool spots = spot == 1.2 && spot_neg == -0.8 && std::abs(spot_batch - 1.2) <= 1e-15;
  report("advantage-pipeline", zero_mean_bad == 0 && fallback_bad == 0 && recompute_bad == 0 && telescope_bad == 0 && spots,
         fmt("batches=%d zero_mean_bad=%d fallback_bad=%d recompute_bad=%d telescope_bad=%d max_gap=%.1e "
             "clip(1.5,1,0.2)=%.17g clip(0.5,-1,0.2)=%.17g",
             kAdvantageBatches, zero_mean_bad, fallback_bad, recompute_bad, telescope_bad, worst, spot, spot_neg));
}

void rendering_grammar() {
  int render_bad = 0;
  if (render_observation(ttt_initial()) != fixtures::kTttEmpty) ++render_bad;
  if (render_observation(grid_from_string(fixtures::kSudokuPuzzle)) != fixtures::kSudokuRendered) ++render_bad;
  if (render_observation(mine_initial(3)) != fixtures::kMineFresh) ++render_bad;

  std::mt19937_64 rng(kSeed);
  long checked = 0, round_trip_bad = 0;
  for (auto env : {EnvKind::tictactoe, EnvKind::sudoku, EnvKind::minesweeper})
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      GameState s = initial_state(env, seed);
      while (!is_terminal(s)) {
        const auto legal = legal_actions(s);
        if (legal.empty()) break;
        for (const auto& a : legal) {
          ++checked;
          if (parse_action(wrap_answer(a), env, action_dims(s)) != a) ++round_trip_bad;
        }
        auto it = legal.begin();
        std::advance(it, static_cast<long>(rng() % legal.size()));
        s = apply_action(s, *it);
      }
    }
  report("rendering-grammar", render_bad == 0 && round_trip_bad == 0,
         fmt("fixtures_bad=%d actions_checked=%ld round_trip_bad=%ld", render_bad, checked, round_trip_bad));
}

void paired_dominance() {
  bool ok = true;
  std::string detail;
  for (auto env : {EnvKind::sudoku, EnvKind::minesweeper}) {
    EvalConfig e;
    e.episode.env = env;
    e.n_games = kPairedSeeds;
    e.n_runs = 1;
    e.seed = kSeed;
    const auto oracle = evaluate(e, Policy::oracle_following());
    const auto random = evaluate(e, Policy::uniform_random());
    ok = ok && oracle.success_rate.mean > random.success_rate.mean &&
         oracle.completion_rate.mean > random.completion_rate.mean;
    detail += fmt("%s SR %.2f>%.2f CR %.2f>%.2f  ", std::string(to_string(env)).c_str(),
                  100 * oracle.success_rate.mean, 100 * random.success_rate.mean, 100 * oracle.completion_rate.mean,
                  100 * random.completion_rate.mean);
  }
  report("paired-dominance", ok, fmt("seeds=%d ", kPairedSeeds) + detail);
}

}  // namespace

int main() {
  gradient_scaling();
  baseline_invariance();
  bias_bound();
  posterior_equivalence();
  sudoku_soundness();
  tictactoe_oracles();
  advantage_pipeline();
  rendering_grammar();
  paired_dominance();
  std::printf("%s  %d criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
