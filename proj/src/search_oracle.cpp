#include "vpr/search_oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <tuple>
#include <unordered_set>

#include "vpr/errors.hpp"
#include "vpr/rng.hpp"

namespace vpr {

namespace {

int nth_set_bit(unsigned mask, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) mask &= mask - 1;
  return std::countr_zero(mask);
}

int random_cell(unsigned mask, Rng& rng) {
  return nth_set_bit(mask, uniform_index(rng, static_cast<std::size_t>(std::popcount(mask))));
}

// +1 / -1 / 0 from the perspective of `mover` once `s` has finished.
double terminal_value(const TttState& s, Mark mover) {
  switch (s.status) {
    case TttStatus::x_wins: return mover == Mark::X ? 1.0 : -1.0;
    case TttStatus::o_wins: return mover == Mark::O ? 1.0 : -1.0;
    default: return 0.0;
  }
}

struct Node {
  TttState state;
  int parent{-1};
  std::array<int, 9> child{};
  std::uint16_t untried{0};
  int visits{0};
  // Accumulated value from the perspective of the player who moved into this
  // node.
  double value_sum{0.0};
  // Same perspective; kUnproven until the solver settles the node.
  signed char proven{kUnproven};

  static constexpr signed char kUnproven = 2;
  bool is_proven() const noexcept { return proven != kUnproven; }
};

class UctTree {
 public:
  UctTree(const TttState& root, const SearchVerdictConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    nodes_.reserve(static_cast<std::size_t>(cfg.n_simulations) + 1);
    add_node(root, -1);
  }

  void iterate() {
    int cur = 0;
    // Selection. The root keeps exploring its unproven children even once its
    // own value is settled, so every optimal root move can be proven.
    if (nodes_[0].state.ongoing() && nodes_[0].untried == 0 && settled(0)) {
      const int c = best_child(0, /*skip_proven=*/true);
      cur = c >= 0 ? c : best_child(0);
    }
    while (nodes_[cur].state.ongoing() && nodes_[cur].untried == 0 && !settled(cur))
      cur = best_child(cur);
    // Expansion.
    if (nodes_[cur].state.ongoing() && (cur == 0 || !settled(cur))) {
      const int cell = random_cell(nodes_[cur].untried, rng_);
      nodes_[cur].untried &= static_cast<std::uint16_t>(~(1u << cell));
      const int idx = add_node(ttt_play_cell(nodes_[cur].state, cell), cur);
      nodes_[cur].child[cell] = idx;
      cur = idx;
    }
    // Simulation: value from the perspective of the player who moved into cur.
    double value;
    if (settled(cur) || !nodes_[cur].state.ongoing()) {
      value = leaf_value(cur);
    } else {
      TttState sim = nodes_[cur].state;
      while (sim.ongoing()) sim = ttt_play_cell(sim, random_cell(sim.empty_mask(), rng_));
      value = terminal_value(sim, opponent_of(nodes_[cur].state.to_move));
    }
    // Backpropagation.
    for (int n = cur; n >= 0; n = nodes_[n].parent) {
      Node& node = nodes_[n];
      ++node.visits;
      node.value_sum += value;
      if (cfg_.solve && !node.is_proven()) try_prove(n);
      value = -value;
    }
  }

  SearchStats root_stats() const {
    SearchStats out;
    const Node& root = nodes_[0];
    out.total_simulations = root.visits;
    const auto legal = root.state.empty_mask();
    for (int cell = 0; cell < 9; ++cell) {
      if (!(legal & (1u << cell))) continue;
      ActionStats st;
      st.action = Place{root.state.to_move, cell / 3, cell % 3};
      if (const int c = root.child[cell]; c >= 0) {
        st.visits = nodes_[c].visits;
        st.mean_value = st.visits > 0 ? nodes_[c].value_sum / st.visits : 0.0;
        if (nodes_[c].is_proven()) st.proven = nodes_[c].proven;
      }
      out.actions.push_back(st);
    }
    return out;
  }

 private:
  int add_node(const TttState& s, int parent) {
    Node n;
    n.state = s;
    n.parent = parent;
    n.child.fill(-1);
    n.untried = s.ongoing() ? s.empty_mask() : 0;
    if (cfg_.solve && !s.ongoing())
      n.proven = static_cast<signed char>(terminal_value(s, opponent_of(s.to_move)));
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int best_child(int idx, bool skip_proven = false) const {
    const Node& node = nodes_[idx];
    const double log_n = std::log(static_cast<double>(node.visits));
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int cell = 0; cell < 9; ++cell) {
      const int c = node.child[cell];
      if (c < 0) continue;
      const Node& ch = nodes_[c];
      if (skip_proven && ch.is_proven()) continue;
      const double score = ch.is_proven()
                               ? ch.proven
                               : ch.value_sum / ch.visits + cfg_.uct_c * std::sqrt(log_n / ch.visits);
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    return best;
  }

  bool settled(int idx) const noexcept { return cfg_.solve && nodes_[idx].is_proven(); }

  double leaf_value(int idx) const {
    const Node& node = nodes_[idx];
    if (node.is_proven()) return node.proven;
    return terminal_value(node.state, opponent_of(node.state.to_move));
  }

  // Negamax over children: proven when a child is a proven win for the side
  // to move here, or when every child exists and is proven.
  void try_prove(int idx) {
    Node& node = nodes_[idx];
    if (!node.state.ongoing()) return;
    int best = -2;
    bool all = node.untried == 0;
    for (int cell = 0; cell < 9; ++cell) {
      const int c = node.child[cell];
      if (c < 0) continue;
      if (!nodes_[c].is_proven()) {
        all = false;
        continue;
      }
      best = std::max(best, static_cast<int>(nodes_[c].proven));
    }
    if (best == 1 || (all && best > -2)) node.proven = static_cast<signed char>(-best);
  }

  const SearchVerdictConfig& cfg_;
  Rng rng_;
  std::vector<Node> nodes_;
};

// Memo over (x_mask, o_mask); 2 = unknown, otherwise value + 1.
class MinimaxTable {
 public:
  static MinimaxTable& instance() {
    static MinimaxTable table;
    return table;
  }

  int value(const TttState& s) {
    std::lock_guard lock(mu_);
    return solve(s);
  }

 private:
  MinimaxTable() { memo_.fill(kUnknown); }

  static std::size_t key(const TttState& s) { return (std::size_t{s.o_mask} << 9) | s.x_mask; }

  int solve(const TttState& s) {
    auto& slot = memo_[key(s)];
    if (slot != kUnknown) return slot - 1;
    int v;
    if (s.status == TttStatus::draw) {
      v = 0;
    } else if (!s.ongoing()) {
      v = -1;  // the previous mover completed a line
    } else {
      v = -1;
      const unsigned empty = s.empty_mask();
      for (int cell = 0; cell < 9 && v < 1; ++cell)
        if (empty & (1u << cell)) v = std::max(v, -solve(ttt_play_cell(s, cell)));
    }
    slot = static_cast<signed char>(v + 1);
    return v;
  }

  static constexpr signed char kUnknown = 3;
  std::array<signed char, 1u << 18> memo_{};
  std::mutex mu_;
};

}  // namespace

const ActionStats& SearchStats::at(const Place& a) const {
  for (const auto& st : actions)
    if (st.action == a) return st;
  throw IllegalMoveError("action not in search statistics");
}

Place SearchStats::best_move() const {
  if (actions.empty()) throw TerminalError("no actions in search statistics");
  auto key = [](const ActionStats& a) {
    return std::tuple(a.proven.value_or(0), a.visits, a.mean_value);
  };
  const auto it = std::max_element(actions.begin(), actions.end(),
                                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return it->action;
}

SearchStats mcts_search(const TttState& s, const SearchVerdictConfig& cfg) {
  if (!s.ongoing()) throw TerminalError("search on a finished game");
  if (cfg.n_simulations < 1) throw ConfigError("n_simulations must be >= 1");
  if (cfg.tie_tolerance < 0) throw ConfigError("tie_tolerance must be >= 0");
  UctTree tree(s, cfg);
  for (int i = 0; i < cfg.n_simulations; ++i) tree.iterate();
  return tree.root_stats();
}

ActionSet argmax_set(const SearchStats& stats, double tie_tolerance) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& st : stats.actions)
    if (st.visits > 0) best = std::max(best, st.value());
  ActionSet out;
  for (const auto& st : stats.actions)
    if (st.visits > 0 && st.value() >= best - tie_tolerance) out.insert(st.action);
  return out;
}

ActionSet search_oracle_set(const TttState& s, const SearchVerdictConfig& cfg) {
  return argmax_set(mcts_search(s, cfg), cfg.tie_tolerance);
}

int minimax_value(const TttState& s) { return MinimaxTable::instance().value(s); }

MinimaxResult minimax(const TttState& s) {
  MinimaxResult out;
  out.value = minimax_value(s);
  if (!s.ongoing()) return out;
  const unsigned empty = s.empty_mask();
  for (int cell = 0; cell < 9; ++cell)
    if ((empty & (1u << cell)) && -minimax_value(ttt_play_cell(s, cell)) == out.value)
      out.optimal_set.insert(Place{s.to_move, cell / 3, cell % 3});
  return out;
}

double disagreement_rate(const SearchVerdictConfig& cfg, std::span<const TttState> positions) {
  if (positions.empty()) throw EmptyInputError("no positions");
  std::size_t disagreements = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const TttState& s = positions[k];
    SearchVerdictConfig local = cfg;
    local.seed = derive_seed(cfg.seed, {stream::kVerifier, k});
    const auto approx = search_oracle_set(s, local);
    const auto exact = minimax(s).optimal_set;
    const ActionSet legal = ttt_legal(s);
    Rng pick(derive_seed(cfg.seed, {stream::kPolicy, k}));
    const Action a = *std::next(legal.begin(), static_cast<long>(uniform_index(pick, legal.size())));
    if ((approx.count(a) > 0) != (exact.count(a) > 0)) ++disagreements;
  }
  return static_cast<double>(disagreements) / static_cast<double>(positions.size());
}

std::vector<TttState> all_reachable_states() {
  std::vector<TttState> out;
  std::unordered_set<std::uint32_t> seen;
  std::vector<TttState> stack{ttt_initial()};
  while (!stack.empty()) {
    const TttState s = stack.back();
    stack.pop_back();
    if (!seen.insert((std::uint32_t{s.o_mask} << 9) | s.x_mask).second) continue;
    out.push_back(s);
    if (!s.ongoing()) continue;
    const unsigned empty = s.empty_mask();
    for (int cell = 0; cell < 9; ++cell)
      if (empty & (1u << cell)) stack.push_back(ttt_play_cell(s, cell));
  }
  return out;
}

std::vector<TttState> sample_positions(std::size_t n, std::uint64_t seed) {
  std::vector<TttState> pool;
  for (const auto& s : all_reachable_states())
    if (s.ongoing()) pool.push_back(s);
  std::sort(pool.begin(), pool.end(), [](const TttState& a, const TttState& b) {
    return std::pair(a.o_mask, a.x_mask) < std::pair(b.o_mask, b.x_mask);
  });
  Rng rng(seed);
  std::vector<TttState> out;
  out.reserve(n);
  // Distinct positions while the pool lasts, then with replacement.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t left = pool.size() - (i % pool.size());
    const std::size_t base = i % pool.size();
    const std::size_t j = base + uniform_index(rng, left);
    std::swap(pool[base], pool[j]);
    out.push_back(pool[base]);
  }
  return out;
}

}  // namespace vpr
