#include "vpr/posterior_oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "vpr/errors.hpp"

namespace vpr {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ConfigError("configuration count overflows");
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw ConfigError("configuration count overflows");
  }
  return static_cast<std::uint64_t>(acc);
}

struct Constraint {
  int target{0};
  std::vector<int> vars;  // frontier positions
  int assigned_mines{0};
  int unassigned{0};
};

class Enumerator {
 public:
  Enumerator(const MineObservation& obs, int n_mines) : obs_(obs) {
    const int n = obs.rows * obs.cols;
    int known_mines = 0;
    std::vector<int> frontier_pos(n, -1);
    for (int i = 0; i < n; ++i) {
      const int v = obs.cells[i];
      if (v == MineObservation::kMine) {
        ++known_mines;
      } else if (v >= 0) {
        Constraint con;
        con.target = v;
        for_neighbours(i, [&](int j) {
          if (!is_unknown(j)) return;
          if (frontier_pos[j] < 0) {
            frontier_pos[j] = static_cast<int>(frontier_.size());
            frontier_.push_back(j);
          }
          con.vars.push_back(frontier_pos[j]);
        });
        con.unassigned = static_cast<int>(con.vars.size());
        if (con.target > con.unassigned)
          throw InconsistentObservationError("digit exceeds hidden neighbours");
        constraints_.push_back(std::move(con));
      }
    }
    for (int i = 0; i < n; ++i)
      if (is_unknown(i) && frontier_pos[i] < 0) interior_.push_back(i);
    remaining_ = n_mines - known_mines;
    if (remaining_ < 0) throw InconsistentObservationError("more exploded mines than mines");
    var_constraints_.resize(frontier_.size());
    for (int k = 0; k < static_cast<int>(constraints_.size()); ++k)
      for (int v : constraints_[k].vars) var_constraints_[v].push_back(k);
    assignment_.assign(frontier_.size(), 0);
    frontier_weight_.assign(frontier_.size(), 0);
  }

  PosteriorMap run() {
    dfs(0, 0);
    PosteriorMap pm;
    pm.rows = obs_.rows;
    pm.cols = obs_.cols;
    pm.remaining_mines = remaining_;
    pm.config_count = total_;
    pm.membership.assign(obs_.cells.size(), 0);
    pm.hidden.assign(obs_.cells.size(), 0);
    for (std::size_t i = 0; i < obs_.cells.size(); ++i) pm.hidden[i] = is_unknown(static_cast<int>(i));
    for (std::size_t v = 0; v < frontier_.size(); ++v) pm.membership[frontier_[v]] = frontier_weight_[v];
    for (int i : interior_) pm.membership[i] = interior_weight_;
    if (total_ == 0) throw InconsistentObservationError("no mine configuration matches the board");
    return pm;
  }

 private:
  bool is_unknown(int i) const {
    const int v = obs_.cells[i];
    return v == MineObservation::kHidden || v == MineObservation::kFlag;
  }

  template <class F>
  void for_neighbours(int i, F&& f) const {
    const int r = i / obs_.cols, c = i % obs_.cols;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        const int nr = r + dr, nc = c + dc;
        if ((dr || dc) && nr >= 0 && nr < obs_.rows && nc >= 0 && nc < obs_.cols)
          f(nr * obs_.cols + nc);
      }
  }

  // Assigns `value` to frontier variable v; false if a constraint breaks.
  bool assign(int v, int value) {
    bool ok = true;
    for (int k : var_constraints_[v]) {
      auto& con = constraints_[k];
      --con.unassigned;
      con.assigned_mines += value;
      if (con.assigned_mines > con.target || con.assigned_mines + con.unassigned < con.target)
        ok = false;
    }
    assignment_[v] = static_cast<std::uint8_t>(value);
    return ok;
  }

  void unassign(int v, int value) {
    for (int k : var_constraints_[v]) {
      ++constraints_[k].unassigned;
      constraints_[k].assigned_mines -= value;
    }
  }

  void dfs(std::size_t v, int mines) {
    if (mines > remaining_) return;
    if (v == frontier_.size()) {
      const int rest = remaining_ - mines;
      const int interior = static_cast<int>(interior_.size());
      const std::uint64_t weight = binomial(interior, rest);
      if (weight == 0) return;
      total_ = checked_add(total_, weight);
      for (std::size_t u = 0; u < frontier_.size(); ++u)
        if (assignment_[u]) frontier_weight_[u] = checked_add(frontier_weight_[u], weight);
      interior_weight_ = checked_add(interior_weight_, binomial(interior - 1, rest - 1));
      return;
    }
    for (int value = 0; value <= 1; ++value) {
      if (assign(static_cast<int>(v), value)) dfs(v + 1, mines + value);
      unassign(static_cast<int>(v), value);
    }
  }

  const MineObservation& obs_;
  std::vector<int> frontier_;
  std::vector<int> interior_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<int>> var_constraints_;
  std::vector<std::uint8_t> assignment_;
  std::vector<std::uint64_t> frontier_weight_;
  std::uint64_t interior_weight_{0};
  std::uint64_t total_{0};
  int remaining_{0};
};

}  // namespace

double PosteriorMap::probability(int r, int c) const {
  const int i = index(r, c);
  if (!hidden[i]) return 0.0;
  return static_cast<double>(membership[i]) / static_cast<double>(config_count);
}

PosteriorMap enumerate_consistent(const MineObservation& obs, int n_mines) {
  return Enumerator(obs, n_mines).run();
}

PosteriorMap enumerate_consistent(const MineBoard& b) {
  return enumerate_consistent(observe(b), b.mine_count());
}

ActionSet oracle_valid_probabilistic(const MineBoard& b, const PosteriorMap& pm) {
  if (!b.ongoing()) throw TerminalError("minesweeper game is over");
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (int i = 0; i < b.cells(); ++i)
    if (!b.revealed[i] && !b.flagged[i]) best = std::min(best, pm.membership[i]);
  ActionSet out;
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c) {
      const int i = b.index(r, c);
      if (b.revealed[i]) continue;
      if (b.flagged[i]) {
        if (!pm.certainly_mine(r, c)) out.insert(Flag{r, c});
        continue;
      }
      if (pm.membership[i] == best) out.insert(Reveal{r, c});
      if (pm.membership[i] == pm.config_count) out.insert(Flag{r, c});
    }
  return out;
}

ActionSet oracle_valid_probabilistic(const MineBoard& b) {
  return oracle_valid_probabilistic(b, enumerate_consistent(b));
}

VerifierVerdict verdict_probabilistic(const MineBoard& b, const Action& a) {
  const ActionSet legal = mine_legal(b);
  if (!legal.count(a)) throw IllegalMoveError(format_action(a) + " is not legal here");
  const PosteriorMap pm = enumerate_consistent(b);
  ActionSet valid = oracle_valid_probabilistic(b, pm);
  std::string meta = "configs=" + std::to_string(pm.config_count);
  return make_verdict(a, std::move(valid), std::move(meta));
}

}  // namespace vpr
