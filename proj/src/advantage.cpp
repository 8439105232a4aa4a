#include "vpr/advantage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vpr/errors.hpp"

namespace vpr {

namespace {

struct Moments {
  double mu{0.0};
  double sigma{0.0};
};

template <class Values>
Moments population_moments(const Values& values) {
  Moments m;
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mu = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - m.mu) * (v - m.mu);
  m.sigma = std::sqrt(sq / static_cast<double>(values.size()));
  return m;
}

}  // namespace

AdvantageBatch normalize_advantages(RaggedBatch rewards, double delta, int min_group) {
  if (rewards.empty()) throw EmptyBatchError("advantage batch has no trajectories");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (min_group < 1) throw ConfigError("min_group must be at least 1");

  AdvantageBatch out;
  out.delta = delta;
  out.min_group = min_group;
  std::size_t horizon = 0;
  std::vector<double> all;
  for (const auto& r : rewards) {
    horizon = std::max(horizon, r.size());
    all.insert(all.end(), r.begin(), r.end());
  }
  const Moments global = population_moments(all);
  out.global_mu = global.mu;
  out.global_sigma = global.sigma;

  out.mu.resize(horizon);
  out.sigma.resize(horizon);
  out.active.resize(horizon);
  out.fallback.resize(horizon);
  std::vector<double> column;
  for (std::size_t t = 0; t < horizon; ++t) {
    column.clear();
    for (const auto& r : rewards)
      if (t < r.size()) column.push_back(r[t]);
    out.active[t] = static_cast<int>(column.size());
    out.fallback[t] = out.active[t] < min_group;
    const Moments m = out.fallback[t] ? global : population_moments(column);
    out.mu[t] = m.mu;
    out.sigma[t] = m.sigma;
  }

  out.advantages.resize(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    out.advantages[i].resize(rewards[i].size());
    for (std::size_t t = 0; t < rewards[i].size(); ++t)
      out.advantages[i][t] = (rewards[i][t] - out.mu[t]) / (out.sigma[t] + delta);
  }
  out.rewards = std::move(rewards);
  return out;
}

double clipped_term(double rho, double advantage, double clip_eps) noexcept {
  const double clipped = std::clamp(rho, 1.0 - clip_eps, 1.0 + clip_eps);
  return std::min(rho * advantage, clipped * advantage);
}

double clipped_surrogate(const SurrogateInputs& in) {
  if (!(in.clip_eps > 0.0 && in.clip_eps < 1.0)) throw ShapeError("clip width must lie in (0,1)");
  if (in.ratios.empty()) throw ShapeError("surrogate batch is empty");
  if (in.ratios.size() != in.advantages.size())
    throw ShapeError("ratios cover " + std::to_string(in.ratios.size()) + " trajectories, advantages " +
                     std::to_string(in.advantages.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < in.ratios.size(); ++i) {
    if (in.ratios[i].size() != in.advantages[i].size())
      throw ShapeError("trajectory " + std::to_string(i) + ": ratio and advantage lengths differ");
    for (std::size_t t = 0; t < in.ratios[i].size(); ++t) {
      if (!(in.ratios[i][t] > 0.0)) throw ShapeError("importance ratios must be positive");
      total += clipped_term(in.ratios[i][t], in.advantages[i][t], in.clip_eps);
    }
  }
  return total / static_cast<double>(in.ratios.size());
}

void write_advantage_csv(std::ostream& os, const AdvantageBatch& batch) {
  os << "trajectory,turn,reward,mu,sigma,advantage,fallback\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < batch.rewards.size(); ++i)
    for (std::size_t t = 0; t < batch.rewards[i].size(); ++t)
      os << i << ',' << t + 1 << ',' << batch.rewards[i][t] << ',' << batch.mu[t] << ','
         << batch.sigma[t] << ',' << batch.advantages[i][t] << ',' << (batch.fallback[t] ? 1 : 0)
         << '\n';
  os.precision(old);
}

}  // namespace vpr
