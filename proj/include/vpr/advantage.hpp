#pragma once

#include <ostream>
#include <vector>

namespace vpr {

/// Ragged batch: one reward vector per trajectory, indexed by turn.
using RaggedBatch = std::vector<std::vector<double>>;

struct AdvantageBatch {
  RaggedBatch rewards;
  RaggedBatch advantages;
  /// Per turn t (0-based): statistics actually used, group size |I_t| and
  /// whether the global statistics replaced the per-turn ones.
  std::vector<double> mu;
  std::vector<double> sigma;
  std::vector<int> active;
  std::vector<bool> fallback;
  double global_mu{0.0};
  double global_sigma{0.0};
  double delta{1e-6};
  int min_group{4};
};

/// A_{i,t} = (r_{i,t} - mu_t) / (sigma_t + delta), with population mean and
/// standard deviation over the trajectories still active at turn t. Turns with
/// fewer than `min_group` active trajectories use the mean and deviation over
/// every (i,t) pair instead. Each turn is normalised independently (no
/// discounting across turns). Throws EmptyBatchError for K = 0 and
/// ConfigError for delta <= 0 or min_group < 1.
AdvantageBatch normalize_advantages(RaggedBatch rewards, double delta = 1e-6, int min_group = 4);

struct SurrogateInputs {
  RaggedBatch ratios;
  RaggedBatch advantages;
  double clip_eps{0.2};
};

/// min(rho*A, clip(rho, 1-eps, 1+eps)*A) for one term.
double clipped_term(double rho, double advantage, double clip_eps) noexcept;

/// Mean over trajectories of the per-trajectory sum of clipped terms. Throws
/// ShapeError when shapes differ, a ratio is not positive, eps is outside
/// (0,1) or the batch is empty.
double clipped_surrogate(const SurrogateInputs& in);

/// CSV with columns trajectory,turn,reward,mu,sigma,advantage,fallback.
/// Turns are 1-based.
void write_advantage_csv(std::ostream& os, const AdvantageBatch& batch);

}  // namespace vpr
