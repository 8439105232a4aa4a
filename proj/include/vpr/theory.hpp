#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "vpr/rng.hpp"

namespace vpr::theory {

using Vec = std::vector<double>;
using Table = std::vector<std::vector<int>>;

// Shared-logit Bernoulli regime: T independent steps, each correct with
// probability p; score phi_t = a_t - p; success = product of the a_t.

struct BernoulliRegime {
  double p{0.5};
  int T{1};
};

enum class Estimator { vpr, outcome };

std::string_view to_string(Estimator e) noexcept;

struct ClosedForms {
  /// T p (1-p)
  double vpr_norm{0.0};
  /// T p^T (1-p)
  double or_norm{0.0};
};

/// Throws ConfigError unless 0 < p < 1 and T >= 1.
ClosedForms bernoulli_closed_forms(const BernoulliRegime& reg);

/// Exact mean and variance of one draw of the estimator.
struct Moments {
  double mean{0.0};
  double variance{0.0};
};
Moments estimator_moments(const BernoulliRegime& reg, Estimator est);

/// One sampled trajectory's gradient: sum_t (a_t - p)^2 for vpr,
/// (prod a_t - p^T) * sum_t (a_t - p) for outcome.
double sample_gradient(const BernoulliRegime& reg, Estimator est, Rng& rng);

struct GradientReport {
  Estimator estimator{Estimator::vpr};
  BernoulliRegime regime;
  std::size_t n_samples{0};
  double mean{0.0};
  double abs_mean{0.0};
  /// Sample standard error; empty for a single draw.
  std::optional<double> standard_error;
  /// sqrt(exact variance / n).
  double analytic_standard_error{0.0};
  double closed_form{0.0};
};

/// Throws ConfigError for n_samples < 1 or an invalid regime.
GradientReport mc_gradient(const BernoulliRegime& reg, Estimator est, std::size_t n_samples,
                           std::uint64_t seed);

// Finite bandit: states with weights d(s), a softmax policy over explicit
// logits per state, and a binary verifier table. Parameters are the logits,
// flattened state-major.

struct FiniteBandit {
  std::vector<double> d;
  std::vector<Vec> logits;
  Table verifier;

  std::size_t states() const noexcept { return d.size(); }
  std::size_t actions(std::size_t s) const noexcept { return logits[s].size(); }
  std::size_t params() const noexcept;
  Vec policy(std::size_t s) const;
};

/// Random instance: Dirichlet(1) state weights, normal logits, verifier with
/// at least one valid action per state. Deterministic in `seed`.
FiniteBandit random_bandit(std::uint64_t seed, std::size_t n_states = 5, std::size_t n_actions = 4);

/// J(theta) = sum_s d(s) sum_a pi(a|s) V(s,a).
double objective(const FiniteBandit& fb, const Table& v);

/// sum_s d(s) sum_a pi(a|s) (V(s,a) - b(s)) grad log pi(a|s), by enumeration.
/// `baseline` may be empty (b = 0).
Vec exact_gradient_finite(const FiniteBandit& fb, const Table& v, const std::vector<double>& baseline = {});

/// Central differences of objective() with step h.
Vec finite_difference_gradient(const FiniteBandit& fb, const Table& v, double h = 1e-5);

/// Gradient at fb.logits of L(theta) = E_{s~d, a~pi_old}[V(s,a) log pi_theta(a|s)].
Vec imitation_gradient(const FiniteBandit& fb, const Table& v, const std::vector<Vec>& logits_old);

/// max_k |grad J(theta_old) - grad L_IL(theta_old)| with theta_old = fb.logits.
double imitation_equivalence_check(const FiniteBandit& fb);

struct BiasBound {
  double bias_norm{0.0};
  double eps_bar{0.0};
  double G{0.0};
  /// Relative round-off allowed in holds(). A single flip at the entry with
  /// the largest score norm attains the bound exactly, so the two sides can
  /// differ by a few ulp in either direction.
  static constexpr double kRoundOff = 64 * std::numeric_limits<double>::epsilon();
  double bound() const noexcept { return G * eps_bar; }
  bool holds() const noexcept { return bias_norm <= bound() * (1.0 + kRoundOff); }
};

/// Max over (s,a) with d(s) pi(a|s) > 0 of the Euclidean norm of grad log pi.
double score_norm_bound(const FiniteBandit& fb);

/// Exact bias of the corrupted-verifier gradient against the oracle one.
BiasBound bias_bound(const FiniteBandit& fb, const Table& oracle, const Table& corrupted);

/// Flips each oracle entry independently with probability flip_rate, then
/// evaluates bias_bound. Throws ConfigError for flip_rate outside [0,1].
BiasBound bias_bound_check(const FiniteBandit& fb, const Table& oracle, double flip_rate, std::uint64_t seed);

double l2_norm(const Vec& v);
/// ||a - b|| / max(||b||, 1).
double relative_error(const Vec& a, const Vec& b);

}  // namespace vpr::theory
