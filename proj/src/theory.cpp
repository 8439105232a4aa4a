#include "vpr/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vpr/errors.hpp"

namespace vpr::theory {

std::string_view to_string(Estimator e) noexcept { return e == Estimator::vpr ? "vpr" : "or"; }

namespace {

void check_regime(const BernoulliRegime& reg) {
  if (!(reg.p > 0.0 && reg.p < 1.0)) throw ConfigError("p must lie in (0,1)");
  if (reg.T < 1) throw ConfigError("horizon T must be at least 1");
}

}  // namespace

ClosedForms bernoulli_closed_forms(const BernoulliRegime& reg) {
  check_regime(reg);
  const double p = reg.p, T = reg.T;
  return {T * p * (1.0 - p), T * std::pow(p, reg.T) * (1.0 - p)};
}

Moments estimator_moments(const BernoulliRegime& reg, Estimator est) {
  check_regime(reg);
  const double p = reg.p, q1 = 1.0 - p, T = reg.T;
  if (est == Estimator::vpr) return {T * p * q1, T * p * q1 * (1.0 - 2.0 * p) * (1.0 - 2.0 * p)};
  // Condition on success: all steps correct (prob q) or not.
  const double q = std::pow(p, reg.T);
  const double sum_sq_success = T * T * q1 * q1;
  const double sum_sq_fail_mass = T * p * q1 - q * sum_sq_success;  // (1-q) E[(sum phi)^2 | fail]
  const double second = q * (1.0 - q) * (1.0 - q) * sum_sq_success + q * q * sum_sq_fail_mass;
  const double mean = T * q * q1;
  return {mean, std::max(second - mean * mean, 0.0)};
}

double sample_gradient(const BernoulliRegime& reg, Estimator est, Rng& rng) {
  std::bernoulli_distribution step(reg.p);
  double sum_phi = 0.0, sum_sq = 0.0;
  bool all = true;
  for (int t = 0; t < reg.T; ++t) {
    const bool a = step(rng);
    const double phi = (a ? 1.0 : 0.0) - reg.p;
    sum_phi += phi;
    sum_sq += phi * phi;
    all = all && a;
  }
  if (est == Estimator::vpr) return sum_sq;
  return ((all ? 1.0 : 0.0) - std::pow(reg.p, reg.T)) * sum_phi;
}

GradientReport mc_gradient(const BernoulliRegime& reg, Estimator est, std::size_t n_samples, std::uint64_t seed) {
  check_regime(reg);
  if (n_samples < 1) throw ConfigError("need at least one sample");
  Rng rng(seed);
  // Welford accumulation.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double g = sample_gradient(reg, est, rng);
    const double delta = g - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (g - mean);
  }
  GradientReport r;
  r.estimator = est;
  r.regime = reg;
  r.n_samples = n_samples;
  r.mean = mean;
  r.abs_mean = std::abs(mean);
  if (n_samples > 1)
    r.standard_error = std::sqrt(m2 / static_cast<double>(n_samples - 1) / static_cast<double>(n_samples));
  r.analytic_standard_error = std::sqrt(estimator_moments(reg, est).variance / static_cast<double>(n_samples));
  const auto cf = bernoulli_closed_forms(reg);
  r.closed_form = est == Estimator::vpr ? cf.vpr_norm : cf.or_norm;
  return r;
}

std::size_t FiniteBandit::params() const noexcept {
  std::size_t n = 0;
  for (const auto& l : logits) n += l.size();
  return n;
}

Vec FiniteBandit::policy(std::size_t s) const {
  const auto& l = logits[s];
  const double hi = *std::max_element(l.begin(), l.end());
  Vec p(l.size());
  double z = 0.0;
  for (std::size_t a = 0; a < l.size(); ++a) z += p[a] = std::exp(l[a] - hi);
  for (auto& x : p) x /= z;
  return p;
}

FiniteBandit random_bandit(std::uint64_t seed, std::size_t n_states, std::size_t n_actions) {
  if (n_states < 1 || n_actions < 2) throw ConfigError("bandit needs >= 1 state and >= 2 actions");
  Rng rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  FiniteBandit fb;
  double total = 0.0;
  for (std::size_t s = 0; s < n_states; ++s) total += fb.d.emplace_back(expo(rng));
  for (auto& w : fb.d) w /= total;
  fb.logits.assign(n_states, Vec(n_actions));
  fb.verifier.assign(n_states, std::vector<int>(n_actions));
  for (std::size_t s = 0; s < n_states; ++s) {
    for (auto& x : fb.logits[s]) x = normal(rng);
    for (auto& v : fb.verifier[s]) v = static_cast<int>(rng() & 1u);
    fb.verifier[s][uniform_index(rng, n_actions)] = 1;
  }
  return fb;
}

double objective(const FiniteBandit& fb, const Table& v) {
  double j = 0.0;
  for (std::size_t s = 0; s < fb.states(); ++s) {
    const Vec pi = fb.policy(s);
    for (std::size_t a = 0; a < pi.size(); ++a) j += fb.d[s] * pi[a] * v[s][a];
  }
  return j;
}

namespace {

// Offset of state s's logits in the flattened parameter vector.
std::size_t offset(const FiniteBandit& fb, std::size_t s) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < s; ++i) k += fb.actions(i);
  return k;
}

}  // namespace

Vec exact_gradient_finite(const FiniteBandit& fb, const Table& v, const std::vector<double>& baseline) {
  Vec g(fb.params(), 0.0);
  for (std::size_t s = 0; s < fb.states(); ++s) {
    const Vec pi = fb.policy(s);
    const std::size_t base = offset(fb, s);
    const double b = baseline.empty() ? 0.0 : baseline[s];
    for (std::size_t a = 0; a < pi.size(); ++a) {
      const double w = fb.d[s] * pi[a] * (v[s][a] - b);
      // d log pi(a|s) / d theta_{s,c} = 1{a=c} - pi(c|s)
      for (std::size_t c = 0; c < pi.size(); ++c) g[base + c] += w * ((a == c ? 1.0 : 0.0) - pi[c]);
    }
  }
  return g;
}

Vec finite_difference_gradient(const FiniteBandit& fb, const Table& v, double h) {
  Vec g(fb.params());
  FiniteBandit work = fb;
  std::size_t k = 0;
  for (std::size_t s = 0; s < fb.states(); ++s)
    for (std::size_t c = 0; c < fb.actions(s); ++c, ++k) {
      const double x = fb.logits[s][c];
      work.logits[s][c] = x + h;
      const double up = objective(work, v);
      work.logits[s][c] = x - h;
      const double down = objective(work, v);
      work.logits[s][c] = x;
      g[k] = (up - down) / (2.0 * h);
    }
  return g;
}

Vec imitation_gradient(const FiniteBandit& fb, const Table& v, const std::vector<Vec>& logits_old) {
  FiniteBandit old = fb;
  old.logits = logits_old;
  Vec g(fb.params(), 0.0);
  for (std::size_t s = 0; s < fb.states(); ++s) {
    const Vec behaviour = old.policy(s);
    const Vec pi = fb.policy(s);
    const std::size_t base = offset(fb, s);
    for (std::size_t a = 0; a < pi.size(); ++a) {
      if (!v[s][a]) continue;
      for (std::size_t c = 0; c < pi.size(); ++c)
        g[base + c] += fb.d[s] * behaviour[a] * ((a == c ? 1.0 : 0.0) - pi[c]);
    }
  }
  return g;
}

double imitation_equivalence_check(const FiniteBandit& fb) {
  const Vec j = exact_gradient_finite(fb, fb.verifier);
  const Vec il = imitation_gradient(fb, fb.verifier, fb.logits);
  double worst = 0.0;
  for (std::size_t k = 0; k < j.size(); ++k) worst = std::max(worst, std::abs(j[k] - il[k]));
  return worst;
}

double score_norm_bound(const FiniteBandit& fb) {
  double G = 0.0;
  for (std::size_t s = 0; s < fb.states(); ++s) {
    if (fb.d[s] <= 0.0) continue;
    const Vec pi = fb.policy(s);
    for (std::size_t a = 0; a < pi.size(); ++a) {
      if (pi[a] <= 0.0) continue;
      double sq = 0.0;
      for (std::size_t c = 0; c < pi.size(); ++c) {
        const double x = (a == c ? 1.0 : 0.0) - pi[c];
        sq += x * x;
      }
      G = std::max(G, std::sqrt(sq));
    }
  }
  return G;
}

BiasBound bias_bound(const FiniteBandit& fb, const Table& oracle, const Table& corrupted) {
  BiasBound out;
  const Vec g_star = exact_gradient_finite(fb, oracle);
  const Vec g_hat = exact_gradient_finite(fb, corrupted);
  Vec diff(g_star.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = g_hat[k] - g_star[k];
  out.bias_norm = l2_norm(diff);
  for (std::size_t s = 0; s < fb.states(); ++s) {
    const Vec pi = fb.policy(s);
    for (std::size_t a = 0; a < pi.size(); ++a)
      if (oracle[s][a] != corrupted[s][a]) out.eps_bar += fb.d[s] * pi[a];
  }
  out.G = score_norm_bound(fb);
  return out;
}

BiasBound bias_bound_check(const FiniteBandit& fb, const Table& oracle, double flip_rate, std::uint64_t seed) {
  if (!(flip_rate >= 0.0 && flip_rate <= 1.0)) throw ConfigError("flip_rate must lie in [0,1]");
  Rng rng(seed);
  std::bernoulli_distribution flip(flip_rate);
  Table corrupted = oracle;
  for (auto& row : corrupted)
    for (auto& v : row)
      if (flip(rng)) v = 1 - v;
  return bias_bound(fb, oracle, corrupted);
}

double l2_norm(const Vec& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

double relative_error(const Vec& a, const Vec& b) {
  Vec diff(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a[k] - b[k];
  return l2_norm(diff) / std::max(l2_norm(b), 1.0);
}

}  // namespace vpr::theory
