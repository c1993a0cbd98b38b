#pragma once

// Closed-form statistics of the per-epoch mean, switching-class size
// estimation, the threshold decision rule, and the source-given-
// observation posterior.
//
// With s switching elements projecting as A, the epoch mean is
// (n_A - n_B - n_C + 2s)/N. Treating that mean as uniform over its
// range gives
//   E(M)    = (n_A - n_B)/N
//   E(M^2)  = (3 n_A^2 + 3 n_B^2 + n_C^2 - 6 n_A n_B) / (3 N^2)
//   Var(M)  = n_C^2 / (3 N^2)
// and the discrete counterpart (s uniform on the integers 0..n_C)
//   Var(M)  = n_C (n_C + 2) / (3 N^2),
// which converges to the continuous value as n_C grows. Inverting
// either form turns an observed variance into a size estimate for the
// switching class.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "switchset/model.hpp"
#include "switchset/rational.hpp"
#include "switchset/rng.hpp"
#include "switchset/sampler.hpp"

namespace switchset {

inline Rational expected_mean(const SetConfig& config) {
  return Rational(config.n_a - config.n_b, config.total);
}

inline Rational mean_square(const SetConfig& config) {
  detail::i128 na = config.n_a, nb = config.n_b, nc = config.n_c;
  detail::i128 numerator = 3 * na * na + 3 * nb * nb + nc * nc - 6 * na * nb;
  detail::i128 denominator = 3 * detail::i128(config.total) * config.total;
  return Rational::from_i128(numerator, denominator);
}

inline Rational variance_mean(const SetConfig& config) {
  detail::i128 nc = config.n_c;
  return Rational::from_i128(nc * nc,
                             3 * detail::i128(config.total) * config.total);
}

// Variance of the epoch mean when s is uniform on the integers
// {0..n_C} rather than continuously uniform: Var(s) = n_C(n_C+2)/12
// through slope 2/N.
inline Rational discrete_variance_mean(const SetConfig& config) {
  detail::i128 nc = config.n_c;
  return Rational::from_i128(nc * (nc + 2),
                             3 * detail::i128(config.total) * config.total);
}

struct MomentReport {
  Rational mean;
  Rational mean_square;
  Rational variance;
};

inline MomentReport moment_report(const SetConfig& config) {
  return MomentReport{expected_mean(config), mean_square(config),
                      variance_mean(config)};
}

// Both inversions of the variance formulas, labeled; callers pick the
// one matching their sampling model. Estimates are clamped to [0, N].
// When the input variance is an exact rational whose inversion lands on
// an integer (a round trip of variance_mean or discrete_variance_mean),
// the result is exact.
struct SwitchingCountEstimate {
  double continuous = 0.0;  // N * sqrt(3 v)
  double discrete = 0.0;    // sqrt(1 + 3 N^2 v) - 1
};

inline SwitchingCountEstimate estimate_switching_count(const Rational& observed_variance,
                                                       std::int64_t n) {
  if (observed_variance < Rational(0))
    throw std::invalid_argument("estimate_switching_count: variance must be >= 0");
  if (n < 1) throw std::invalid_argument("estimate_switching_count: N must be >= 1");

  const Rational radicand = Rational(3) * observed_variance * Rational(n) * Rational(n);
  const auto clamp = [n](double x) {
    if (x < 0.0) return 0.0;
    double cap = static_cast<double>(n);
    return x > cap ? cap : x;
  };

  SwitchingCountEstimate est;
  RationalSqrt cont = exact_sqrt(radicand);
  est.continuous = clamp(cont.exact ? cont.value.to_double()
                                    : std::sqrt(radicand.to_double()));
  RationalSqrt disc = exact_sqrt(radicand + Rational(1));
  est.discrete = clamp((disc.exact ? disc.value.to_double()
                                   : std::sqrt(radicand.to_double() + 1.0)) -
                       1.0);
  return est;
}

inline SwitchingCountEstimate estimate_switching_count(double observed_variance,
                                                       std::int64_t n) {
  if (!(observed_variance >= 0.0))
    throw std::invalid_argument("estimate_switching_count: variance must be >= 0");
  if (n < 1) throw std::invalid_argument("estimate_switching_count: N must be >= 1");
  const double nn = static_cast<double>(n);
  const double radicand = 3.0 * observed_variance * nn * nn;
  const auto clamp = [nn](double x) {
    return x < 0.0 ? 0.0 : (x > nn ? nn : x);
  };
  SwitchingCountEstimate est;
  est.continuous = clamp(std::sqrt(radicand));
  est.discrete = clamp(std::sqrt(radicand + 1.0) - 1.0);
  return est;
}

enum class Hypothesis { A, B };

inline const char* to_string(Hypothesis h) {
  return h == Hypothesis::A ? "A" : "B";
}

inline Hypothesis decide_from_sum(std::int64_t sum) {
  return sum >= 0 ? Hypothesis::A : Hypothesis::B;  // tie goes to A
}

// Threshold rule over +/-1 draws: Hypothesis A iff the sum is >= 0.
inline Hypothesis threshold_decide(std::span<const int> series) {
  if (series.empty()) throw std::invalid_argument("threshold_decide: empty series");
  std::int64_t sum = 0;
  for (int x : series) {
    if (x != 1 && x != -1)
      throw std::invalid_argument("threshold_decide: series entries must be +1 or -1");
    sum += x;
  }
  return decide_from_sum(sum);
}

// Monte Carlo error rate of the threshold rule: fraction of replicates
// whose pooled draws decide against the sign of expected_mean(config).
// Deterministic for a fixed seed; each replicate gets a derived stream.
inline double decision_error_rate(const SetConfig& config, const SwitchPolicy& policy,
                                  std::int64_t draws_per_epoch, std::int64_t epochs,
                                  std::int64_t replicates, std::uint64_t seed) {
  if (replicates < 1)
    throw std::invalid_argument("decision_error_rate: replicates must be >= 1");
  const Rational mean = expected_mean(config);
  if (mean == Rational(0))
    throw std::domain_error("decision_error_rate: expected mean is zero, no ground truth");
  const Hypothesis truth = mean > Rational(0) ? Hypothesis::A : Hypothesis::B;

  std::int64_t errors = 0;
  for (std::int64_t r = 0; r < replicates; ++r) {
    SampleSeries series = evolve_and_sample(
        config, policy, epochs, draws_per_epoch,
        derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::int64_t pooled = 0;
    for (const auto& epoch : series.epochs) pooled += epoch.count_a - epoch.count_b;
    if (decide_from_sum(pooled) != truth) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(replicates);
}

enum class SourceClass { A = 0, B = 1, C = 2 };

inline const char* to_string(SourceClass s) {
  switch (s) {
    case SourceClass::A: return "A";
    case SourceClass::B: return "B";
    case SourceClass::C: return "C";
  }
  return "?";
}

// Priors over the source classes plus per-source likelihoods of the two
// observable labels. Rows index sources (A_s, B_s, C_s); columns index
// observations (A_o, B_o).
struct ConfusionModel {
  std::array<double, 3> priors{};
  std::array<std::array<double, 2>, 3> likelihoods{};
};

inline ConfusionModel make_confusion_model(
    const std::array<double, 3>& priors,
    const std::array<std::array<double, 2>, 3>& likelihoods) {
  constexpr double tol = 1e-9;
  double prior_sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("confusion model: priors must lie in [0, 1]");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > tol)
    throw std::invalid_argument("confusion model: priors must sum to 1");
  for (const auto& row : likelihoods) {
    double row_sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("confusion model: likelihoods must lie in [0, 1]");
      row_sum += p;
    }
    if (std::abs(row_sum - 1.0) > tol)
      throw std::invalid_argument("confusion model: likelihood rows must sum to 1");
  }
  return ConfusionModel{priors, likelihoods};
}

// Total probability of the observed label:
// p(o) = sum_s p(o|s) p(s).
inline double observation_probability(const ConfusionModel& model,
                                      OutcomeLabel observed) {
  const std::size_t col = observed == OutcomeLabel::A ? 0 : 1;
  double total = 0.0;
  for (std::size_t s = 0; s < 3; ++s)
    total += model.likelihoods[s][col] * model.priors[s];
  return total;
}

// Bayes inversion: p(s|o) = p(o|s) p(s) / p(o) over {A_s, B_s, C_s}.
inline std::array<double, 3> posterior_source(const ConfusionModel& model,
                                              OutcomeLabel observed) {
  const std::size_t col = observed == OutcomeLabel::A ? 0 : 1;
  const double denom = observation_probability(model, observed);
  if (denom <= 0.0)
    throw std::domain_error("posterior_source: observation has zero probability");
  std::array<double, 3> posterior{};
  for (std::size_t s = 0; s < 3; ++s)
    posterior[s] = model.likelihoods[s][col] * model.priors[s] / denom;
  return posterior;
}

}  // namespace switchset
