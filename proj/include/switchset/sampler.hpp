#pragma once

// Observation-process simulation.
//
// An epoch is a stretch (a polling day) during which the switching
// membership holds still: s of the n_C switching elements project as A,
// so a with-replacement draw shows A with probability (n_A + s)/N.
// Between epochs s moves, either by one step of a modular scheme whose
// state space is exactly {0..n_C} (M = n_C + 1), or by an independent
// Binomial(n_C, pi_A) redraw.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "switchset/dynamics.hpp"
#include "switchset/model.hpp"
#include "switchset/rng.hpp"

namespace switchset {

enum class PolicyKind { SchemeDriven, IndependentRandom };

struct SwitchPolicy {
  PolicyKind kind = PolicyKind::IndependentRandom;
  SchemeSpec scheme;      // used when kind == SchemeDriven
  double pi_a = 0.5;      // used when kind == IndependentRandom
  std::int64_t initial_s = 0;

  bool operator==(const SwitchPolicy&) const = default;
};

inline bool operator==(const SchemeSpec& a, const SchemeSpec& b) {
  return a.kind == b.kind && a.k == b.k && a.modulus == b.modulus;
}

inline SwitchPolicy scheme_policy(const SchemeSpec& scheme, std::int64_t initial_s) {
  if (initial_s < 0 || initial_s >= scheme.modulus)
    throw std::out_of_range("scheme_policy: initial_s outside scheme state space");
  SwitchPolicy p;
  p.kind = PolicyKind::SchemeDriven;
  p.scheme = scheme;
  p.initial_s = initial_s;
  return p;
}

inline SwitchPolicy random_policy(double pi_a, std::int64_t initial_s) {
  if (!(pi_a >= 0.0 && pi_a <= 1.0))
    throw std::invalid_argument("random_policy: pi_a must lie in [0, 1]");
  if (initial_s < 0)
    throw std::out_of_range("random_policy: initial_s must be nonnegative");
  SwitchPolicy p;
  p.kind = PolicyKind::IndependentRandom;
  p.pi_a = pi_a;
  p.initial_s = initial_s;
  return p;
}

struct EpochObservation {
  std::int64_t epoch_index = 0;
  std::int64_t s = 0;        // switching elements projecting as A
  std::int64_t draws = 0;
  std::int64_t count_a = 0;
  std::int64_t count_b = 0;
  double sample_mean = 0.0;  // (count_a - count_b) / draws

  bool operator==(const EpochObservation&) const = default;
};

struct SampleSeries {
  SetConfig config;
  SwitchPolicy policy;
  std::uint64_t seed = 0;
  std::string rng_algorithm = kRngAlgorithm;
  std::vector<EpochObservation> epochs;
};

inline EpochObservation sample_epoch(const SetConfig& config, std::int64_t s,
                                     std::int64_t draws, SeededRng& rng) {
  if (s < 0 || s > config.n_c)
    throw std::out_of_range("sample_epoch: s must lie in [0, n_C]");
  if (draws < 1) throw std::invalid_argument("sample_epoch: draws must be >= 1");

  const double p_a = static_cast<double>(config.n_a + s) /
                     static_cast<double>(config.total);
  EpochObservation obs;
  obs.s = s;
  obs.draws = draws;
  for (std::int64_t i = 0; i < draws; ++i) {
    if (rng.bernoulli(p_a))
      ++obs.count_a;
    else
      ++obs.count_b;
  }
  obs.sample_mean = static_cast<double>(obs.count_a - obs.count_b) /
                    static_cast<double>(draws);
  return obs;
}

inline void check_policy_against_config(const SwitchPolicy& policy,
                                        const SetConfig& config) {
  if (policy.kind == PolicyKind::SchemeDriven &&
      policy.scheme.modulus != config.n_c + 1)
    throw std::invalid_argument(
        "scheme-driven policy needs M = n_C + 1 so states map onto s in [0, n_C]");
  if (policy.initial_s > config.n_c)
    throw std::out_of_range("policy initial_s exceeds n_C");
}

inline std::int64_t next_switch_state(const SwitchPolicy& policy,
                                      const SetConfig& config,
                                      std::int64_t current_s, SeededRng& rng) {
  check_policy_against_config(policy, config);
  if (current_s < 0 || current_s > config.n_c)
    throw std::out_of_range("next_switch_state: current_s must lie in [0, n_C]");
  if (policy.kind == PolicyKind::SchemeDriven)
    return step(policy.scheme, current_s);
  return rng.binomial(config.n_c, policy.pi_a);
}

// Epoch 0 observes initial_s; every later epoch advances s once, then
// samples. Bit-identical output for identical (config, policy, sizes,
// seed).
inline SampleSeries evolve_and_sample(const SetConfig& config,
                                      const SwitchPolicy& policy,
                                      std::int64_t epochs,
                                      std::int64_t draws_per_epoch,
                                      std::uint64_t seed) {
  if (epochs < 1) throw std::invalid_argument("evolve_and_sample: epochs must be >= 1");
  check_policy_against_config(policy, config);

  SampleSeries series;
  series.config = config;
  series.policy = policy;
  series.seed = seed;
  series.epochs.reserve(static_cast<std::size_t>(epochs));

  SeededRng rng(seed);
  std::int64_t s = policy.initial_s;
  for (std::int64_t e = 0; e < epochs; ++e) {
    if (e > 0) s = next_switch_state(policy, config, s, rng);
    EpochObservation obs = sample_epoch(config, s, draws_per_epoch, rng);
    obs.epoch_index = e;
    series.epochs.push_back(obs);
  }
  return series;
}

}  // namespace switchset
