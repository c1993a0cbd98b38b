#pragma once

// Modular switching-count dynamics over the state space {0, ..., M-1}.
//
// Three step rules drive how many switching elements project as A:
//   Additive        s -> (s + k) mod M
//   Multiplicative  s -> (k * s) mod M
//   Collatz         s -> s/2 for even s (0 counts as even),
//                        (k*s + 1) mod M for odd s
//
// Because the space is finite, every start state runs into a cycle or a
// fixed point; the functions below expose single steps, full
// trajectories, orbit summaries, one-step tables, and an exhaustive
// partition of the state space into fixed points / cycles / transients.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace switchset {

using State = std::int64_t;

enum class SchemeKind { Additive, Multiplicative, Collatz };

inline const char* to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Additive: return "additive";
    case SchemeKind::Multiplicative: return "multiplicative";
    case SchemeKind::Collatz: return "collatz";
  }
  return "?";
}

inline SchemeKind scheme_kind_from_string(const std::string& name) {
  if (name == "additive") return SchemeKind::Additive;
  if (name == "multiplicative") return SchemeKind::Multiplicative;
  if (name == "collatz") return SchemeKind::Collatz;
  throw std::invalid_argument("unknown scheme kind: " + name);
}

struct SchemeSpec {
  SchemeKind kind = SchemeKind::Collatz;
  std::int64_t k = 3;
  std::int64_t modulus = 2;
};

// States enumerable per call; classify_states and one_step_table refuse
// anything larger.
inline constexpr std::int64_t kMaxEnumerableModulus = std::int64_t(1) << 24;

namespace detail {

inline void check_modulus(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("scheme modulus must be at least 2");
}

inline void check_state(State s, std::int64_t m) {
  if (s < 0 || s >= m) throw std::out_of_range("state out of range [0, M)");
}

inline void check_param(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("scheme parameter k must be nonnegative");
}

}  // namespace detail

inline SchemeSpec make_scheme(SchemeKind kind, std::int64_t k, std::int64_t modulus) {
  detail::check_modulus(modulus);
  detail::check_param(k);
  return SchemeSpec{kind, k, modulus};
}

inline State step_additive(State s, std::int64_t k, std::int64_t m) {
  detail::check_modulus(m);
  detail::check_param(k);
  detail::check_state(s, m);
  return static_cast<State>((static_cast<__int128>(s) + k) % m);
}

inline State step_multiplicative(State s, std::int64_t k, std::int64_t m) {
  detail::check_modulus(m);
  detail::check_param(k);
  detail::check_state(s, m);
  return static_cast<State>((static_cast<__int128>(k) * s) % m);
}

inline State step_collatz(State s, std::int64_t k, std::int64_t m) {
  detail::check_modulus(m);
  detail::check_param(k);
  detail::check_state(s, m);
  if (s % 2 == 0) return s / 2;  // 0 is even and maps to itself
  return static_cast<State>((static_cast<__int128>(k) * s + 1) % m);
}

inline State step(const SchemeSpec& scheme, State s) {
  switch (scheme.kind) {
    case SchemeKind::Additive: return step_additive(s, scheme.k, scheme.modulus);
    case SchemeKind::Multiplicative:
      return step_multiplicative(s, scheme.k, scheme.modulus);
    case SchemeKind::Collatz: return step_collatz(s, scheme.k, scheme.modulus);
  }
  throw std::logic_error("unreachable scheme kind");
}

// Visited states in order. When a state repeats, the repeat is included
// as the final entry and `truncated` stays false; if max_steps
// transitions happen first, `truncated` is set. A repeat is guaranteed
// within M transitions, so max_steps >= M+1 never truncates.
struct Trajectory {
  std::vector<State> states;
  bool truncated = false;
};

inline Trajectory trajectory(const SchemeSpec& scheme, State start,
                             std::int64_t max_steps) {
  detail::check_modulus(scheme.modulus);
  detail::check_state(start, scheme.modulus);
  if (max_steps < 1) throw std::invalid_argument("trajectory: max_steps must be >= 1");

  Trajectory out;
  std::unordered_set<State> seen;
  State s = start;
  out.states.push_back(s);
  seen.insert(s);
  for (std::int64_t i = 0; i < max_steps; ++i) {
    s = step(scheme, s);
    out.states.push_back(s);
    if (seen.count(s)) return out;  // closing repeat included
    seen.insert(s);
  }
  out.truncated = true;
  return out;
}

// Rotate a cycle so its minimal element comes first, preserving
// iteration order. Keeps reports comparable across runs.
inline std::vector<State> canonical_cycle(std::vector<State> cycle) {
  if (cycle.empty()) return cycle;
  auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  return cycle;
}

// Orbit summary per the conventions used throughout: `path` includes
// the closing repeated state, `path_length` counts transitions among
// distinct states (one less than the distinct-state count), and
// `tail_length` is the number of steps taken before entering the cycle.
struct OrbitReport {
  State start = 0;
  std::vector<State> path;
  std::int64_t tail_length = 0;
  std::vector<State> cycle;
  bool is_fixed_point = false;
  State max_value = 0;
  std::int64_t path_length = 0;

  std::int64_t distinct_states() const {
    return static_cast<std::int64_t>(path.size()) - 1;
  }
};

inline OrbitReport orbit_report(const SchemeSpec& scheme, State start) {
  Trajectory traj = trajectory(scheme, start, scheme.modulus + 1);
  OrbitReport report;
  report.start = start;
  report.path = traj.states;

  State repeated = report.path.back();
  auto first = std::find(report.path.begin(), report.path.end() - 1, repeated);
  report.tail_length = static_cast<std::int64_t>(first - report.path.begin());
  report.cycle = canonical_cycle(
      std::vector<State>(first, report.path.end() - 1));
  report.is_fixed_point = report.cycle.size() == 1;
  report.max_value = *std::max_element(report.path.begin(), report.path.end());
  report.path_length = static_cast<std::int64_t>(report.path.size()) - 2;
  return report;
}

// Empirical reachability: does the orbit of start ever visit target?
// Decided by running to the first repeat, so it needs no closed-form
// condition on the scheme.
inline bool reaches_state(const SchemeSpec& scheme, State start, State target) {
  detail::check_state(target, scheme.modulus);
  Trajectory traj = trajectory(scheme, start, scheme.modulus + 1);
  return std::find(traj.states.begin(), traj.states.end(), target) !=
         traj.states.end();
}

inline std::vector<State> one_step_table(const SchemeSpec& scheme) {
  detail::check_modulus(scheme.modulus);
  if (scheme.modulus > kMaxEnumerableModulus)
    throw std::invalid_argument("one_step_table: modulus beyond enumeration bound");
  std::vector<State> table(static_cast<std::size_t>(scheme.modulus));
  for (State s = 0; s < scheme.modulus; ++s)
    table[static_cast<std::size_t>(s)] = step(scheme, s);
  return table;
}

// Partition of {0,...,M-1}: fixed points, cycles of length >= 2
// (canonical rotation, ordered by minimal element), and transients.
struct StateClassification {
  std::vector<State> fixed_points;          // sorted
  std::vector<std::vector<State>> cycles;   // length >= 2 each
  std::vector<State> transients;            // sorted

  bool state_is_cyclic(State s) const {
    if (std::binary_search(fixed_points.begin(), fixed_points.end(), s)) return true;
    for (const auto& c : cycles)
      if (std::find(c.begin(), c.end(), s) != c.end()) return true;
    return false;
  }
};

inline StateClassification classify_states(const SchemeSpec& scheme) {
  detail::check_modulus(scheme.modulus);
  if (scheme.modulus > kMaxEnumerableModulus)
    throw std::invalid_argument("classify_states: modulus beyond enumeration bound");

  const auto m = static_cast<std::size_t>(scheme.modulus);
  // 0 = unvisited, 1 = on current walk, 2 = finished off-cycle,
  // 3 = finished on-cycle
  std::vector<std::uint8_t> color(m, 0);
  std::vector<std::uint32_t> walk_pos(m, 0);
  std::vector<State> walk;

  StateClassification out;
  for (State v0 = 0; v0 < scheme.modulus; ++v0) {
    if (color[static_cast<std::size_t>(v0)] != 0) continue;
    walk.clear();
    State v = v0;
    while (color[static_cast<std::size_t>(v)] == 0) {
      color[static_cast<std::size_t>(v)] = 1;
      walk_pos[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(walk.size());
      walk.push_back(v);
      v = step(scheme, v);
    }
    if (color[static_cast<std::size_t>(v)] == 1) {
      // new cycle discovered on this walk
      std::uint32_t at = walk_pos[static_cast<std::size_t>(v)];
      std::vector<State> cycle(walk.begin() + at, walk.end());
      for (State c : cycle) color[static_cast<std::size_t>(c)] = 3;
      if (cycle.size() == 1) {
        out.fixed_points.push_back(cycle.front());
      } else {
        out.cycles.push_back(canonical_cycle(std::move(cycle)));
      }
    }
    for (State u : walk)
      if (color[static_cast<std::size_t>(u)] == 1)
        color[static_cast<std::size_t>(u)] = 2;
  }

  for (State s = 0; s < scheme.modulus; ++s)
    if (color[static_cast<std::size_t>(s)] == 2) out.transients.push_back(s);
  std::sort(out.fixed_points.begin(), out.fixed_points.end());
  std::sort(out.cycles.begin(), out.cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp,
                                std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      factors.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

}  // namespace detail

inline bool is_prime(std::int64_t n) {
  return n >= 2 && detail::is_prime_u64(static_cast<std::uint64_t>(n));
}

// True iff the multiplicative order of k modulo the prime M is M-1,
// i.e. the nonzero states of the multiplicative scheme form one full
// cycle. M is primality-checked here; composite M is an error.
inline bool is_primitive_root(std::int64_t k, std::int64_t m) {
  detail::check_modulus(m);
  if (!is_prime(m)) throw std::domain_error("is_primitive_root: modulus is not prime");
  if (k < 1 || k >= m) throw std::out_of_range("is_primitive_root: need 1 <= k < M");

  auto um = static_cast<std::uint64_t>(m);
  auto uk = static_cast<std::uint64_t>(k);
  std::uint64_t group_order = um - 1;
  for (std::uint64_t p : detail::prime_factors(group_order)) {
    if (detail::powmod_u64(uk, group_order / p, um) == 1) return false;
  }
  return true;
}

}  // namespace switchset
