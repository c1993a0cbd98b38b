#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "switchset/dynamics.hpp"

using namespace switchset;

namespace {

// Independent oracle: a state is cyclic iff iterating returns to it
// within M steps. O(M) per state, no shared bookkeeping with the
// implementation under test.
bool oracle_cyclic(const SchemeSpec& scheme, State s) {
  State v = s;
  for (std::int64_t i = 0; i < scheme.modulus; ++i) {
    v = step(scheme, v);
    if (v == s) return true;
  }
  return false;
}

struct OraclePartition {
  std::vector<State> fixed_points;
  std::vector<std::vector<State>> cycles;
  std::vector<State> transients;
};

OraclePartition oracle_classify(const SchemeSpec& scheme) {
  OraclePartition out;
  std::set<State> assigned;
  for (State s = 0; s < scheme.modulus; ++s) {
    if (!oracle_cyclic(scheme, s)) {
      out.transients.push_back(s);
      continue;
    }
    if (step(scheme, s) == s) {
      out.fixed_points.push_back(s);
      continue;
    }
    if (assigned.count(s)) continue;
    std::vector<State> cycle{s};
    assigned.insert(s);
    for (State v = step(scheme, s); v != s; v = step(scheme, v)) {
      cycle.push_back(v);
      assigned.insert(v);
    }
    out.cycles.push_back(canonical_cycle(std::move(cycle)));
  }
  std::sort(out.cycles.begin(), out.cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

// Brute-force multiplicative order of k modulo m, or -1 if it never
// reaches 1.
std::int64_t oracle_order(std::int64_t k, std::int64_t m) {
  std::int64_t x = k % m, order = 1;
  while (x != 1) {
    x = (x * k) % m;
    if (++order > m) return -1;
  }
  return order;
}

}  // namespace

TEST_CASE("steps evaluate the three rules") {
  CHECK(step_additive(5, 2, 6) == 1);
  CHECK(step_additive(0, 1, 2) == 1);
  for (State s = 0; s < 9; ++s) CHECK(step_additive(s, 0, 9) == s);

  CHECK(step_multiplicative(3, 2, 6) == 0);
  CHECK(step_multiplicative(1, 2, 6) == 2);
  for (std::int64_t k = 0; k <= 11; ++k) CHECK(step_multiplicative(0, k, 11) == 0);

  CHECK(step_collatz(3, 3, 17) == 10);
  CHECK(step_collatz(11, 3, 17) == 0);
  CHECK(step_collatz(7, 3, 55) == 22);
  CHECK(step_collatz(0, 3, 17) == 0);  // 0 is even
}

TEST_CASE("steps validate their inputs") {
  CHECK_THROWS_AS(step_additive(6, 1, 6), std::out_of_range);
  CHECK_THROWS_AS(step_additive(-1, 1, 6), std::out_of_range);
  CHECK_THROWS_AS(step_multiplicative(0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(step_collatz(1, -3, 17), std::invalid_argument);
  CHECK_THROWS_AS(make_scheme(SchemeKind::Collatz, 3, 1), std::invalid_argument);
}

TEST_CASE("steps stay inside the state space") {
  for (auto kind : {SchemeKind::Additive, SchemeKind::Multiplicative,
                    SchemeKind::Collatz}) {
    for (std::int64_t m = 2; m <= 512; ++m) {
      for (std::int64_t k = 0; k <= m; ++k) {
        SchemeSpec scheme{kind, k, m};
        for (State s = 0; s < m; ++s) {
          State next = step(scheme, s);
          if (next < 0 || next >= m) {
            FAIL("escaped state space: kind=" << to_string(kind) << " k=" << k
                                              << " M=" << m << " s=" << s);
          }
        }
      }
    }
  }
}

TEST_CASE("collatz halves every even state") {
  for (std::int64_t m = 2; m <= 128; ++m) {
    SchemeSpec scheme{SchemeKind::Collatz, 3, m};
    for (State s = 0; s < m; s += 2) CHECK(step(scheme, s) == s / 2);
  }
}

TEST_CASE("trajectory reproduces the finite 3n+1 runs") {
  SchemeSpec mod55{SchemeKind::Collatz, 3, 55};
  Trajectory t55 = trajectory(mod55, 7, 56);
  CHECK_FALSE(t55.truncated);
  CHECK(t55.states == std::vector<State>{7, 22, 11, 34, 17, 52, 26, 13, 40, 20,
                                         10, 5, 16, 8, 4, 2, 1, 4});

  SchemeSpec mod37{SchemeKind::Collatz, 3, 37};
  Trajectory t37 = trajectory(mod37, 7, 38);
  CHECK(t37.states ==
        std::vector<State>{7, 22, 11, 34, 17, 15, 9, 28, 14, 7});

  SchemeSpec mult{SchemeKind::Multiplicative, 2, 6};
  CHECK(trajectory(mult, 3, 7).states == std::vector<State>{3, 0, 0});
}

TEST_CASE("trajectory signals truncation distinctly") {
  SchemeSpec mod55{SchemeKind::Collatz, 3, 55};
  Trajectory cut = trajectory(mod55, 7, 3);
  CHECK(cut.truncated);
  CHECK(cut.states == std::vector<State>{7, 22, 11, 34});

  // max_steps >= M+1 always closes on a repeat
  for (std::int64_t m = 2; m <= 64; ++m) {
    SchemeSpec scheme{SchemeKind::Collatz, 3, m};
    for (State s = 0; s < m; ++s) CHECK_FALSE(trajectory(scheme, s, m + 1).truncated);
  }

  CHECK_THROWS_AS(trajectory(mod55, 7, 0), std::invalid_argument);
  CHECK_THROWS_AS(trajectory(mod55, 55, 10), std::out_of_range);
}

TEST_CASE("orbit_report summarizes the mod-100 runs") {
  SchemeSpec scheme{SchemeKind::Collatz, 3, 100};

  OrbitReport from3 = orbit_report(scheme, 3);
  CHECK(from3.distinct_states() == 8);
  CHECK(from3.path_length == 7);
  CHECK(from3.max_value == 16);
  CHECK(from3.path == std::vector<State>{3, 10, 5, 16, 8, 4, 2, 1, 4});

  OrbitReport from25 = orbit_report(scheme, 25);
  CHECK(from25.path_length == 23);
  CHECK(from25.max_value == 88);
  CHECK(from25.distinct_states() == 24);
  CHECK(from25.path.front() == 25);
}

TEST_CASE("orbit_report canonicalizes cycles and spots fixed points") {
  OrbitReport report = orbit_report(SchemeSpec{SchemeKind::Collatz, 3, 55}, 7);
  CHECK(report.cycle == std::vector<State>{1, 4, 2});
  CHECK(report.tail_length == 14);
  CHECK_FALSE(report.is_fixed_point);

  OrbitReport fixed = orbit_report(SchemeSpec{SchemeKind::Additive, 0, 9}, 4);
  CHECK(fixed.is_fixed_point);
  CHECK(fixed.cycle == std::vector<State>{4});
  CHECK(fixed.tail_length == 0);
  CHECK(fixed.path_length == 0);
}

TEST_CASE("orbit_report invariants hold on random schemes") {
  for (std::int64_t m : {5, 12, 31, 64, 97}) {
    for (auto kind : {SchemeKind::Additive, SchemeKind::Multiplicative,
                      SchemeKind::Collatz}) {
      SchemeSpec scheme{kind, 3, m};
      for (State start = 0; start < m; ++start) {
        OrbitReport report = orbit_report(scheme, start);
        REQUIRE(report.path.size() >= 2);
        CHECK(report.path.front() == start);
        for (std::size_t i = 0; i + 1 < report.path.size(); ++i)
          CHECK(step(scheme, report.path[i]) == report.path[i + 1]);
        // last entry repeats an earlier one
        CHECK(std::count(report.path.begin(), report.path.end() - 1,
                         report.path.back()) > 0);
        CHECK(report.tail_length + static_cast<std::int64_t>(report.cycle.size()) ==
              report.distinct_states());
      }
    }
  }
}

TEST_CASE("one_step_table matches the worked rows") {
  std::vector<State> mod17 = one_step_table(SchemeSpec{SchemeKind::Collatz, 3, 17});
  std::vector<State> expected17{0, 4, 1, 10, 2, 16, 3, 5, 4, 11, 5, 0, 6, 6, 7, 12, 8};
  CHECK(mod17 == expected17);

  std::vector<State> mult = one_step_table(SchemeSpec{SchemeKind::Multiplicative, 2, 6});
  CHECK(mult == std::vector<State>{0, 2, 4, 0, 2, 4});

  std::vector<State> rotation = one_step_table(SchemeSpec{SchemeKind::Additive, 1, 3});
  CHECK(rotation == std::vector<State>{1, 2, 0});
}

TEST_CASE("classify_states partitions the worked examples") {
  StateClassification mult = classify_states(SchemeSpec{SchemeKind::Multiplicative, 2, 6});
  CHECK(mult.fixed_points == std::vector<State>{0});
  REQUIRE(mult.cycles.size() == 1);
  CHECK(mult.cycles[0] == std::vector<State>{2, 4});
  CHECK(mult.transients == std::vector<State>{1, 3, 5});

  StateClassification collatz = classify_states(SchemeSpec{SchemeKind::Collatz, 3, 17});
  CHECK(collatz.fixed_points == std::vector<State>{0});
  REQUIRE(collatz.cycles.size() == 1);
  CHECK(collatz.cycles[0] == std::vector<State>{1, 4, 2});

  StateClassification rotation = classify_states(SchemeSpec{SchemeKind::Additive, 1, 4});
  CHECK(rotation.fixed_points.empty());
  REQUIRE(rotation.cycles.size() == 1);
  CHECK(rotation.cycles[0] == std::vector<State>{0, 1, 2, 3});
  CHECK(rotation.transients.empty());
}

TEST_CASE("classify_states agrees with the iterate-to-repeat oracle") {
  for (std::int64_t m = 2; m <= 48; ++m) {
    for (std::int64_t k : {1, 2, 3, 5}) {
      for (auto kind : {SchemeKind::Additive, SchemeKind::Multiplicative,
                        SchemeKind::Collatz}) {
        SchemeSpec scheme{kind, k, m};
        StateClassification got = classify_states(scheme);
        OraclePartition want = oracle_classify(scheme);
        CHECK(got.fixed_points == want.fixed_points);
        CHECK(got.transients == want.transients);
        CHECK(got.cycles == want.cycles);
      }
    }
  }
}

TEST_CASE("reaches_state answers orbit membership empirically") {
  // mod 17: only 9 and 11 funnel into the fixed point 0
  SchemeSpec mod17{SchemeKind::Collatz, 3, 17};
  for (State s = 0; s < 17; ++s) {
    bool want = s == 0 || s == 9 || s == 11;
    CHECK(reaches_state(mod17, s, 0) == want);
  }

  // mod 6 (even): 3s+1 = 0 mod 6 has no solution, so no nonzero state
  // ever drops to zero
  SchemeSpec mod6{SchemeKind::Collatz, 3, 6};
  for (State s = 1; s < 6; ++s) CHECK_FALSE(reaches_state(mod6, s, 0));
  CHECK(reaches_state(mod6, 0, 0));

  CHECK_THROWS_AS(reaches_state(mod6, 1, 6), std::out_of_range);
}

TEST_CASE("state_is_cyclic agrees with the partition") {
  SchemeSpec scheme{SchemeKind::Multiplicative, 2, 6};
  StateClassification parts = classify_states(scheme);
  CHECK(parts.state_is_cyclic(0));
  CHECK(parts.state_is_cyclic(2));
  CHECK(parts.state_is_cyclic(4));
  CHECK_FALSE(parts.state_is_cyclic(1));
  CHECK_FALSE(parts.state_is_cyclic(3));
  CHECK_FALSE(parts.state_is_cyclic(5));
}

TEST_CASE("classify_states partitions the whole state space") {
  for (std::int64_t m : {2, 9, 30, 101}) {
    for (auto kind : {SchemeKind::Additive, SchemeKind::Multiplicative,
                      SchemeKind::Collatz}) {
      StateClassification parts = classify_states(SchemeSpec{kind, 3, m});
      std::vector<State> all(parts.fixed_points);
      for (const auto& c : parts.cycles) all.insert(all.end(), c.begin(), c.end());
      all.insert(all.end(), parts.transients.begin(), parts.transients.end());
      std::sort(all.begin(), all.end());
      std::vector<State> want(static_cast<std::size_t>(m));
      std::iota(want.begin(), want.end(), 0);
      CHECK(all == want);
    }
  }
}

TEST_CASE("classify_states rejects moduli beyond the enumeration bound") {
  CHECK_THROWS_AS(
      classify_states(SchemeSpec{SchemeKind::Collatz, 3, kMaxEnumerableModulus + 1}),
      std::invalid_argument);
  CHECK_THROWS_AS(one_step_table(SchemeSpec{SchemeKind::Collatz, 3,
                                            kMaxEnumerableModulus + 1}),
                  std::invalid_argument);
}

TEST_CASE("additive scheme with gcd(k, M) = 1 is one full rotation") {
  for (std::int64_t m = 2; m <= 64; ++m) {
    for (std::int64_t k = 1; k < m; ++k) {
      if (std::gcd(k, m) != 1) continue;
      StateClassification parts = classify_states(SchemeSpec{SchemeKind::Additive, k, m});
      CHECK(parts.fixed_points.empty());
      CHECK(parts.transients.empty());
      REQUIRE(parts.cycles.size() == 1);
      CHECK(parts.cycles[0].size() == static_cast<std::size_t>(m));
    }
  }
}

TEST_CASE("multiplicative scheme fixes 0 and cycles fully for primitive roots") {
  for (std::int64_t m : {3, 5, 7, 11, 13}) {
    for (std::int64_t k = 1; k < m; ++k) {
      SchemeSpec scheme{SchemeKind::Multiplicative, k, m};
      StateClassification parts = classify_states(scheme);
      CHECK(std::binary_search(parts.fixed_points.begin(), parts.fixed_points.end(),
                               State(0)));
      bool full_cycle = parts.cycles.size() == 1 &&
                        parts.cycles[0].size() == static_cast<std::size_t>(m - 1);
      CHECK(full_cycle == is_primitive_root(k, m));
    }
  }
}

TEST_CASE("collatz trajectories enter a cycle within M steps") {
  for (std::int64_t m : {2, 17, 37, 55, 100, 128}) {
    SchemeSpec scheme{SchemeKind::Collatz, 3, m};
    for (State s = 0; s < m; ++s) {
      OrbitReport report = orbit_report(scheme, s);
      CHECK(report.tail_length <= m);
    }
  }
}

TEST_CASE("is_primitive_root matches the brute-force order") {
  CHECK(oracle_order(3, 7) == 6);
  CHECK(is_primitive_root(3, 7));
  CHECK(oracle_order(2, 7) == 3);
  CHECK_FALSE(is_primitive_root(2, 7));
  CHECK_FALSE(is_primitive_root(1, 5));
  CHECK(is_primitive_root(1, 2));  // the unit group mod 2 is trivial

  for (std::int64_t m : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                         53, 59, 61}) {
    for (std::int64_t k = 1; k < m; ++k)
      CHECK(is_primitive_root(k, m) == (oracle_order(k, m) == m - 1));
  }
}

TEST_CASE("is_primitive_root validates its inputs") {
  CHECK_THROWS_AS(is_primitive_root(2, 6), std::domain_error);
  CHECK_THROWS_AS(is_primitive_root(2, 9), std::domain_error);
  CHECK_THROWS_AS(is_primitive_root(0, 7), std::out_of_range);
  CHECK_THROWS_AS(is_primitive_root(7, 7), std::out_of_range);
}

TEST_CASE("is_prime agrees with trial division on small numbers") {
  auto trial = [](std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::int64_t n = 0; n <= 2000; ++n) CHECK(is_prime(n) == trial(n));
}
