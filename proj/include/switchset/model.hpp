#pragma once

// Three-class population model.
//
// A set of N elements splits into stable Type A, stable Type B, and a
// switching class C whose members project as A or B at observation
// time. Observations map A to +1 and B to -1. With s of the n_C
// switching elements currently projecting as A, the chance of drawing
// an A-looking element is (n_A + s)/N, so the long-run probability of
// A is only pinned down to an interval of width n_C/N.

#include <cstdint>
#include <stdexcept>

#include "switchset/rational.hpp"

namespace switchset {

struct SetConfig {
  std::int64_t n_a = 0;  // stable Type-A count
  std::int64_t n_b = 0;  // stable Type-B count
  std::int64_t n_c = 0;  // switching count
  std::int64_t total = 0;
};

inline SetConfig make_config(std::int64_t n_a, std::int64_t n_b, std::int64_t n_c) {
  if (n_a < 0 || n_b < 0 || n_c < 0)
    throw std::invalid_argument("make_config: counts must be nonnegative");
  std::int64_t total = n_a + n_b + n_c;
  if (total < 1) throw std::invalid_argument("make_config: set must be nonempty");
  return SetConfig{n_a, n_b, n_c, total};
}

// Closed interval of probabilities, 0 <= lo <= hi <= 1.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
};

enum class OutcomeLabel { A, B };

struct Outcome {
  OutcomeLabel label = OutcomeLabel::A;
  int value = +1;  // +1 for A, -1 for B

  static Outcome from_label(OutcomeLabel l) {
    return Outcome{l, l == OutcomeLabel::A ? +1 : -1};
  }
};

inline const char* to_string(OutcomeLabel l) {
  return l == OutcomeLabel::A ? "A" : "B";
}

// Range of P(A) induced by the switching class: [n_A/N, (n_A+n_C)/N].
// Collapses to a point when n_C = 0.
inline Interval probability_bounds(const SetConfig& config) {
  return Interval{Rational(config.n_a, config.total),
                  Rational(config.n_a + config.n_c, config.total)};
}

// Exact +/-1 population mean for one epoch in which s switching
// elements project as A: (n_A + s - n_B - (n_C - s)) / N.
inline Rational epoch_mean(const SetConfig& config, std::int64_t s) {
  if (s < 0 || s > config.n_c)
    throw std::out_of_range("epoch_mean: s must lie in [0, n_C]");
  return Rational(config.n_a - config.n_b - config.n_c + 2 * s, config.total);
}

}  // namespace switchset
