#pragma once

// Interval-valued stratified count tables and Simpson-type inversion
// search.
//
// Two subjects are compared across strata. Each cell holds an integer
// numerator range over a fixed denominator (successes out of attempts,
// where the success count is only known to a range). Enumerating every
// numerator choice yields scenarios; a scenario is an inversion when
// one subject wins or ties every stratum (strictly winning at least
// one) yet strictly loses the aggregated ratio. All comparisons are
// exact rational comparisons.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "switchset/rational.hpp"

namespace switchset {

struct CountRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t width() const { return hi - lo + 1; }
};

struct TableCell {
  CountRange numerator;
  std::int64_t denominator = 1;
};

struct StratifiedTable {
  std::array<std::string, 2> subjects;
  std::vector<std::string> stratum_names;
  std::vector<std::array<TableCell, 2>> cells;  // cells[stratum][subject]

  std::size_t stratum_count() const { return cells.size(); }
};

inline StratifiedTable make_stratified_table(
    std::array<std::string, 2> subjects, std::vector<std::string> stratum_names,
    std::vector<std::array<TableCell, 2>> cells) {
  if (subjects[0].empty() || subjects[1].empty() || subjects[0] == subjects[1])
    throw std::invalid_argument("table: two distinct nonempty subject names required");
  if (cells.empty()) throw std::invalid_argument("table: at least one stratum required");
  if (stratum_names.size() != cells.size())
    throw std::invalid_argument("table: stratum name per stratum required");
  for (const auto& stratum : cells) {
    for (const auto& cell : stratum) {
      if (cell.denominator < 1)
        throw std::invalid_argument("table: denominators must be positive");
      if (cell.numerator.lo < 0 || cell.numerator.lo > cell.numerator.hi ||
          cell.numerator.hi > cell.denominator)
        throw std::invalid_argument(
            "table: need 0 <= num_lo <= num_hi <= denominator");
    }
  }
  return StratifiedTable{std::move(subjects), std::move(stratum_names),
                         std::move(cells)};
}

// One numerator picked per cell, aligned with table.cells.
using NumeratorChoice = std::vector<std::array<std::int64_t, 2>>;

namespace detail {

inline void check_choice(const StratifiedTable& table, const NumeratorChoice& choice) {
  if (choice.size() != table.cells.size())
    throw std::invalid_argument("choice: one numerator pair per stratum required");
  for (std::size_t i = 0; i < choice.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const CountRange& range = table.cells[i][j].numerator;
      if (choice[i][j] < range.lo || choice[i][j] > range.hi)
        throw std::out_of_range("choice: numerator outside its range");
    }
  }
}

}  // namespace detail

// Per-subject aggregate ratio (sum of numerators over sum of
// denominators) for a fixed numerator choice.
inline std::array<Rational, 2> aggregate(const StratifiedTable& table,
                                         const NumeratorChoice& choice) {
  detail::check_choice(table, choice);
  std::array<Rational, 2> totals;
  for (std::size_t j = 0; j < 2; ++j) {
    std::int64_t num = 0, den = 0;
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
      num += choice[i][j];
      den += table.cells[i][j].denominator;
    }
    totals[j] = Rational(num, den);
  }
  return totals;
}

enum class Winner { First, Second, Tie };

inline const char* to_string(Winner w) {
  switch (w) {
    case Winner::First: return "first";
    case Winner::Second: return "second";
    case Winner::Tie: return "tie";
  }
  return "?";
}

inline Winner compare_ratios(const Rational& first, const Rational& second) {
  if (first > second) return Winner::First;
  if (second > first) return Winner::Second;
  return Winner::Tie;
}

inline std::vector<Winner> compare_strata(const StratifiedTable& table,
                                          const NumeratorChoice& choice) {
  detail::check_choice(table, choice);
  std::vector<Winner> winners;
  winners.reserve(table.cells.size());
  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    Rational first(choice[i][0], table.cells[i][0].denominator);
    Rational second(choice[i][1], table.cells[i][1].denominator);
    winners.push_back(compare_ratios(first, second));
  }
  return winners;
}

struct Scenario {
  NumeratorChoice numerators;
  std::vector<Winner> stratum_winners;
  std::array<Rational, 2> aggregates;
  Winner aggregate_winner = Winner::Tie;
  int dominator = -1;  // subject index winning or tying every stratum
                       // with at least one strict win; -1 if none
  bool inversion = false;
  bool per_stratum_exception = false;  // both subjects strictly lose somewhere
};

struct InversionReport {
  StratifiedTable table;
  std::vector<Scenario> scenarios;

  std::size_t inversion_count() const {
    std::size_t n = 0;
    for (const auto& s : scenarios) n += s.inversion ? 1 : 0;
    return n;
  }
};

inline constexpr std::int64_t kMaxScenarios = 1'000'000;

inline Scenario evaluate_scenario(const StratifiedTable& table,
                                  const NumeratorChoice& choice) {
  Scenario scenario;
  scenario.numerators = choice;
  scenario.stratum_winners = compare_strata(table, choice);
  scenario.aggregates = aggregate(table, choice);
  scenario.aggregate_winner =
      compare_ratios(scenario.aggregates[0], scenario.aggregates[1]);

  bool first_strict = false, second_strict = false;
  for (Winner w : scenario.stratum_winners) {
    if (w == Winner::First) first_strict = true;
    if (w == Winner::Second) second_strict = true;
  }
  if (first_strict && !second_strict) scenario.dominator = 0;
  if (second_strict && !first_strict) scenario.dominator = 1;
  scenario.per_stratum_exception = first_strict && second_strict;
  scenario.inversion =
      (scenario.dominator == 0 && scenario.aggregate_winner == Winner::Second) ||
      (scenario.dominator == 1 && scenario.aggregate_winner == Winner::First);
  return scenario;
}

// Exhaustive enumeration of all numerator choices, cells ordered by
// (stratum, subject) with the last cell advancing fastest.
inline InversionReport detect_inversions(const StratifiedTable& table) {
  std::int64_t count = 1;
  for (const auto& stratum : table.cells) {
    for (const auto& cell : stratum) {
      count *= cell.numerator.width();
      if (count > kMaxScenarios)
        throw std::length_error("detect_inversions: scenario count beyond bound");
    }
  }

  InversionReport report;
  report.table = table;
  report.scenarios.reserve(static_cast<std::size_t>(count));

  NumeratorChoice choice(table.cells.size());
  for (std::size_t i = 0; i < table.cells.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) choice[i][j] = table.cells[i][j].numerator.lo;

  while (true) {
    report.scenarios.push_back(evaluate_scenario(table, choice));
    // odometer increment, last (stratum, subject) cell fastest
    std::size_t idx = table.cells.size() * 2;
    while (idx > 0) {
      --idx;
      std::size_t i = idx / 2, j = idx % 2;
      if (choice[i][j] < table.cells[i][j].numerator.hi) {
        ++choice[i][j];
        break;
      }
      choice[i][j] = table.cells[i][j].numerator.lo;
      if (idx == 0) return report;
    }
  }
}

}  // namespace switchset
