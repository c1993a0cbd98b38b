#pragma once

// CSV serialization for sample series, stratified tables, and inversion
// reports, plus the numeric rendering used across all emitted output.
//
// Numbers print at 12 significant digits. Series files carry their
// provenance (config, policy, rng, seed) in '#' comment lines ahead of
// the pinned header `epoch,s,draws,count_a,count_b,mean`, so a parsed
// file reconstructs the full series; plotting tools skip the comments.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "switchset/paradox.hpp"
#include "switchset/sampler.hpp"

namespace switchset {

inline std::string g12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

inline std::string g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.push_back("");
  return fields;
}

inline std::int64_t parse_int64(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    std::int64_t value = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": expected an integer, got '" + text + "'");
  }
}

inline double parse_double(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": expected a number, got '" + text + "'");
  }
}

inline std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  for (const std::string& part : split(text, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) continue;
    kv[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return kv;
}

}  // namespace detail

inline std::string policy_to_string(const SwitchPolicy& policy) {
  std::ostringstream out;
  if (policy.kind == PolicyKind::SchemeDriven) {
    out << "kind=scheme;scheme=" << to_string(policy.scheme.kind)
        << ";k=" << policy.scheme.k << ";M=" << policy.scheme.modulus
        << ";initial_s=" << policy.initial_s;
  } else {
    out << "kind=random;pi_a=" << g17(policy.pi_a)
        << ";initial_s=" << policy.initial_s;
  }
  return out.str();
}

inline SwitchPolicy policy_from_string(const std::string& text) {
  auto kv = detail::parse_kv(text);
  auto need = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(std::string("policy: missing field '") + key + "'");
    return it->second;
  };
  const std::string& kind = need("kind");
  if (kind == "scheme") {
    SchemeSpec scheme = make_scheme(scheme_kind_from_string(need("scheme")),
                                    detail::parse_int64(need("k"), "policy k"),
                                    detail::parse_int64(need("M"), "policy M"));
    return scheme_policy(scheme, detail::parse_int64(need("initial_s"), "policy initial_s"));
  }
  if (kind == "random") {
    return random_policy(detail::parse_double(need("pi_a"), "policy pi_a"),
                         detail::parse_int64(need("initial_s"), "policy initial_s"));
  }
  throw std::invalid_argument("policy: unknown kind '" + kind + "'");
}

inline constexpr const char* kSeriesHeader = "epoch,s,draws,count_a,count_b,mean";

inline void write_series_csv(std::ostream& out, const SampleSeries& series) {
  out << "# config=" << series.config.n_a << ',' << series.config.n_b << ','
      << series.config.n_c << '\n';
  out << "# policy=" << policy_to_string(series.policy) << '\n';
  out << "# rng=" << series.rng_algorithm << '\n';
  out << "# seed=" << series.seed << '\n';
  out << kSeriesHeader << '\n';
  for (const auto& epoch : series.epochs) {
    out << epoch.epoch_index << ',' << epoch.s << ',' << epoch.draws << ','
        << epoch.count_a << ',' << epoch.count_b << ',' << g12(epoch.sample_mean)
        << '\n';
  }
}

inline SampleSeries parse_series_csv(std::istream& in) {
  SampleSeries series;
  std::string line;
  int line_no = 0;
  bool saw_header = false, saw_config = false, saw_policy = false, saw_seed = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      std::string value = body.substr(eq + 1);
      if (key == "config") {
        auto parts = detail::split(value, ',');
        if (parts.size() != 3)
          throw std::invalid_argument(where + ": config needs three counts");
        series.config = make_config(detail::parse_int64(parts[0], where),
                                    detail::parse_int64(parts[1], where),
                                    detail::parse_int64(parts[2], where));
        saw_config = true;
      } else if (key == "policy") {
        series.policy = policy_from_string(value);
        saw_policy = true;
      } else if (key == "rng") {
        series.rng_algorithm = value;
      } else if (key == "seed") {
        series.seed = static_cast<std::uint64_t>(
            std::stoull(value));
        saw_seed = true;
      }
      continue;
    }
    if (!saw_header) {
      if (line != kSeriesHeader)
        throw std::invalid_argument(where + ": expected header '" +
                                    std::string(kSeriesHeader) + "'");
      saw_header = true;
      continue;
    }
    auto fields = detail::split(line, ',');
    if (fields.size() != 6)
      throw std::invalid_argument(where + ": expected 6 fields");
    EpochObservation obs;
    obs.epoch_index = detail::parse_int64(fields[0], where);
    obs.s = detail::parse_int64(fields[1], where);
    obs.draws = detail::parse_int64(fields[2], where);
    obs.count_a = detail::parse_int64(fields[3], where);
    obs.count_b = detail::parse_int64(fields[4], where);
    double listed_mean = detail::parse_double(fields[5], where);
    if (obs.count_a + obs.count_b != obs.draws)
      throw std::invalid_argument(where + ": count_a + count_b must equal draws");
    if (obs.epoch_index != static_cast<std::int64_t>(series.epochs.size()))
      throw std::invalid_argument(where + ": epochs must be consecutive from 0");
    obs.sample_mean = static_cast<double>(obs.count_a - obs.count_b) /
                      static_cast<double>(obs.draws);
    if (std::abs(listed_mean - obs.sample_mean) > 1e-9)
      throw std::invalid_argument(where + ": mean does not match counts");
    series.epochs.push_back(obs);
  }
  if (!saw_header) throw std::invalid_argument("series: missing header row");
  if (!saw_config || !saw_policy || !saw_seed)
    throw std::invalid_argument("series: missing config/policy/seed metadata");
  return series;
}

inline constexpr const char* kTableHeader = "subject,stratum,num_lo,num_hi,den";

inline void write_table_csv(std::ostream& out, const StratifiedTable& table) {
  out << kTableHeader << '\n';
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
      const TableCell& cell = table.cells[i][j];
      out << table.subjects[j] << ',' << table.stratum_names[i] << ','
          << cell.numerator.lo << ',' << cell.numerator.hi << ','
          << cell.denominator << '\n';
    }
  }
}

// Parses the `subject,stratum,num_lo,num_hi,den` schema. Subjects and
// strata are ordered by first appearance; every subject must cover
// every stratum exactly once. Errors carry 1-based line numbers.
inline StratifiedTable parse_table_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool saw_header = false;

  std::vector<std::string> subjects;
  std::vector<std::string> strata;
  struct RawCell {
    TableCell cell;
    bool present = false;
    int line = 0;
  };
  // indexed [stratum][subject] once both are known
  std::vector<std::vector<RawCell>> grid;

  auto subject_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < subjects.size(); ++i)
      if (subjects[i] == name) return i;
    subjects.push_back(name);
    for (auto& row : grid) row.resize(subjects.size());
    return subjects.size() - 1;
  };
  auto stratum_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < strata.size(); ++i)
      if (strata[i] == name) return i;
    strata.push_back(name);
    grid.emplace_back(subjects.size());
    return strata.size() - 1;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!saw_header) {
      if (line != kTableHeader)
        throw std::invalid_argument(where + ": expected header '" +
                                    std::string(kTableHeader) + "'");
      saw_header = true;
      continue;
    }
    auto fields = detail::split(line, ',');
    if (fields.size() != 5)
      throw std::invalid_argument(where + ": expected 5 fields");
    if (fields[0].empty() || fields[1].empty())
      throw std::invalid_argument(where + ": subject and stratum must be nonempty");

    TableCell cell;
    cell.numerator.lo = detail::parse_int64(fields[2], where);
    cell.numerator.hi = detail::parse_int64(fields[3], where);
    cell.denominator = detail::parse_int64(fields[4], where);
    if (cell.denominator < 1)
      throw std::invalid_argument(where + ": denominator must be positive");
    if (cell.numerator.lo < 0 || cell.numerator.lo > cell.numerator.hi ||
        cell.numerator.hi > cell.denominator)
      throw std::invalid_argument(where +
                                  ": need 0 <= num_lo <= num_hi <= denominator");

    std::size_t j = subject_index(fields[0]);
    std::size_t i = stratum_index(fields[1]);
    if (grid[i][j].present)
      throw std::invalid_argument(where + ": duplicate cell for " + fields[0] +
                                  "/" + fields[1]);
    grid[i][j] = RawCell{cell, true, line_no};
  }

  if (!saw_header) throw std::invalid_argument("table: empty file");
  if (subjects.size() != 2)
    throw std::invalid_argument("table: exactly two subjects required, found " +
                                std::to_string(subjects.size()));
  std::vector<std::array<TableCell, 2>> cells(strata.size());
  for (std::size_t i = 0; i < strata.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (grid[i].size() <= j || !grid[i][j].present)
        throw std::invalid_argument("table: missing cell for " + subjects[j] +
                                    "/" + strata[i]);
      cells[i][j] = grid[i][j].cell;
    }
  }
  return make_stratified_table({subjects[0], subjects[1]}, std::move(strata),
                               std::move(cells));
}

inline void write_inversion_report_csv(std::ostream& out,
                                       const InversionReport& report) {
  const StratifiedTable& table = report.table;
  out << "scenario";
  for (std::size_t i = 0; i < table.stratum_count(); ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out << ",num_" << table.subjects[j] << '_' << table.stratum_names[i];
  for (std::size_t i = 0; i < table.stratum_count(); ++i)
    out << ",winner_" << table.stratum_names[i];
  out << ",agg_" << table.subjects[0] << ",agg_" << table.subjects[1]
      << ",agg_winner,dominator,inversion,exception\n";

  auto winner_name = [&](Winner w) -> std::string {
    switch (w) {
      case Winner::First: return table.subjects[0];
      case Winner::Second: return table.subjects[1];
      case Winner::Tie: return "tie";
    }
    return "?";
  };

  for (std::size_t n = 0; n < report.scenarios.size(); ++n) {
    const Scenario& sc = report.scenarios[n];
    out << n;
    for (std::size_t i = 0; i < table.stratum_count(); ++i)
      for (std::size_t j = 0; j < 2; ++j) out << ',' << sc.numerators[i][j];
    for (Winner w : sc.stratum_winners) out << ',' << winner_name(w);
    out << ',' << g12(sc.aggregates[0].to_double()) << ','
        << g12(sc.aggregates[1].to_double()) << ','
        << winner_name(sc.aggregate_winner) << ','
        << (sc.dominator < 0 ? std::string("none")
                             : table.subjects[static_cast<std::size_t>(sc.dominator)])
        << ',' << (sc.inversion ? 1 : 0) << ',' << (sc.per_stratum_exception ? 1 : 0)
        << '\n';
  }
}

}  // namespace switchset
