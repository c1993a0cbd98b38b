#pragma once

// Command-line front end. One binary, subcommand style:
//
//   simulate  evolve the switching count and sample epochs -> series CSV
//   orbit     trajectory of a scheme from a start state -> step/state CSV
//   classify  partition a scheme's state space -> per-state CSV
//   stats     closed-form moments of a population -> one-row CSV
//   decide    Monte Carlo error rate of the threshold rule -> one-row CSV
//   bayes     source posterior from a confusion-model JSON -> CSV
//   simpson   inversion scan of a stratified table CSV -> scenario CSV
//
// Every command is deterministic given its full flag set; randomized
// commands require an explicit --seed. Exit codes: 0 success, 1 usage
// error, 2 data error. Output goes to --out when given, stdout
// otherwise.

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "switchset/csv.hpp"
#include "switchset/dynamics.hpp"
#include "switchset/inference.hpp"
#include "switchset/model.hpp"
#include "switchset/paradox.hpp"
#include "switchset/sampler.hpp"

namespace switchset::cli {

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline OrbitReport report_from_closed_trajectory(const Trajectory& traj) {
  OrbitReport report;
  report.start = traj.states.front();
  report.path = traj.states;
  State repeated = report.path.back();
  auto first = std::find(report.path.begin(), report.path.end() - 1, repeated);
  report.tail_length = static_cast<std::int64_t>(first - report.path.begin());
  report.cycle =
      canonical_cycle(std::vector<State>(first, report.path.end() - 1));
  report.is_fixed_point = report.cycle.size() == 1;
  report.max_value = *std::max_element(report.path.begin(), report.path.end());
  report.path_length = static_cast<std::int64_t>(report.path.size()) - 2;
  return report;
}

inline void write_states_csv(std::ostream& out, const std::vector<State>& states) {
  out << "step,state\n";
  for (std::size_t i = 0; i < states.size(); ++i) out << i << ',' << states[i] << '\n';
}

inline ConfusionModel load_confusion_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read model file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("model file " + path + ": " + e.what());
  }
  if (!doc.contains("priors") || !doc.contains("likelihoods"))
    throw std::invalid_argument("model file needs 'priors' and 'likelihoods' keys");
  const auto& jp = doc["priors"];
  const auto& jl = doc["likelihoods"];
  if (!jp.is_array() || jp.size() != 3)
    throw std::invalid_argument("'priors' must hold 3 numbers");
  if (!jl.is_array() || jl.size() != 3)
    throw std::invalid_argument("'likelihoods' must hold 3 rows of 2 numbers");
  std::array<double, 3> priors{};
  std::array<std::array<double, 2>, 3> likelihoods{};
  for (std::size_t i = 0; i < 3; ++i) {
    priors[i] = jp[i].get<double>();
    if (!jl[i].is_array() || jl[i].size() != 2)
      throw std::invalid_argument("'likelihoods' rows must hold 2 numbers");
    for (std::size_t j = 0; j < 2; ++j) likelihoods[i][j] = jl[i][j].get<double>();
  }
  return make_confusion_model(priors, likelihoods);
}

inline SwitchPolicy build_policy(const std::string& policy_name,
                                 const std::string& scheme_name, std::int64_t k,
                                 bool pi_a_given, double pi_a,
                                 std::int64_t initial_s, std::int64_t n_c) {
  if (policy_name == "scheme") {
    if (n_c < 1)
      throw std::invalid_argument("scheme-driven policy needs n_C >= 1");
    return scheme_policy(
        make_scheme(scheme_kind_from_string(scheme_name), k, n_c + 1), initial_s);
  }
  if (policy_name == "random") {
    if (!pi_a_given) throw UsageError("--pi-a is required with --policy random");
    return random_policy(pi_a, initial_s);
  }
  throw UsageError("--policy must be 'scheme' or 'random'");
}

}  // namespace detail

// Parses and runs one invocation. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out_stream,
               std::ostream& err_stream) {
  CLI::App app{"Simulation and inference for sets with switching elements"};
  app.require_subcommand(1);

  // simulate
  std::int64_t na = 0, nb = 0, nc = 0, k = 3, initial_s = 0, epochs = 0, draws = 0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  double pi_a = 0.5;
  std::string policy_name = "scheme", scheme_name = "collatz", out_path;

  auto* simulate = app.add_subcommand("simulate", "Evolve and sample a series");
  simulate->add_option("--na", na, "stable Type-A count")->required();
  simulate->add_option("--nb", nb, "stable Type-B count")->required();
  simulate->add_option("--nc", nc, "switching count")->required();
  simulate->add_option("--policy", policy_name, "scheme | random");
  simulate->add_option("--scheme", scheme_name,
                       "additive | multiplicative | collatz (scheme policy)");
  simulate->add_option("--k", k, "scheme parameter");
  auto* sim_pi = simulate->add_option("--pi-a", pi_a, "P(C projects as A) (random policy)");
  simulate->add_option("--initial-s", initial_s, "switching count at epoch 0");
  simulate->add_option("--epochs", epochs, "number of epochs")->required();
  simulate->add_option("--draws", draws, "draws per epoch")->required();
  simulate->add_option("--seed", seed, "RNG seed")->required();
  simulate->add_option("-o,--out", out_path, "output file (default stdout)");

  // orbit
  std::int64_t modulus = 2, start = 0, max_steps = 0;
  auto* orbit = app.add_subcommand("orbit", "Trajectory of a scheme from a start state");
  orbit->add_option("--scheme", scheme_name, "additive | multiplicative | collatz")
      ->required();
  orbit->add_option("--k", k, "scheme parameter")->required();
  orbit->add_option("--mod", modulus, "modulus M")->required();
  orbit->add_option("--start", start, "start state")->required();
  orbit->add_option("--max-steps", max_steps, "step cap (default M+1, never truncates)");
  orbit->add_option("-o,--out", out_path, "output file (default stdout)");

  // classify
  auto* classify = app.add_subcommand("classify", "Partition a scheme's state space");
  classify->add_option("--scheme", scheme_name, "additive | multiplicative | collatz")
      ->required();
  classify->add_option("--k", k, "scheme parameter")->required();
  classify->add_option("--mod", modulus, "modulus M")->required();
  classify->add_option("-o,--out", out_path, "output file (default stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "Closed-form moments of the epoch mean");
  stats->add_option("--na", na, "stable Type-A count")->required();
  stats->add_option("--nb", nb, "stable Type-B count")->required();
  stats->add_option("--nc", nc, "switching count")->required();
  stats->add_option("-o,--out", out_path, "output file (default stdout)");

  // decide
  auto* decide = app.add_subcommand("decide", "Threshold-rule error rate, Monte Carlo");
  decide->add_option("--na", na, "stable Type-A count")->required();
  decide->add_option("--nb", nb, "stable Type-B count")->required();
  decide->add_option("--nc", nc, "switching count")->required();
  decide->add_option("--policy", policy_name, "scheme | random");
  decide->add_option("--scheme", scheme_name,
                     "additive | multiplicative | collatz (scheme policy)");
  decide->add_option("--k", k, "scheme parameter");
  auto* dec_pi = decide->add_option("--pi-a", pi_a, "P(C projects as A) (random policy)");
  decide->add_option("--initial-s", initial_s, "switching count at epoch 0");
  decide->add_option("--epochs", epochs, "epochs per replicate")->required();
  decide->add_option("--draws", draws, "draws per epoch")->required();
  decide->add_option("--replicates", replicates, "Monte Carlo replicates")->required();
  decide->add_option("--seed", seed, "RNG seed")->required();
  decide->add_option("-o,--out", out_path, "output file (default stdout)");

  // bayes
  std::string model_path, observed_name;
  auto* bayes = app.add_subcommand("bayes", "Source posterior for an observation");
  bayes->add_option("--model", model_path, "confusion-model JSON file")->required();
  bayes->add_option("--observed", observed_name, "observed label, A or B")->required();
  bayes->add_option("-o,--out", out_path, "output file (default stdout)");

  // simpson
  std::string table_path;
  auto* simpson = app.add_subcommand("simpson", "Inversion scan of a stratified table");
  simpson->add_option("--table", table_path, "table CSV file")->required();
  simpson->add_option("-o,--out", out_path, "output file (default stdout)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out_stream, err_stream);
    return 0;
  } catch (const CLI::ParseError& e) {
    err_stream << "error: " << e.what() << '\n';
    return 1;
  }

  std::ostringstream body;
  try {
    if (*simulate) {
      SetConfig config = make_config(na, nb, nc);
      SwitchPolicy policy =
          detail::build_policy(policy_name, scheme_name, k, sim_pi->count() > 0,
                               pi_a, initial_s, nc);
      SampleSeries series = evolve_and_sample(config, policy, epochs, draws, seed);
      write_series_csv(body, series);
    } else if (*orbit) {
      SchemeSpec scheme =
          make_scheme(scheme_kind_from_string(scheme_name), k, modulus);
      Trajectory traj = trajectory(
          scheme, start, max_steps > 0 ? max_steps : scheme.modulus + 1);
      body << "# scheme=" << to_string(scheme.kind) << ";k=" << scheme.k
           << ";M=" << scheme.modulus << ";start=" << start << '\n';
      if (traj.truncated) {
        body << "# truncated=1;steps=" << max_steps << '\n';
        detail::write_states_csv(body, traj.states);
      } else {
        OrbitReport report = detail::report_from_closed_trajectory(traj);
        body << "# distinct_states=" << report.distinct_states()
             << ";path_length=" << report.path_length
             << ";tail_length=" << report.tail_length
             << ";max_value=" << report.max_value << '\n';
        body << "# cycle=";
        for (std::size_t i = 0; i < report.cycle.size(); ++i)
          body << (i ? "," : "") << report.cycle[i];
        body << '\n';
        detail::write_states_csv(
            body, std::vector<State>(report.path.begin(), report.path.end() - 1));
      }
    } else if (*classify) {
      SchemeSpec scheme =
          make_scheme(scheme_kind_from_string(scheme_name), k, modulus);
      StateClassification parts = classify_states(scheme);
      body << "# scheme=" << to_string(scheme.kind) << ";k=" << scheme.k
           << ";M=" << scheme.modulus << '\n';
      body << "# fixed_points=";
      for (std::size_t i = 0; i < parts.fixed_points.size(); ++i)
        body << (i ? "," : "") << parts.fixed_points[i];
      body << '\n';
      for (std::size_t c = 0; c < parts.cycles.size(); ++c) {
        body << "# cycle_" << c << '=';
        for (std::size_t i = 0; i < parts.cycles[c].size(); ++i)
          body << (i ? "," : "") << parts.cycles[c][i];
        body << '\n';
      }
      std::vector<std::string> klass(static_cast<std::size_t>(scheme.modulus),
                                     "transient");
      std::vector<std::int64_t> cycle_id(static_cast<std::size_t>(scheme.modulus), -1);
      for (State s : parts.fixed_points)
        klass[static_cast<std::size_t>(s)] = "fixed_point";
      for (std::size_t c = 0; c < parts.cycles.size(); ++c)
        for (State s : parts.cycles[c]) {
          klass[static_cast<std::size_t>(s)] = "cycle";
          cycle_id[static_cast<std::size_t>(s)] = static_cast<std::int64_t>(c);
        }
      body << "state,class,cycle_id\n";
      for (State s = 0; s < scheme.modulus; ++s)
        body << s << ',' << klass[static_cast<std::size_t>(s)] << ','
             << cycle_id[static_cast<std::size_t>(s)] << '\n';
    } else if (*stats) {
      MomentReport report = moment_report(make_config(na, nb, nc));
      body << "mean,mean_square,variance\n";
      body << g12(report.mean.to_double()) << ','
           << g12(report.mean_square.to_double()) << ','
           << g12(report.variance.to_double()) << '\n';
    } else if (*decide) {
      SetConfig config = make_config(na, nb, nc);
      SwitchPolicy policy =
          detail::build_policy(policy_name, scheme_name, k, dec_pi->count() > 0,
                               pi_a, initial_s, nc);
      double rate = decision_error_rate(config, policy, draws, epochs, replicates, seed);
      auto errors = static_cast<std::int64_t>(
          rate * static_cast<double>(replicates) + 0.5);
      Hypothesis truth =
          expected_mean(config) > Rational(0) ? Hypothesis::A : Hypothesis::B;
      body << "truth,replicates,errors,error_rate\n";
      body << to_string(truth) << ',' << replicates << ',' << errors << ','
           << g12(rate) << '\n';
    } else if (*bayes) {
      ConfusionModel model = detail::load_confusion_model(model_path);
      OutcomeLabel observed;
      if (observed_name == "A")
        observed = OutcomeLabel::A;
      else if (observed_name == "B")
        observed = OutcomeLabel::B;
      else
        throw detail::UsageError("--observed must be A or B");
      std::array<double, 3> posterior = posterior_source(model, observed);
      body << "# observed=" << observed_name << '\n';
      body << "# p_observed=" << g12(observation_probability(model, observed)) << '\n';
      body << "source,posterior\n";
      const char* names[3] = {"A", "B", "C"};
      for (std::size_t i = 0; i < 3; ++i)
        body << names[i] << ',' << g12(posterior[i]) << '\n';
    } else if (*simpson) {
      std::ifstream in(table_path);
      if (!in) throw std::invalid_argument("cannot read table file: " + table_path);
      StratifiedTable table = parse_table_csv(in);
      write_inversion_report_csv(body, detect_inversions(table));
    }
  } catch (const detail::UsageError& e) {
    err_stream << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err_stream << "error: " << e.what() << '\n';
    return 2;
  }

  if (out_path.empty()) {
    out_stream << body.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      err_stream << "error: cannot write output file: " << out_path << '\n';
      return 2;
    }
    out << body.str();
  }
  return 0;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace switchset::cli
