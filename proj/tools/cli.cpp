// Copyright 2026 The qalbp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qalbp/bench.hpp"
#include "qalbp/formulation.hpp"
#include "qalbp/instance.hpp"
#include "qalbp/qubo.hpp"
#include "qalbp/solvers.hpp"

namespace qalbp::cli {

namespace {

constexpr long long kQpuQubitMarker = 5640;

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

// Where instances come from: a file path or an embedded fixture.
struct InstanceSource {
  std::string path;
  std::string fixture;
  std::string name;  // selects one record from a suite file

  void attach(CLI::App* cmd) {
    cmd->add_option("instance", path, "Instance or suite file (JSON)");
    cmd->add_option("--fixture", fixture, "Use an embedded benchmark instance, e.g. \"(3, 23)\"");
    cmd->add_option("--name", name, "Pick one instance by name from a suite file");
  }

  std::vector<Instance> all() const {
    if (!fixture.empty()) {
      auto inst = find_fixture(fixture);
      if (!inst) throw CLI::ValidationError("--fixture", "unknown fixture " + fixture);
      return {*inst};
    }
    if (path.empty()) throw CLI::RequiredError("instance file or --fixture");
    auto instances = load_instances(path);
    if (!name.empty()) {
      auto it = std::find_if(instances.begin(), instances.end(),
                             [&](const Instance& i) { return i.name() == name; });
      if (it == instances.end()) throw std::runtime_error("no instance named " + name);
      return {*it};
    }
    return instances;
  }

  Instance one() const {
    auto instances = all();
    if (instances.size() != 1) {
      throw CLI::ValidationError("instance",
                                 "file holds several instances; select one with --name");
    }
    return instances.front();
  }
};

// "n", "ffd" or a positive integer.
struct BinsOption {
  std::string text = "n";

  void attach(CLI::App* cmd) {
    cmd->add_option("--bins", text, "QUBO bin count: n (item count), ffd, or an integer")
        ->capture_default_str()
        ->check([](const std::string& s) -> std::string {
          if (s == "n" || s == "ffd") return {};
          try {
            if (std::stoll(s) > 0 && std::to_string(std::stoll(s)) == s) return {};
          } catch (const std::exception&) {
          }
          return "expected n, ffd or a positive integer";
        });
  }

  BinPolicy policy() const {
    if (text == "n") return {BinPolicy::Kind::items, 0};
    if (text == "ffd") return {BinPolicy::Kind::ffd, 0};
    return {BinPolicy::Kind::fixed, static_cast<std::size_t>(std::stoll(text))};
  }
};

struct PenaltyFlags {
  PenaltyOptions options;

  void attach(CLI::App* cmd) {
    cmd->add_option("--delta-fraction", options.delta_fraction,
                    "delta as a fraction of the overfill bound")
        ->capture_default_str();
    cmd->add_option("--theta", options.theta, "Assignment penalty (>= 2)")->capture_default_str();
    cmd->add_option("--gamma", options.gamma, "Closed-bin penalty (>= 1)")->capture_default_str();
  }
};

struct AnnealFlags {
  AnnealParams params;
  double t_initial = 0.0;
  double t_final = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--reads", params.num_reads, "Annealing reads")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sweeps", params.sweeps_per_read, "Sweeps per read")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--t-initial", t_initial, "Initial temperature (default: from the model)");
    cmd->add_option("--t-final", t_final, "Final temperature (default: 1e-3)");
    cmd->add_option("--seed", params.seed, "Global seed")->capture_default_str();
  }

  AnnealParams resolved(std::size_t threads) const {
    AnnealParams p = params;
    if (t_initial > 0.0) p.t_initial = t_initial;
    if (t_final > 0.0) p.t_final = t_final;
    p.threads = threads;
    return p;
  }
};

CLI::Validator solver_name() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        return parse_solver(s) ? std::string{} : "unknown solver " + s;
      },
      "{sa,exact,exact_bpp,exact_qubo}");
}

void write_text(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
}

std::vector<SolveRecord> strip_timing(std::vector<SolveRecord> records) {
  for (auto& r : records) r.tts_us = 0.0;
  return records;
}

std::string render_records(const std::vector<SolveRecord>& records, ResultFormat format) {
  std::ostringstream text;
  write_results(records, text, format);
  return text.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bin packing as QUBO: analytic penalties, annealing and exact baselines", "qalbp"};
  app.require_subcommand(1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print the version and exit");
  std::size_t threads = 1;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a random instance");
  std::size_t gen_n = 0;
  int gen_lo = 4, gen_hi = 10, gen_capacity = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  generate->add_option("n", gen_n, "Item count")->required()->check(CLI::PositiveNumber);
  generate->add_option("weight_lo", gen_lo, "Smallest weight")->capture_default_str();
  generate->add_option("weight_hi", gen_hi, "Largest weight")->capture_default_str();
  generate->add_option("capacity", gen_capacity, "Bin capacity")->capture_default_str();
  generate->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Output file (default stdout)");

  // penalties
  auto* penalties_cmd = app.add_subcommand("penalties", "Print the analytic multipliers");
  InstanceSource pen_source;
  BinsOption pen_bins;
  PenaltyFlags pen_flags;
  int pen_precision = 4;
  pen_source.attach(penalties_cmd);
  pen_bins.attach(penalties_cmd);
  pen_flags.attach(penalties_cmd);
  penalties_cmd->add_option("--precision", pen_precision, "Decimal places")->capture_default_str();

  // build
  auto* build = app.add_subcommand("build", "Build and export the QUBO");
  InstanceSource build_source;
  BinsOption build_bins;
  PenaltyFlags build_flags;
  std::string build_format = "structured", build_out;
  build_source.attach(build);
  build_bins.attach(build);
  build_flags.attach(build);
  build->add_option("--format", build_format, "structured or sparse_text")
      ->capture_default_str()
      ->check(CLI::IsMember({"structured", "sparse_text"}));
  build->add_option("--out", build_out, "Output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve instances and report records");
  InstanceSource solve_source;
  BinsOption solve_bins;
  PenaltyFlags solve_flags;
  AnnealFlags solve_anneal;
  std::string solve_solver = "sa", solve_out, solve_format = "csv";
  bool solve_no_timing = false;
  solve_source.attach(solve);
  solve_bins.attach(solve);
  solve_flags.attach(solve);
  solve_anneal.attach(solve);
  solve->add_option("--solver", solve_solver, "sa, exact (branch and bound) or exact_qubo")
      ->capture_default_str()
      ->check(solver_name());
  solve->add_option("--out", solve_out, "Write result records to this file");
  solve->add_option("--format", solve_format, "csv or structured")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "structured"}));
  solve->add_flag("--no-timing", solve_no_timing, "Write tts_us as 0 for byte-stable output");

  // bench
  auto* bench = app.add_subcommand("bench", "Run solvers over a suite");
  bool bench_fixtures = false, bench_no_timing = false;
  std::string bench_suite, bench_out, bench_format = "csv";
  std::vector<std::string> bench_solvers = {"sa", "exact"};
  BinsOption bench_bins;
  PenaltyFlags bench_flags;
  AnnealFlags bench_anneal;
  auto* fixtures_flag = bench->add_flag("--fixtures", bench_fixtures, "Use the 40 embedded instances");
  bench->add_option("--suite", bench_suite, "Suite file")->excludes(fixtures_flag);
  bench->add_option("--solvers", bench_solvers, "Comma-separated solvers")
      ->delimiter(',')
      ->capture_default_str()
      ->check(solver_name());
  bench->add_option("--out", bench_out, "Write result records to this file");
  bench->add_option("--format", bench_format, "csv or structured")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "structured"}));
  bench->add_flag("--no-timing", bench_no_timing, "Write tts_us as 0 for byte-stable output");
  bench_bins.attach(bench);
  bench_flags.attach(bench);
  bench_anneal.attach(bench);

  // vars
  auto* vars = app.add_subcommand("vars", "Tabulate QUBO variable counts");
  std::size_t vars_n_min = 1, vars_n_max = 13;
  std::vector<long long> vars_capacities = {10, 15, 20};
  vars->add_option("--n-min", vars_n_min, "Smallest item count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  vars->add_option("--n-max", vars_n_max, "Largest item count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  vars->add_option("--capacities", vars_capacities, "Comma-separated bin capacities")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // --version alone is valid.
  if (std::find(args.begin(), args.end(), "--version") != args.end()) {
    out << "qalbp " << kVersion << '\n';
    return kExitOk;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      const Instance inst = generate_instance(gen_n, gen_lo, gen_hi, gen_capacity, gen_seed);
      if (gen_out.empty()) {
        write_instance(inst, out);
      } else {
        save_instance(inst, gen_out);
      }
      return kExitOk;
    }

    if (penalties_cmd->parsed()) {
      const Instance inst = pen_source.one();
      const std::size_t m = pen_bins.policy().bins_for(inst);
      const Penalties p = estimate_penalties(inst, m, pen_flags.options);
      const int digits = pen_precision;
      out << "instance=" << inst.name() << '\n'
          << "capacity=" << inst.capacity() << '\n'
          << "w_min=" << inst.min_weight() << '\n'
          << "bins=" << m << '\n'
          << "delta=" << fixed(p.delta, digits) << '\n';
      const bool uniform = std::all_of(p.lambda.begin(), p.lambda.end(),
                                       [&](double v) { return v == p.lambda.front(); }) &&
                           std::all_of(p.rho.begin(), p.rho.end(),
                                       [&](double v) { return v == p.rho.front(); });
      if (uniform) {
        out << "lambda=" << fixed(p.lambda.front(), digits) << '\n'
            << "rho=" << fixed(p.rho.front(), digits) << '\n';
      } else {
        for (std::size_t i = 0; i < m; ++i) {
          out << "lambda_" << i << '=' << fixed(p.lambda[i], digits) << '\n'
              << "rho_" << i << '=' << fixed(p.rho[i], digits) << '\n';
        }
      }
      out << "theta=" << fixed(p.theta, digits) << '\n'
          << "gamma=" << fixed(p.gamma, digits) << '\n'
          << "s_min=" << p.s_min << '\n';
      return kExitOk;
    }

    if (build->parsed()) {
      const Instance inst = build_source.one();
      const std::size_t m = build_bins.policy().bins_for(inst);
      const Qubo qubo = build_qubo(inst, estimate_penalties(inst, m, build_flags.options), m);
      const auto format =
          build_format == "structured" ? QuboFormat::structured : QuboFormat::sparse_text;
      std::ostringstream text;
      write_qubo(qubo, text, format);
      write_text(build_out, out, text.str());
      if (!build_out.empty()) {
        err << "wrote " << qubo.num_vars() << "-variable QUBO to " << build_out << '\n';
      }
      return kExitOk;
    }

    if (solve->parsed()) {
      const auto instances = solve_source.all();
      const SolverKind solver = *parse_solver(solve_solver);
      BenchOptions options{solve_bins.policy(), solve_flags.options, 1};
      const AnnealParams params = solve_anneal.resolved(threads);
      std::vector<SolveRecord> records;
      for (const auto& inst : instances) {
        std::optional<std::size_t> optimum;
        if (inst.num_items() <= kMaxExactItems) {
          optimum = solve_exact_bpp(inst).solution.num_bins();
        }
        records.push_back(solve_one(inst, solver, params, options, optimum));
        const auto& r = records.back();
        out << r.instance_name << ": solver=" << to_string(r.solver) << " bins=" << r.bins_used
            << " feasible=" << (r.feasible ? "true" : "false");
        if (r.energy) out << " energy=" << fixed(*r.energy, 6);
        if (r.opt_gap) out << " opt_gap=" << *r.opt_gap;
        out << '\n';
      }
      if (solve_no_timing) records = strip_timing(std::move(records));
      if (!solve_out.empty()) {
        export_results(records, solve_out,
                       solve_format == "csv" ? ResultFormat::csv : ResultFormat::structured);
      }
      return kExitOk;
    }

    if (bench->parsed()) {
      std::vector<Instance> instances;
      if (bench_fixtures) {
        instances = fixture_suite();
      } else if (!bench_suite.empty()) {
        instances = load_instances(bench_suite);
      } else {
        err << "error: bench needs --fixtures or --suite\n";
        return kExitUsage;
      }
      std::vector<SolverKind> solvers;
      for (const auto& s : bench_solvers) solvers.push_back(*parse_solver(s));
      BenchOptions options{bench_bins.policy(), bench_flags.options, threads};
      auto records = run_suite(instances, solvers, bench_anneal.resolved(1), options);
      if (bench_no_timing) records = strip_timing(std::move(records));
      const auto format = bench_format == "csv" ? ResultFormat::csv : ResultFormat::structured;
      if (bench_out.empty()) {
        out << render_records(records, format);
      } else {
        export_results(records, bench_out, format);
      }

      // Ratio table goes to stdout when records go to a file, else stderr.
      std::ostream& table = bench_out.empty() ? err : out;
      for (SolverKind s : solvers) {
        table << "feasibility ratio (" << to_string(s) << ")\n";
        for (const auto& [n, ratio] : feasibility_ratio(records, s)) {
          table << "  n=" << n << "  " << fixed(ratio, 3) << '\n';
        }
      }
      return kExitOk;
    }

    if (vars->parsed()) {
      if (vars_n_min > vars_n_max) {
        err << "error: --n-min exceeds --n-max\n";
        return kExitUsage;
      }
      out << "n,C,qal_bp,pseudo_polynomial,qal_bp_over_" << kQpuQubitMarker
          << ",pseudo_polynomial_over_" << kQpuQubitMarker << '\n';
      for (long long c : vars_capacities) {
        for (std::size_t n = vars_n_min; n <= vars_n_max; ++n) {
          const auto nn = static_cast<long long>(n);
          const long long qal = count_variables(Formulation::qal_bp, nn, nn, c);
          const long long pseudo = count_variables(Formulation::pseudo_polynomial, nn, nn, c);
          out << n << ',' << c << ',' << qal << ',' << pseudo << ','
              << (qal > kQpuQubitMarker ? 1 : 0) << ',' << (pseudo > kQpuQubitMarker ? 1 : 0)
              << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qalbp::cli
