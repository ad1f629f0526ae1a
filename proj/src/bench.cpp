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

#include "qalbp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace qalbp {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::sa:
      return "sa";
    case SolverKind::exact_qubo:
      return "exact_qubo";
    case SolverKind::exact_bpp:
      return "exact_bpp";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  if (name == "sa") return SolverKind::sa;
  if (name == "exact_qubo") return SolverKind::exact_qubo;
  if (name == "exact_bpp" || name == "exact") return SolverKind::exact_bpp;
  return std::nullopt;
}

std::size_t BinPolicy::bins_for(const Instance& instance) const {
  switch (kind) {
    case Kind::items:
      return instance.num_items();
    case Kind::ffd:
      return first_fit_decreasing(instance).num_bins();
    case Kind::fixed:
      if (fixed_bins == 0) throw std::invalid_argument("bin count must be positive");
      return fixed_bins;
  }
  return instance.num_items();
}

SolveRecord solve_one(const Instance& instance, SolverKind solver, const AnnealParams& params,
                      const BenchOptions& options, std::optional<std::size_t> optimum) {
  SolveRecord record;
  record.instance_name = instance.name();
  record.n = instance.num_items();
  record.solver = solver;

  if (solver == SolverKind::exact_bpp) {
    const ExactResult exact = solve_exact_bpp(instance);
    record.bins_used = exact.solution.num_bins();
    record.feasible = exact.solution.is_valid_for(instance);
    record.tts_us = exact.wall_time_us;
  } else {
    const std::size_t m = options.bins.bins_for(instance);
    const Penalties penalties = estimate_penalties(instance, m, options.penalties);
    const Qubo qubo = build_qubo(instance, penalties, m);
    Bits bits;
    if (solver == SolverKind::sa) {
      const SampleSet samples = simulated_annealing(qubo, params);
      bits = samples.best().bits;
      record.energy = samples.best().energy;
      record.tts_us = samples.wall_time_us;
      record.seed = params.seed;
    } else {
      const auto start = std::chrono::steady_clock::now();
      const GroundState ground = brute_force_qubo(qubo);
      record.tts_us = std::chrono::duration<double, std::micro>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      bits = ground.bits;
      record.energy = ground.energy;
    }
    const Assignment assignment = decode(bits, *qubo.layout());
    record.bins_used = assignment.bins_used;
    record.feasible = check_feasibility(instance, assignment).feasible;
  }

  if (optimum) {
    record.opt_gap = static_cast<long long>(record.bins_used) - static_cast<long long>(*optimum);
  }
  return record;
}

void sort_records(std::vector<SolveRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const SolveRecord& a, const SolveRecord& b) {
    return std::tie(a.n, a.instance_name, a.solver) < std::tie(b.n, b.instance_name, b.solver);
  });
}

std::vector<SolveRecord> run_suite(std::span<const Instance> instances,
                                   std::span<const SolverKind> solvers,
                                   const AnnealParams& params, const BenchOptions& options) {
  if (instances.empty()) throw std::invalid_argument("no instances to run");
  if (solvers.empty()) throw std::invalid_argument("no solvers selected");

  std::vector<std::vector<SolveRecord>> per_instance(instances.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  // Anneal reads stay sequential inside a worker; parallelism is across instances.
  AnnealParams inner = params;
  inner.threads = 1;

  auto work = [&] {
    for (std::size_t k = next++; k < instances.size(); k = next++) {
      try {
        const Instance& instance = instances[k];
        std::optional<std::size_t> optimum;
        if (instance.num_items() <= kMaxExactItems) {
          optimum = solve_exact_bpp(instance).solution.num_bins();
        }
        for (SolverKind solver : solvers) {
          per_instance[k].push_back(solve_one(instance, solver, inner, options, optimum));
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(
      options.threads == 0 ? std::thread::hardware_concurrency() : options.threads, 1,
      instances.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SolveRecord> records;
  for (auto& batch : per_instance) {
    for (auto& record : batch) records.push_back(std::move(record));
  }
  sort_records(records);
  return records;
}

std::map<std::size_t, double> feasibility_ratio(std::span<const SolveRecord> records,
                                                SolverKind solver) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> tally;  // n -> (feasible, total)
  for (const auto& r : records) {
    if (r.solver != solver) continue;
    auto& [feasible, total] = tally[r.n];
    feasible += r.feasible ? 1 : 0;
    ++total;
  }
  if (tally.empty()) {
    throw std::invalid_argument("no records for solver " + std::string(to_string(solver)));
  }
  std::map<std::size_t, double> ratio;
  for (const auto& [n, counts] : tally) {
    ratio[n] = static_cast<double>(counts.first) / static_cast<double>(counts.second);
  }
  return ratio;
}

// ---------------------------------------------------------------------------
// Result files

namespace {

using nlohmann::json;

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

json to_json(const SolveRecord& r) {
  json j = {{"instance_name", r.instance_name},
            {"n", r.n},
            {"solver", to_string(r.solver)},
            {"bins_used", r.bins_used},
            {"feasible", r.feasible},
            {"energy", nullptr},
            {"tts_us", r.tts_us},
            {"seed", nullptr},
            {"opt_gap", nullptr}};
  if (r.energy) j["energy"] = *r.energy;
  if (r.seed) j["seed"] = *r.seed;
  if (r.opt_gap) j["opt_gap"] = *r.opt_gap;
  return j;
}

SolveRecord from_json(const json& j) {
  SolveRecord r;
  r.instance_name = j.at("instance_name").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  const auto solver = parse_solver(j.at("solver").get<std::string>());
  if (!solver) throw std::runtime_error("unknown solver in results file");
  r.solver = *solver;
  r.bins_used = j.at("bins_used").get<std::size_t>();
  r.feasible = j.at("feasible").get<bool>();
  if (!j.at("energy").is_null()) r.energy = j.at("energy").get<double>();
  r.tts_us = j.at("tts_us").get<double>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("opt_gap").is_null()) r.opt_gap = j.at("opt_gap").get<long long>();
  return r;
}

}  // namespace

void write_results(std::span<const SolveRecord> records, std::ostream& out, ResultFormat format) {
  std::vector<SolveRecord> sorted(records.begin(), records.end());
  sort_records(sorted);

  if (format == ResultFormat::structured) {
    json doc = json::array();
    for (const auto& r : sorted) doc.push_back(to_json(r));
    out << doc.dump(2) << '\n';
    return;
  }
  out << kCsvHeader << '\n';
  for (const auto& r : sorted) {
    out << csv_field(r.instance_name) << ',' << r.n << ',' << to_string(r.solver) << ','
        << r.bins_used << ',' << (r.feasible ? "true" : "false") << ','
        << (r.energy ? sig6(*r.energy) : "") << ',' << sig6(r.tts_us) << ','
        << (r.seed ? std::to_string(*r.seed) : "") << ','
        << (r.opt_gap ? std::to_string(*r.opt_gap) : "") << '\n';
  }
}

void export_results(std::span<const SolveRecord> records, const std::filesystem::path& path,
                    ResultFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_results(records, out, format);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<SolveRecord> import_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    std::vector<SolveRecord> records;
    for (const auto& j : json::parse(in)) records.push_back(from_json(j));
    return records;
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace qalbp
