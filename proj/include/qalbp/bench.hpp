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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qalbp/formulation.hpp"
#include "qalbp/instance.hpp"
#include "qalbp/solvers.hpp"

namespace qalbp {

enum class SolverKind { sa, exact_qubo, exact_bpp };

std::string_view to_string(SolverKind kind);
/// Accepts "sa", "exact_qubo", "exact_bpp" and the alias "exact" for exact_bpp.
std::optional<SolverKind> parse_solver(std::string_view name);

/// How many bins the QUBO model gets.
struct BinPolicy {
  enum class Kind { items, ffd, fixed } kind = Kind::items;
  std::size_t fixed_bins = 0;

  std::size_t bins_for(const Instance& instance) const;
};

struct SolveRecord {
  std::string instance_name;
  std::size_t n = 0;
  SolverKind solver = SolverKind::sa;
  std::size_t bins_used = 0;
  bool feasible = false;
  std::optional<double> energy;
  double tts_us = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<long long> opt_gap;

  friend bool operator==(const SolveRecord&, const SolveRecord&) = default;
};

struct BenchOptions {
  BinPolicy bins;
  PenaltyOptions penalties;
  /// Parallelism across instances. Record contents do not depend on it.
  std::size_t threads = 1;
};

/// Runs one solver on one instance. QUBO solvers report the minimum-energy
/// state, decoded and feasibility-checked. `optimum`, when given, fills opt_gap.
SolveRecord solve_one(const Instance& instance, SolverKind solver, const AnnealParams& params,
                      const BenchOptions& options, std::optional<std::size_t> optimum);

/**
 * One record per (instance, solver), sorted by (n, instance_name, solver).
 * The branch-and-bound optimum is computed for every instance to fill
 * opt_gap. Solver size guards propagate as exceptions.
 */
std::vector<SolveRecord> run_suite(std::span<const Instance> instances,
                                   std::span<const SolverKind> solvers,
                                   const AnnealParams& params, const BenchOptions& options = {});

void sort_records(std::vector<SolveRecord>& records);

/// Fraction of feasible minimum-energy solutions per item count. Throws
/// std::invalid_argument if no record belongs to `solver`.
std::map<std::size_t, double> feasibility_ratio(std::span<const SolveRecord> records,
                                                SolverKind solver);

enum class ResultFormat { csv, structured };

inline constexpr std::string_view kCsvHeader =
    "instance_name,n,solver,bins_used,feasible,energy,tts_us,seed,opt_gap";

/// Rows are written in (n, instance_name, solver) order; floats use 6
/// significant digits in CSV, full precision in the structured format.
void write_results(std::span<const SolveRecord> records, std::ostream& out, ResultFormat format);
void export_results(std::span<const SolveRecord> records, const std::filesystem::path& path,
                    ResultFormat format);
/// Structured format only.
std::vector<SolveRecord> import_results(const std::filesystem::path& path);

}  // namespace qalbp
