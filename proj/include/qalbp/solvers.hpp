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
#include <optional>
#include <vector>

#include "qalbp/instance.hpp"
#include "qalbp/qubo.hpp"

namespace qalbp {

struct AnnealParams {
  std::size_t num_reads = 1000;
  std::size_t sweeps_per_read = 1000;
  /// Unset: max_v (|a_v| + sum |q_vw|) / ln 2.
  std::optional<double> t_initial;
  /// Unset: 1e-3.
  std::optional<double> t_final;
  std::uint64_t seed = 0;
  /// Worker threads for independent reads; 0 picks hardware concurrency.
  /// Results never depend on this value.
  std::size_t threads = 1;
};

struct Sample {
  Bits bits;
  double energy = 0.0;
  std::size_t num_occurrences = 0;
};

struct SampleSet {
  /// Distinct states, ascending energy (ties: lexicographic bits).
  std::vector<Sample> samples;
  double wall_time_us = 0.0;

  const Sample& best() const { return samples.front(); }
};

/**
 * Single-flip Metropolis annealing with a geometric temperature schedule.
 *
 * Each read starts from a uniformly random state and performs
 * `sweeps_per_read` sweeps; a sweep visits every variable once in a freshly
 * shuffled order. Flip costs come from cached local fields. Read r draws
 * from its own engine seeded with (seed XOR r), so the result does not
 * depend on thread count or scheduling. Throws std::invalid_argument for
 * invalid parameters or an empty model.
 */
SampleSet simulated_annealing(const Qubo& qubo, const AnnealParams& params);

/// Initial temperature used when AnnealParams::t_initial is unset.
double default_initial_temperature(const Qubo& qubo);

struct GroundState {
  Bits bits;
  double energy = 0.0;
};

inline constexpr std::size_t kMaxBruteForceVars = 24;

/// Exact minimum by Gray-code enumeration. Ties within 1e-9 resolve to the
/// lexicographically smallest bit vector. Throws std::length_error above
/// kMaxBruteForceVars.
GroundState brute_force_qubo(const Qubo& qubo);

struct ExactResult {
  Solution solution;
  double wall_time_us = 0.0;
  std::uint64_t nodes = 0;
};

inline constexpr std::size_t kMaxExactItems = 20;

/// Provably optimal packing by depth-first branch and bound. Throws
/// std::length_error for more than kMaxExactItems items.
ExactResult solve_exact_bpp(const Instance& instance);

}  // namespace qalbp
