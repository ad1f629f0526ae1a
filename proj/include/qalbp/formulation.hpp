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

// Augmented Lagrangian QUBO encoding of bin packing.
//
// For n items, m bins of capacity c_i and binary variables y_i (bin open) and
// x_ij (item j in bin i), the energy is
//
//   delta * sum_i y_i
//   + sum_i lambda_i (sum_j w_j x_ij - c_i y_i)
//   + sum_i rho_i    (sum_j w_j x_ij - c_i y_i)^2
//   + theta * sum_j  (sum_i x_ij - 1)^2
//   + gamma * sum_i  (1 - y_i) sum_j x_ij
//
// The capacity inequality enters through a linear multiplier plus a
// quadratic penalty with no slack variables; the assignment equality is a
// plain squared penalty.

#include <cstddef>
#include <span>
#include <vector>

#include "qalbp/instance.hpp"
#include "qalbp/qubo.hpp"

namespace qalbp {

struct Penalties {
  double delta = 0.0;
  std::vector<double> lambda;  // one per bin
  std::vector<double> rho;     // one per bin
  double theta = 2.0;
  double gamma = 1.0;
  int s_min = 1;

  std::size_t num_bins() const { return lambda.size(); }
};

struct PenaltyOptions {
  /// delta = delta_fraction * min_i(lambda_i s_min + rho_i s_min^2), in [0, 1].
  double delta_fraction = 0.9;
  double theta = 2.0;  // >= 2
  double gamma = 1.0;  // >= 1
  int s_min = 1;       // >= 1
};

struct CapacityMultipliers {
  double lambda;
  double rho;
};

/**
 * Closed-form capacity multipliers for one bin. Solves
 *
 *   w_min lambda + w_min^2 rho = 1
 *   -(c/2) lambda + (c^2/4) rho = 0
 *
 * giving lambda = c / (w_min (2 w_min + c)) and rho = 2 lambda / c.
 */
CapacityMultipliers capacity_multipliers(int min_weight, int bin_capacity);

/// Analytic multipliers for an m-bin model of `instance`. Throws
/// std::invalid_argument on m == 0 or options outside their ranges.
Penalties estimate_penalties(const Instance& instance, std::size_t num_bins,
                             const PenaltyOptions& options = {});

/// Per-bin capacities c_i for an m-bin model (uniform C for now).
std::vector<int> bin_capacities(const Instance& instance, std::size_t num_bins);

/**
 * Expands the energy above into a Qubo with the QuboLayout index
 * convention. Coefficients:
 *
 *   y_i            delta - lambda_i c_i + rho_i c_i^2
 *   x_ij           lambda_i w_j + rho_i w_j^2 - theta + gamma
 *   x_ij x_ik      2 rho_i w_j w_k          (j != k)
 *   x_ij x_i'j     2 theta                  (i != i')
 *   y_i x_ij       -2 rho_i c_i w_j - gamma
 *   offset         n theta
 */
Qubo build_qubo(const Instance& instance, const Penalties& penalties, std::size_t num_bins);

struct Assignment {
  std::vector<std::uint8_t> y;               // m
  std::vector<std::vector<std::uint8_t>> x;  // m rows of n
  std::size_t bins_used = 0;

  std::size_t num_bins() const { return y.size(); }
  std::size_t num_items() const { return x.empty() ? 0 : x.front().size(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Builds an Assignment from a packing, opening exactly the non-empty bins.
/// The packing may use at most `num_bins` bins.
Assignment assignment_from_solution(const Instance& instance, const Solution& solution,
                                    std::size_t num_bins);

/// Energy evaluated term by term from the definition, without the Qubo.
double direct_energy(const Instance& instance, const Penalties& penalties,
                     const Assignment& assignment);

Assignment decode(std::span<const std::uint8_t> bits, const QuboLayout& layout);
Bits encode(const Assignment& assignment);

struct CapacityViolation {
  std::size_t bin;
  long long load;
  friend bool operator==(const CapacityViolation&, const CapacityViolation&) = default;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<std::size_t> item_violations;  // items not placed exactly once
  std::vector<CapacityViolation> capacity_violations;  // load > c_i y_i
  std::vector<std::size_t> ghost_bins;  // bins holding items with y_i = 0
};

FeasibilityReport check_feasibility(const Instance& instance, const Assignment& assignment);

/// Converts a feasible assignment into a packing (open bins only).
Solution to_solution(const Assignment& assignment);

enum class Formulation { qal_bp, pseudo_polynomial };

/// qal_bp: m (n + 1). pseudo_polynomial: m (n + 1) + n C.
long long count_variables(Formulation formulation, long long num_items, long long num_bins,
                          long long capacity);

}  // namespace qalbp
