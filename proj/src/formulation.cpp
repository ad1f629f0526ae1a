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

#include "qalbp/formulation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace qalbp {

CapacityMultipliers capacity_multipliers(int min_weight, int bin_capacity) {
  if (min_weight < 1 || bin_capacity < 1) {
    throw std::invalid_argument("capacity multipliers need positive weight and capacity");
  }
  const double w = min_weight;
  const double c = bin_capacity;
  const double denom = w * (2.0 * w + c);
  return {c / denom, 2.0 / denom};
}

std::vector<int> bin_capacities(const Instance& instance, std::size_t num_bins) {
  return std::vector<int>(num_bins, instance.capacity());
}

Penalties estimate_penalties(const Instance& instance, std::size_t num_bins,
                             const PenaltyOptions& options) {
  if (num_bins == 0) throw std::invalid_argument("model needs at least one bin");
  if (!(options.delta_fraction >= 0.0 && options.delta_fraction <= 1.0)) {
    throw std::invalid_argument("delta_fraction must lie in [0, 1]");
  }
  if (!(options.theta >= 2.0)) throw std::invalid_argument("theta must be at least 2");
  if (!(options.gamma >= 1.0)) throw std::invalid_argument("gamma must be at least 1");
  if (options.s_min < 1) throw std::invalid_argument("s_min must be at least 1");

  Penalties p;
  p.theta = options.theta;
  p.gamma = options.gamma;
  p.s_min = options.s_min;
  p.lambda.reserve(num_bins);
  p.rho.reserve(num_bins);

  const double s = options.s_min;
  double overfill_cost = std::numeric_limits<double>::infinity();
  for (int c : bin_capacities(instance, num_bins)) {
    const auto [lambda, rho] = capacity_multipliers(instance.min_weight(), c);
    p.lambda.push_back(lambda);
    p.rho.push_back(rho);
    overfill_cost = std::min(overfill_cost, lambda * s + rho * s * s);
  }
  // Opening a bin must stay cheaper than overfilling an open one by s_min.
  p.delta = options.delta_fraction * overfill_cost;
  return p;
}

namespace {

void check_penalties(const Penalties& p, std::size_t num_bins) {
  if (p.lambda.size() != num_bins || p.rho.size() != num_bins) {
    throw std::invalid_argument("penalties sized for " + std::to_string(p.lambda.size()) +
                                " bins, model has " + std::to_string(num_bins));
  }
}

}  // namespace

Qubo build_qubo(const Instance& instance, const Penalties& penalties, std::size_t num_bins) {
  check_penalties(penalties, num_bins);
  const QuboLayout layout{instance.num_items(), num_bins};
  const std::size_t n = layout.num_items;
  const auto capacity = bin_capacities(instance, num_bins);
  Qubo qubo(layout.num_vars(), layout);

  for (std::size_t i = 0; i < num_bins; ++i) {
    const double lambda = penalties.lambda[i];
    const double rho = penalties.rho[i];
    const double c = capacity[i];

    // delta y_i, and the -c_i y_i part of the linear and squared capacity terms
    qubo.add_linear(layout.y(i), penalties.delta - lambda * c + rho * c * c);

    for (std::size_t j = 0; j < n; ++j) {
      const double wj = instance.weight(j);
      qubo.add_linear(layout.x(i, j), lambda * wj + rho * wj * wj);
      qubo.add_quadratic(layout.y(i), layout.x(i, j), -2.0 * rho * c * wj);
      for (std::size_t k = j + 1; k < n; ++k) {
        qubo.add_quadratic(layout.x(i, j), layout.x(i, k),
                           2.0 * rho * wj * instance.weight(k));
      }
      // gamma (1 - y_i) x_ij
      qubo.add_linear(layout.x(i, j), penalties.gamma);
      qubo.add_quadratic(layout.y(i), layout.x(i, j), -penalties.gamma);
    }
  }

  // theta (sum_i x_ij - 1)^2 = theta (1 - sum_i x_ij + 2 sum_{i<i'} x_ij x_i'j)
  for (std::size_t j = 0; j < n; ++j) {
    qubo.add_offset(penalties.theta);
    for (std::size_t i = 0; i < num_bins; ++i) {
      qubo.add_linear(layout.x(i, j), -penalties.theta);
      for (std::size_t i2 = i + 1; i2 < num_bins; ++i2) {
        qubo.add_quadratic(layout.x(i, j), layout.x(i2, j), 2.0 * penalties.theta);
      }
    }
  }
  return qubo;
}

Assignment assignment_from_solution(const Instance& instance, const Solution& solution,
                                    std::size_t num_bins) {
  Assignment a;
  a.y.assign(num_bins, 0);
  a.x.assign(num_bins, std::vector<std::uint8_t>(instance.num_items(), 0));
  std::size_t bin = 0;
  for (const auto& members : solution.bins) {
    if (members.empty()) continue;
    if (bin >= num_bins) throw std::invalid_argument("packing uses more bins than the model");
    a.y[bin] = 1;
    for (std::size_t item : members) a.x[bin].at(item) = 1;
    ++bin;
  }
  a.bins_used = bin;
  return a;
}

double direct_energy(const Instance& instance, const Penalties& penalties,
                     const Assignment& assignment) {
  const std::size_t m = assignment.num_bins();
  const std::size_t n = instance.num_items();
  check_penalties(penalties, m);
  if (assignment.x.size() != m ||
      std::any_of(assignment.x.begin(), assignment.x.end(),
                  [n](const auto& row) { return row.size() != n; })) {
    throw std::invalid_argument("assignment dimensions do not match instance");
  }
  const auto capacity = bin_capacities(instance, m);

  double objective = 0.0, linear_capacity = 0.0, squared_capacity = 0.0, placement = 0.0,
         closed_bin = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double load = 0.0, count = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      load += instance.weight(j) * assignment.x[i][j];
      count += assignment.x[i][j];
    }
    const double slack = load - capacity[i] * assignment.y[i];
    objective += assignment.y[i];
    linear_capacity += penalties.lambda[i] * slack;
    squared_capacity += penalties.rho[i] * slack * slack;
    closed_bin += (1.0 - assignment.y[i]) * count;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double placed = 0.0;
    for (std::size_t i = 0; i < m; ++i) placed += assignment.x[i][j];
    placement += (placed - 1.0) * (placed - 1.0);
  }
  return penalties.delta * objective + linear_capacity + squared_capacity +
         penalties.theta * placement + penalties.gamma * closed_bin;
}

Assignment decode(std::span<const std::uint8_t> bits, const QuboLayout& layout) {
  if (bits.size() != layout.num_vars()) {
    throw std::invalid_argument("bit vector has " + std::to_string(bits.size()) +
                                " entries, layout expects " + std::to_string(layout.num_vars()));
  }
  Assignment a;
  a.y.resize(layout.num_bins);
  a.x.assign(layout.num_bins, std::vector<std::uint8_t>(layout.num_items));
  for (std::size_t i = 0; i < layout.num_bins; ++i) {
    a.y[i] = bits[layout.y(i)] ? 1 : 0;
    a.bins_used += a.y[i];
    for (std::size_t j = 0; j < layout.num_items; ++j) {
      a.x[i][j] = bits[layout.x(i, j)] ? 1 : 0;
    }
  }
  return a;
}

Bits encode(const Assignment& assignment) {
  const QuboLayout layout{assignment.num_items(), assignment.num_bins()};
  Bits bits(layout.num_vars(), 0);
  for (std::size_t i = 0; i < layout.num_bins; ++i) {
    bits[layout.y(i)] = assignment.y[i];
    for (std::size_t j = 0; j < layout.num_items; ++j) {
      bits[layout.x(i, j)] = assignment.x[i][j];
    }
  }
  return bits;
}

FeasibilityReport check_feasibility(const Instance& instance, const Assignment& assignment) {
  const std::size_t m = assignment.num_bins();
  const std::size_t n = instance.num_items();
  if (assignment.x.size() != m ||
      std::any_of(assignment.x.begin(), assignment.x.end(),
                  [n](const auto& row) { return row.size() != n; })) {
    throw std::invalid_argument("assignment dimensions do not match instance");
  }
  const auto capacity = bin_capacities(instance, m);

  FeasibilityReport report;
  for (std::size_t j = 0; j < n; ++j) {
    int placed = 0;
    for (std::size_t i = 0; i < m; ++i) placed += assignment.x[i][j];
    if (placed != 1) report.item_violations.push_back(j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    long long load = 0;
    bool has_items = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (assignment.x[i][j]) {
        load += instance.weight(j);
        has_items = true;
      }
    }
    if (load > static_cast<long long>(capacity[i]) * assignment.y[i]) {
      report.capacity_violations.push_back({i, load});
    }
    if (has_items && !assignment.y[i]) report.ghost_bins.push_back(i);
  }
  report.feasible = report.item_violations.empty() && report.capacity_violations.empty() &&
                    report.ghost_bins.empty();
  return report;
}

Solution to_solution(const Assignment& assignment) {
  Solution s;
  for (std::size_t i = 0; i < assignment.num_bins(); ++i) {
    if (!assignment.y[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < assignment.num_items(); ++j) {
      if (assignment.x[i][j]) members.push_back(j);
    }
    s.bins.push_back(std::move(members));
  }
  return s;
}

long long count_variables(Formulation formulation, long long num_items, long long num_bins,
                          long long capacity) {
  if (num_items < 1 || num_bins < 1 || capacity < 1) {
    throw std::invalid_argument("variable counts need positive arguments");
  }
  const long long qal_bp = num_bins * (num_items + 1);
  switch (formulation) {
    case Formulation::qal_bp:
      return qal_bp;
    case Formulation::pseudo_polynomial:
      return qal_bp + num_items * capacity;
  }
  throw std::invalid_argument("unknown formulation");
}

}  // namespace qalbp
