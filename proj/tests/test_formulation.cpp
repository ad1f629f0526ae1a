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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qalbp/formulation.hpp"
#include "qalbp/solvers.hpp"

namespace qalbp {
namespace {

Instance single_item() { return make_instance("one", {5}, 10); }

// ---------------------------------------------------------------------------
// Penalties

TEST(EstimatePenalties, PublishedValuesForMinWeightFour) {
  const Penalties p = estimate_penalties(*find_fixture("(3, 23)"), 3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(p.lambda[i], 0.1389, 1e-4);
    EXPECT_NEAR(p.rho[i], 0.0278, 1e-4);
  }
  EXPECT_NEAR(p.delta, 0.15, 1e-12);
  EXPECT_EQ(p.theta, 2.0);
  EXPECT_EQ(p.gamma, 1.0);
  EXPECT_EQ(p.s_min, 1);
}

TEST(EstimatePenalties, DirectSubstitution) {
  const auto [lambda, rho] = capacity_multipliers(1, 2);
  EXPECT_DOUBLE_EQ(lambda, 0.5);
  EXPECT_DOUBLE_EQ(rho, 0.5);

  const Penalties p = estimate_penalties(single_item(), 1);
  EXPECT_DOUBLE_EQ(p.lambda[0], 0.1);
  EXPECT_DOUBLE_EQ(p.rho[0], 0.02);
  EXPECT_NEAR(p.delta, 0.108, 1e-12);
}

TEST(EstimatePenalties, CalibrationIdentities) {
  for (int w = 1; w <= 20; ++w) {
    for (int c = w; c <= 40; ++c) {
      const auto [lambda, rho] = capacity_multipliers(w, c);
      EXPECT_NEAR(w * lambda + double(w) * w * rho, 1.0, 1e-12) << w << ' ' << c;
      EXPECT_NEAR(-(c / 2.0) * lambda + (double(c) * c / 4.0) * rho, 0.0, 1e-12);
      EXPECT_NEAR(rho, 2.0 * lambda / c, 1e-15);
    }
  }
}

TEST(EstimatePenalties, InvariantsHoldOnAllFixtures) {
  for (const auto& inst : fixture_suite()) {
    const Penalties p = estimate_penalties(inst, inst.num_items());
    ASSERT_EQ(p.num_bins(), inst.num_items());
    EXPECT_GE(p.theta, 2.0);
    EXPECT_GE(p.gamma, 1.0);
    for (std::size_t i = 0; i < p.num_bins(); ++i) {
      EXPECT_GE(p.lambda[i], 0.0);
      EXPECT_GE(p.rho[i], 0.0);
      EXPECT_LE(p.delta, p.lambda[i] * p.s_min + p.rho[i] * p.s_min * p.s_min);
    }
  }
}

TEST(EstimatePenalties, RejectsInvalidOptions) {
  const Instance inst = single_item();
  EXPECT_THROW(estimate_penalties(inst, 0), std::invalid_argument);
  EXPECT_THROW(estimate_penalties(inst, 1, {.delta_fraction = 1.5}), std::invalid_argument);
  EXPECT_THROW(estimate_penalties(inst, 1, {.theta = 1.0}), std::invalid_argument);
  EXPECT_THROW(estimate_penalties(inst, 1, {.gamma = 0.5}), std::invalid_argument);
  EXPECT_THROW(estimate_penalties(inst, 1, {.s_min = 0}), std::invalid_argument);

  const Penalties custom = estimate_penalties(inst, 1, {.theta = 3.0, .gamma = 2.0});
  EXPECT_EQ(custom.theta, 3.0);
  EXPECT_EQ(custom.gamma, 2.0);
}

// ---------------------------------------------------------------------------
// QUBO expansion

TEST(BuildQubo, CoefficientTable) {
  const Instance inst = make_instance("t", {4, 7, 6}, 10);
  const std::size_t m = 2;
  const Penalties p = estimate_penalties(inst, m);
  const Qubo q = build_qubo(inst, p, m);
  const QuboLayout layout = *q.layout();
  const double c = 10;

  EXPECT_EQ(q.num_vars(), 8u);
  EXPECT_DOUBLE_EQ(q.offset(), 3 * p.theta);
  for (std::size_t i = 0; i < m; ++i) {
    EXPECT_NEAR(q.linear(layout.y(i)), p.delta - p.lambda[i] * c + p.rho[i] * c * c, 1e-12);
    for (std::size_t j = 0; j < 3; ++j) {
      const double wj = inst.weight(j);
      EXPECT_NEAR(q.linear(layout.x(i, j)),
                  p.lambda[i] * wj + p.rho[i] * wj * wj - p.theta + p.gamma, 1e-12);
      EXPECT_NEAR(q.quadratic(layout.y(i), layout.x(i, j)),
                  -2 * p.rho[i] * c * wj - p.gamma, 1e-12);
      for (std::size_t k = j + 1; k < 3; ++k) {
        EXPECT_NEAR(q.quadratic(layout.x(i, j), layout.x(i, k)),
                    2 * p.rho[i] * wj * inst.weight(k), 1e-12);
      }
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_DOUBLE_EQ(q.quadratic(layout.x(0, j), layout.x(1, j)), 2 * p.theta);
  }
  // Nothing couples the two y flags, y with another bin's items, or items
  // in different bins.
  EXPECT_EQ(q.quadratic(layout.y(0), layout.y(1)), 0.0);
  EXPECT_EQ(q.quadratic(layout.y(0), layout.x(1, 0)), 0.0);
  EXPECT_EQ(q.quadratic(layout.x(0, 0), layout.x(1, 1)), 0.0);
  // 2 y + 6 x linear, less the two x terms of the w_min item which cancel
  // to exactly zero; per bin 3 y-x + 3 x-x, plus 3 cross-bin pairs.
  EXPECT_EQ(q.linear(layout.x(0, 0)), 0.0);
  EXPECT_EQ(q.linear().size(), 6u);
  EXPECT_EQ(q.quadratic().size(), 15u);
  for (const auto& [key, value] : q.quadratic()) EXPECT_LT(key.first, key.second);
}

TEST(BuildQubo, SingleItemGroundState) {
  const Instance inst = single_item();
  const Penalties p = estimate_penalties(inst, 1);
  const Qubo q = build_qubo(inst, p, 1);
  ASSERT_EQ(q.num_vars(), 2u);

  // Enumerate all four states.
  const std::vector<Bits> states = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  double min_energy = 1e300;
  Bits argmin;
  int minima = 0;
  for (const auto& s : states) {
    const double e = qubo_energy(q, s);
    if (e < min_energy - 1e-12) {
      min_energy = e;
      argmin = s;
      minima = 1;
    } else if (std::abs(e - min_energy) <= 1e-12) {
      ++minima;
    }
  }
  EXPECT_EQ(argmin, (Bits{1, 1}));
  EXPECT_EQ(minima, 1);
  EXPECT_NEAR(min_energy, 0.108, 1e-12);
  EXPECT_TRUE(check_feasibility(inst, decode(argmin, *q.layout())).feasible);
}

TEST(BuildQubo, OffsetAndSize) {
  for (const auto& inst : fixture_suite()) {
    const std::size_t m = inst.num_items();
    const Qubo q = build_qubo(inst, estimate_penalties(inst, m), m);
    EXPECT_DOUBLE_EQ(q.offset(), static_cast<double>(inst.num_items()) * 2.0);
    EXPECT_EQ(q.num_vars(), m * (inst.num_items() + 1));
  }
  const Instance ten = *find_fixture("(10, 90)");
  EXPECT_EQ(build_qubo(ten, estimate_penalties(ten, 10), 10).num_vars(), 110u);
}

TEST(BuildQubo, RejectsMismatchedPenalties) {
  const Instance inst = single_item();
  EXPECT_THROW(build_qubo(inst, estimate_penalties(inst, 2), 1), std::invalid_argument);
}

TEST(Qubo, MergingAndZeroDropping) {
  Qubo q(3);
  q.add_quadratic(2, 0, 1.5);
  q.add_quadratic(0, 2, -0.5);
  EXPECT_EQ(q.quadratic(0, 2), 1.0);
  q.add_quadratic(0, 2, -1.0);
  EXPECT_TRUE(q.quadratic().empty());
  q.add_quadratic(1, 1, 2.0);
  EXPECT_EQ(q.linear(1), 2.0);
  q.add_linear(1, -2.0);
  EXPECT_TRUE(q.linear().empty());
  EXPECT_THROW(q.add_linear(3, 1.0), std::out_of_range);
}

// ---------------------------------------------------------------------------
// Energies

TEST(QuboEnergy, BasicEvaluations) {
  const Instance inst = *find_fixture("(4, 23)");
  const Qubo q = build_qubo(inst, estimate_penalties(inst, 4), 4);
  Bits bits(q.num_vars(), 0);
  EXPECT_DOUBLE_EQ(qubo_energy(q, bits), q.offset());
  for (std::size_t v = 0; v < q.num_vars(); ++v) {
    Bits one(q.num_vars(), 0);
    one[v] = 1;
    EXPECT_DOUBLE_EQ(qubo_energy(q, one), q.linear(v) + q.offset());
  }
  EXPECT_THROW(qubo_energy(q, Bits(3, 0)), std::invalid_argument);
}

TEST(DirectEnergy, EmptyAssignmentCostsThetaPerItem) {
  for (const auto& inst : fixture_suite()) {
    const std::size_t m = inst.num_items();
    const Penalties p = estimate_penalties(inst, m);
    const Assignment empty = decode(Bits(m * (inst.num_items() + 1), 0), {inst.num_items(), m});
    EXPECT_NEAR(direct_energy(inst, p, empty), inst.num_items() * p.theta, 1e-12);
  }
}

TEST(DirectEnergy, SingleItemHandValue) {
  const Instance inst = single_item();
  const Penalties p = estimate_penalties(inst, 1);
  // delta + lambda (5 - 10) + rho (5 - 10)^2 = 0.108 - 0.5 + 0.5
  EXPECT_NEAR(direct_energy(inst, p, decode(Bits{1, 1}, {1, 1})), 0.108, 1e-12);
}

TEST(DirectEnergy, MatchesQuboOnRandomStates) {
  std::mt19937_64 rng(2024);
  for (const auto& inst : fixture_suite()) {
    for (std::size_t m : {inst.num_items(), first_fit_decreasing(inst).num_bins()}) {
      const Penalties p = estimate_penalties(inst, m);
      const Qubo q = build_qubo(inst, p, m);
      for (int trial = 0; trial < 200; ++trial) {
        const Bits bits = testing::random_bits(q.num_vars(), rng);
        ASSERT_NEAR(qubo_energy(q, bits), direct_energy(inst, p, decode(bits, *q.layout())), 1e-9)
            << inst.name();
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Decoding and feasibility

TEST(Decode, Basics) {
  const QuboLayout layout{3, 2};
  const Assignment zero = decode(Bits(8, 0), layout);
  EXPECT_EQ(zero.bins_used, 0u);
  EXPECT_EQ(zero.y, (std::vector<std::uint8_t>{0, 0}));

  const Assignment one = decode(Bits{1, 1}, {1, 1});
  EXPECT_EQ(one.y, (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(one.x, (std::vector<std::vector<std::uint8_t>>{{1}}));
  EXPECT_EQ(one.bins_used, 1u);

  EXPECT_THROW(decode(Bits(7, 0), layout), std::invalid_argument);
}

TEST(Decode, RoundTripProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const QuboLayout layout{1 + rng() % 8, 1 + rng() % 8};
    const Bits bits = testing::random_bits(layout.num_vars(), rng);
    const Assignment a = decode(bits, layout);
    EXPECT_EQ(encode(a), bits);
    EXPECT_EQ(decode(encode(a), layout), a);
  }
}

TEST(CheckFeasibility, PublishedLowerBoundAchieved) {
  const Instance inst = *find_fixture("(3, 23)");  // [4, 8, 6]
  Assignment a;
  a.y = {1, 1, 0};
  a.x = {{1, 0, 1}, {0, 1, 0}, {0, 0, 0}};
  a.bins_used = 2;
  const FeasibilityReport r = check_feasibility(inst, a);
  EXPECT_TRUE(r.feasible);
  EXPECT_TRUE(r.item_violations.empty());
  EXPECT_TRUE(r.capacity_violations.empty());
  EXPECT_TRUE(r.ghost_bins.empty());
}

TEST(CheckFeasibility, EmptyAssignment) {
  const Instance inst = *find_fixture("(5, 42)");
  const FeasibilityReport r = check_feasibility(inst, decode(Bits(30, 0), {5, 5}));
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.item_violations.size(), 5u);
}

TEST(CheckFeasibility, ItemInClosedBin) {
  const Instance inst = make_instance("t", {3, 4}, 10);
  Assignment a;
  a.y = {1, 0};
  a.x = {{1, 0}, {0, 1}};
  a.bins_used = 1;
  const FeasibilityReport r = check_feasibility(inst, a);
  EXPECT_FALSE(r.feasible);
  ASSERT_EQ(r.capacity_violations.size(), 1u);
  EXPECT_EQ(r.capacity_violations[0], (CapacityViolation{1, 4}));
  EXPECT_EQ(r.ghost_bins, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(r.item_violations.empty());
}

TEST(CheckFeasibility, OverfilledAndDuplicated) {
  const Instance inst = make_instance("t", {6, 6}, 10);
  Assignment a;
  a.y = {1, 1};
  a.x = {{1, 1}, {1, 0}};
  a.bins_used = 2;
  const FeasibilityReport r = check_feasibility(inst, a);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.item_violations, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.capacity_violations, (std::vector<CapacityViolation>{{0, 12}}));
}

// ---------------------------------------------------------------------------
// Energy landscape properties

// One item, two candidate bins: the minimum opens exactly one bin and places
// the item there whenever 4 w >= C, which covers every fixture.
TEST(Landscape, SecondBinNeverCheaper) {
  for (int c = 1; c <= 20; ++c) {
    for (int w = 1; w <= c; ++w) {
      if (4 * w < c) continue;
      const Instance inst = make_instance("w", {w}, c);
      const Qubo q = build_qubo(inst, estimate_penalties(inst, 2), 2);
      const auto best = testing::naive_qubo_minimum(q);
      const Assignment a = decode(best.bits, *q.layout());
      EXPECT_TRUE(check_feasibility(inst, a).feasible) << w << '/' << c;
      EXPECT_EQ(a.bins_used, 1u) << w << '/' << c;
    }
  }
}

// Very light items are the other side: the capacity term of a bin loaded
// far below C outweighs theta and the empty state wins.
TEST(Landscape, LightItemLeftUnplaced) {
  const Instance inst = make_instance("light", {2}, 10);
  const Qubo q = build_qubo(inst, estimate_penalties(inst, 1), 1);
  const auto best = testing::naive_qubo_minimum(q);
  EXPECT_EQ(best.bits, (Bits{0, 0}));
  EXPECT_DOUBLE_EQ(best.energy, 2.0);
}

// Every infeasible state of a 3-item model sits strictly above the best
// feasible state.
TEST(Landscape, InfeasibleStatesAboveFeasibleMinimum) {
  for (const auto& inst : fixture_suite()) {
    if (inst.num_items() != 3) continue;
    const Qubo q = build_qubo(inst, estimate_penalties(inst, 3), 3);
    double best_feasible = 1e300, best_infeasible = 1e300;
    Bits bits(q.num_vars());
    for (std::uint64_t mask = 0; mask < (1u << q.num_vars()); ++mask) {
      for (std::size_t v = 0; v < q.num_vars(); ++v) bits[v] = (mask >> v) & 1U;
      const double e = qubo_energy(q, bits);
      if (check_feasibility(inst, decode(bits, *q.layout())).feasible) {
        best_feasible = std::min(best_feasible, e);
      } else {
        best_infeasible = std::min(best_infeasible, e);
      }
    }
    EXPECT_LT(best_feasible, best_infeasible) << inst.name();
  }
}

// Adding a second copy of an item to another open bin of a feasible optimum
// changes the energy by theta (2k - 1) with k = 1, plus the capacity-term
// change of the receiving bin, and the net change is always positive.
TEST(Landscape, DuplicatePlacementPenalised) {
  for (const auto& inst : fixture_suite()) {
    if (inst.num_items() > 6) continue;
    const std::size_t m = inst.num_items();
    const Penalties p = estimate_penalties(inst, m);
    const Qubo q = build_qubo(inst, p, m);
    const Solution opt = solve_exact_bpp(inst).solution;
    const Assignment base = assignment_from_solution(inst, opt, m);
    const Bits base_bits = encode(base);
    const double base_energy = qubo_energy(q, base_bits);
    const QuboLayout layout = *q.layout();
    for (std::size_t i = 0; i < m; ++i) {
      if (!base.y[i]) continue;
      double load = 0;
      for (std::size_t j = 0; j < inst.num_items(); ++j) load += base.x[i][j] * inst.weight(j);
      auto capacity_term = [&](double s) {
        const double t = s - inst.capacity();
        return p.lambda[i] * t + p.rho[i] * t * t;
      };
      for (std::size_t j = 0; j < inst.num_items(); ++j) {
        if (base.x[i][j]) continue;
        Bits dup = base_bits;
        dup[layout.x(i, j)] = 1;
        const double delta = qubo_energy(q, dup) - base_energy;
        const double local = capacity_term(load + inst.weight(j)) - capacity_term(load);
        EXPECT_NEAR(delta, p.theta * (2 * 1 - 1) + local, 1e-9) << inst.name();
        EXPECT_GT(delta, 0.0) << inst.name();
      }
    }
  }
}

TEST(Landscape, GroundStateOptimalForSmallFixtures) {
  for (const auto& inst : fixture_suite()) {
    if (inst.num_items() != 3) continue;
    const Qubo q = build_qubo(inst, estimate_penalties(inst, 3), 3);
    const auto best = testing::naive_qubo_minimum(q);
    const Assignment a = decode(best.bits, *q.layout());
    EXPECT_TRUE(check_feasibility(inst, a).feasible) << inst.name();
    EXPECT_EQ(a.bins_used, testing::partition_optimum(inst)) << inst.name();
  }
}

// ---------------------------------------------------------------------------
// Variable counts

TEST(CountVariables, Examples) {
  EXPECT_EQ(count_variables(Formulation::qal_bp, 10, 10, 10), 110);
  EXPECT_EQ(count_variables(Formulation::pseudo_polynomial, 10, 10, 10), 210);
  EXPECT_EQ(count_variables(Formulation::qal_bp, 1, 1, 37), 2);
  EXPECT_EQ(count_variables(Formulation::pseudo_polynomial, 1, 1, 10), 12);
  EXPECT_THROW(count_variables(Formulation::qal_bp, 0, 1, 1), std::invalid_argument);
}

TEST(CountVariables, IndependentOfCapacityForQalBp) {
  for (long long n = 1; n <= 20; ++n) {
    for (long long c : {5, 10, 100, 1000}) {
      EXPECT_EQ(count_variables(Formulation::qal_bp, n, n, c), n * (n + 1));
      EXPECT_EQ(count_variables(Formulation::pseudo_polynomial, n, n, c) -
                    count_variables(Formulation::qal_bp, n, n, c),
                n * c);
    }
  }
}

}  // namespace
}  // namespace qalbp
