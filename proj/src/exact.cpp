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

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qalbp/solvers.hpp"

namespace qalbp {

// ---------------------------------------------------------------------------
// Exhaustive QUBO minimization

GroundState brute_force_qubo(const Qubo& qubo) {
  const std::size_t n = qubo.num_vars();
  if (n > kMaxBruteForceVars) {
    throw std::length_error("brute force limited to " + std::to_string(kMaxBruteForceVars) +
                            " variables, model has " + std::to_string(n));
  }
  constexpr double kTie = 1e-9;
  const QuboAdjacency model(qubo);

  Bits bits(n, 0);
  std::vector<double> field(model.linear);
  double energy = model.offset;
  GroundState best{bits, energy};

  // Gray code: step k flips bit ctz(k), visiting every state exactly once.
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < states; ++k) {
    const auto v = static_cast<std::size_t>(std::countr_zero(k));
    energy += bits[v] ? -field[v] : field[v];
    bits[v] ^= 1;
    const double sign = bits[v] ? 1.0 : -1.0;
    for (const auto& e : model.neighbors(v)) field[e.neighbor] += sign * e.weight;

    if (energy < best.energy - kTie ||
        (energy <= best.energy + kTie && bits < best.bits)) {
      best.bits = bits;
      best.energy = energy;
    }
  }
  best.energy = qubo_energy(qubo, best.bits);
  return best;
}

// ---------------------------------------------------------------------------
// Branch and bound for bin packing

namespace {

class BranchAndBound {
 public:
  explicit BranchAndBound(const Instance& instance)
      : capacity_(instance.capacity()), order_(instance.num_items()) {
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return instance.weight(a) > instance.weight(b);
    });
    for (std::size_t item : order_) weights_.push_back(instance.weight(item));
    suffix_.assign(weights_.size() + 1, 0);
    for (std::size_t k = weights_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + weights_[k];

    root_bound_ = l1_lower_bound(instance);
    const Solution ffd = first_fit_decreasing(instance);
    best_count_ = ffd.num_bins();
    // Express the incumbent in sorted order.
    best_bin_of_.assign(weights_.size(), 0);
    std::vector<std::size_t> position(weights_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) position[order_[k]] = k;
    for (std::size_t b = 0; b < ffd.bins.size(); ++b) {
      for (std::size_t item : ffd.bins[b]) best_bin_of_[position[item]] = b;
    }
  }

  Solution solve() {
    if (best_count_ > static_cast<std::size_t>(root_bound_)) {
      bin_of_.assign(weights_.size(), 0);
      search(0);
    }
    Solution s;
    s.bins.resize(best_count_);
    for (std::size_t k = 0; k < order_.size(); ++k) s.bins[best_bin_of_[k]].push_back(order_[k]);
    for (auto& bin : s.bins) std::sort(bin.begin(), bin.end());
    return s;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Returns true once the root bound is met, which ends the search.
  bool search(std::size_t k) {
    ++nodes_;
    if (k == weights_.size()) {
      if (loads_.size() < best_count_) {
        best_count_ = loads_.size();
        best_bin_of_ = bin_of_;
      }
      return best_count_ == static_cast<std::size_t>(root_bound_);
    }

    long long free = 0;
    for (int load : loads_) free += capacity_ - load;
    const long long overflow = std::max(0LL, suffix_[k] - free);
    const std::size_t bound = loads_.size() + static_cast<std::size_t>(
                                                  (overflow + capacity_ - 1) / capacity_);
    if (bound >= best_count_) return false;

    const int w = weights_[k];
    for (std::size_t b = 0; b < loads_.size(); ++b) {
      if (loads_[b] + w > capacity_) continue;
      // Bins with equal load are interchangeable for the remaining items.
      bool repeat = false;
      for (std::size_t prev = 0; prev < b; ++prev) {
        if (loads_[prev] == loads_[b]) {
          repeat = true;
          break;
        }
      }
      if (repeat) continue;
      loads_[b] += w;
      bin_of_[k] = b;
      const bool done = search(k + 1);
      loads_[b] -= w;
      if (done) return true;
    }
    // Symmetry breaking: a new bin is always the next unopened one.
    if (loads_.size() + 1 < best_count_) {
      loads_.push_back(w);
      bin_of_[k] = loads_.size() - 1;
      const bool done = search(k + 1);
      loads_.pop_back();
      if (done) return true;
    }
    return false;
  }

  int capacity_;
  std::vector<std::size_t> order_;
  std::vector<int> weights_;
  std::vector<long long> suffix_;
  int root_bound_ = 0;

  std::vector<int> loads_;
  std::vector<std::size_t> bin_of_;
  std::size_t best_count_ = 0;
  std::vector<std::size_t> best_bin_of_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExactResult solve_exact_bpp(const Instance& instance) {
  if (instance.num_items() > kMaxExactItems) {
    throw std::length_error("exact solver limited to " + std::to_string(kMaxExactItems) +
                            " items, instance has " + std::to_string(instance.num_items()));
  }
  const auto start = std::chrono::steady_clock::now();
  BranchAndBound bnb(instance);
  ExactResult result;
  result.solution = bnb.solve();
  result.nodes = bnb.nodes();
  result.wall_time_us =
      std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qalbp
