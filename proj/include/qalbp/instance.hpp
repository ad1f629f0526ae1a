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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qalbp {

/**
 * One bin packing problem: n integer item weights and a single bin
 * capacity. Immutable once constructed; every weight lies in [1, capacity].
 *
 * `reference_lower_bound` is informational only (e.g. the value printed in
 * a published table) and never used by the solvers.
 */
class Instance {
 public:
  Instance(std::string name, std::vector<int> weights, int capacity,
           std::optional<int> reference_lower_bound = std::nullopt);

  const std::string& name() const { return name_; }
  std::span<const int> weights() const { return weights_; }
  int weight(std::size_t item) const { return weights_[item]; }
  int capacity() const { return capacity_; }
  std::size_t num_items() const { return weights_.size(); }
  std::optional<int> reference_lower_bound() const { return reference_lower_bound_; }

  int min_weight() const;
  long long total_weight() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::string name_;
  std::vector<int> weights_;
  int capacity_;
  std::optional<int> reference_lower_bound_;
};

/// A packing: each inner list holds the item indices placed in one bin.
struct Solution {
  std::vector<std::vector<std::size_t>> bins;

  std::size_t num_bins() const;
  /// True if the bins partition {0..n-1} and no bin exceeds capacity.
  bool is_valid_for(const Instance& instance) const;
};

/// Validates and builds an instance. Throws std::invalid_argument naming the
/// offending item when a weight is out of range.
Instance make_instance(std::string name, std::vector<int> weights, int capacity);

/**
 * Draws `n` weights uniformly from [weight_lo, weight_hi]. The generator is
 * a seeded mt19937_64 with a portable bounded-integer mapping, so the same
 * arguments produce the same instance on every platform.
 */
Instance generate_instance(std::size_t n, int weight_lo, int weight_hi, int capacity,
                           std::uint64_t seed);

/// The 40 benchmark instances (seeds 23, 42, 123, 90, 510; 3..10 items; C = 10).
const std::vector<Instance>& fixture_suite();

/// Looks up a fixture by name, ignoring whitespace ("(7, 42)" == "(7,42)").
std::optional<Instance> find_fixture(std::string_view name);

/// Continuous lower bound ceil(sum w / C).
int l1_lower_bound(const Instance& instance);

/// First-fit decreasing. Ties in weight keep the original index order.
Solution first_fit_decreasing(const Instance& instance);

// Instance files are JSON: a single record {name, capacity, weights,
// [lower_bound]} or an array of records for a suite.
void write_instance(const Instance& instance, std::ostream& out);
void save_instance(const Instance& instance, const std::filesystem::path& path);
void save_suite(std::span<const Instance> suite, const std::filesystem::path& path);
/// Accepts either a single record or an array; always returns a list.
std::vector<Instance> load_instances(const std::filesystem::path& path);

}  // namespace qalbp
