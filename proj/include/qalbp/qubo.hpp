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
#include <utility>
#include <vector>

namespace qalbp {

/// A binary assignment, one byte (0 or 1) per variable.
using Bits = std::vector<std::uint8_t>;

/**
 * Index convention of a bin packing QUBO with n items and m bins:
 * variables [0, m) are the bin-open flags y_i, and variable m + i*n + j is
 * x_ij (item j placed in bin i).
 */
struct QuboLayout {
  std::size_t num_items = 0;
  std::size_t num_bins = 0;

  std::size_t num_vars() const { return num_bins * (num_items + 1); }
  std::size_t y(std::size_t bin) const { return bin; }
  std::size_t x(std::size_t bin, std::size_t item) const {
    return num_bins + bin * num_items + item;
  }

  friend bool operator==(const QuboLayout&, const QuboLayout&) = default;
};

/**
 * Sparse quadratic form  sum_i a_i b_i + sum_{i<j} q_ij b_i b_j + offset.
 *
 * Quadratic keys are stored with i < j. Adding to an existing term merges
 * additively; a term whose coefficient becomes exactly zero is erased.
 */
class Qubo {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  explicit Qubo(std::size_t num_vars, std::optional<QuboLayout> layout = std::nullopt);

  std::size_t num_vars() const { return num_vars_; }
  const std::optional<QuboLayout>& layout() const { return layout_; }
  const std::map<std::size_t, double>& linear() const { return linear_; }
  const std::map<Pair, double>& quadratic() const { return quadratic_; }
  double offset() const { return offset_; }

  double linear(std::size_t i) const;
  double quadratic(std::size_t i, std::size_t j) const;

  void add_linear(std::size_t i, double value);
  /// i == j folds into the linear term (b*b == b).
  void add_quadratic(std::size_t i, std::size_t j, double value);
  void add_offset(double value) { offset_ += value; }

  friend bool operator==(const Qubo&, const Qubo&) = default;

 private:
  std::size_t num_vars_;
  std::optional<QuboLayout> layout_;
  std::map<std::size_t, double> linear_;
  std::map<Pair, double> quadratic_;
  double offset_ = 0.0;
};

/// Throws std::invalid_argument when bits.size() != num_vars.
double qubo_energy(const Qubo& qubo, std::span<const std::uint8_t> bits);

/**
 * Adjacency form of a Qubo for solvers: each variable's linear bias and its
 * incident couplings (both directions).
 */
struct QuboAdjacency {
  struct Edge {
    std::uint32_t neighbor;
    double weight;
  };
  std::vector<double> linear;
  std::vector<std::size_t> row_start;  // size num_vars + 1
  std::vector<Edge> edges;
  double offset = 0.0;

  explicit QuboAdjacency(const Qubo& qubo);
  std::size_t num_vars() const { return linear.size(); }
  std::span<const Edge> neighbors(std::size_t v) const {
    return {edges.data() + row_start[v], row_start[v + 1] - row_start[v]};
  }
};

// ---------------------------------------------------------------------------
// File formats

enum class QuboFormat { structured, sparse_text };

/**
 * structured: JSON document {num_vars, offset, linear: {"i": v}, quadratic:
 * [[i, j, v], ...] sorted by (i, j), layout}. Doubles round-trip exactly.
 *
 * sparse_text: qbsolv-style
 *
 *     p qubo 0 <num_vars> <n_linear> <n_quadratic>
 *     c offset <value>
 *     i i <value>          (linear terms)
 *     i j <value>          (quadratic, i < j)
 *
 * with values rendered to 10 significant digits.
 */
void write_qubo(const Qubo& qubo, std::ostream& out, QuboFormat format);
Qubo read_qubo(std::istream& in, QuboFormat format);

void export_qubo(const Qubo& qubo, const std::filesystem::path& path, QuboFormat format);
Qubo import_qubo(const std::filesystem::path& path, QuboFormat format);

}  // namespace qalbp
