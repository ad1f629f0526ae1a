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

#include "qalbp/qubo.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace qalbp {

Qubo::Qubo(std::size_t num_vars, std::optional<QuboLayout> layout)
    : num_vars_(num_vars), layout_(layout) {
  if (layout_ && layout_->num_vars() != num_vars_) {
    throw std::invalid_argument("layout does not match variable count");
  }
}

double Qubo::linear(std::size_t i) const {
  auto it = linear_.find(i);
  return it == linear_.end() ? 0.0 : it->second;
}

double Qubo::quadratic(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = quadratic_.find({i, j});
  return it == quadratic_.end() ? 0.0 : it->second;
}

void Qubo::add_linear(std::size_t i, double value) {
  if (i >= num_vars_) throw std::out_of_range("variable index out of range");
  if (value == 0.0) return;
  double& slot = linear_[i];
  slot += value;
  if (slot == 0.0) linear_.erase(i);
}

void Qubo::add_quadratic(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    add_linear(i, value);
    return;
  }
  if (i > j) std::swap(i, j);
  if (j >= num_vars_) throw std::out_of_range("variable index out of range");
  if (value == 0.0) return;
  double& slot = quadratic_[{i, j}];
  slot += value;
  if (slot == 0.0) quadratic_.erase({i, j});
}

double qubo_energy(const Qubo& qubo, std::span<const std::uint8_t> bits) {
  if (bits.size() != qubo.num_vars()) {
    throw std::invalid_argument("bit vector has " + std::to_string(bits.size()) +
                                " entries, qubo has " + std::to_string(qubo.num_vars()));
  }
  double energy = qubo.offset();
  for (const auto& [i, a] : qubo.linear()) {
    if (bits[i]) energy += a;
  }
  for (const auto& [key, q] : qubo.quadratic()) {
    if (bits[key.first] && bits[key.second]) energy += q;
  }
  return energy;
}

QuboAdjacency::QuboAdjacency(const Qubo& qubo)
    : linear(qubo.num_vars(), 0.0), row_start(qubo.num_vars() + 1, 0), offset(qubo.offset()) {
  for (const auto& [i, a] : qubo.linear()) linear[i] = a;
  std::vector<std::size_t> degree(qubo.num_vars(), 0);
  for (const auto& [key, q] : qubo.quadratic()) {
    ++degree[key.first];
    ++degree[key.second];
  }
  for (std::size_t v = 0; v < degree.size(); ++v) row_start[v + 1] = row_start[v] + degree[v];
  edges.resize(row_start.back());
  std::vector<std::size_t> cursor(row_start.begin(), row_start.end() - 1);
  for (const auto& [key, q] : qubo.quadratic()) {
    edges[cursor[key.first]++] = {static_cast<std::uint32_t>(key.second), q};
    edges[cursor[key.second]++] = {static_cast<std::uint32_t>(key.first), q};
  }
}

// ---------------------------------------------------------------------------
// I/O

namespace {

using nlohmann::json;

std::string format_sig10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_structured(const Qubo& qubo, std::ostream& out) {
  json doc;
  doc["num_vars"] = qubo.num_vars();
  doc["offset"] = qubo.offset();
  json linear = json::object();
  for (const auto& [i, a] : qubo.linear()) linear[std::to_string(i)] = a;
  doc["linear"] = std::move(linear);
  json quadratic = json::array();
  for (const auto& [key, q] : qubo.quadratic()) {
    quadratic.push_back(json::array({key.first, key.second, q}));
  }
  doc["quadratic"] = std::move(quadratic);
  if (const auto& layout = qubo.layout()) {
    doc["layout"] = {{"num_items", layout->num_items},
                     {"num_bins", layout->num_bins},
                     {"convention", "y_i = i; x_ij = m + i*n + j"}};
  }
  out << doc.dump(2) << '\n';
}

Qubo read_structured(std::istream& in) {
  json doc = json::parse(in);
  std::optional<QuboLayout> layout;
  if (doc.contains("layout")) {
    layout = QuboLayout{doc["layout"].at("num_items").get<std::size_t>(),
                        doc["layout"].at("num_bins").get<std::size_t>()};
  }
  Qubo qubo(doc.at("num_vars").get<std::size_t>(), layout);
  qubo.add_offset(doc.at("offset").get<double>());
  for (const auto& [key, value] : doc.at("linear").items()) {
    qubo.add_linear(std::stoull(key), value.get<double>());
  }
  for (const auto& triple : doc.at("quadratic")) {
    qubo.add_quadratic(triple.at(0).get<std::size_t>(), triple.at(1).get<std::size_t>(),
                       triple.at(2).get<double>());
  }
  return qubo;
}

void write_sparse_text(const Qubo& qubo, std::ostream& out) {
  out << "p qubo 0 " << qubo.num_vars() << ' ' << qubo.linear().size() << ' '
      << qubo.quadratic().size() << '\n';
  out << "c offset " << format_sig10(qubo.offset()) << '\n';
  for (const auto& [i, a] : qubo.linear()) {
    out << i << ' ' << i << ' ' << format_sig10(a) << '\n';
  }
  for (const auto& [key, q] : qubo.quadratic()) {
    out << key.first << ' ' << key.second << ' ' << format_sig10(q) << '\n';
  }
}

Qubo read_sparse_text(std::istream& in) {
  std::optional<Qubo> qubo;
  double offset = 0.0;
  std::size_t expected_linear = 0, expected_quadratic = 0, seen_linear = 0, seen_quadratic = 0;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("sparse qubo line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == 'c') {
      std::string tag, key;
      fields >> tag >> key;
      if (key == "offset" && !(fields >> offset)) fail("bad offset");
      continue;
    }
    if (line[0] == 'p') {
      std::string tag, kind, topology;
      std::size_t num_vars;
      if (!(fields >> tag >> kind >> topology >> num_vars >> expected_linear >>
            expected_quadratic) ||
          kind != "qubo") {
        fail("bad problem line");
      }
      qubo.emplace(num_vars);
      continue;
    }
    if (!qubo) fail("coefficient before problem line");
    std::size_t i, j;
    double value;
    if (!(fields >> i >> j >> value)) fail("bad coefficient line");
    if (i == j) {
      ++seen_linear;
      qubo->add_linear(i, value);
    } else {
      ++seen_quadratic;
      qubo->add_quadratic(i, j, value);
    }
  }
  if (!qubo) throw std::runtime_error("sparse qubo: missing problem line");
  if (seen_linear != expected_linear || seen_quadratic != expected_quadratic) {
    throw std::runtime_error("sparse qubo: entry counts do not match header");
  }
  qubo->add_offset(offset);
  return *std::move(qubo);
}

}  // namespace

void write_qubo(const Qubo& qubo, std::ostream& out, QuboFormat format) {
  if (format == QuboFormat::structured) {
    write_structured(qubo, out);
  } else {
    write_sparse_text(qubo, out);
  }
}

Qubo read_qubo(std::istream& in, QuboFormat format) {
  try {
    return format == QuboFormat::structured ? read_structured(in) : read_sparse_text(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("structured qubo: ") + e.what());
  }
}

void export_qubo(const Qubo& qubo, const std::filesystem::path& path, QuboFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_qubo(qubo, out, format);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Qubo import_qubo(const std::filesystem::path& path, QuboFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_qubo(in, format);
}

}  // namespace qalbp
