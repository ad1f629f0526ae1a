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

#include "qalbp/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "random.hpp"

namespace qalbp {

Instance::Instance(std::string name, std::vector<int> weights, int capacity,
                   std::optional<int> reference_lower_bound)
    : name_(std::move(name)),
      weights_(std::move(weights)),
      capacity_(capacity),
      reference_lower_bound_(reference_lower_bound) {
  if (capacity_ < 1) {
    throw std::invalid_argument("capacity must be positive, got " + std::to_string(capacity_));
  }
  if (weights_.empty()) {
    throw std::invalid_argument("instance has no items");
  }
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] < 1) {
      throw std::invalid_argument("item " + std::to_string(j) + " has non-positive weight");
    }
    if (weights_[j] > capacity_) {
      throw std::invalid_argument("item " + std::to_string(j) + " exceeds capacity");
    }
  }
}

int Instance::min_weight() const { return *std::min_element(weights_.begin(), weights_.end()); }

long long Instance::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0LL);
}

std::size_t Solution::num_bins() const {
  return static_cast<std::size_t>(
      std::count_if(bins.begin(), bins.end(), [](const auto& b) { return !b.empty(); }));
}

bool Solution::is_valid_for(const Instance& instance) const {
  std::vector<int> seen(instance.num_items(), 0);
  for (const auto& bin : bins) {
    long long load = 0;
    for (std::size_t item : bin) {
      if (item >= seen.size()) return false;
      ++seen[item];
      load += instance.weight(item);
    }
    if (load > instance.capacity()) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

Instance make_instance(std::string name, std::vector<int> weights, int capacity) {
  return Instance(std::move(name), std::move(weights), capacity);
}

Instance generate_instance(std::size_t n, int weight_lo, int weight_hi, int capacity,
                           std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("item count must be at least 1");
  if (weight_lo < 1 || weight_lo > weight_hi || weight_hi > capacity) {
    throw std::invalid_argument("invalid weight range [" + std::to_string(weight_lo) + ", " +
                                std::to_string(weight_hi) + "] for capacity " +
                                std::to_string(capacity));
  }
  auto rng = detail::make_engine(seed);
  const auto span = static_cast<std::uint64_t>(weight_hi - weight_lo) + 1;
  std::vector<int> weights(n);
  for (auto& w : weights) {
    w = weight_lo + static_cast<int>(detail::uniform_below(rng, span));
  }
  std::string name = "(" + std::to_string(n) + ", " + std::to_string(seed) + ")";
  return Instance(std::move(name), std::move(weights), capacity);
}

int l1_lower_bound(const Instance& instance) {
  const long long c = instance.capacity();
  return static_cast<int>((instance.total_weight() + c - 1) / c);
}

Solution first_fit_decreasing(const Instance& instance) {
  std::vector<std::size_t> order(instance.num_items());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.weight(a) > instance.weight(b);
  });

  Solution solution;
  std::vector<int> loads;
  for (std::size_t item : order) {
    const int w = instance.weight(item);
    auto fits = std::find_if(loads.begin(), loads.end(),
                             [&](int load) { return load + w <= instance.capacity(); });
    if (fits == loads.end()) {
      loads.push_back(w);
      solution.bins.push_back({item});
    } else {
      const auto bin = static_cast<std::size_t>(fits - loads.begin());
      *fits += w;
      solution.bins[bin].push_back(item);
    }
  }
  return solution;
}

// ---------------------------------------------------------------------------
// Instance files

namespace {

using nlohmann::json;

json to_json(const Instance& instance) {
  json j = {{"name", instance.name()},
            {"capacity", instance.capacity()},
            {"weights", std::vector<int>(instance.weights().begin(), instance.weights().end())}};
  if (auto lb = instance.reference_lower_bound()) j["lower_bound"] = *lb;
  return j;
}

Instance from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("instance record must be an object");
  std::optional<int> lb;
  if (j.contains("lower_bound") && !j.at("lower_bound").is_null()) {
    lb = j.at("lower_bound").get<int>();
  }
  return Instance(j.at("name").get<std::string>(), j.at("weights").get<std::vector<int>>(),
                  j.at("capacity").get<int>(), lb);
}

void write_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_instance(const Instance& instance, std::ostream& out) {
  out << to_json(instance).dump(2) << '\n';
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_json(to_json(instance), path);
}

void save_suite(std::span<const Instance> suite, const std::filesystem::path& path) {
  json doc = json::array();
  for (const auto& instance : suite) doc.push_back(to_json(instance));
  write_json(doc, path);
}

std::vector<Instance> load_instances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  std::vector<Instance> out;
  try {
    if (doc.is_array()) {
      for (const auto& record : doc) out.push_back(from_json(record));
    } else {
      out.push_back(from_json(doc));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace qalbp
