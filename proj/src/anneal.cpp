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
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qalbp/solvers.hpp"
#include "random.hpp"

namespace qalbp {

namespace {

// exp(-40) ~ 4e-18 is below the resolution of uniform_real().
constexpr double kMaxExponent = 40.0;
constexpr double kDefaultFinalTemperature = 1e-3;

struct Schedule {
  double t_initial;
  double t_final;
  std::size_t sweeps;

  double beta(std::size_t sweep) const {
    if (sweeps == 1) return 1.0 / t_final;
    const double frac = static_cast<double>(sweep) / static_cast<double>(sweeps - 1);
    return 1.0 / (t_initial * std::pow(t_final / t_initial, frac));
  }
};

Bits anneal_one_read(const QuboAdjacency& model, const Schedule& schedule, std::uint64_t seed) {
  const std::size_t n = model.num_vars();
  auto rng = detail::make_engine(seed);

  Bits bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);

  // field[v] = a_v + sum_w q_vw b_w; flipping v changes energy by +/-field[v]
  std::vector<double> field(model.linear);
  for (std::size_t v = 0; v < n; ++v) {
    if (!bits[v]) continue;
    for (const auto& e : model.neighbors(v)) field[e.neighbor] += e.weight;
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double beta = schedule.beta(sweep);
    detail::shuffle(std::span<std::uint32_t>(order), rng);
    for (std::uint32_t v : order) {
      const double delta = bits[v] ? -field[v] : field[v];
      bool accept = delta <= 0.0;
      if (!accept) {
        const double x = delta * beta;
        accept = x < kMaxExponent && detail::uniform_real(rng) < std::exp(-x);
      }
      if (!accept) continue;
      bits[v] ^= 1;
      const double sign = bits[v] ? 1.0 : -1.0;
      for (const auto& e : model.neighbors(v)) field[e.neighbor] += sign * e.weight;
    }
  }
  return bits;
}

}  // namespace

double default_initial_temperature(const Qubo& qubo) {
  std::vector<double> scale(qubo.num_vars(), 0.0);
  for (const auto& [i, a] : qubo.linear()) scale[i] += std::abs(a);
  for (const auto& [key, q] : qubo.quadratic()) {
    scale[key.first] += std::abs(q);
    scale[key.second] += std::abs(q);
  }
  const double max_scale = scale.empty() ? 0.0 : *std::max_element(scale.begin(), scale.end());
  return max_scale > 0.0 ? max_scale / std::log(2.0) : 1.0;
}

SampleSet simulated_annealing(const Qubo& qubo, const AnnealParams& params) {
  if (qubo.num_vars() == 0) throw std::invalid_argument("cannot anneal an empty model");
  if (params.num_reads < 1) throw std::invalid_argument("num_reads must be at least 1");
  if (params.sweeps_per_read < 1) throw std::invalid_argument("sweeps_per_read must be at least 1");

  const auto start = std::chrono::steady_clock::now();

  Schedule schedule{params.t_initial.value_or(default_initial_temperature(qubo)),
                    params.t_final.value_or(kDefaultFinalTemperature), params.sweeps_per_read};
  if (!(schedule.t_final > 0.0) || !(schedule.t_initial > schedule.t_final)) {
    throw std::invalid_argument("temperatures must satisfy t_initial > t_final > 0");
  }

  const QuboAdjacency model(qubo);
  std::vector<Bits> reads(params.num_reads);

  std::size_t workers = params.threads == 0 ? std::thread::hardware_concurrency() : params.threads;
  workers = std::clamp<std::size_t>(workers, 1, params.num_reads);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r = next++; r < params.num_reads; r = next++) {
      reads[r] = anneal_one_read(model, schedule, params.seed ^ static_cast<std::uint64_t>(r));
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  std::sort(reads.begin(), reads.end());
  SampleSet result;
  for (auto& bits : reads) {
    if (!result.samples.empty() && result.samples.back().bits == bits) {
      ++result.samples.back().num_occurrences;
      continue;
    }
    const double energy = qubo_energy(qubo, bits);
    result.samples.push_back({std::move(bits), energy, 1});
  }
  std::stable_sort(result.samples.begin(), result.samples.end(),
                   [](const Sample& a, const Sample& b) { return a.energy < b.energy; });

  result.wall_time_us =
      std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qalbp
