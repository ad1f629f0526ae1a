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
#include <cctype>

#include "qalbp/instance.hpp"

namespace qalbp {

namespace {

struct FixtureRow {
  const char* name;
  std::vector<int> weights;
  int lower_bound;  // as published; see README for how it relates to L1
};

constexpr int kFixtureCapacity = 10;

// Names and weights are kept exactly as published, including "(7,42)".
const std::vector<FixtureRow>& rows() {
  static const std::vector<FixtureRow> table = {
      {"(3, 23)", {4, 8, 6}, 2},
      {"(4, 23)", {8, 5, 4, 8}, 3},
      {"(5, 23)", {4, 4, 8, 8, 9}, 3},
      {"(6, 23)", {7, 5, 5, 5, 4, 9}, 4},
      {"(7, 23)", {9, 7, 8, 6, 9, 6, 7}, 5},
      {"(8, 23)", {4, 5, 7, 5, 6, 4, 6, 4}, 4},
      {"(9, 23)", {7, 6, 8, 4, 8, 4, 9, 6, 4}, 6},
      {"(10, 23)", {5, 8, 6, 7, 10, 9, 4, 10, 7, 4}, 7},

      {"(3, 42)", {4, 8, 6}, 2},
      {"(4, 42)", {7, 7, 10, 4}, 3},
      {"(5, 42)", {8, 5, 4, 7, 10}, 4},
      {"(6, 42)", {9, 9, 9, 9, 7, 4}, 5},
      {"(7,42)", {9, 7, 7, 6, 5, 10, 9}, 5},
      {"(8, 42)", {8, 6, 9, 7, 7, 7, 5, 4}, 5},
      {"(9, 42)", {7, 10, 4, 10, 9, 5, 8, 5, 9}, 7},
      {"(10, 42)", {8, 6, 4, 10, 7, 10, 8, 9, 9, 5}, 7},

      {"(3, 123)", {4, 8, 8}, 2},
      {"(4, 123)", {4, 10, 5, 5}, 3},
      {"(5, 123)", {5, 6, 5, 6, 9}, 3},
      {"(6, 123)", {7, 10, 7, 5, 9, 9}, 5},
      {"(7, 123)", {10, 10, 4, 7, 5, 5, 5}, 5},
      {"(8, 123)", {9, 9, 5, 6, 9, 5, 8, 7}, 6},
      {"(9, 123)", {10, 9, 5, 9, 9, 5, 7, 9, 5}, 7},
      {"(10, 123)", {5, 5, 4, 7, 4, 8, 6, 5, 6, 4}, 5},

      {"(3, 90)", {8, 6, 4}, 2},
      {"(4, 90)", {8, 5, 7, 6}, 3},
      {"(5, 90)", {6, 7, 8, 7, 4}, 3},
      {"(6, 90)", {7, 8, 9, 9, 10, 6}, 5},
      {"(7, 90)", {6, 4, 4, 4, 8, 9, 6}, 4},
      {"(8, 90)", {7, 10, 8, 8, 8, 5, 5, 8}, 6},
      {"(9, 90)", {9, 6, 4, 10, 10, 5, 4, 4, 6}, 6},
      {"(10, 90)", {9, 6, 8, 7, 8, 10, 9, 6, 9, 10}, 8},

      {"(3, 510)", {5, 8, 6}, 2},
      {"(4, 510)", {7, 9, 5, 5}, 3},
      {"(5, 510)", {6, 10, 4, 9, 4}, 3},
      {"(6, 510)", {5, 5, 9, 10, 8, 6}, 4},
      {"(7, 510)", {9, 7, 9, 4, 10, 10, 8}, 6},
      {"(8, 510)", {9, 10, 8, 9, 4, 4, 9, 5}, 6},
      {"(9, 510)", {5, 9, 10, 9, 7, 8, 4, 10, 6}, 7},
      {"(10, 510)", {10, 5, 9, 5, 8, 9, 7, 4, 6, 9}, 7},
  };
  return table;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

const std::vector<Instance>& fixture_suite() {
  static const std::vector<Instance> suite = [] {
    std::vector<Instance> out;
    out.reserve(rows().size());
    for (const auto& row : rows()) {
      out.emplace_back(row.name, row.weights, kFixtureCapacity, row.lower_bound);
    }
    return out;
  }();
  return suite;
}

std::optional<Instance> find_fixture(std::string_view name) {
  const std::string key = strip_spaces(name);
  const auto& suite = fixture_suite();
  auto it = std::find_if(suite.begin(), suite.end(),
                         [&](const Instance& inst) { return strip_spaces(inst.name()) == key; });
  if (it == suite.end()) return std::nullopt;
  return *it;
}

}  // namespace qalbp
