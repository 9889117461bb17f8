// Copyright 2026 The pulseil Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CPLEX LP text for the look-assignment program. Variables are h_i_j_k
// (task row i in look j at slot k) and f_j (look j used). The relaxed
// facility-location form drops slots: h_i_j plus the capacity, single
// assignment and availability rows only.

#ifndef PULSEIL_LP_FORMAT_HPP_
#define PULSEIL_LP_FORMAT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "pulseil/ip_instance.hpp"

namespace pulseil {

struct LpTerm {
  double coef = 0.0;
  std::string var;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  std::string sense;  // "<=", ">=" or "="
  double rhs = 0.0;
};

struct LpModel {
  std::string comment;  // single header line, without the leading backslash
  std::vector<LpTerm> objective;
  std::vector<LpRow> rows;
  std::vector<std::string> binaries;
};

LpModel build_lp(const IpInstance& instance, bool facility_relaxation);
std::string emit_lp(const LpModel& model);
// Reads the subset of LP syntax that emit_lp writes. Throws InvalidInput.
LpModel parse_lp(std::string_view text);

inline std::string export_lp(const IpInstance& instance,
                             bool facility_relaxation) {
  return emit_lp(build_lp(instance, facility_relaxation));
}

}  // namespace pulseil

#endif  // PULSEIL_LP_FORMAT_HPP_
