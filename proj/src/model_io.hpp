// Copyright 2026 The qkvdp Authors
//
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


#ifndef QKVDP_MODEL_IO_HPP
#define QKVDP_MODEL_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bnb.hpp"
#include "certificate.hpp"
#include "graph.hpp"
#include "reduction.hpp"

namespace qkvdp {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"num_vertices", "arcs", "pairs", "Q": dense | coo}. Q is symmetrized on
/// load; an asymmetry above 1e-9 is reported through `warnings`.
Instance instance_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

/// Writes Q in coordinate form with both (i, j) and (j, i). `provenance` is
/// attached when it is not null.
Json instance_to_json(const Instance& instance, const Json& provenance = nullptr);

Json reduced_to_json(const ReducedModel& reduced);
ReducedModel reduced_from_json(const Json& j);

/// {status, incumbent_value, lower_bound, gap, nodes, time_s, incumbent_arcs}
/// with the incumbent given as union-arc ids; non-finite numbers become null.
Json result_to_json(const BnbResult& result, const ReducedModel& reduced);

/// {valid, residual, z_e0, min_eig_W, W} plus the violated condition.
Json certificate_to_json(const SlaterCertificate& cert);

Json read_json_file(const std::string& path);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace qkvdp

#endif  // QKVDP_MODEL_IO_HPP
