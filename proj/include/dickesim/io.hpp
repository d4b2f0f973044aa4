// Copyright 2026 The dickesim authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dickesim/analysis.hpp"
#include "dickesim/fock.hpp"
#include "dickesim/qubits.hpp"
#include "dickesim/tomography.hpp"

namespace dickesim {

// One RFC-4180 record: fields holding commas, quotes or newlines are quoted
// with inner quotes doubled; the record ends in CRLF.
std::string csv_line(const std::vector<std::string>& fields);

// header phi,<a>-<b>,... then one record per grid point
std::string fringe_csv(const FringeCurve& curve);

// header pair,accidental with one record per detector pair
std::string fringe_accidental_csv(const FringeCurve& curve);

// header pair,visibility; fitted visibility per pair
std::string fringe_visibility_csv(const FringeCurve& curve);

// header tau_s,value
std::string overlap_csv(const OverlapCurve& curve);

// headerless numeric records, one per matrix row
std::string matrix_csv(const Eigen::MatrixXd& m);

// header setting,outcome,count in map order (lexicographic)
std::string counts_csv(const CountsTable& table);

// {"max_photons", "modes", "terms":[{"im","occ","re"}]}
std::string fock_json(const FockVector& v);

// {"dim", "entries": row-major [re, im] pairs}
std::string density_json(const DensityMatrix& rho);

std::string read_text_file(const std::string& path);  // DataError

// creates missing parent directories
void write_text_file(const std::string& path, const std::string& content);

// Provenance sidecar <artifact>.meta.json with the command line, the
// config content hash, the seed and the library version. Reruns with equal
// inputs rewrite identical bytes.
void write_sidecar(const std::string& artifact_path, const std::string& command,
                   std::uint64_t config_hash, std::uint64_t seed);

}  // namespace dickesim
