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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dickesim/circuit.hpp"
#include "dickesim/fock.hpp"
#include "dickesim/qubits.hpp"

namespace dickesim {

using PortMap = std::vector<Port>;

// Coincidence projection onto one photon per dual-rail port.  Qubit order is
// port-label lexicographic regardless of the list order.  Detected photons
// that differ only in undetected detail (rail position index, or occupation
// of modes outside every rail) are summed incoherently, so the result is a
// density matrix whenever several such configurations survive.
struct PostselectResult {
  bool found = false;  // false marks the zero-probability null result
  bool pure = true;
  Eigen::VectorXcd state;  // set when found && pure
  DensityMatrix rho;       // set when found
  double probability = 0.0;
  std::vector<std::string> port_labels;
};

PostselectResult postselect(const FockVector& s, const PortMap& ports);

// Routes the basis state with m photons on source rail 0 and n_ports - m on
// rail 1 through the bare splitter tree and post-selects; the outcome is the
// equally weighted m-excitation state at probability n_ports!/n_ports^n_ports.
PostselectResult dicke_projection_check(int m, int n_ports);

// n!/n^n
double max_efficiency(int n_ports);

}  // namespace dickesim
