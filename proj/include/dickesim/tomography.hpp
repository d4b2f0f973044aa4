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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dickesim/qubits.hpp"

namespace dickesim {

// one projective setting, one Pauli basis letter per qubit, e.g. "ZXYY"
struct MeasurementSetting {
  std::string bases;
};

// every length-n string over {X, Y, Z}, lexicographic
std::vector<MeasurementSetting> all_pauli_settings(int n_qubits);

struct CountsTable {
  int n_qubits = 0;
  double exposure = 0.0;  // expected total counts per setting
  // (setting, outcome bitstring) -> count
  std::map<std::pair<std::string, std::string>, long long> counts;
};

// outcome probabilities of one setting, indexed by bitstring value
Eigen::VectorXd setting_probabilities(const DensityMatrix& rho,
                                      const MeasurementSetting& setting);

// independent Poisson draws with mean total_per_setting * Tr(rho Pi),
// deterministic for a fixed seed (std::mt19937_64 feeding
// std::poisson_distribution, serial setting-then-outcome order)
CountsTable simulate_counts(const DensityMatrix& rho,
                            const std::vector<MeasurementSetting>& settings,
                            double total_per_setting, std::uint64_t seed);

// Pauli linear inversion followed by projection to the nearest PSD
// unit-trace matrix (clip negative eigenvalues, redistribute uniformly,
// renormalize).  Requires the full 3^n setting set.
DensityMatrix reconstruct(const CountsTable& counts);

struct MonteCarloSummary {
  double fidelity_mean = 0.0;
  double fidelity_std = 0.0;
  double purity_mean = 0.0;
  double purity_std = 0.0;
};

// resamples every count as Poisson(observed), reconstructs per trial and
// summarizes fidelity against the reference plus reconstruction purity;
// trial order is fixed, so summaries are seed-deterministic
MonteCarloSummary monte_carlo(const CountsTable& counts,
                              const Eigen::VectorXcd& reference,
                              int trials = 100, std::uint64_t seed = 1);

}  // namespace dickesim
