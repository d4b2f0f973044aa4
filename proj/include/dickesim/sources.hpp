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

#include <utility>
#include <vector>

#include "dickesim/circuit.hpp"
#include "dickesim/common.hpp"
#include "dickesim/fock.hpp"

namespace dickesim {

// Coherently pumped pair-source model.  g drives the dual-pump process that
// emits both photons into the detected frequency family; g1 and g2 drive the
// two single-pump processes whose partner photon lands in an undetected
// family.  schmidt holds the spectral decomposition weights.
struct SourceModel {
  double g = 0.1;
  double phi = 0.0;
  std::vector<double> schmidt = {1.0};
  double g1 = 0.0;
  double g2 = 0.0;
  int max_pairs = 2;
};

// sum lambda_i^2 = 1 within 1e-10, entries positive and non-increasing,
// strengths non-negative, max_pairs >= 1
void validate(const SourceModel& m);

// sum lambda_i^4
double purity(const SourceModel& m);

// Normalized (z0^2 + e^{2 i phi} z1^2)^order / norm |vac> on a fresh
// two-mode space; order >= 1 (the two-pair truncation used throughout is
// order 2).
FockVector ideal_pair_state(double phi, int order);
// same state written onto two modes of an existing space
FockVector ideal_pair_state_on(const FockSpace& space, int mode0, int mode1,
                               double phi, int order);

// Mode registry for impurity runs: each wire carries the detected family Z
// plus undetected families U and V, every family with one slot per Schmidt
// index.  Mode order is (wire, family, schmidt).
class TaggedSpace {
 public:
  TaggedSpace(int wires, int schmidt, int max_photons);
  int wires() const { return wires_; }
  int schmidt() const { return schmidt_; }
  int modes() const { return wires_ * 3 * schmidt_; }
  int mode(int wire, int family, int k) const;  // family: 0=Z, 1=U, 2=V
  std::vector<int> z_modes(int wire) const;
  const FockSpace& space() const { return space_; }

 private:
  int wires_;
  int schmidt_;
  FockSpace space_;
};

// quadratic creation-operator polynomial: (powers, coefficient) terms
using QuadraticForm = std::vector<std::pair<Occupation, cd>>;

// Pair-emission exponent on source wires 0 and 1 before any interference:
//   sum_i lambda_i [ (g/2)(z0_i^2 + e^{2 i phi} z1_i^2)
//                  + (g1/sqrt2)(z0_i u0_i + e^{2 i phi} z1_i u1_i)
//                  + (g2/sqrt2)(z0_i v0_i + e^{2 i phi} z1_i v1_i) ]
QuadraticForm pair_exponent(const SourceModel& m, const TaggedSpace& tagged);

// substitutes every creation operator through the mode transform
QuadraticForm transform_exponent(const QuadraticForm& form,
                                 const ModeTransform& t);

// sum_{k in [min_pairs, max_pairs]} A^k / k! |vac>, unnormalized
FockVector expand_pairs(const QuadraticForm& form, const FockSpace& space,
                        int min_pairs, int max_pairs);

// Truncated squeezed state after the rail-joining interference on a two-wire
// registry; pair orders outside [min_pairs, max_pairs] are dropped
// (max_pairs < 0 uses the model's own truncation).
FockVector impure_joint_state(const SourceModel& m, int min_pairs = 0,
                              int max_pairs = -1);

// norm^2 of the first discarded pair order, bounding the truncation error
double truncation_weight(const SourceModel& m);

// replicates every element of a two-or-more-wire circuit across the
// (family, schmidt) slots and rewrites ports to detect the Z family
CircuitSpec lift_to_tagged(const CircuitSpec& plain, const TaggedSpace& tagged);

}  // namespace dickesim
