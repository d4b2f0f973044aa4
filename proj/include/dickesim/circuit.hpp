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

#include "dickesim/common.hpp"
#include "dickesim/fock.hpp"

namespace dickesim {

// Linear-optical elements over waveguide modes.  Two-mode elements act on
// (mode_a, mode_b); single-mode elements use mode_a only.
enum class ElementKind { MMI, PhaseShifter, Cross, Attenuator };

struct CircuitElement {
  ElementKind kind = ElementKind::MMI;
  int mode_a = 0;
  int mode_b = -1;
  double param = 0.0;  // radians for PhaseShifter, dB for Cross/Attenuator
};

CircuitElement mmi(int mode_a, int mode_b);
CircuitElement phase_shifter(int mode, double phi);
CircuitElement cross(int mode_a, int mode_b,
                     double loss_db = kDefaultCrossLossDb);
CircuitElement attenuator(int mode, double loss_db);

// 2x2 (or 1x1 embedded) action of a single element on the full mode set.
Eigen::MatrixXcd element_matrix(const CircuitElement& e, int n_modes);

// Dual-rail output port.  rail0/rail1 list the detected modes for each rail;
// entries at the same position refer to the same undetected detail (Schmidt
// index), which postselect uses to trace coherently within a rail group.
// cal_phase is subtracted from the rail-1 amplitude by downstream qubit
// analysis; the canonical networks built here need no correction.
struct Port {
  std::string label;
  std::vector<int> rail0;
  std::vector<int> rail1;
  double cal_phase = 0.0;

  Port() = default;
  Port(std::string lbl, int r0, int r1, double cal = 0.0)
      : label(std::move(lbl)), rail0{r0}, rail1{r1}, cal_phase(cal) {}
  Port(std::string lbl, std::vector<int> r0, std::vector<int> r1,
       double cal = 0.0)
      : label(std::move(lbl)),
        rail0(std::move(r0)),
        rail1(std::move(r1)),
        cal_phase(cal) {}
};

struct CircuitSpec {
  int n_modes = 0;
  std::vector<CircuitElement> elements;
  std::vector<Port> ports;
};

// Validates element mode indices and port disjointness.
void validate(const CircuitSpec& spec);

struct ModeTransform {
  Eigen::MatrixXcd matrix;

  int modes() const { return static_cast<int>(matrix.rows()); }
  bool is_unitary(double tol = 1e-10) const;
};

// Ordered product of element embeddings; later elements multiply from the
// left.
ModeTransform compile(const CircuitSpec& spec);

// Creation-operator substitution a_k^+ -> sum_j U_{jk} b_j^+ applied to every
// term of s via multinomial expansion.  Column entries with relative magnitude
// below 1e-15 are treated as structural zeros.
FockVector apply(const ModeTransform& t, const FockVector& s);

// 2N-mode network: MMI joining the two source rails, then a balanced
// splitter tree routing each rail equiprobably to N dual-rail ports
// labelled "A", "B", ... with rails (2k, 2k+1).  include_rhom=false drops
// the first MMI, exposing the bare projection tree.
CircuitSpec build_dicke_network(int n_ports, bool include_rhom = true);

}  // namespace dickesim
