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

namespace dickesim {

// Computational-basis index convention: qubit 0 is the most significant bit,
// so |q0 q1 ... q_{n-1}> reads left to right.

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // throws SpecError unless Hermitian (1e-10), trace 1 (1e-10) and
  // min eigenvalue >= -1e-9
  explicit DensityMatrix(Eigen::MatrixXcd entries);
  static DensityMatrix from_pure(const Eigen::VectorXcd& psi);

  bool valid() const { return m_.rows() > 0; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int qubits() const;
  const Eigen::MatrixXcd& entries() const { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

enum class BasisKind { Z, X, Y, Rotated };

struct SingleQubitBasis {
  BasisKind kind = BasisKind::Z;
  double theta = 0.0;  // Rotated only
};

struct QubitBasis {
  std::vector<SingleQubitBasis> per_qubit;
  static QubitBasis uniform(BasisKind kind, int n_qubits, double theta = 0.0);
};

// columns are the two basis kets
Eigen::Matrix2cd basis_kets(const SingleQubitBasis& b);

Eigen::VectorXcd dicke(int n_qubits, int excitations);
Eigen::VectorXcd psi2(double phi);
Eigen::VectorXcd psi4(double phi);
Eigen::VectorXcd ghz(int n_qubits);

// "D4m2", "GHZ4", "W3", "G3", "psi4:<phi>", "psi2:<phi>",
// "PhiPlus", "PhiMinus", "PsiPlus", "PsiMinus"
Eigen::VectorXcd reference_state(const std::string& name);

// coordinates of state in the product basis (per-qubit adjoint rotation)
Eigen::VectorXcd change_basis(const Eigen::VectorXcd& state,
                              const QubitBasis& basis);
DensityMatrix change_basis(const DensityMatrix& rho, const QubitBasis& basis);

// Tr(a b); equals <psi|a|psi> when b is the pure state psi
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
double fidelity(const DensityMatrix& a, const Eigen::VectorXcd& psi);
double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

double purity(const DensityMatrix& rho);

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// Largest overlap with a maximally entangled two-qubit state.  Bell-diagonal
// inputs (off-diagonal Bell elements < 1e-10) take the exact path; otherwise a
// multi-start Nelder-Mead search over two local SU(2) frames, tolerance 1e-8.
double max_singlet_fraction(const DensityMatrix& rho);

double teleport_fidelity(double f_msf, int d = 2);

struct ProjectionResult {
  bool found = false;
  Eigen::VectorXcd state;
  double probability = 0.0;
};

// Born projection of one qubit onto a normalized single-qubit ket;
// probability below 1e-24 is reported as a null result
ProjectionResult project_qubit(const Eigen::VectorXcd& state, int qubit,
                               const Eigen::Vector2cd& onto);

}  // namespace dickesim
