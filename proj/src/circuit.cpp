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

#include "dickesim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dickesim {

namespace {

void require_loss(double loss_db) {
  if (loss_db < 0.0) throw SpecError("loss must be non-negative dB");
}

void require_distinct(int a, int b) {
  if (a == b) throw SpecError("two-mode element needs distinct modes");
}

double amplitude_transmission(double loss_db) {
  return std::pow(10.0, -loss_db / 20.0);
}

}  // namespace

CircuitElement mmi(int mode_a, int mode_b) {
  require_distinct(mode_a, mode_b);
  return {ElementKind::MMI, mode_a, mode_b, 0.0};
}

CircuitElement phase_shifter(int mode, double phi) {
  return {ElementKind::PhaseShifter, mode, -1, phi};
}

CircuitElement cross(int mode_a, int mode_b, double loss_db) {
  require_distinct(mode_a, mode_b);
  require_loss(loss_db);
  return {ElementKind::Cross, mode_a, mode_b, loss_db};
}

CircuitElement attenuator(int mode, double loss_db) {
  require_loss(loss_db);
  return {ElementKind::Attenuator, mode, -1, loss_db};
}

Eigen::MatrixXcd element_matrix(const CircuitElement& e, int n_modes) {
  auto check = [n_modes](int m) {
    if (m < 0 || m >= n_modes) throw SpecError("element mode out of range");
  };
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n_modes, n_modes);
  const cd i1(0.0, 1.0);
  switch (e.kind) {
    case ElementKind::MMI: {
      check(e.mode_a);
      check(e.mode_b);
      require_distinct(e.mode_a, e.mode_b);
      const double s = 1.0 / std::sqrt(2.0);
      u(e.mode_a, e.mode_a) = s;
      u(e.mode_a, e.mode_b) = i1 * s;
      u(e.mode_b, e.mode_a) = i1 * s;
      u(e.mode_b, e.mode_b) = s;
      break;
    }
    case ElementKind::PhaseShifter:
      check(e.mode_a);
      u(e.mode_a, e.mode_a) = std::exp(i1 * e.param);
      break;
    case ElementKind::Cross: {
      check(e.mode_a);
      check(e.mode_b);
      require_distinct(e.mode_a, e.mode_b);
      require_loss(e.param);
      // waveguides keep their labels through the crossing; both pick up
      // the traversal loss
      const double t = amplitude_transmission(e.param);
      u(e.mode_a, e.mode_a) = t;
      u(e.mode_b, e.mode_b) = t;
      break;
    }
    case ElementKind::Attenuator:
      check(e.mode_a);
      require_loss(e.param);
      u(e.mode_a, e.mode_a) = amplitude_transmission(e.param);
      break;
  }
  return u;
}

void validate(const CircuitSpec& spec) {
  if (spec.n_modes <= 0) throw SpecError("circuit needs at least one mode");
  for (const auto& e : spec.elements) element_matrix(e, spec.n_modes);
  std::set<int> seen;
  for (const auto& p : spec.ports) {
    if (p.label.empty()) throw SpecError("port label empty");
    if (p.rail0.empty() || p.rail0.size() != p.rail1.size())
      throw SpecError("port rails must be non-empty and aligned");
    for (const auto& rail : {p.rail0, p.rail1}) {
      for (int m : rail) {
        if (m < 0 || m >= spec.n_modes) throw SpecError("port mode out of range");
        if (!seen.insert(m).second) throw SpecError("port rails overlap");
      }
    }
  }
}

bool ModeTransform::is_unitary(double tol) const {
  Eigen::MatrixXcd d = matrix.adjoint() * matrix -
                       Eigen::MatrixXcd::Identity(modes(), modes());
  return d.cwiseAbs().maxCoeff() < tol;
}

ModeTransform compile(const CircuitSpec& spec) {
  validate(spec);
  Eigen::MatrixXcd u =
      Eigen::MatrixXcd::Identity(spec.n_modes, spec.n_modes);
  for (const auto& e : spec.elements) u = element_matrix(e, spec.n_modes) * u;
  return {std::move(u)};
}

FockVector apply(const ModeTransform& t, const FockVector& s) {
  const int m = s.space().modes();
  if (t.modes() != m) throw SpaceError("transform/state mode count mismatch");

  // structurally nonzero entries per column
  std::vector<std::vector<std::pair<int, cd>>> cols(m);
  for (int k = 0; k < m; ++k) {
    double col_max = 0.0;
    for (int j = 0; j < m; ++j)
      col_max = std::max(col_max, std::abs(t.matrix(j, k)));
    for (int j = 0; j < m; ++j)
      if (std::abs(t.matrix(j, k)) > 1e-15 * col_max)
        cols[k].emplace_back(j, t.matrix(j, k));
  }

  FockVector out(s.space());
  std::map<Occupation, cd> poly, next;
  for (const auto& [occ, amp] : s.terms()) {
    // state amplitude -> monomial coefficient
    double fac = 1.0;
    for (int n : occ) fac *= factorial(n);
    poly.clear();
    poly[Occupation(m, 0)] = amp / std::sqrt(fac);
    for (int k = 0; k < m; ++k) {
      for (int rep = 0; rep < occ[k]; ++rep) {
        next.clear();
        for (const auto& [pw, c] : poly) {
          for (const auto& [j, ujk] : cols[k]) {
            Occupation np = pw;
            ++np[j];
            next[np] += c * ujk;
          }
        }
        poly.swap(next);
      }
    }
    for (const auto& [pw, c] : poly) {
      double w = 1.0;
      for (int n : pw) w *= factorial(n);
      out.add_term(pw, c * std::sqrt(w));
    }
  }
  return out;
}

namespace {

// photon enters at v[0]; recursive halving spreads it equally over v
void spread_tree(const std::vector<int>& v, std::vector<CircuitElement>& out) {
  if (v.size() <= 1) return;
  size_t half = v.size() / 2;
  std::vector<int> left(v.begin(), v.begin() + half);
  std::vector<int> right(v.begin() + half, v.end());
  out.push_back(mmi(left.front(), right.front()));
  spread_tree(left, out);
  spread_tree(right, out);
}

}  // namespace

CircuitSpec build_dicke_network(int n_ports, bool include_rhom) {
  if (n_ports != 2 && n_ports != 4 && n_ports != 8 && n_ports != 16)
    throw SpecError("supported port counts: 2, 4, 8, 16");
  CircuitSpec spec;
  spec.n_modes = 2 * n_ports;
  if (include_rhom) spec.elements.push_back(mmi(0, 1));
  std::vector<int> rail0, rail1;
  for (int k = 0; k < n_ports; ++k) {
    rail0.push_back(2 * k);
    rail1.push_back(2 * k + 1);
  }
  spread_tree(rail0, spec.elements);
  spread_tree(rail1, spec.elements);
  for (int k = 0; k < n_ports; ++k)
    spec.ports.emplace_back(std::string(1, static_cast<char>('A' + k)),
                            2 * k, 2 * k + 1);
  validate(spec);
  return spec;
}

}  // namespace dickesim
