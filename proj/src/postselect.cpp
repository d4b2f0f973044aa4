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

#include "dickesim/postselect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace dickesim {

PostselectResult postselect(const FockVector& s, const PortMap& ports) {
  if (ports.empty()) throw SpecError("postselect needs at least one port");
  const int n_modes = s.space().modes();
  std::set<int> used;
  for (const auto& p : ports) {
    if (p.rail0.empty() || p.rail0.size() != p.rail1.size())
      throw SpecError("port rails must be non-empty and aligned");
    for (const auto& rail : {p.rail0, p.rail1})
      for (int m : rail) {
        if (m < 0 || m >= n_modes) throw SpecError("port mode out of range");
        if (!used.insert(m).second) throw SpecError("port rails overlap");
      }
  }
  double in2 = norm2(s);
  if (in2 == 0.0) throw ZeroNormError("cannot post-select the zero vector");

  std::vector<Port> sorted = ports;
  std::sort(sorted.begin(), sorted.end(),
            [](const Port& a, const Port& b) { return a.label < b.label; });
  const int n = static_cast<int>(sorted.size());
  std::vector<int> env_modes;
  for (int m = 0; m < n_modes; ++m)
    if (!used.count(m)) env_modes.push_back(m);

  // undetected detail -> qubit amplitude vector
  std::map<std::vector<int>, Eigen::VectorXcd> groups;
  const int dim = 1 << n;
  std::vector<int> key(n + env_modes.size());
  for (const auto& [occ, amp] : s.terms()) {
    int bits = 0;
    bool keep = true;
    cd a = amp;
    for (int p = 0; p < n && keep; ++p) {
      int r0 = 0, r1 = 0, detail = -1;
      for (size_t j = 0; j < sorted[p].rail0.size(); ++j) {
        int c0 = occ[sorted[p].rail0[j]], c1 = occ[sorted[p].rail1[j]];
        r0 += c0;
        r1 += c1;
        if (c0 + c1 > 0) detail = static_cast<int>(j);
      }
      if (r0 + r1 != 1) {
        keep = false;
        break;
      }
      key[p] = detail;
      if (r1 == 1) {
        bits |= 1 << (n - 1 - p);
        a *= std::exp(cd(0.0, -sorted[p].cal_phase));
      }
    }
    if (!keep) continue;
    for (size_t e = 0; e < env_modes.size(); ++e) key[n + e] = occ[env_modes[e]];
    auto [it, inserted] =
        groups.try_emplace(key, Eigen::VectorXcd::Zero(dim));
    it->second(bits) += a;
  }

  PostselectResult out;
  for (const auto& p : sorted) out.port_labels.push_back(p.label);
  double kept2 = 0.0;
  for (const auto& [k, v] : groups) kept2 += v.squaredNorm();
  out.probability = kept2 / in2;
  if (kept2 == 0.0) return out;

  out.found = true;
  out.pure = groups.size() == 1;
  if (out.pure) {
    out.state = groups.begin()->second / std::sqrt(kept2);
    out.rho = DensityMatrix::from_pure(out.state);
  } else {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [k, v] : groups) rho += v * v.adjoint();
    out.rho = DensityMatrix(rho / kept2);
  }
  return out;
}

PostselectResult dicke_projection_check(int m, int n_ports) {
  if (m < 0 || m > n_ports) throw SpecError("excitation count out of range");
  CircuitSpec spec = build_dicke_network(n_ports, /*include_rhom=*/false);
  FockSpace space = FockSpace::plain(spec.n_modes, n_ports);
  FockVector in(space);
  Occupation occ(spec.n_modes, 0);
  // rail-1 photons carry the excitations
  occ[0] = n_ports - m;
  occ[1] = m;
  in.add_term(occ, 1.0);
  return postselect(apply(compile(spec), in), spec.ports);
}

double max_efficiency(int n_ports) {
  if (n_ports < 2) throw SpecError("need at least two ports");
  if (n_ports <= 24) {
    unsigned __int128 num = 1, den = 1;
    for (int k = 2; k <= n_ports; ++k) num *= k;
    for (int k = 0; k < n_ports; ++k) den *= n_ports;
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(den));
  }
  return std::exp(std::lgamma(n_ports + 1.0) -
                  n_ports * std::log(double(n_ports)));
}

}  // namespace dickesim
