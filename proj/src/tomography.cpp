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

#include "dickesim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dickesim {

namespace {

const char kPauliLetters[3] = {'X', 'Y', 'Z'};

SingleQubitBasis basis_from_letter(char c) {
  switch (c) {
    case 'X':
      return {BasisKind::X, 0.0};
    case 'Y':
      return {BasisKind::Y, 0.0};
    case 'Z':
      return {BasisKind::Z, 0.0};
    default:
      throw SpecError(std::string("unknown basis letter: ") + c);
  }
}

std::string outcome_string(int bits, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q)
    if (bits & (1 << (n - 1 - q))) s[q] = '1';
  return s;
}

}  // namespace

std::vector<MeasurementSetting> all_pauli_settings(int n_qubits) {
  if (n_qubits < 1) throw SpecError("need at least one qubit");
  std::vector<MeasurementSetting> out;
  int total = 1;
  for (int q = 0; q < n_qubits; ++q) total *= 3;
  out.reserve(total);
  for (int idx = 0; idx < total; ++idx) {
    std::string s(n_qubits, 'X');
    int rem = idx;
    for (int q = n_qubits - 1; q >= 0; --q) {
      s[q] = kPauliLetters[rem % 3];
      rem /= 3;
    }
    out.push_back({std::move(s)});
  }
  return out;
}

Eigen::VectorXd setting_probabilities(const DensityMatrix& rho,
                                      const MeasurementSetting& setting) {
  int n = rho.qubits();
  if (static_cast<int>(setting.bases.size()) != n)
    throw SpaceError("setting length does not match qubit count");
  QubitBasis basis;
  for (char c : setting.bases) basis.per_qubit.push_back(basis_from_letter(c));
  DensityMatrix rotated = change_basis(rho, basis);
  Eigen::VectorXd p = rotated.entries().diagonal().real();
  // clip eigen-solver noise
  for (int i = 0; i < p.size(); ++i) p(i) = std::max(p(i), 0.0);
  return p;
}

CountsTable simulate_counts(const DensityMatrix& rho,
                            const std::vector<MeasurementSetting>& settings,
                            double total_per_setting, std::uint64_t seed) {
  if (total_per_setting <= 0.0)
    throw SpecError("exposure must be positive");
  CountsTable table;
  table.n_qubits = rho.qubits();
  table.exposure = total_per_setting;
  std::mt19937_64 gen(seed);
  const int dim = rho.dim();
  for (const auto& s : settings) {
    Eigen::VectorXd p = setting_probabilities(rho, s);
    for (int b = 0; b < dim; ++b) {
      double mean = total_per_setting * p(b);
      long long c = 0;
      if (mean > 0.0) {
        std::poisson_distribution<long long> d(mean);
        c = d(gen);
      }
      table.counts[{s.bases, outcome_string(b, table.n_qubits)}] = c;
    }
  }
  return table;
}

namespace {

// sparse Pauli string action: P|j> = phase(j) |perm(j)>
void pauli_action(const std::string& letters, int n, std::vector<int>& perm,
                  std::vector<cd>& phase) {
  int dim = 1 << n;
  perm.assign(dim, 0);
  phase.assign(dim, 1.0);
  for (int j = 0; j < dim; ++j) {
    int target = j;
    cd ph = 1.0;
    for (int q = 0; q < n; ++q) {
      int bit = (j >> (n - 1 - q)) & 1;
      switch (letters[q]) {
        case 'I':
          break;
        case 'X':
          target ^= 1 << (n - 1 - q);
          break;
        case 'Y':
          target ^= 1 << (n - 1 - q);
          ph *= bit ? cd(0, -1) : cd(0, 1);
          break;
        case 'Z':
          if (bit) ph = -ph;
          break;
        default:
          throw SpecError("bad Pauli letter");
      }
    }
    perm[j] = target;
    phase[j] = ph;
  }
}

Eigen::MatrixXcd project_to_state(Eigen::MatrixXcd m) {
  m = cd(0.5) * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  // clip negatives, push the surplus onto the survivors, repeat
  for (int pass = 0; pass < m.rows() + 1; ++pass) {
    double neg = 0.0;
    int pos = 0;
    for (int i = 0; i < ev.size(); ++i) {
      if (ev(i) < 0.0) {
        neg += ev(i);
        ev(i) = 0.0;
      } else if (ev(i) > 0.0) {
        ++pos;
      }
    }
    double excess = ev.sum() - 1.0;
    if (neg == 0.0 && std::abs(excess) < 1e-14) break;
    if (pos == 0) {
      ev.setConstant(1.0 / ev.size());
      break;
    }
    for (int i = 0; i < ev.size(); ++i)
      if (ev(i) > 0.0) ev(i) -= excess / pos;
  }
  for (int i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  ev /= ev.sum();
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix reconstruct(const CountsTable& table) {
  const int n = table.n_qubits;
  if (n < 1) throw SpecError("counts table has no qubits");
  const int dim = 1 << n;

  // per-setting totals and frequencies
  std::map<std::string, double> totals;
  std::map<std::string, Eigen::VectorXd> freq;
  for (const auto& [key, c] : table.counts) {
    const auto& [setting, outcome] = key;
    if (static_cast<int>(setting.size()) != n ||
        static_cast<int>(outcome.size()) != n)
      throw SpecError("counts table key length mismatch");
    if (c < 0) throw SpecError("negative count");
    auto [it, fresh] = freq.try_emplace(setting, Eigen::VectorXd::Zero(dim));
    int b = 0;
    for (char ch : outcome) b = (b << 1) | (ch == '1');
    it->second(b) += static_cast<double>(c);
    totals[setting] += static_cast<double>(c);
  }
  for (const auto& s : all_pauli_settings(n))
    if (!totals.count(s.bases))
      throw SpecError("settings are not informationally complete, missing " +
                      s.bases);
  for (auto& [s, v] : freq)
    if (totals[s] > 0.0) v /= totals[s];

  // Pauli expectations averaged over compatible settings
  int npauli = 1;
  for (int q = 0; q < n; ++q) npauli *= 4;
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  Eigen::MatrixXcd lin = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<int> perm;
  std::vector<cd> phase;
  for (int pi = 0; pi < npauli; ++pi) {
    std::string p(n, 'I');
    int rem = pi;
    for (int q = n - 1; q >= 0; --q) {
      p[q] = letters[rem % 4];
      rem /= 4;
    }
    double expect = 1.0;
    if (pi != 0) {
      double acc = 0.0;
      int used = 0;
      for (const auto& [s, v] : freq) {
        bool compatible = true;
        for (int q = 0; q < n && compatible; ++q)
          if (p[q] != 'I' && p[q] != s[q]) compatible = false;
        if (!compatible || totals[s] <= 0.0) continue;
        double e = 0.0;
        for (int b = 0; b < dim; ++b) {
          int par = 0;
          for (int q = 0; q < n; ++q)
            if (p[q] != 'I') par ^= (b >> (n - 1 - q)) & 1;
          e += (par ? -1.0 : 1.0) * v(b);
        }
        acc += e;
        ++used;
      }
      expect = used > 0 ? acc / used : 0.0;
    }
    if (expect == 0.0) continue;
    pauli_action(p, n, perm, phase);
    const double w = expect / dim;
    for (int j = 0; j < dim; ++j) lin(perm[j], j) += w * phase[j];
  }
  return DensityMatrix(project_to_state(std::move(lin)));
}

MonteCarloSummary monte_carlo(const CountsTable& table,
                              const Eigen::VectorXcd& reference, int trials,
                              std::uint64_t seed) {
  if (trials < 2) throw SpecError("need at least two trials");
  std::mt19937_64 gen(seed);
  std::vector<double> fid, pur;
  for (int t = 0; t < trials; ++t) {
    CountsTable resampled = table;
    for (auto& [key, c] : resampled.counts) {
      if (c > 0) {
        std::poisson_distribution<long long> d(static_cast<double>(c));
        c = d(gen);
      }
    }
    DensityMatrix rho = reconstruct(resampled);
    fid.push_back(fidelity(rho, reference));
    pur.push_back(purity(rho));
  }
  auto mean_std = [trials](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= trials;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::pair<double, double>(mean, std::sqrt(var / (trials - 1)));
  };
  MonteCarloSummary s;
  std::tie(s.fidelity_mean, s.fidelity_std) = mean_std(fid);
  std::tie(s.purity_mean, s.purity_std) = mean_std(pur);
  return s;
}

}  // namespace dickesim
