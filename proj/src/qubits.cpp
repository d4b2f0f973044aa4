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

#include "dickesim/qubits.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <functional>
#include <random>

namespace dickesim {

namespace {

int qubit_count_of_dim(int dim) {
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim || dim < 2)
    throw SpecError("dimension is not a power of two");
  return n;
}

unsigned long long binomial(int n, int k) {
  unsigned long long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw SpecError("density matrix must be square");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw SpecError("density matrix not Hermitian");
  cd tr = m_.trace();
  if (std::abs(tr - cd(1.0)) > 1e-10)
    throw SpecError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw SpecError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& psi) {
  double n = psi.norm();
  if (n == 0.0) throw ZeroNormError("pure state has zero norm");
  Eigen::VectorXcd v = psi / n;
  return DensityMatrix(v * v.adjoint());
}

int DensityMatrix::qubits() const { return qubit_count_of_dim(dim()); }

QubitBasis QubitBasis::uniform(BasisKind kind, int n_qubits, double theta) {
  QubitBasis b;
  b.per_qubit.assign(n_qubits, SingleQubitBasis{kind, theta});
  return b;
}

Eigen::Matrix2cd basis_kets(const SingleQubitBasis& b) {
  const double s = 1.0 / std::sqrt(2.0);
  const cd i1(0.0, 1.0);
  Eigen::Matrix2cd u;
  switch (b.kind) {
    case BasisKind::Z:
      u << 1, 0, 0, 1;
      break;
    case BasisKind::X:
      u << s, s, s, -s;
      break;
    case BasisKind::Y:
      u << s, s, i1 * s, -i1 * s;
      break;
    case BasisKind::Rotated: {
      double c = std::cos(b.theta / 2.0), sn = std::sin(b.theta / 2.0);
      u << sn, c, c, -sn;
      break;
    }
  }
  return u;
}

Eigen::VectorXcd dicke(int n_qubits, int excitations) {
  if (n_qubits < 1 || n_qubits > 10 || excitations < 0 ||
      excitations > n_qubits)
    throw SpecError("dicke arguments out of range");
  int dim = 1 << n_qubits;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  double amp = 1.0 / std::sqrt(double(binomial(n_qubits, excitations)));
  for (int idx = 0; idx < dim; ++idx)
    if (std::popcount(unsigned(idx)) == excitations) v(idx) = amp;
  return v;
}

Eigen::VectorXcd psi2(double phi) {
  Eigen::VectorXcd v(4);
  double c = std::cos(phi), s = std::sin(phi);
  const double r2 = std::sqrt(2.0);
  // cos(phi)|Psi+> - sin(phi)|Phi->
  v << -s / r2, c / r2, c / r2, s / r2;
  return v;
}

Eigen::VectorXcd psi4(double phi) {
  double c = std::cos(phi), s = std::sin(phi);
  double w = 1.0 / (2.0 * std::sqrt(6.0));
  double coeff[5] = {3 * s * s * w, -6 * s * c * w,
                     std::sqrt(6.0) * (3 * c * c - 1) * w, 6 * s * c * w,
                     3 * s * s * w};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  for (int m = 0; m <= 4; ++m) v += cd(coeff[m]) * dicke(4, m);
  return v;
}

Eigen::VectorXcd ghz(int n_qubits) {
  int dim = 1 << n_qubits;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

Eigen::VectorXcd reference_state(const std::string& name) {
  auto bell = [](int a, int b, double sign) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(a) = 1.0 / std::sqrt(2.0);
    v(b) = sign / std::sqrt(2.0);
    return v;
  };
  if (name == "D4m2") return dicke(4, 2);
  if (name == "GHZ4") return ghz(4);
  if (name == "W3") return dicke(3, 1);
  if (name == "G3") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    double a = 1.0 / std::sqrt(6.0);
    for (int idx = 1; idx < 7; ++idx)
      v(idx) = std::popcount(unsigned(idx)) == 1 ? a : -a;
    return v;
  }
  if (name == "PhiPlus") return bell(0, 3, 1.0);
  if (name == "PhiMinus") return bell(0, 3, -1.0);
  if (name == "PsiPlus") return bell(1, 2, 1.0);
  if (name == "PsiMinus") return bell(1, 2, -1.0);
  auto digits = [](const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  if (name.size() > 3 && name[0] == 'D') {
    const auto mpos = name.find('m', 1);
    if (mpos != std::string::npos && digits(name.substr(1, mpos - 1)) &&
        digits(name.substr(mpos + 1))) {
      return dicke(std::stoi(name.substr(1, mpos - 1)),
                   std::stoi(name.substr(mpos + 1)));
    }
  }
  if (name.size() > 3 && name.rfind("GHZ", 0) == 0 &&
      digits(name.substr(3))) {
    return ghz(std::stoi(name.substr(3)));
  }
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string head = name.substr(0, colon);
    double phi = 0.0;
    try {
      phi = std::stod(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw SpecError("bad phase in reference state name: " + name);
    }
    if (head == "psi4") return psi4(phi);
    if (head == "psi2") return psi2(phi);
  }
  throw SpecError("unknown reference state: " + name);
}

namespace {

// in-place contraction of one qubit index with a 2x2 matrix
void apply_one_qubit(Eigen::VectorXcd& v, int n, int qubit,
                     const Eigen::Matrix2cd& a) {
  int stride = 1 << (n - 1 - qubit);
  for (int base = 0; base < v.size(); base += 2 * stride) {
    for (int off = 0; off < stride; ++off) {
      cd x0 = v(base + off), x1 = v(base + off + stride);
      v(base + off) = a(0, 0) * x0 + a(0, 1) * x1;
      v(base + off + stride) = a(1, 0) * x0 + a(1, 1) * x1;
    }
  }
}

void check_basis(const QubitBasis& basis, int n) {
  if (static_cast<int>(basis.per_qubit.size()) != n)
    throw SpaceError("basis qubit count mismatch");
}

}  // namespace

Eigen::VectorXcd change_basis(const Eigen::VectorXcd& state,
                              const QubitBasis& basis) {
  int n = qubit_count_of_dim(static_cast<int>(state.size()));
  check_basis(basis, n);
  Eigen::VectorXcd v = state;
  for (int q = 0; q < n; ++q) {
    Eigen::Matrix2cd u = basis_kets(basis.per_qubit[q]).adjoint();
    apply_one_qubit(v, n, q, u);
  }
  return v;
}

DensityMatrix change_basis(const DensityMatrix& rho, const QubitBasis& basis) {
  int n = rho.qubits();
  check_basis(basis, n);
  Eigen::MatrixXcd m = rho.entries();
  for (int q = 0; q < n; ++q) {
    Eigen::Matrix2cd u = basis_kets(basis.per_qubit[q]).adjoint();
    for (int col = 0; col < m.cols(); ++col) {
      Eigen::VectorXcd v = m.col(col);
      apply_one_qubit(v, n, q, u);
      m.col(col) = v;
    }
    Eigen::Matrix2cd uc = u.conjugate();
    for (int row = 0; row < m.rows(); ++row) {
      Eigen::VectorXcd v = m.row(row).transpose();
      apply_one_qubit(v, n, q, uc);
      m.row(row) = v.transpose();
    }
  }
  return DensityMatrix(std::move(m));
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw SpaceError("fidelity dimension mismatch");
  return (a.entries() * b.entries()).trace().real();
}

double fidelity(const DensityMatrix& a, const Eigen::VectorXcd& psi) {
  if (a.dim() != psi.size()) throw SpaceError("fidelity dimension mismatch");
  return (psi.adjoint() * a.entries() * psi)(0).real();
}

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw SpaceError("fidelity dimension mismatch");
  return std::norm(a.dot(b));
}

double purity(const DensityMatrix& rho) {
  return (rho.entries() * rho.entries()).trace().real();
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  int n = rho.qubits();
  if (keep.empty()) throw SpecError("partial_trace keep-set empty");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n)
      throw SpecError("partial_trace qubit out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw SpecError("partial_trace keep-set must be strictly increasing");
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end())
      traced.push_back(q);
  int kd = 1 << keep.size();
  int td = 1 << traced.size();
  auto weave = [&](int kbits, int ebits) {
    int idx = 0;
    for (size_t i = 0; i < keep.size(); ++i)
      idx |= ((kbits >> (keep.size() - 1 - i)) & 1) << (n - 1 - keep[i]);
    for (size_t i = 0; i < traced.size(); ++i)
      idx |= ((ebits >> (traced.size() - 1 - i)) & 1) << (n - 1 - traced[i]);
    return idx;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
  for (int r = 0; r < kd; ++r)
    for (int c = 0; c < kd; ++c)
      for (int e = 0; e < td; ++e)
        out(r, c) += rho.entries()(weave(r, e), weave(c, e));
  return DensityMatrix(std::move(out));
}

namespace {

Eigen::Matrix2cd rz(double t) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(cd(0, -t / 2));
  m(1, 1) = std::exp(cd(0, t / 2));
  return m;
}

Eigen::Matrix2cd ry(double t) {
  Eigen::Matrix2cd m;
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

Eigen::Matrix2cd su2(const double* p) { return rz(p[0]) * ry(p[1]) * rz(p[2]); }

// standard Nelder-Mead minimizer, fixed iteration budget
double nelder_mead(std::function<double(const std::vector<double>&)> f,
                   std::vector<double> x0, double step, double tol,
                   int max_iter) {
  size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  for (size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<size_t> ord(n + 1);
    for (size_t i = 0; i <= n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(),
              [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    if (fv[ord[n]] - fv[ord[0]] < tol) break;
    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i < n; ++i)
      for (size_t d = 0; d < n; ++d) centroid[d] += simplex[ord[i]][d] / n;
    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (size_t d = 0; d < n; ++d)
        p[d] = centroid[d] + t * (centroid[d] - simplex[ord[n]][d]);
      return p;
    };
    auto refl = blend(1.0);
    double fr = f(refl);
    if (fr < fv[ord[0]]) {
      auto exp_p = blend(2.0);
      double fe = f(exp_p);
      simplex[ord[n]] = fe < fr ? exp_p : refl;
      fv[ord[n]] = std::min(fe, fr);
    } else if (fr < fv[ord[n - 1]]) {
      simplex[ord[n]] = refl;
      fv[ord[n]] = fr;
    } else {
      auto con = blend(fr < fv[ord[n]] ? 0.5 : -0.5);
      double fc = f(con);
      if (fc < std::min(fr, fv[ord[n]])) {
        simplex[ord[n]] = con;
        fv[ord[n]] = fc;
      } else {
        for (size_t i = 1; i <= n; ++i) {
          for (size_t d = 0; d < n; ++d)
            simplex[ord[i]][d] =
                0.5 * (simplex[ord[i]][d] + simplex[ord[0]][d]);
          fv[ord[i]] = f(simplex[ord[i]]);
        }
      }
    }
  }
  return *std::min_element(fv.begin(), fv.end());
}

}  // namespace

double max_singlet_fraction(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw SpecError("max_singlet_fraction needs two qubits");
  const double r2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd bell(4, 4);
  bell << r2, r2, 0, 0, 0, 0, r2, r2, 0, 0, r2, -r2, r2, -r2, 0, 0;
  Eigen::MatrixXcd rb = bell.adjoint() * rho.entries() * bell;
  double diag_max = 0.0, off_max = 0.0;
  for (int i = 0; i < 4; ++i) {
    diag_max = std::max(diag_max, rb(i, i).real());
    for (int j = 0; j < 4; ++j)
      if (i != j) off_max = std::max(off_max, std::abs(rb(i, j)));
  }
  if (off_max < 1e-10) return diag_max;

  Eigen::Vector4cd phi_plus;
  phi_plus << r2, 0, 0, r2;
  auto neg_overlap = [&](const std::vector<double>& p) {
    Eigen::Matrix2cd ua = su2(p.data()), ub = su2(p.data() + 3);
    Eigen::Vector4cd psi;
    // (ua x ub) |Phi+>
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        cd acc = 0.0;
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d)
            acc += ua(a, c) * ub(b, d) * phi_plus(2 * c + d);
        psi(2 * a + b) = acc;
      }
    return -(psi.adjoint() * rho.entries() * psi)(0).real();
  };

  const double pi = kPi;
  std::vector<std::vector<double>> starts = {
      {0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, pi},
      {0, 0, 0, 0, pi, pi},
      {0, 0, 0, 0, pi, 0},
  };
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> dist(0.0, 2 * pi);
  for (int k = 0; k < 6; ++k) {
    std::vector<double> p(6);
    for (auto& x : p) x = dist(gen);
    starts.push_back(p);
  }
  double best = -diag_max;
  for (const auto& s : starts)
    best = std::min(best, nelder_mead(neg_overlap, s, 0.6, 1e-10, 2000));
  return -best;
}

double teleport_fidelity(double f_msf, int d) {
  if (f_msf < -1e-12 || f_msf > 1.0 + 1e-12)
    throw SpecError("singlet fraction outside [0,1]");
  if (d < 2) throw SpecError("dimension must be at least 2");
  return (f_msf * d + 1.0) / (d + 1.0);
}

ProjectionResult project_qubit(const Eigen::VectorXcd& state, int qubit,
                               const Eigen::Vector2cd& onto) {
  int n = qubit_count_of_dim(static_cast<int>(state.size()));
  if (qubit < 0 || qubit >= n) throw SpecError("qubit index out of range");
  if (std::abs(onto.norm() - 1.0) > 1e-10)
    throw SpecError("projection ket must be normalized");
  int rdim = 1 << (n - 1);
  int low_mask = (1 << (n - 1 - qubit)) - 1;
  Eigen::VectorXcd res(rdim);
  for (int r = 0; r < rdim; ++r) {
    int high = (r & ~low_mask) << 1;
    int low = r & low_mask;
    int i0 = high | low;
    int i1 = i0 | (1 << (n - 1 - qubit));
    res(r) = std::conj(onto(0)) * state(i0) + std::conj(onto(1)) * state(i1);
  }
  double p = res.squaredNorm();
  ProjectionResult out;
  out.probability = p;
  if (p < 1e-24) return out;
  out.found = true;
  out.state = res / std::sqrt(p);
  return out;
}

}  // namespace dickesim
