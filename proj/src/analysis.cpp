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

#include "dickesim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dickesim/circuit.hpp"
#include "dickesim/common.hpp"
#include "dickesim/fock.hpp"

namespace dickesim {

namespace {

constexpr double kSpeedOfLight = 299792458.0;  // m/s

// detector label "A0".."D1" -> mode index on the four-port device
int detector_wire(const std::string& label) {
  if (label.size() != 2 || label[0] < 'A' || label[0] > 'D' ||
      (label[1] != '0' && label[1] != '1')) {
    throw SpecError("unknown detector label: " + label);
  }
  return 2 * (label[0] - 'A') + (label[1] - '0');
}

// detected photons at a device wire: Z-family occupation summed over the
// Schmidt slots
int z_count(const TaggedSpace& ts, const Occupation& occ, int wire) {
  int n = 0;
  for (int k = 0; k < ts.schmidt(); ++k) n += occ[ts.mode(wire, 0, k)];
  return n;
}

// sum over state terms of |amp|^2 * n_a * n_b; equals the normally ordered
// click correlation between two distinct detectors within a pair sector
double number_correlation(const TaggedSpace& ts, const FockVector& v, int wa,
                          int wb) {
  double acc = 0.0;
  for (const auto& [occ, amp] : v.terms()) {
    const int na = z_count(ts, occ, wa);
    if (na == 0) continue;
    const int nb = z_count(ts, occ, wb);
    if (nb == 0) continue;
    acc += std::norm(amp) * na * nb;
  }
  return acc;
}

double mean_photons(const TaggedSpace& ts, const FockVector& v, int wire) {
  double acc = 0.0;
  for (const auto& [occ, amp] : v.terms()) {
    const int n = z_count(ts, occ, wire);
    if (n > 0) acc += std::norm(amp) * n;
  }
  return acc;
}

double lin_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw SpecError("degenerate abscissa in slope fit");
  return sxy / sxx;
}

}  // namespace

std::vector<DetectorPair> all_detector_pairs() {
  std::vector<std::string> names;
  for (char port = 'A'; port <= 'D'; ++port)
    for (char rail = '0'; rail <= '1'; ++rail)
      names.push_back(std::string{port, rail});
  std::vector<DetectorPair> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      out.emplace_back(names[i], names[j]);
  return out;
}

FringeCurve rhom_fringe(const SourceModel& m,
                        const std::vector<DetectorPair>& pairs,
                        const std::vector<double>& phi_grid,
                        MultiPair multi_pair) {
  validate(m);
  if (phi_grid.empty()) throw SpecError("empty phase grid");
  for (std::size_t i = 1; i < phi_grid.size(); ++i) {
    if (phi_grid[i] <= phi_grid[i - 1]) {
      throw SpecError("phase grid must be strictly increasing");
    }
  }
  if (pairs.empty()) throw SpecError("no detector pairs requested");
  std::vector<std::pair<int, int>> wires;
  for (const auto& [a, b] : pairs) {
    const int wa = detector_wire(a);
    const int wb = detector_wire(b);
    if (wa == wb) throw SpecError("detector paired with itself: " + a);
    wires.emplace_back(wa, wb);
  }

  const bool impure = m.schmidt.size() > 1 || m.g1 > 0.0 || m.g2 > 0.0;
  const bool two_pair = multi_pair == MultiPair::Include ||
                        (multi_pair == MultiPair::Auto && impure);

  const CircuitSpec device = build_dicke_network(4, true);
  const TaggedSpace ts(device.n_modes, static_cast<int>(m.schmidt.size()),
                       two_pair ? 4 : 2);
  const ModeTransform lifted = compile(lift_to_tagged(device, ts));

  FringeCurve curve;
  curve.phi = phi_grid;
  curve.pairs = pairs;
  curve.values.assign(pairs.size(), std::vector<double>(phi_grid.size(), 0.0));
  curve.accidental.assign(pairs.size(), 0.0);

  SourceModel swept = m;
  swept.max_pairs = two_pair ? 2 : 1;
  for (std::size_t t = 0; t < phi_grid.size(); ++t) {
    swept.phi = phi_grid[t];
    const QuadraticForm form =
        transform_exponent(pair_exponent(swept, ts), lifted);
    const FockVector one = expand_pairs(form, ts.space(), 1, 1);
    FockVector two(ts.space());
    if (two_pair) two = expand_pairs(form, ts.space(), 2, 2);
    for (std::size_t p = 0; p < wires.size(); ++p) {
      double v = number_correlation(ts, one, wires[p].first, wires[p].second);
      if (two_pair) {
        v += number_correlation(ts, two, wires[p].first, wires[p].second);
      }
      curve.values[p][t] = v;
    }
    if (t == 0) {
      // singles are phase independent; the product baseline is the
      // uncorrelated accidental estimate subtracted in the experiment
      for (std::size_t p = 0; p < wires.size(); ++p) {
        curve.accidental[p] = mean_photons(ts, one, wires[p].first) *
                              mean_photons(ts, one, wires[p].second);
      }
    }
  }
  return curve;
}

double visibility(const FringeCurve& curve, int pair_index, bool raw_extrema) {
  if (pair_index < 0 ||
      pair_index >= static_cast<int>(curve.values.size())) {
    throw SpecError("pair index out of range");
  }
  const std::vector<double>& y = curve.values[pair_index];
  if (curve.phi.size() != y.size() || curve.phi.empty()) {
    throw SpecError("malformed fringe curve");
  }
  if (curve.phi.back() - curve.phi.front() < kPi - 1e-9) {
    throw SpecError("fringe must cover a full period");
  }
  if (raw_extrema) {
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double den = *hi + *lo;
    if (den <= 0.0) return 0.0;
    return (*hi - *lo) / den;
  }
  const int n = static_cast<int>(y.size());
  Eigen::MatrixXd basis(n, 3);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    basis(i, 0) = std::cos(2.0 * curve.phi[i]);
    basis(i, 1) = std::sin(2.0 * curve.phi[i]);
    basis(i, 2) = 1.0;
    rhs(i) = y[i];
  }
  const Eigen::Vector3d fit = basis.colPivHouseholderQr().solve(rhs);
  const double amp = std::hypot(fit(0), fit(1));
  if (fit(2) <= 0.0 || amp / fit(2) < 1e-14) return 0.0;
  return amp / fit(2);
}

double accidental_ratio(double source_purity) {
  if (!(source_purity > 0.0) || source_purity > 1.0 + 1e-12) {
    throw SpecError("purity must lie in (0, 1]");
  }
  return 1.0 + source_purity;
}

AccidentalModel accidental_model(const SourceModel& m, double eta_a,
                                 double eta_b) {
  validate(m);
  if (!(eta_a > 0.0) || eta_a > 1.0 || !(eta_b > 0.0) || eta_b > 1.0) {
    throw SpecError("efficiencies must lie in (0, 1]");
  }
  const double sc =
      0.5 * m.g * m.g + 0.25 * m.g1 * m.g1 + 0.25 * m.g2 * m.g2;
  AccidentalModel out;
  out.sc_a = eta_a * sc;
  out.sc_b = eta_b * sc;
  out.acc_measured = out.sc_a * out.sc_b;
  out.acc_psi_min = out.acc_measured;
  out.acc_phi_min = (1.0 + purity(m)) * out.acc_measured;
  return out;
}

AccidentalModel accidental_brute_force(const SourceModel& m) {
  validate(m);
  // Two-port splitter network: detectors A0,A1,B0,B1 on wires 0..3.  The
  // same-rail pair (A0,B0) has its fringe minimum at phi = 0, the crossed
  // pair (A0,B1) at phi = pi/2; the two-pair sector there is the floor.
  const CircuitSpec device = build_dicke_network(2, true);
  const TaggedSpace ts(device.n_modes, static_cast<int>(m.schmidt.size()), 4);
  const ModeTransform lifted = compile(lift_to_tagged(device, ts));

  SourceModel probe = m;
  probe.max_pairs = 2;

  AccidentalModel out;
  probe.phi = 0.0;
  {
    const QuadraticForm form =
        transform_exponent(pair_exponent(probe, ts), lifted);
    const FockVector one = expand_pairs(form, ts.space(), 1, 1);
    const FockVector two = expand_pairs(form, ts.space(), 2, 2);
    out.sc_a = mean_photons(ts, one, 0);
    out.sc_b = mean_photons(ts, one, 2);
    out.acc_measured = out.sc_a * out.sc_b;
    out.acc_phi_min = number_correlation(ts, two, 0, 2);
  }
  probe.phi = 0.5 * kPi;
  {
    const QuadraticForm form =
        transform_exponent(pair_exponent(probe, ts), lifted);
    const FockVector two = expand_pairs(form, ts.space(), 2, 2);
    out.acc_psi_min = number_correlation(ts, two, 0, 3);
  }
  return out;
}

double similarity(const Eigen::MatrixXd& gamma_a,
                  const Eigen::MatrixXd& gamma_b) {
  if (gamma_a.rows() != gamma_b.rows() || gamma_a.cols() != gamma_b.cols()) {
    throw SpecError("distributions must share a support grid");
  }
  if ((gamma_a.array() < 0.0).any() || (gamma_b.array() < 0.0).any()) {
    throw SpecError("distributions must be non-negative");
  }
  const double ta = gamma_a.sum();
  const double tb = gamma_b.sum();
  if (!(ta > 0.0) || !(tb > 0.0)) throw SpecError("zero total mass");
  const double overlap = (gamma_a.array() * gamma_b.array()).sqrt().sum();
  return std::min(1.0, overlap * overlap / (ta * tb));
}

void validate(const RateParams& p) {
  if (!(p.p > 0.0) || p.p >= 1.0) throw SpecError("pair probability outside (0, 1)");
  if (!(p.f > 0.0)) throw SpecError("repetition rate must be positive");
  if (p.eta.empty()) throw SpecError("no port efficiencies");
  if (p.dark.size() != p.eta.size()) {
    throw SpecError("dark-count list must match port count");
  }
  for (double e : p.eta) {
    if (!(e > 0.0) || e > 1.0) throw SpecError("efficiency outside (0, 1]");
  }
  for (double d : p.dark) {
    if (d < 0.0) throw SpecError("negative dark-count rate");
  }
}

TwofoldRates twofold_from_params(const RateParams& p, int port_s, int port_i) {
  validate(p);
  const int n = static_cast<int>(p.eta.size());
  if (port_s < 0 || port_s >= n || port_i < 0 || port_i >= n ||
      port_s == port_i) {
    throw SpecError("invalid port pair");
  }
  TwofoldRates out;
  out.sc_s = p.p * p.f * p.eta[port_s] + p.dark[port_s];
  out.sc_i = p.p * p.f * p.eta[port_i] + p.dark[port_i];
  out.cc = p.p * p.f * p.eta[port_s] * p.eta[port_i];
  out.acc = out.sc_s * out.sc_i / p.f;
  return out;
}

KlyshkoEfficiency klyshko(double sc_s, double sc_i, double cc, double acc,
                          std::pair<double, double> singles_breakdown) {
  if (!(sc_i > 0.0)) throw DataError("non-positive heralding singles");
  KlyshkoEfficiency out;
  out.raw = cc / sc_i;
  const double net_den =
      sc_i - singles_breakdown.first - singles_breakdown.second;
  if (!(net_den > 0.0)) {
    throw DataError("single-process counts exceed the dual-pump channel");
  }
  out.net = (cc - acc) / net_den;
  (void)sc_s;
  return out;
}

FourfoldEstimate fourfold_rate(const RateParams& p, const TwofoldRates& ab,
                               const TwofoldRates& cd) {
  validate(p);
  if (p.eta.size() < 4) throw SpecError("fourfold rate needs four ports");
  const double prefactor = 256.0 * 3.0 / 32.0;  // 4^4 * 3/32
  FourfoldEstimate out;
  out.parametric_hz =
      prefactor * p.p * p.p * p.f * p.eta[0] * p.eta[1] * p.eta[2] * p.eta[3];
  out.anchored_hz = prefactor * (ab.cc - ab.acc) * (cd.cc - cd.acc) / p.f;
  return out;
}

OverlapCurve pulse_overlap(const std::vector<double>& tau_grid,
                           double delta_nu_hz) {
  if (!(delta_nu_hz > 0.0)) throw SpecError("bandwidth must be positive");
  OverlapCurve out;
  out.tau = tau_grid;
  out.value.reserve(tau_grid.size());
  for (double t : tau_grid) {
    out.value.push_back(std::exp(-2.0 * kPi * delta_nu_hz * std::abs(t)));
  }
  return out;
}

double pulse_overlap_fwhm(double delta_nu_hz) {
  if (!(delta_nu_hz > 0.0)) throw SpecError("bandwidth must be positive");
  return std::log(2.0) / (kPi * delta_nu_hz);
}

namespace {

// resonance amplitude with half linewidth h, detuning d (both GHz)
cd lorentz(double d, double h) { return cd(h, 0.0) / cd(h, d); }

// Convolution of the two pump resonance lines over energy conservation,
// each line limited to a flat-top selection window.  d is the total pump
// detuning; integration by composite Simpson on the clipped overlap.
cd pump_envelope(double d, double h1, double h2, double half_window) {
  const double lo = std::max(-half_window, d - half_window);
  const double hi = std::min(half_window, d + half_window);
  if (hi <= lo) return cd(0.0, 0.0);
  const int segments = 1600;  // converged well below the grid resolution
  const double step = (hi - lo) / segments;
  cd acc(0.0, 0.0);
  for (int i = 0; i <= segments; ++i) {
    const double nu = lo + i * step;
    const double w = (i == 0 || i == segments) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * lorentz(nu, h1) * lorentz(d - nu, h2);
  }
  return acc * (step / 3.0);
}

double fwhm_ghz(double lambda_nm, double q) {
  return kSpeedOfLight / (lambda_nm * 1e-9) / q / 1e9;
}

}  // namespace

JsiGrid jsi(const JsiConfig& cfg) {
  if (cfg.grid < 64) throw SpecError("JSI grid must be at least 64 x 64");
  if (!(cfg.pump1_q > 0.0) || !(cfg.pump2_q > 0.0) || !(cfg.si_q > 0.0)) {
    throw SpecError("Q factors must be positive");
  }
  if (!(cfg.pump1_lambda_nm > 0.0) || !(cfg.pump2_lambda_nm > 0.0) ||
      !(cfg.si_lambda_nm > 0.0)) {
    throw SpecError("wavelengths must be positive");
  }
  if (!(cfg.pump_window_ghz > 0.0) || !(cfg.span_factor > 0.0)) {
    throw SpecError("window and span must be positive");
  }
  const double h_p1 = 0.5 * fwhm_ghz(cfg.pump1_lambda_nm, cfg.pump1_q);
  const double h_p2 = 0.5 * fwhm_ghz(cfg.pump2_lambda_nm, cfg.pump2_q);
  const double h_si = 0.5 * fwhm_ghz(cfg.si_lambda_nm, cfg.si_q);

  const double span = cfg.span_factor * std::max(h_si, h_p1 + h_p2);
  const int n = cfg.grid;
  JsiGrid out;
  out.signal_ghz = Eigen::VectorXd::LinSpaced(n, -span, span);
  out.idler_ghz = out.signal_ghz;
  out.pump_bandwidth_ghz = 2.0 * (h_p1 + h_p2);
  out.si_linewidth_ghz = 2.0 * h_si;

  // the sum detuning takes 2n-1 distinct values on the shared uniform grid
  const double step = out.signal_ghz(1) - out.signal_ghz(0);
  std::vector<cd> envelope(2 * n - 1);
  const double half_window = 0.5 * cfg.pump_window_ghz;
  for (int k = 0; k < 2 * n - 1; ++k) {
    envelope[k] = pump_envelope(-2.0 * span + k * step, h_p1, h_p2,
                                half_window);
  }

  out.amplitude.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const cd ls = lorentz(out.signal_ghz(i), h_si);
    for (int j = 0; j < n; ++j) {
      out.amplitude(i, j) = envelope[i + j] * ls * lorentz(out.idler_ghz(j), h_si);
    }
  }
  const double norm = out.amplitude.norm();
  if (!(norm > 0.0)) throw SpecError("empty joint spectrum");
  out.amplitude /= norm;
  return out;
}

double schmidt_purity(const JsiGrid& grid) {
  if (grid.amplitude.rows() < 64 || grid.amplitude.cols() < 64) {
    throw SpecError("JSI grid must be at least 64 x 64");
  }
  const Eigen::MatrixXcd gram = grid.amplitude.adjoint() * grid.amplitude;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      gram, Eigen::EigenvaluesOnly);
  double sum = 0.0, sum2 = 0.0;
  for (double e : solver.eigenvalues()) {
    const double clipped = std::max(e, 0.0);
    sum += clipped;
    sum2 += clipped * clipped;
  }
  if (!(sum > 0.0)) throw SpecError("empty joint spectrum");
  return sum2 / (sum * sum);
}

double interferometer_model(double phi1, double phi2, double scale,
                            double loss_db) {
  const double ell = std::pow(10.0, -0.1 * loss_db);
  const cd e1 = std::polar(1.0, phi1);
  const cd e2 = std::polar(1.0, phi2);
  return scale * std::norm(ell * (e1 * e2 - e1) - e2 - 1.0);
}

namespace {

struct FitWork {
  double scale = 1.0;
  double loss = 0.0;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
};

// residuals and Jacobian of the interferometer model, linear in the scale
FitWork run_levenberg(const std::vector<TransmissionSample>& samples,
                      double loss_guess) {
  constexpr int kMaxIter = 500;
  constexpr double kGtol = 1e-10;
  const int n = static_cast<int>(samples.size());

  auto base_terms = [&](double loss, int i, double* du) {
    // model = scale * (ell^2 u + 2 ell w + v) with ell = 10^(-0.1 loss)
    const double ell = std::pow(10.0, -0.1 * loss);
    const cd e1 = std::polar(1.0, samples[i].phi1);
    const cd e2 = std::polar(1.0, samples[i].phi2);
    const cd u = e1 * (e2 - 1.0);
    const cd v = -e2 - 1.0;
    const double uu = std::norm(u);
    const double uv = (std::conj(u) * v).real();
    const double base = ell * ell * uu + 2.0 * ell * uv + std::norm(v);
    if (du != nullptr) {
      const double dell = -0.1 * std::log(10.0) * ell;
      *du = (2.0 * ell * uu + 2.0 * uv) * dell;
    }
    return base;
  };

  auto seed_scale = [&](double loss) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      const double b = base_terms(loss, i, nullptr);
      num += b * samples[i].value;
      den += b * b;
    }
    return den > 0.0 ? std::max(num / den, 1e-12) : 1.0;
  };

  FitWork w;
  w.loss = loss_guess;
  w.scale = seed_scale(loss_guess);

  auto sse_of = [&](double scale, double loss) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = scale * base_terms(loss, i, nullptr) - samples[i].value;
      s += r * r;
    }
    return s;
  };
  w.sse = sse_of(w.scale, w.loss);

  double mu = 1e-3;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    w.iterations = iter + 1;
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (int i = 0; i < n; ++i) {
      double dbase = 0.0;
      const double b = base_terms(w.loss, i, &dbase);
      const double r = w.scale * b - samples[i].value;
      const Eigen::Vector2d grad(b, w.scale * dbase);
      jtj += grad * grad.transpose();
      jtr += grad * r;
    }
    if (jtr.lpNorm<Eigen::Infinity>() < kGtol) {
      w.converged = true;
      break;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 40 && !stepped; ++attempt) {
      Eigen::Matrix2d damped = jtj;
      damped(0, 0) += mu * std::max(jtj(0, 0), 1e-12);
      damped(1, 1) += mu * std::max(jtj(1, 1), 1e-12);
      const Eigen::Vector2d delta = damped.ldlt().solve(-jtr);
      const double scale = w.scale + delta(0);
      const double loss = w.loss + delta(1);
      const double sse = sse_of(scale, loss);
      if (sse < w.sse) {
        w.scale = scale;
        w.loss = loss;
        w.sse = sse;
        mu = std::max(mu / 3.0, 1e-12);
        stepped = true;
      } else {
        mu *= 3.0;
      }
    }
    if (!stepped) break;  // stuck; gradient check on next pass decides
  }
  return w;
}

}  // namespace

InterferometerFit fit_interferometer(
    const std::vector<TransmissionSample>& samples) {
  if (samples.size() < 20) {
    throw SpecError("need at least 20 transmission samples");
  }
  double lo1 = samples[0].phi1, hi1 = samples[0].phi1;
  double lo2 = samples[0].phi2, hi2 = samples[0].phi2;
  for (const auto& s : samples) {
    lo1 = std::min(lo1, s.phi1);
    hi1 = std::max(hi1, s.phi1);
    lo2 = std::min(lo2, s.phi2);
    hi2 = std::max(hi2, s.phi2);
  }
  if (hi1 - lo1 < 1.5 * kPi || hi2 - lo2 < 1.5 * kPi) {
    throw SpecError("samples must span the full phase plane");
  }

  const double guesses[] = {0.05, 0.2, 0.5, 1.0};
  bool have = false;
  FitWork best;
  int total_iterations = 0;
  for (double g : guesses) {
    const FitWork w = run_levenberg(samples, g);
    total_iterations += w.iterations;
    if (!have || w.sse < best.sse) {
      best = w;
      have = true;
    }
  }
  if (!best.converged) {
    std::ostringstream msg;
    msg << "interferometer fit did not converge; best iterate scale="
        << format_double(best.scale) << " loss_db=" << format_double(best.loss)
        << " sse=" << format_double(best.sse);
    throw FitError(msg.str());
  }
  InterferometerFit out;
  out.loss_db = best.loss;
  out.scale = best.scale;
  out.residual = best.sse;
  out.iterations = total_iterations;
  return out;
}

double loss_per_cross(const std::vector<double>& fitted_loss_db,
                      const std::vector<double>& cross_imbalance) {
  if (fitted_loss_db.size() != cross_imbalance.size() ||
      fitted_loss_db.size() < 2) {
    throw SpecError("need matching loss and crossing lists");
  }
  return lin_slope(cross_imbalance, fitted_loss_db);
}

}  // namespace dickesim
