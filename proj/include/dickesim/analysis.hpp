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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dickesim/sources.hpp"

namespace dickesim {

using DetectorPair = std::pair<std::string, std::string>;

// all 28 unordered detector pairs of the four-port device (A0..D1)
std::vector<DetectorPair> all_detector_pairs();

struct FringeCurve {
  std::vector<double> phi;  // strictly increasing
  std::vector<DetectorPair> pairs;
  std::vector<std::vector<double>> values;  // [pair][phi], >= 0
  std::vector<double> accidental;           // per-pair flat baseline
};

// Multi-pair emission handling in fringe curves.  Auto keeps the leading
// single-pair order for a spectrally pure single-process model and adds the
// two-pair accidental contribution otherwise.
enum class MultiPair { Auto, Exclude, Include };

// Twofold coincidence probabilities per pump pulse on the four-port device,
// brute-forced from the source model routed through the splitter network.
FringeCurve rhom_fringe(const SourceModel& m,
                        const std::vector<DetectorPair>& pairs,
                        const std::vector<double>& phi_grid,
                        MultiPair multi_pair = MultiPair::Auto);

// (max - min)/(max + min) of the least-squares a cos(2 phi + b) + c fit,
// or of the raw samples when raw_extrema is set; flat curves give 0
double visibility(const FringeCurve& curve, int pair_index = 0,
                  bool raw_extrema = false);

// 1 + purity: accidental enhancement at the minimum of the sin^2 fringes
double accidental_ratio(double source_purity);

struct AccidentalModel {
  double sc_a = 0.0;
  double sc_b = 0.0;
  double acc_measured = 0.0;
  double acc_psi_min = 0.0;
  double acc_phi_min = 0.0;
};

// closed-form singles and accidentals per pulse:
// SC = eta (g^2/2 + g1^2/4 + g2^2/4), ACC = SC_A SC_B,
// minimum-point accidentals ACC and (1 + purity) ACC for the two families
AccidentalModel accidental_model(const SourceModel& m, double eta_a = 1.0,
                                 double eta_b = 1.0);

// Same quantities from the multimode Fock simulation on a two-port network
// at unit efficiency: singles from the one-pair sector, minimum-point
// accidentals from click coincidences in the two-pair sector.
AccidentalModel accidental_brute_force(const SourceModel& m);

// (sum sqrt(g1 g2))^2 / (sum g1 sum g2) over matching non-negative bins
double similarity(const Eigen::MatrixXd& gamma_a, const Eigen::MatrixXd& gamma_b);

struct RateParams {
  double p = 0.003;      // pair probability per pulse
  double f = 5e8;        // repetition rate, Hz
  std::vector<double> eta = {1.0, 1.0, 1.0, 1.0};  // per port
  std::vector<double> dark = {0.0, 0.0, 0.0, 0.0};  // Hz
};

void validate(const RateParams& p);

struct TwofoldRates {
  double sc_s = 0.0;  // Hz
  double sc_i = 0.0;
  double cc = 0.0;
  double acc = 0.0;
};

// forward model: SC = p f eta + dark, CC = p f eta_s eta_i,
// ACC = SC_s SC_i / f
TwofoldRates twofold_from_params(const RateParams& p, int port_s, int port_i);

struct KlyshkoEfficiency {
  double raw = 0.0;
  double net = 0.0;
};

// raw = CC/SC_i; net = (CC - ACC)/(SC_i - breakdown.first - breakdown.second)
// where the breakdown lists the partner channel's two single-process
// contributions
KlyshkoEfficiency klyshko(double sc_s, double sc_i, double cc, double acc,
                          std::pair<double, double> singles_breakdown);

struct FourfoldEstimate {
  double parametric_hz = 0.0;
  double anchored_hz = 0.0;
};

// parametric: 4^4 (3/32) p^2 f eta_A eta_B eta_C eta_D;
// anchored: 4^4 (3/32) (cc_ab - acc_ab)(cc_cd - acc_cd) / f
FourfoldEstimate fourfold_rate(const RateParams& p, const TwofoldRates& ab,
                               const TwofoldRates& cd);

struct OverlapCurve {
  std::vector<double> tau;  // s
  std::vector<double> value;
};

// normalized pump cross-correlation exp(-2 pi dnu |tau|)
OverlapCurve pulse_overlap(const std::vector<double>& tau_grid,
                           double delta_nu_hz);
double pulse_overlap_fwhm(double delta_nu_hz);  // ln 2 / (pi dnu)

struct JsiConfig {
  double pump1_q = 36600.0;
  double pump2_q = 30800.0;
  double pump1_lambda_nm = 1556.5;
  double pump2_lambda_nm = 1544.9;
  double si_q = 17700.0;
  double si_lambda_nm = 1550.9;
  double pump_window_ghz = 40.0;  // flat-top selection per pump line
  int grid = 256;                 // >= 64
  double span_factor = 12.0;      // half-width in max linewidths
};

struct JsiGrid {
  Eigen::VectorXd signal_ghz;  // detuning grids
  Eigen::VectorXd idler_ghz;
  Eigen::MatrixXcd amplitude;  // unit Frobenius norm
  double pump_bandwidth_ghz = 0.0;
  double si_linewidth_ghz = 0.0;  // FWHM
};

// Joint spectral amplitude: energy-matched convolution of the two windowed
// pump resonance Lorentzians times the signal and idler Lorentzians.
JsiGrid jsi(const JsiConfig& cfg);

// sum sigma^4 / (sum sigma^2)^2 over the amplitude's singular values
double schmidt_purity(const JsiGrid& grid);

struct TransmissionSample {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double value = 0.0;
};

struct InterferometerFit {
  double loss_db = 0.0;
  double scale = 1.0;
  double residual = 0.0;  // sum of squared errors
  int iterations = 0;
};

// model value a |10^(-0.1 loss) (e^{i phi1} e^{i phi2} - e^{i phi1})
//               - e^{i phi2} - 1|^2
double interferometer_model(double phi1, double phi2, double scale,
                            double loss_db);

// damped least squares over (scale, loss), multi-start on loss, cap 500
// iterations per start, gradient tolerance 1e-10; throws FitError with the
// best iterate in the message if no start converges
InterferometerFit fit_interferometer(
    const std::vector<TransmissionSample>& samples);

// least-squares slope of fitted loss against crossing imbalance
double loss_per_cross(const std::vector<double>& fitted_loss_db,
                      const std::vector<double>& cross_imbalance);

}  // namespace dickesim
