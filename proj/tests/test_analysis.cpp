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

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <doctest.h>

#include "dickesim/analysis.hpp"
#include "dickesim/qubits.hpp"

namespace {

using namespace dickesim;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

int pair_index(const FringeCurve& c, const std::string& a,
               const std::string& b) {
  for (size_t i = 0; i < c.pairs.size(); ++i)
    if (c.pairs[i] == DetectorPair{a, b}) return static_cast<int>(i);
  throw std::runtime_error("pair not in curve");
}

SourceModel random_impure(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> gd(0.05, 0.12);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::uniform_int_distribution<int> kd(1, 3);
  SourceModel m;
  m.g = gd(rng);
  m.g1 = 0.5 * gd(rng);
  m.g2 = 0.5 * gd(rng);
  const int k = kd(rng);
  std::vector<double> l(k);
  double sum2 = 0.0;
  for (double& x : l) {
    x = 0.2 + ud(rng);
    sum2 += x * x;
  }
  for (double& x : l) x /= std::sqrt(sum2);
  std::sort(l.begin(), l.end(), std::greater<double>());
  m.schmidt = l;
  return m;
}

// 16-outcome positive distribution as a column for the similarity metric
Eigen::MatrixXd column(const Eigen::VectorXd& v) {
  Eigen::MatrixXd m(v.size(), 1);
  m.col(0) = v;
  return m;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("detector pair catalogue") {
    const auto pairs = all_detector_pairs();
    CHECK(pairs.size() == 28);
    CHECK(pairs.front() == DetectorPair{"A0", "A1"});
    CHECK(pairs.back() == DetectorPair{"D0", "D1"});
    for (size_t i = 0; i < pairs.size(); ++i)
      for (size_t j = i + 1; j < pairs.size(); ++j)
        CHECK(pairs[i] != pairs[j]);
  }

  TEST_CASE("ideal fringes interleave sine and cosine lobes") {
    SourceModel m;
    m.g = 0.1;
    m.g1 = 0.0;
    m.g2 = 0.0;
    const auto grid = linspace(0.0, kPi, 41);
    const FringeCurve curve = rhom_fringe(m, all_detector_pairs(), grid);

    const double peak = m.g * m.g / 16.0;
    const int ab0 = pair_index(curve, "A0", "B0");  // same rail: sin^2
    const int ab1 = pair_index(curve, "A0", "B1");  // crossed: cos^2
    const int aa = pair_index(curve, "A0", "A1");   // same port: cos^2
    CHECK(curve.values[ab0][0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(curve.values[ab0][20] == doctest::Approx(peak).epsilon(1e-10));
    CHECK(curve.values[ab1][0] == doctest::Approx(peak).epsilon(1e-10));
    CHECK(curve.values[ab1][20] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(curve.values[aa][0] == doctest::Approx(peak).epsilon(1e-10));

    for (size_t t = 0; t < grid.size(); ++t) {
      const double s = std::sin(grid[t]);
      CHECK(curve.values[ab0][t] ==
            doctest::Approx(peak * s * s).epsilon(1e-9));
      // complementary lobes add to a flat line
      CHECK(curve.values[ab0][t] + curve.values[ab1][t] ==
            doctest::Approx(peak).epsilon(1e-9));
    }

    // every pair interferes fully
    for (size_t p = 0; p < curve.pairs.size(); ++p)
      CHECK(visibility(curve, static_cast<int>(p)) ==
            doctest::Approx(1.0).epsilon(1e-9));

    // flat uncorrelated baseline: product of per-detector means
    const double single = m.g * m.g / 4.0;
    for (double acc : curve.accidental)
      CHECK(acc == doctest::Approx(single * single).epsilon(1e-10));
  }

  TEST_CASE("fringe input validation") {
    SourceModel m;
    const auto grid = linspace(0.0, kPi, 5);
    CHECK_THROWS_AS(rhom_fringe(m, {{"A0", "A0"}}, grid), SpecError);
    CHECK_THROWS_AS(rhom_fringe(m, {{"A0", "E0"}}, grid), SpecError);
    CHECK_THROWS_AS(rhom_fringe(m, {}, grid), SpecError);
    CHECK_THROWS_AS(rhom_fringe(m, {{"A0", "B0"}}, {}), SpecError);
    CHECK_THROWS_AS(rhom_fringe(m, {{"A0", "B0"}}, {0.0, 0.0}), SpecError);
  }

  TEST_CASE("multi-pair floors depress the sine-lobe visibility") {
    SourceModel m;
    m.g = 0.1;
    const double r2 = 1.0 / std::sqrt(2.0);
    m.schmidt = {r2, r2};
    const auto grid = linspace(0.0, kPi, 21);
    const std::vector<DetectorPair> pairs = {{"A0", "B0"}, {"A0", "B1"}};
    const FringeCurve curve = rhom_fringe(m, pairs, grid, MultiPair::Auto);

    const double vis_same = visibility(curve, 0);
    const double vis_cross = visibility(curve, 1);
    CHECK(vis_same < vis_cross);
    CHECK(vis_cross < 1.0);
    CHECK(vis_same > 0.9);  // floors are two-pair effects, order g^2 smaller

    // excluding the two-pair sector restores unit visibility
    const FringeCurve bare =
        rhom_fringe(m, pairs, grid, MultiPair::Exclude);
    CHECK(visibility(bare, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(visibility(bare, 1) == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("visibility of synthetic curves") {
    FringeCurve c;
    c.phi = linspace(0.0, kPi, 41);
    c.pairs = {{"A0", "B0"}};
    std::vector<double> shifted, flat, spiked;
    for (double p : c.phi) {
      const double s = std::sin(p);
      shifted.push_back(s * s + 0.25);
      flat.push_back(0.5);
      spiked.push_back(0.5);
    }
    spiked[10] = 1.0;

    c.values = {shifted};
    CHECK(visibility(c, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    c.values = {flat};
    CHECK(visibility(c, 0) == doctest::Approx(0.0).epsilon(1e-12));
    c.values = {spiked};
    CHECK(visibility(c, 0, /*raw_extrema=*/true) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(visibility(c, 0) < 0.2);

    CHECK_THROWS_AS(visibility(c, 5), SpecError);
    c.phi = linspace(0.0, kPi / 2.0, 41);
    CHECK_THROWS_AS(visibility(c, 0), SpecError);
  }

  TEST_CASE("accidental enhancement factor") {
    CHECK(accidental_ratio(0.83) == doctest::Approx(1.83).epsilon(1e-15));
    CHECK(accidental_ratio(1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(accidental_ratio(0.0), SpecError);
    CHECK_THROWS_AS(accidental_ratio(1.2), SpecError);
  }

  TEST_CASE("closed-form singles and accidentals") {
    SourceModel m;
    m.g = 0.1;
    m.g1 = 0.06;
    m.g2 = 0.04;
    const AccidentalModel a = accidental_model(m, 0.5, 0.25);
    const double sc = 0.5 * 0.01 + 0.25 * 0.0036 + 0.25 * 0.0016;
    CHECK(a.sc_a == doctest::Approx(0.5 * sc).epsilon(1e-12));
    CHECK(a.sc_b == doctest::Approx(0.25 * sc).epsilon(1e-12));
    CHECK(a.acc_measured == doctest::Approx(a.sc_a * a.sc_b).epsilon(1e-12));
    CHECK(a.acc_psi_min == doctest::Approx(a.acc_measured).epsilon(1e-12));
    CHECK(a.acc_phi_min ==
          doctest::Approx(2.0 * a.acc_measured).epsilon(1e-12));
    CHECK_THROWS_AS(accidental_model(m, 0.0, 1.0), SpecError);
    CHECK_THROWS_AS(accidental_model(m, 1.0, 1.5), SpecError);
  }

  TEST_CASE("brute-force accidentals match the closed form") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 6; ++trial) {
      const SourceModel m = random_impure(rng);
      const AccidentalModel brute = accidental_brute_force(m);
      const AccidentalModel closed = accidental_model(m);

      CHECK(brute.sc_a == doctest::Approx(closed.sc_a).epsilon(1e-9));
      CHECK(brute.sc_b == doctest::Approx(closed.sc_b).epsilon(1e-9));

      const double ratio = brute.acc_phi_min / brute.acc_psi_min;
      const double expect = accidental_ratio(purity(m));
      CHECK(std::abs(ratio / expect - 1.0) < 0.02);
      CHECK(std::abs(brute.acc_psi_min / closed.acc_psi_min - 1.0) < 0.02);
      CHECK(std::abs(brute.acc_phi_min / closed.acc_phi_min - 1.0) < 0.02);
    }
  }

  TEST_CASE("similarity metric properties") {
    Eigen::VectorXd a(4), b(4), c(4);
    a << 0.5, 0.5, 0.0, 0.0;
    b << 0.0, 0.0, 0.7, 0.3;
    c << 0.25, 0.25, 0.25, 0.25;

    CHECK(similarity(column(a), column(a)) == doctest::Approx(1.0));
    CHECK(similarity(column(a), column(b)) == doctest::Approx(0.0));
    CHECK(similarity(column(a), column(c)) ==
          doctest::Approx(similarity(column(c), column(a))).epsilon(1e-14));
    CHECK(similarity(column(2.0 * a), column(c)) ==
          doctest::Approx(similarity(column(a), column(c))).epsilon(1e-12));
    const double s = similarity(column(a), column(c));
    CHECK(s > 0.0);
    CHECK(s <= 1.0);

    Eigen::MatrixXd wrong(2, 2);
    wrong.setConstant(0.25);
    CHECK_THROWS_AS(similarity(column(a), wrong), SpecError);
    Eigen::VectorXd neg(4);
    neg << 0.5, -0.1, 0.3, 0.3;
    CHECK_THROWS_AS(similarity(column(a), column(neg)), SpecError);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
    CHECK_THROWS_AS(similarity(column(a), column(zero)), SpecError);
  }

  TEST_CASE("counting noise keeps similarity near one") {
    // Poisson draws at a few thousand counts per basis state stay within a
    // few 1e-4 of the ideal distribution for both readout bases; the
    // computational-basis pattern, with fewer occupied bins, averages
    // slightly closer to its ideal than the circular one
    const Eigen::VectorXd pz = psi4(0.0).cwiseAbs2();
    const Eigen::VectorXd py =
        change_basis(psi4(0.0), QubitBasis::uniform(BasisKind::Y, 4))
            .cwiseAbs2();
    std::mt19937_64 rng(11);
    const double exposure = 6000.0;
    const int reps = 200;
    double sum_z = 0.0, sum_y = 0.0;
    for (int r = 0; r < reps; ++r) {
      Eigen::VectorXd cz(16), cy(16);
      for (int b = 0; b < 16; ++b) {
        cz(b) = pz(b) > 0.0
                    ? static_cast<double>(std::poisson_distribution<long long>(
                          exposure * pz(b))(rng))
                    : 0.0;
        cy(b) = py(b) > 0.0
                    ? static_cast<double>(std::poisson_distribution<long long>(
                          exposure * py(b))(rng))
                    : 0.0;
      }
      const double sz = similarity(column(cz), column(pz));
      const double sy = similarity(column(cy), column(py));
      CHECK(sz >= 0.92);
      CHECK(sz <= 1.0);
      CHECK(sy >= 0.92);
      CHECK(sy <= 1.0);
      sum_z += sz;
      sum_y += sy;
    }
    CHECK(sum_z / reps > 0.999);
    CHECK(sum_y / reps > 0.999);
    CHECK(sum_y < sum_z);
  }

  TEST_CASE("a white-noise floor lowers the sparser pattern faster") {
    // once the measured distribution carries a uniform background, the
    // basis with more dark bins loses more overlap and the ordering flips
    const Eigen::VectorXd pz = psi4(0.0).cwiseAbs2();
    const Eigen::VectorXd py =
        change_basis(psi4(0.0), QubitBasis::uniform(BasisKind::Y, 4))
            .cwiseAbs2();
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(16, 1.0 / 16.0);
    const Eigen::VectorXd mz = 0.95 * pz + 0.05 * uniform;
    const Eigen::VectorXd my = 0.95 * py + 0.05 * uniform;
    std::mt19937_64 rng(13);
    const double exposure = 6000.0;
    const int reps = 100;
    double sum_z = 0.0, sum_y = 0.0;
    for (int r = 0; r < reps; ++r) {
      Eigen::VectorXd cz(16), cy(16);
      for (int b = 0; b < 16; ++b) {
        cz(b) = static_cast<double>(std::poisson_distribution<long long>(
            exposure * mz(b))(rng));
        cy(b) = static_cast<double>(std::poisson_distribution<long long>(
            exposure * my(b))(rng));
      }
      sum_z += similarity(column(cz), column(pz));
      sum_y += similarity(column(cy), column(py));
    }
    CHECK(sum_z < sum_y);
    CHECK(sum_z / reps > 0.9);
    CHECK(sum_z / reps < 1.0);
  }

  TEST_CASE("rate parameter validation") {
    RateParams ok;
    CHECK_NOTHROW(validate(ok));
    RateParams bad = ok;
    bad.p = 0.0;
    CHECK_THROWS_AS(validate(bad), SpecError);
    bad = ok;
    bad.f = -1.0;
    CHECK_THROWS_AS(validate(bad), SpecError);
    bad = ok;
    bad.eta = {0.5, 0.5};
    CHECK_THROWS_AS(validate(bad), SpecError);  // dark list length mismatch
    bad = ok;
    bad.eta[2] = 1.5;
    CHECK_THROWS_AS(validate(bad), SpecError);
    bad = ok;
    bad.dark[0] = -2.0;
    CHECK_THROWS_AS(validate(bad), SpecError);
  }

  TEST_CASE("twofold forward model") {
    RateParams p;
    p.p = 0.01;
    p.f = 1e8;
    p.eta = {0.5, 0.25, 0.1, 0.1};
    p.dark = {100.0, 0.0, 0.0, 0.0};
    const TwofoldRates r = twofold_from_params(p, 0, 1);
    CHECK(r.sc_s == doctest::Approx(0.01 * 1e8 * 0.5 + 100.0).epsilon(1e-12));
    CHECK(r.sc_i == doctest::Approx(0.01 * 1e8 * 0.25).epsilon(1e-12));
    CHECK(r.cc == doctest::Approx(0.01 * 1e8 * 0.125).epsilon(1e-12));
    CHECK(r.acc == doctest::Approx(r.sc_s * r.sc_i / 1e8).epsilon(1e-12));
    CHECK_THROWS_AS(twofold_from_params(p, 0, 0), SpecError);
    CHECK_THROWS_AS(twofold_from_params(p, 0, 9), SpecError);
  }

  TEST_CASE("heralding efficiency from counted rates") {
    // counted-rate worked example: raw divides by all partner singles, net
    // removes the single-process channels and the accidental floor
    const KlyshkoEfficiency k =
        klyshko(49000.0, 112119.0, 1117.0, 0.0, {50908.0, 16864.0});
    CHECK(k.raw == doctest::Approx(1117.0 / 112119.0).epsilon(1e-12));
    CHECK(k.net == doctest::Approx(1117.0 / 44347.0).epsilon(1e-12));
    CHECK(k.net > 0.024);
    CHECK(k.net < 0.028);

    CHECK_THROWS_AS(klyshko(1.0, 0.0, 1.0, 0.0, {0.0, 0.0}), DataError);
    CHECK_THROWS_AS(klyshko(1.0, 100.0, 1.0, 0.0, {60.0, 40.0}), DataError);
  }

  TEST_CASE("forward rates invert to the port efficiency") {
    RateParams p;
    p.p = 0.003;
    p.f = 5e8;
    p.eta = {0.2, 0.4, 0.3, 0.3};
    const TwofoldRates r = twofold_from_params(p, 0, 1);
    const KlyshkoEfficiency clean =
        klyshko(r.sc_s, r.sc_i, r.cc, 0.0, {0.0, 0.0});
    CHECK(clean.net == doctest::Approx(p.eta[0]).epsilon(1e-12));
    const KlyshkoEfficiency floored =
        klyshko(r.sc_s, r.sc_i, r.cc, r.acc, {0.0, 0.0});
    CHECK(floored.net ==
          doctest::Approx(p.eta[0] * (1.0 - p.p)).epsilon(1e-12));
  }

  TEST_CASE("fourfold projection rate") {
    RateParams p;
    p.p = 0.003;
    p.f = 5e8;
    const double e15 = std::pow(10.0, -1.5);
    const double e16 = std::pow(10.0, -1.6);
    p.eta = {e15, e15, e16, e16};
    const TwofoldRates ab = twofold_from_params(p, 0, 1);
    const TwofoldRates cd = twofold_from_params(p, 2, 3);
    const FourfoldEstimate f = fourfold_rate(p, ab, cd);

    const double per_hour = f.parametric_hz * 3600.0;
    CHECK(per_hour > 200.0);
    CHECK(per_hour < 440.0);
    CHECK(per_hour == doctest::Approx(245.3).epsilon(0.01));
    CHECK(std::abs(f.anchored_hz / f.parametric_hz - 1.0) < 0.1);

    RateParams half = p;
    half.p /= 2.0;
    const FourfoldEstimate q =
        fourfold_rate(half, twofold_from_params(half, 0, 1),
                      twofold_from_params(half, 2, 3));
    CHECK(q.parametric_hz ==
          doctest::Approx(f.parametric_hz / 4.0).epsilon(1e-12));

    RateParams two = p;
    two.eta = {0.5, 0.5};
    two.dark = {0.0, 0.0};
    CHECK_THROWS_AS(fourfold_rate(two, ab, cd), SpecError);
  }

  TEST_CASE("pump overlap curve") {
    const double dnu = 5.5e9;
    const auto grid = linspace(-8e-11, 8e-11, 321);
    const OverlapCurve c = pulse_overlap(grid, dnu);
    CHECK(c.value[160] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*std::max_element(c.value.begin(), c.value.end()) <= 1.0);
    const double t = 1e-11;
    CHECK(c.value[180] ==
          doctest::Approx(std::exp(-2.0 * kPi * dnu * t)).epsilon(1e-9));

    const double fwhm = pulse_overlap_fwhm(dnu);
    CHECK(fwhm * 1e12 > 38.0);
    CHECK(fwhm * 1e12 < 42.0);
    CHECK(pulse_overlap_fwhm(2.0 * dnu) ==
          doctest::Approx(fwhm / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(pulse_overlap(grid, 0.0), SpecError);
    CHECK_THROWS_AS(pulse_overlap_fwhm(-1.0), SpecError);
  }

  TEST_CASE("joint spectrum at the default operating point") {
    JsiConfig cfg;
    cfg.grid = 64;
    const JsiGrid g = jsi(cfg);
    CHECK(g.amplitude.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.signal_ghz.size() == 64);
    CHECK(g.idler_ghz.size() == 64);
    const double expect_lw =
        299792458.0 / (1550.9e-9) / 17700.0 / 1e9;
    CHECK(g.si_linewidth_ghz == doctest::Approx(expect_lw).epsilon(1e-12));
    CHECK(g.pump_bandwidth_ghz > 0.0);

    const double p = schmidt_purity(g);
    CHECK(p == doctest::Approx(0.826743511983).epsilon(1e-6));

    JsiConfig fine = cfg;
    fine.grid = 128;
    CHECK(std::abs(schmidt_purity(jsi(fine)) / p - 1.0) < 0.01);

    JsiConfig tiny = cfg;
    tiny.grid = 32;
    CHECK_THROWS_AS(jsi(tiny), SpecError);
  }

  TEST_CASE("filter linewidth drives the spectral purity") {
    double prev = 0.0;
    for (double q : {8425.0, 16850.0, 33700.0, 67400.0}) {
      JsiConfig cfg;
      cfg.grid = 64;
      cfg.si_q = q;
      const double p = schmidt_purity(jsi(cfg));
      CHECK(p > prev);
      prev = p;
    }
    JsiConfig half;
    half.grid = 64;
    half.si_q = 16850.0;
    const double p_half = schmidt_purity(jsi(half));
    CHECK(p_half > 0.80 - 0.03);
    CHECK(p_half < 0.80 + 0.03);
    JsiConfig full = half;
    full.si_q = 33700.0;
    const double p_full = schmidt_purity(jsi(full));
    CHECK(p_full > 0.93 - 0.02);
    CHECK(p_full < 0.93 + 0.02);
  }

  TEST_CASE("separable spectra have unit purity") {
    JsiGrid g;
    g.signal_ghz = Eigen::VectorXd::LinSpaced(64, -1.0, 1.0);
    g.idler_ghz = g.signal_ghz;
    Eigen::VectorXcd u(64), v(64);
    for (int i = 0; i < 64; ++i) {
      u(i) = cd(std::exp(-0.5 * g.signal_ghz(i) * g.signal_ghz(i)), 0.1);
      v(i) = cd(1.0 / (1.0 + g.idler_ghz(i) * g.idler_ghz(i)), 0.0);
    }
    g.amplitude = u * v.transpose();
    g.amplitude /= g.amplitude.norm();
    CHECK(schmidt_purity(g) == doctest::Approx(1.0).epsilon(1e-10));

    // 64 equal Schmidt weights give 1/64
    Eigen::MatrixXcd flat = Eigen::MatrixXcd::Identity(64, 64);
    JsiGrid d = g;
    d.amplitude = flat / flat.norm();
    CHECK(schmidt_purity(d) == doctest::Approx(1.0 / 64.0).epsilon(1e-10));

    JsiGrid small = g;
    small.amplitude = Eigen::MatrixXcd::Identity(32, 32);
    small.signal_ghz = Eigen::VectorXd::LinSpaced(32, -1.0, 1.0);
    small.idler_ghz = small.signal_ghz;
    CHECK_THROWS_AS(schmidt_purity(small), SpecError);
  }

  TEST_CASE("interferometer loss fit round-trips") {
    std::vector<TransmissionSample> samples;
    const int n = 25;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double p1 = 2.0 * kPi * i / n;
        const double p2 = 2.0 * kPi * j / n;
        samples.push_back({p1, p2, interferometer_model(p1, p2, 1.0, 0.42)});
      }
    }
    const InterferometerFit fit = fit_interferometer(samples);
    CHECK(fit.loss_db == doctest::Approx(0.42).epsilon(1e-6));
    CHECK(fit.scale == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.iterations > 0);

    for (auto& s : samples)
      s.value = interferometer_model(s.phi1, s.phi2, 2.5, 0.0);
    const InterferometerFit lossless = fit_interferometer(samples);
    CHECK(std::abs(lossless.loss_db) < 1e-6);
    CHECK(lossless.scale == doctest::Approx(2.5).epsilon(1e-6));
  }

  TEST_CASE("loss fit input validation") {
    std::vector<TransmissionSample> few(10, {0.0, 0.0, 1.0});
    CHECK_THROWS_AS(fit_interferometer(few), SpecError);

    std::vector<TransmissionSample> narrow;
    for (int i = 0; i < 30; ++i) {
      const double p = kPi * i / 30.0;  // half a period only
      narrow.push_back({p, p, interferometer_model(p, p, 1.0, 0.3)});
    }
    CHECK_THROWS_AS(fit_interferometer(narrow), SpecError);
  }

  TEST_CASE("per-crossing loss slope") {
    const std::vector<double> loss = {0.42, -0.07, 0.08, -0.59};
    const std::vector<double> imbalance = {2.0, 0.0, 0.0, -2.0};
    CHECK(loss_per_cross(loss, imbalance) ==
          doctest::Approx(0.2525).epsilon(1e-12));
    CHECK_THROWS_AS(loss_per_cross({0.1, 0.2}, {1.0, 1.0}), SpecError);
    CHECK_THROWS_AS(loss_per_cross({0.1}, {1.0, 2.0}), SpecError);
  }
}
