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

#include "dickesim/sources.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace dickesim {

void validate(const SourceModel& m) {
  if (m.schmidt.empty()) throw SpecError("Schmidt list empty");
  double sum2 = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double l : m.schmidt) {
    if (l <= 0.0) throw SpecError("Schmidt weights must be positive");
    if (l > prev + 1e-12)
      throw SpecError("Schmidt weights must be non-increasing");
    prev = l;
    sum2 += l * l;
  }
  if (std::abs(sum2 - 1.0) > 1e-10)
    throw SpecError("Schmidt weights must satisfy sum lambda^2 = 1");
  if (m.g < 0.0 || m.g1 < 0.0 || m.g2 < 0.0)
    throw SpecError("process strengths must be non-negative");
  if (m.max_pairs < 1) throw SpecError("max_pairs must be at least 1");
}

double purity(const SourceModel& m) {
  validate(m);
  double s = 0.0;
  for (double l : m.schmidt) s += l * l * l * l;
  return s;
}

FockVector ideal_pair_state_on(const FockSpace& space, int mode0, int mode1,
                               double phi, int order) {
  if (order < 1) throw SpecError("pair order must be at least 1");
  FockVector v(space);
  const cd ph = std::exp(cd(0.0, 2.0 * phi));
  double binom = 1.0;
  for (int a = order; a >= 0; --a) {
    // binom = C(order, a)
    Occupation occ(space.modes(), 0);
    occ[mode0] = 2 * a;
    occ[mode1] = 2 * (order - a);
    v.add_term(occ, binom * std::pow(ph, order - a) *
                        sqrt_factorial(2 * a) *
                        sqrt_factorial(2 * (order - a)));
    binom = binom * a / (order - a + 1);
  }
  return normalize(v);
}

FockVector ideal_pair_state(double phi, int order) {
  FockSpace space({"z0", "z1"}, 2 * order);
  return ideal_pair_state_on(space, 0, 1, phi, order);
}

TaggedSpace::TaggedSpace(int wires, int schmidt, int max_photons)
    : wires_(wires),
      schmidt_(schmidt),
      space_(FockSpace::plain(1, 0)) {
  if (wires < 2) throw SpecError("tagged registry needs at least two wires");
  if (schmidt < 1) throw SpecError("tagged registry needs a Schmidt slot");
  static const char* family_tag[3] = {"Z", "U", "V"};
  std::vector<std::string> names;
  names.reserve(modes());
  for (int w = 0; w < wires; ++w)
    for (int f = 0; f < 3; ++f)
      for (int k = 0; k < schmidt; ++k)
        names.push_back("w" + std::to_string(w) + "." + family_tag[f] + "." +
                        std::to_string(k));
  space_ = FockSpace(std::move(names), max_photons);
}

int TaggedSpace::mode(int wire, int family, int k) const {
  if (wire < 0 || wire >= wires_ || family < 0 || family > 2 || k < 0 ||
      k >= schmidt_)
    throw SpecError("tagged mode out of range");
  return (wire * 3 + family) * schmidt_ + k;
}

std::vector<int> TaggedSpace::z_modes(int wire) const {
  std::vector<int> out;
  for (int k = 0; k < schmidt_; ++k) out.push_back(mode(wire, 0, k));
  return out;
}

QuadraticForm pair_exponent(const SourceModel& m, const TaggedSpace& tagged) {
  validate(m);
  if (tagged.schmidt() < static_cast<int>(m.schmidt.size()))
    throw SpecError("registry has fewer Schmidt slots than the model");
  QuadraticForm form;
  const cd ph = std::exp(cd(0.0, 2.0 * m.phi));
  const double r2 = 1.0 / std::sqrt(2.0);
  auto add = [&](int ma, int mb, cd coeff) {
    if (std::abs(coeff) == 0.0) return;
    Occupation occ(tagged.modes(), 0);
    occ[ma] += 1;
    occ[mb] += 1;
    form.emplace_back(std::move(occ), coeff);
  };
  for (size_t i = 0; i < m.schmidt.size(); ++i) {
    const double l = m.schmidt[i];
    const int k = static_cast<int>(i);
    add(tagged.mode(0, 0, k), tagged.mode(0, 0, k), l * m.g / 2.0);
    add(tagged.mode(1, 0, k), tagged.mode(1, 0, k), l * m.g / 2.0 * ph);
    add(tagged.mode(0, 0, k), tagged.mode(0, 1, k), l * m.g1 * r2);
    add(tagged.mode(1, 0, k), tagged.mode(1, 1, k), l * m.g1 * r2 * ph);
    add(tagged.mode(0, 0, k), tagged.mode(0, 2, k), l * m.g2 * r2);
    add(tagged.mode(1, 0, k), tagged.mode(1, 2, k), l * m.g2 * r2 * ph);
  }
  return form;
}

QuadraticForm transform_exponent(const QuadraticForm& form,
                                 const ModeTransform& t) {
  const int m = t.modes();
  std::vector<std::vector<std::pair<int, cd>>> cols(m);
  for (int k = 0; k < m; ++k) {
    double col_max = 0.0;
    for (int j = 0; j < m; ++j)
      col_max = std::max(col_max, std::abs(t.matrix(j, k)));
    for (int j = 0; j < m; ++j)
      if (std::abs(t.matrix(j, k)) > 1e-15 * col_max)
        cols[k].emplace_back(j, t.matrix(j, k));
  }
  std::map<Occupation, cd> acc;
  for (const auto& [occ, coeff] : form) {
    if (static_cast<int>(occ.size()) != m)
      throw SpaceError("exponent/transform mode count mismatch");
    int a = -1, b = -1;
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < occ[j]; ++c) (a < 0 ? a : b) = j;
    }
    if (b < 0) throw SpecError("exponent term is not quadratic");
    for (const auto& [ja, ua] : cols[a])
      for (const auto& [jb, ub] : cols[b]) {
        Occupation no(m, 0);
        ++no[ja];
        ++no[jb];
        acc[no] += coeff * ua * ub;
      }
  }
  QuadraticForm out;
  for (auto& [occ, c] : acc)
    if (std::abs(c) > 0.0) out.emplace_back(occ, c);
  return out;
}

namespace {

FockVector apply_form(const QuadraticForm& form, const FockVector& v) {
  FockVector out(v.space());
  for (const auto& [powers, coeff] : form)
    out = out + apply_monomial(v, powers, coeff);
  return out;
}

}  // namespace

FockVector expand_pairs(const QuadraticForm& form, const FockSpace& space,
                        int min_pairs, int max_pairs) {
  if (min_pairs < 0 || max_pairs < min_pairs)
    throw SpecError("invalid pair-order window");
  if (space.max_photons() < 2 * max_pairs)
    throw TruncationError("space cannot hold the requested pair order");
  FockVector acc(space);
  FockVector cur = vacuum_state(space);
  if (min_pairs == 0) acc = cur;
  for (int k = 1; k <= max_pairs; ++k) {
    cur = cd(1.0 / k) * apply_form(form, cur);
    if (k >= min_pairs) acc = acc + cur;
  }
  return acc;
}

FockVector impure_joint_state(const SourceModel& m, int min_pairs,
                              int max_pairs) {
  validate(m);
  if (max_pairs < 0) max_pairs = m.max_pairs;
  TaggedSpace tagged(2, static_cast<int>(m.schmidt.size()), 2 * max_pairs);
  CircuitSpec rhom;
  rhom.n_modes = 2;
  rhom.elements.push_back(mmi(0, 1));
  ModeTransform t = compile(lift_to_tagged(rhom, tagged));
  QuadraticForm post = transform_exponent(pair_exponent(m, tagged), t);
  return expand_pairs(post, tagged.space(), min_pairs, max_pairs);
}

double truncation_weight(const SourceModel& m) {
  validate(m);
  const int order = m.max_pairs + 1;
  TaggedSpace tagged(2, static_cast<int>(m.schmidt.size()), 2 * order);
  QuadraticForm pre = pair_exponent(m, tagged);
  return norm2(expand_pairs(pre, tagged.space(), order, order));
}

CircuitSpec lift_to_tagged(const CircuitSpec& plain,
                           const TaggedSpace& tagged) {
  validate(plain);
  if (plain.n_modes > tagged.wires())
    throw SpecError("registry has fewer wires than the circuit");
  CircuitSpec out;
  out.n_modes = tagged.modes();
  for (const auto& e : plain.elements) {
    for (int f = 0; f < 3; ++f) {
      for (int k = 0; k < tagged.schmidt(); ++k) {
        CircuitElement le = e;
        le.mode_a = tagged.mode(e.mode_a, f, k);
        if (e.mode_b >= 0) le.mode_b = tagged.mode(e.mode_b, f, k);
        out.elements.push_back(le);
      }
    }
  }
  for (const auto& p : plain.ports) {
    if (p.rail0.size() != 1 || p.rail1.size() != 1)
      throw SpecError("can only lift single-mode rails");
    out.ports.emplace_back(p.label, tagged.z_modes(p.rail0[0]),
                           tagged.z_modes(p.rail1[0]), p.cal_phase);
  }
  validate(out);
  return out;
}

}  // namespace dickesim
