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

#include "dickesim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace dickesim {

double factorial(int n) {
  if (n < 0) throw SpecError("factorial of negative argument");
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double sqrt_factorial(int n) { return std::sqrt(factorial(n)); }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

FockSpace::FockSpace(std::vector<std::string> mode_names, int max_photons)
    : names_(std::move(mode_names)), max_photons_(max_photons) {
  if (names_.empty()) throw SpecError("FockSpace needs at least one mode");
  if (max_photons_ < 0) throw SpecError("negative photon cap");
}

FockSpace FockSpace::plain(int modes, int max_photons) {
  std::vector<std::string> names;
  names.reserve(modes);
  for (int k = 0; k < modes; ++k) names.push_back("m" + std::to_string(k));
  return FockSpace(std::move(names), max_photons);
}

int FockSpace::index_of(std::string_view name) const {
  for (int k = 0; k < modes(); ++k)
    if (names_[k] == name) return k;
  throw SpecError("unknown mode name: " + std::string(name));
}

int photon_count(const Occupation& occ) {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

FockVector::FockVector(FockSpace space) : space_(std::move(space)) {}

cd FockVector::amplitude(const Occupation& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? cd(0.0) : it->second;
}

void FockVector::add_term(const Occupation& occ, cd amp) {
  if (static_cast<int>(occ.size()) != space_.modes())
    throw SpecError("occupation length does not match mode count");
  int total = 0;
  for (int n : occ) {
    if (n < 0) throw SpecError("negative occupation");
    total += n;
  }
  if (total > space_.max_photons())
    throw TruncationError("occupation exceeds photon cap " +
                          std::to_string(space_.max_photons()));
  auto [it, inserted] = terms_.try_emplace(occ, amp);
  if (!inserted) it->second += amp;
  if (it->second == cd(0.0)) terms_.erase(it);
}

FockVector vacuum_state(const FockSpace& space) {
  FockVector v(space);
  v.add_term(Occupation(space.modes(), 0), 1.0);
  return v;
}

FockVector from_monomial(const FockSpace& space, const Occupation& powers,
                         cd coeff) {
  FockVector v(space);
  double w = 1.0;
  for (int n : powers) {
    if (n < 0) throw SpecError("negative monomial power");
    w *= factorial(n);
  }
  v.add_term(powers, coeff * std::sqrt(w));
  return v;
}

namespace {
void require_same_space(const FockVector& a, const FockVector& b) {
  if (!(a.space() == b.space()))
    throw SpaceError("operands live in different Fock spaces");
}
}  // namespace

cd inner(const FockVector& a, const FockVector& b) {
  require_same_space(a, b);
  const auto& small = a.terms().size() <= b.terms().size() ? a : b;
  const auto& large = a.terms().size() <= b.terms().size() ? b : a;
  cd acc = 0.0;
  for (const auto& [occ, amp] : small.terms()) {
    auto it = large.terms().find(occ);
    if (it == large.terms().end()) continue;
    // <a|b> regardless of which operand drove the loop
    cd amp_a = (&small == &a) ? amp : it->second;
    cd amp_b = (&small == &a) ? it->second : amp;
    acc += std::conj(amp_a) * amp_b;
  }
  return acc;
}

double norm2(const FockVector& v) {
  double acc = 0.0;
  for (const auto& [occ, amp] : v.terms()) acc += std::norm(amp);
  return acc;
}

double norm(const FockVector& v) { return std::sqrt(norm2(v)); }

FockVector scale_add(cd alpha, const FockVector& a, cd beta,
                     const FockVector& b) {
  require_same_space(a, b);
  FockVector out(a.space());
  for (const auto& [occ, amp] : a.terms()) out.add_term(occ, alpha * amp);
  for (const auto& [occ, amp] : b.terms()) out.add_term(occ, beta * amp);
  return out;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
  return scale_add(1.0, a, 1.0, b);
}

FockVector operator-(const FockVector& a, const FockVector& b) {
  return scale_add(1.0, a, -1.0, b);
}

FockVector operator*(cd alpha, const FockVector& v) {
  FockVector out(v.space());
  if (alpha == cd(0.0)) return out;
  for (const auto& [occ, amp] : v.terms()) out.add_term(occ, alpha * amp);
  return out;
}

FockVector normalize(const FockVector& v) {
  double n = norm(v);
  if (n == 0.0) throw ZeroNormError("cannot normalize the zero vector");
  return cd(1.0 / n) * v;
}

PruneResult prune(const FockVector& v, double tol) {
  FockVector out(v.space());
  double discarded = 0.0;
  for (const auto& [occ, amp] : v.terms()) {
    if (std::abs(amp) < tol)
      discarded += std::norm(amp);
    else
      out.add_term(occ, amp);
  }
  return {std::move(out), discarded};
}

FockVector tensor(const FockVector& a, const FockVector& b) {
  std::vector<std::string> names = a.space().mode_names();
  names.insert(names.end(), b.space().mode_names().begin(),
               b.space().mode_names().end());
  FockSpace joint(std::move(names),
                  a.space().max_photons() + b.space().max_photons());
  FockVector out(joint);
  for (const auto& [oa, va] : a.terms()) {
    for (const auto& [ob, vb] : b.terms()) {
      Occupation occ = oa;
      occ.insert(occ.end(), ob.begin(), ob.end());
      out.add_term(occ, va * vb);
    }
  }
  return out;
}

FockVector photon_number_sector(const FockVector& v, int n) {
  FockVector out(v.space());
  for (const auto& [occ, amp] : v.terms())
    if (photon_count(occ) == n) out.add_term(occ, amp);
  return out;
}

FockVector embed(const FockVector& v, const FockSpace& target,
                 const std::vector<int>& mode_map) {
  if (static_cast<int>(mode_map.size()) != v.space().modes())
    throw SpecError("mode map length does not match source mode count");
  for (int m : mode_map)
    if (m < 0 || m >= target.modes())
      throw SpecError("mode map entry outside the target space");
  FockVector out(target);
  for (const auto& [occ, amp] : v.terms()) {
    Occupation t(target.modes(), 0);
    for (size_t k = 0; k < occ.size(); ++k) t[mode_map[k]] += occ[k];
    out.add_term(t, amp);
  }
  return out;
}

FockVector apply_monomial(const FockVector& v, const Occupation& powers,
                          cd coeff) {
  if (static_cast<int>(powers.size()) != v.space().modes())
    throw SpecError("monomial power length does not match mode count");
  FockVector out(v.space());
  for (const auto& [occ, amp] : v.terms()) {
    Occupation t = occ;
    double w = 1.0;
    for (size_t k = 0; k < powers.size(); ++k) {
      // (a^+)^p sqrt-ladder: prod_{j=1..p} sqrt(n+j)
      for (int j = 1; j <= powers[k]; ++j) w *= occ[k] + j;
      t[k] += powers[k];
    }
    out.add_term(t, coeff * amp * std::sqrt(w));
  }
  return out;
}

}  // namespace dickesim
