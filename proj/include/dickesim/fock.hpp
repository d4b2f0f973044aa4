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

#include <map>
#include <string>
#include <vector>

#include "dickesim/common.hpp"

namespace dickesim {

// Mode registry plus a hard cap on the total photon number. Spaces are value
// types; operations between vectors require equal registries and caps.
class FockSpace {
 public:
  FockSpace(std::vector<std::string> mode_names, int max_photons);

  // Anonymous registry m0, m1, ... for circuits that do not care about names.
  static FockSpace plain(int modes, int max_photons);

  int modes() const { return static_cast<int>(names_.size()); }
  int max_photons() const { return max_photons_; }
  const std::vector<std::string>& mode_names() const { return names_; }
  int index_of(std::string_view name) const;  // SpecError if absent

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  std::vector<std::string> names_;
  int max_photons_;
};

// Photon counts per mode, aligned with the space's registry.
using Occupation = std::vector<int>;

int photon_count(const Occupation& occ);

// Sparse ket over number states: occupation -> complex amplitude. The ordered
// map makes iteration and serialization canonical (lexicographic in the
// occupation vector). Values are immutable in spirit: every operation below
// returns a new vector.
class FockVector {
 public:
  explicit FockVector(FockSpace space);

  const FockSpace& space() const { return space_; }
  const std::map<Occupation, cd>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  cd amplitude(const Occupation& occ) const;

  // Accumulates amp onto occ. Throws SpecError on a malformed occupation and
  // TruncationError past the space's photon cap. Exact zeros are dropped.
  void add_term(const Occupation& occ, cd amp);

 private:
  FockSpace space_;
  std::map<Occupation, cd> terms_;
};

FockVector vacuum_state(const FockSpace& space);

// c * prod_k (a_k^+)^{powers_k} |vac> = c * prod_k sqrt(powers_k!) |powers>.
FockVector from_monomial(const FockSpace& space, const Occupation& powers,
                         cd coeff);

// Conjugate-linear in the first argument.
cd inner(const FockVector& a, const FockVector& b);
double norm2(const FockVector& v);
double norm(const FockVector& v);

FockVector scale_add(cd alpha, const FockVector& a, cd beta,
                     const FockVector& b);
FockVector operator+(const FockVector& a, const FockVector& b);
FockVector operator-(const FockVector& a, const FockVector& b);
FockVector operator*(cd alpha, const FockVector& v);

FockVector normalize(const FockVector& v);  // ZeroNormError on zero input

struct PruneResult {
  FockVector state;
  double discarded_weight;  // sum |amp|^2 over removed terms
};
PruneResult prune(const FockVector& v, double tol = kDefaultPruneTol);

// Concatenates registries; photon caps add.
FockVector tensor(const FockVector& a, const FockVector& b);

// Terms with exactly n photons in total.
FockVector photon_number_sector(const FockVector& v, int n);

// Maps mode k of v onto mode_map[k] of the target space; unmapped target
// modes stay empty. Used to drop small source states into circuit registries.
FockVector embed(const FockVector& v, const FockSpace& target,
                 const std::vector<int>& mode_map);

// Applies the creation-operator monomial coeff * prod_k (a_k^+)^{powers_k}.
FockVector apply_monomial(const FockVector& v, const Occupation& powers,
                          cd coeff);

}  // namespace dickesim
