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

#include <cmath>

#include <doctest.h>

#include "dickesim/postselect.hpp"
#include "dickesim/sources.hpp"

namespace {

using namespace dickesim;

PostselectResult run_ports(int n_ports, double phi) {
  const CircuitSpec spec = build_dicke_network(n_ports);
  FockSpace space = FockSpace::plain(spec.n_modes, n_ports);
  const FockVector in =
      ideal_pair_state_on(space, 0, 1, phi, n_ports / 2);
  return postselect(apply(compile(spec), in), spec.ports);
}

}  // namespace

TEST_SUITE("postselect") {
  TEST_CASE("four-port coincidences carry the balanced state") {
    const PostselectResult r = run_ports(4, 0.0);
    CHECK(r.found);
    CHECK(r.pure);
    CHECK(r.probability == doctest::Approx(3.0 / 32.0).epsilon(1e-12));
    CHECK(fidelity(r.state, dicke(4, 2)) >= 1.0 - 1e-10);
    CHECK(r.port_labels == std::vector<std::string>{"A", "B", "C", "D"});

    const PostselectResult tuned = run_ports(4, 0.9);
    CHECK(fidelity(tuned.state, psi4(0.9)) >= 1.0 - 1e-10);
    CHECK(tuned.probability == doctest::Approx(3.0 / 32.0).epsilon(1e-12));
  }

  TEST_CASE("coincidence probability ignores the pump phase") {
    for (double phi : {0.3, 1.1, 1.9, 2.6, 3.1})
      CHECK(run_ports(4, phi).probability ==
            doctest::Approx(3.0 / 32.0).epsilon(1e-12));
  }

  TEST_CASE("two-port coincidences carry the interference pair") {
    const PostselectResult r0 = run_ports(2, 0.0);
    CHECK(r0.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity(r0.state, reference_state("PsiPlus")) >= 1.0 - 1e-10);

    const PostselectResult r1 = run_ports(2, kPi / 2.0);
    CHECK(r1.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity(r1.state, reference_state("PhiMinus")) >= 1.0 - 1e-10);
  }

  TEST_CASE("bunched photons never pass") {
    FockSpace space = FockSpace::plain(4, 2);
    const FockVector bunched = from_monomial(space, {2, 0, 0, 0}, 1.0);
    const PostselectResult r =
        postselect(bunched, build_dicke_network(2).ports);
    CHECK_FALSE(r.found);
    CHECK(r.probability == 0.0);
  }

  TEST_CASE("already-selected states pass whole") {
    FockSpace space = FockSpace::plain(4, 2);
    FockVector v(space);
    const double r2 = 1.0 / std::sqrt(2.0);
    v.add_term({1, 0, 0, 1}, r2);
    v.add_term({0, 1, 1, 0}, r2);
    PortMap ports = {Port("A", 0, 1), Port("B", 2, 3)};
    const PostselectResult r = postselect(v, ports);
    CHECK(r.found);
    CHECK(r.pure);
    CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(r.state, reference_state("PsiPlus")) >= 1.0 - 1e-10);

    // qubit order follows labels, not list position
    PortMap reversed = {Port("B", 2, 3), Port("A", 0, 1)};
    const PostselectResult rr = postselect(v, reversed);
    CHECK(fidelity(rr.state, reference_state("PsiPlus")) >= 1.0 - 1e-10);
  }

  TEST_CASE("calibration phase rotates a single port") {
    FockSpace space = FockSpace::plain(4, 2);
    FockVector v(space);
    const double r2 = 1.0 / std::sqrt(2.0);
    v.add_term({1, 0, 0, 1}, r2);
    v.add_term({0, 1, 1, 0}, r2);
    PortMap ports = {Port("A", 0, 1), Port("B", 2, 3, kPi)};
    const PostselectResult r = postselect(v, ports);
    CHECK(fidelity(r.state, reference_state("PsiMinus")) >= 1.0 - 1e-10);
  }

  TEST_CASE("routing single-rail packets through the bare tree") {
    for (int n : {2, 4}) {
      for (int m = 0; m <= n; ++m) {
        const PostselectResult r = dicke_projection_check(m, n);
        CHECK(r.found);
        CHECK(r.pure);
        CHECK(r.probability ==
              doctest::Approx(max_efficiency(n)).epsilon(1e-12));
        CHECK(fidelity(r.state, dicke(n, m)) >= 1.0 - 1e-10);
      }
    }
  }

  TEST_CASE("coincidence ceiling") {
    CHECK(max_efficiency(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(max_efficiency(4) == doctest::Approx(3.0 / 32.0).epsilon(1e-15));
    CHECK(max_efficiency(8) ==
          doctest::Approx(40320.0 / 16777216.0).epsilon(1e-14));
    for (int n = 2; n <= 12; ++n) {
      long double expect = 1.0L;
      for (int k = 1; k <= n; ++k) expect *= static_cast<long double>(k) / n;
      CHECK(max_efficiency(n) ==
            doctest::Approx(static_cast<double>(expect)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(max_efficiency(1), SpecError);
  }

  TEST_CASE("undetected partners mix the survivors") {
    SourceModel m;
    m.g = 0.1;
    m.g1 = 0.05;
    m.max_pairs = 2;
    const CircuitSpec plain = build_dicke_network(2);
    const TaggedSpace tagged(plain.n_modes, 1, 2 * m.max_pairs);
    const CircuitSpec lifted = lift_to_tagged(plain, tagged);
    const QuadraticForm form =
        transform_exponent(pair_exponent(m, tagged), compile(lifted));
    const FockVector out =
        expand_pairs(form, tagged.space(), 0, m.max_pairs);
    const PostselectResult r = postselect(out, lifted.ports);
    CHECK(r.found);
    CHECK_FALSE(r.pure);
    CHECK(r.rho.valid());
    CHECK(purity(r.rho) < 1.0 - 1e-6);
    CHECK(r.probability > 0.0);
    CHECK(r.probability < 1.0);
  }
}
