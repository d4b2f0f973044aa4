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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dickesim {

using cd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kDefaultPruneTol = 1e-12;
inline constexpr double kDefaultCrossLossDb = 0.25;
inline constexpr char kVersion[] = "0.1.0";

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A state or operator was used with an incompatible mode registry.
struct SpaceError : Error {
  using Error::Error;
};

// A construction would exceed the photon-number cap of its space.
struct TruncationError : Error {
  using Error::Error;
};

struct ZeroNormError : Error {
  using Error::Error;
};

// Invalid structural input: bad mode index, malformed config, out-of-range
// parameter.
struct SpecError : Error {
  using Error::Error;
};

// Numerically unusable measured data (e.g. non-positive rate denominators).
struct DataError : Error {
  using Error::Error;
};

struct FitError : Error {
  using Error::Error;
};

// Exact in double for n <= 170; photon counts here stay far below that.
double factorial(int n);
double sqrt_factorial(int n);

// Stable 64-bit content hash used for output provenance.
std::uint64_t fnv1a64(std::string_view data);

// Canonical float formatting for CSV output ("%.12g", classic locale).
std::string format_double(double v);

}  // namespace dickesim
