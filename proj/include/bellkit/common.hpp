// Copyright 2026 The bellkit Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bellkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not match the operation.
struct DimensionError : Error {
  using Error::Error;
};
/// An iterative routine ran out of its iteration budget, or a value that must
/// be real carries a non-negligible imaginary part.
struct NumericalError : Error {
  using Error::Error;
};
/// A state vector or coefficient pair is not normalized.
struct NormalizationError : Error {
  using Error::Error;
};
/// A scalar or vector argument lies outside its documented range.
struct RangeError : Error {
  using Error::Error;
};
/// The operation requires an entangled state but was given a product state.
struct NotEntangledError : Error {
  using Error::Error;
};
/// Bad slice name, resolution, or other configuration value.
struct ConfigError : Error {
  using Error::Error;
};

/// Every numerical threshold used by the library, in one place.
struct Tolerances {
  double normalization = 1e-10;   ///< |sum of squares - 1| for states and (c1, c2)
  double rank = 1e-9;             ///< Schmidt coefficients at or below this count as zero
  double unit_vector = 1e-12;     ///< |n.n - 1| for Bloch vectors
  double hermitian_imag = 1e-12;  ///< imaginary residue allowed on real expectations
  double svd = 1e-10;             ///< SVD reconstruction and orthonormality
  double verdict = 1e-10;         ///< margin above 2 required to flag a violation
  double state_file = 1e-8;       ///< normalization gate for state files read from disk
};

inline constexpr Tolerances kDefaultTol{};

/// SplitMix64 pseudo-random stream (Steele, Lea, Flood 2014).
///
/// Chosen over the <random> engines because every step is fully specified
/// here, so sampled results are reproducible bit-for-bit on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_double_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Seed for sub-stream `stream` of a master seed. Streams for distinct indices
/// are statistically independent and the derivation is platform-invariant.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ ((stream + 1) * 0x9E3779B97F4A7C15ull));
  return g.next();
}

}  // namespace bellkit
