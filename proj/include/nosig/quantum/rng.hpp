// Copyright 2026 The nosig Authors
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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "nosig/core/operator.hpp"

namespace nosig {

/**
 * @brief Platform-independent random stream.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Substream `index` of seed `seed` is the engine seeded through
 * std::seed_seq{seed_lo, seed_hi, index_lo, index_hi, tag}; std::seed_seq's
 * mixing algorithm is also standardized. Normal deviates use Box-Muller on
 * 53-bit uniforms rather than std::normal_distribution, whose algorithm is
 * implementation-defined.
 */
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t index, std::uint32_t tag = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32U),
                          static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32U), tag};
        engine_.seed(seq);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    }

    /// Uniform in (0, 1].
    double uniform_open_zero() { return 1.0 - uniform(); }

    double normal() {
        if (hasSpare_) {
            hasSpare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_open_zero()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        hasSpare_ = true;
        return r * std::cos(theta);
    }

    /// Standard complex Gaussian: real and imaginary parts are N(0, 1/2).
    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return cplx(re, im) * (std::numbers::sqrt2 / 2.0);
    }

    /// Square array of independent standard complex Gaussians.
    Matrix ginibre(std::size_t dim) {
        const auto n = static_cast<Eigen::Index>(dim);
        Matrix g(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                g(r, c) = complex_normal();
            }
        }
        return g;
    }

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

/// Stream tags keep independent uses of the same (seed, index) apart.
namespace stream_tag {
inline constexpr std::uint32_t kDensity = 1;
inline constexpr std::uint32_t kUnitary = 2;
inline constexpr std::uint32_t kHermitian = 3;
inline constexpr std::uint32_t kChannel = 4;
inline constexpr std::uint32_t kShots = 5;
inline constexpr std::uint32_t kPair = 6;
} // namespace stream_tag

} // namespace nosig
