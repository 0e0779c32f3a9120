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

// Free massive field in a 1+1 dimensional periodic box of length L, natural
// units. Modes k_n = 2 pi n / L for n in [-nMax, nMax], w_n = sqrt(k_n^2 + m^2).
//
//   Delta_+(t, x) = sum_n exp(-i (w_n t - k_n x)) / (2 L w_n)

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

#include "nosig/core/operator.hpp"

namespace nosig {

enum class Statistics { Bose, Fermi };
enum class FieldClass { ScalarLike, DiracLike };
enum class IntervalType { Spacelike, Timelike, Lightlike };

inline std::string to_string(Statistics s) { return s == Statistics::Bose ? "Bose" : "Fermi"; }
inline std::string to_string(FieldClass f) {
    return f == FieldClass::ScalarLike ? "ScalarLike" : "DiracLike";
}
inline std::string to_string(IntervalType t) {
    switch (t) {
    case IntervalType::Spacelike:
        return "Spacelike";
    case IntervalType::Timelike:
        return "Timelike";
    case IntervalType::Lightlike:
        return "Lightlike";
    }
    return "?";
}

inline Statistics parse_statistics(const std::string &s) {
    if (s == "Bose" || s == "bose") {
        return Statistics::Bose;
    }
    if (s == "Fermi" || s == "fermi") {
        return Statistics::Fermi;
    }
    throw Error(ErrorKind::ParseError, "unknown statistics '" + s + "'");
}

inline FieldClass parse_field_class(const std::string &s) {
    if (s == "ScalarLike" || s == "scalar") {
        return FieldClass::ScalarLike;
    }
    if (s == "DiracLike" || s == "dirac") {
        return FieldClass::DiracLike;
    }
    throw Error(ErrorKind::ParseError, "unknown field class '" + s + "'");
}

struct SpacetimePoint {
    double t = 0.0;
    double x = 0.0;

    friend SpacetimePoint operator-(const SpacetimePoint &a, const SpacetimePoint &b) {
        return {a.t - b.t, a.x - b.x};
    }
    friend SpacetimePoint operator-(const SpacetimePoint &a) { return {-a.t, -a.x}; }
};

inline constexpr double kLightconeTol = 1e-12;

inline IntervalType classify_interval(const SpacetimePoint &sep) {
    const double at = std::abs(sep.t);
    const double ax = std::abs(sep.x);
    if (std::abs(at - ax) <= kLightconeTol) {
        return IntervalType::Lightlike;
    }
    return at < ax ? IntervalType::Spacelike : IntervalType::Timelike;
}

struct FieldModel {
    double mass = 1.0;
    double boxLength = 40.0;
    std::size_t nMax = 2;
    Statistics statistics = Statistics::Bose;
    FieldClass fieldClass = FieldClass::ScalarLike;
    /// Per-mode boson truncation; Fermi models always use 1.
    std::size_t occupationCutoff = 2;
    /// Optional cap on the total occupation summed over all ladders.
    std::optional<std::size_t> particleCap;
    /// Largest Fock dimension an operator-level computation may allocate.
    std::size_t fockBudget = 4096;

    void validate() const {
        NOSIG_REQUIRE(mass > 0.0 && std::isfinite(mass), ErrorKind::InvalidArgument,
                      "mass must be positive");
        NOSIG_REQUIRE(boxLength > 0.0 && std::isfinite(boxLength),
                      ErrorKind::InvalidArgument, "box length must be positive");
        NOSIG_REQUIRE(occupationCutoff >= 1, ErrorKind::InvalidArgument,
                      "occupation cutoff must be >= 1");
        NOSIG_REQUIRE(!particleCap || *particleCap >= 1, ErrorKind::InvalidArgument,
                      "particle cap must be >= 1");
    }

    [[nodiscard]] std::size_t mode_count() const noexcept { return 2 * nMax + 1; }

    [[nodiscard]] std::size_t per_mode_cutoff() const noexcept {
        return statistics == Statistics::Fermi ? 1 : occupationCutoff;
    }

    /// n in [-nMax, nMax] for mode slot j in [0, mode_count()).
    [[nodiscard]] long mode_number(std::size_t j) const noexcept {
        return static_cast<long>(j) - static_cast<long>(nMax);
    }

    [[nodiscard]] double k(std::size_t j) const noexcept {
        return 2.0 * std::numbers::pi * static_cast<double>(mode_number(j)) / boxLength;
    }

    [[nodiscard]] double omega(std::size_t j) const noexcept {
        const double kj = k(j);
        return std::sqrt(kj * kj + mass * mass);
    }

    /// exp(-i p.x) = exp(-i (w t - k x)) for mode slot j.
    [[nodiscard]] cplx plane_wave(std::size_t j, const SpacetimePoint &p) const {
        return std::exp(-kI * (omega(j) * p.t - k(j) * p.x));
    }
};

inline cplx delta_plus(const FieldModel &model, const SpacetimePoint &sep) {
    model.validate();
    // Pair +n with -n: both share w_n, so the sum stays symmetric in x
    // bit for bit.
    const double L = model.boxLength;
    cplx sum = 1.0 / (2.0 * L * model.mass) * std::exp(-kI * model.mass * sep.t);
    for (std::size_t n = 1; n <= model.nMax; ++n) {
        const double kn = 2.0 * std::numbers::pi * static_cast<double>(n) / L;
        const double w = std::sqrt(kn * kn + model.mass * model.mass);
        const cplx time = std::exp(-kI * w * sep.t);
        sum += time * (2.0 * std::cos(kn * sep.x)) / (2.0 * L * w);
    }
    return sum;
}

/// Sign s in Delta_+(sep) + s Delta_+(-sep) for the statistics-matched bracket.
inline int bracket_sign(FieldClass fc, Statistics st) {
    const bool scalar = fc == FieldClass::ScalarLike;
    const bool bose = st == Statistics::Bose;
    return scalar == bose ? -1 : +1;
}

inline cplx c_number_bracket(const FieldModel &model, const SpacetimePoint &sep) {
    const cplx fwd = delta_plus(model, sep);
    const cplx bwd = delta_plus(model, -sep);
    return fwd + static_cast<double>(bracket_sign(model.fieldClass, model.statistics)) * bwd;
}

struct BracketTableRow {
    FieldClass fieldClass;
    Statistics statistics;
    const char *bracket;
    const char *formula;
    /// True when the bracket vanishes at spacelike separation.
    bool microcausal;
};

inline std::array<BracketTableRow, 4> bracket_table() {
    return {{
        {FieldClass::ScalarLike, Statistics::Bose, "commutator",
         "Delta_+(x-y) - Delta_+(y-x)", true},
        {FieldClass::ScalarLike, Statistics::Fermi, "anticommutator",
         "Delta_+(x-y) + Delta_+(y-x)", false},
        {FieldClass::DiracLike, Statistics::Fermi, "anticommutator",
         "Delta_+(x-y) - Delta_+(y-x)", true},
        {FieldClass::DiracLike, Statistics::Bose, "commutator",
         "Delta_+(x-y) + Delta_+(y-x)", false},
    }};
}

inline bool is_microcausal(FieldClass fc, Statistics st) {
    return bracket_sign(fc, st) < 0;
}

} // namespace nosig
