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

// Charged field on the truncated Fock space of 2 * mode_count() ladders:
// particles a_n in slots [0, M) and antiparticles b_n in slots [M, 2M), with
// slot n + nMax for mode n.
//
//   Phi(x)    = sum_n c_n (a_n e^{-ipx} + b_n^dagger e^{+ipx}),  c_n = 1/sqrt(2 L w_n)
//
// Its conjugate partner depends on the field class:
//
//   ScalarLike: Phi^dagger(x) = sum_n c_n (a_n^dagger e^{+ipx} + b_n e^{-ipx})
//   DiracLike:  Phibar(x)     = sum_n c_n (a_n^dagger e^{+ipx} - b_n e^{-ipx})
//
// Phibar is the one-component reduction of the Dirac adjoint psi^dagger gamma^0:
// the antiparticle term enters with the opposite sign, which is what turns the
// commutator/anticommutator sign pattern around. With the matching statistics
// [Phi(x), Phibar(y)]_{-+} = c_number_bracket(x - y) on the untruncated space.

#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <vector>

#include "nosig/core/parallel.hpp"
#include "nosig/core/serialize.hpp"
#include "nosig/field/fock.hpp"
#include "nosig/field/model.hpp"

namespace nosig {

inline SparseMatrix sparse_commutator(const SparseMatrix &a, const SparseMatrix &b) {
    return SparseMatrix(a * b) - SparseMatrix(b * a);
}
inline SparseMatrix sparse_anticommutator(const SparseMatrix &a, const SparseMatrix &b) {
    return SparseMatrix(a * b) + SparseMatrix(b * a);
}

/// Commutator for Bose, anticommutator for Fermi.
inline SparseMatrix statistics_bracket(Statistics st, const SparseMatrix &a,
                                       const SparseMatrix &b) {
    return st == Statistics::Bose ? sparse_commutator(a, b) : sparse_anticommutator(a, b);
}

class ChargedField {
  public:
    explicit ChargedField(FieldModel model)
        : model_(validated(std::move(model))),
          space_(2 * model_.mode_count(), model_.per_mode_cutoff(), model_.particleCap,
                 model_.statistics == Statistics::Fermi, model_.fockBudget) {}

    [[nodiscard]] const FieldModel &model() const noexcept { return model_; }
    [[nodiscard]] const FockSpace &space() const noexcept { return space_; }

    [[nodiscard]] std::size_t particle_slot(std::size_t j) const noexcept { return j; }
    [[nodiscard]] std::size_t antiparticle_slot(std::size_t j) const noexcept {
        return model_.mode_count() + j;
    }

    [[nodiscard]] SparseMatrix phi(const SpacetimePoint &p) const {
        SparseMatrix out(dim(), dim());
        for (std::size_t j = 0; j < model_.mode_count(); ++j) {
            const double c = amplitude(j);
            const cplx e = model_.plane_wave(j, p);
            out += (c * e) * space_.lowering(particle_slot(j));
            out += (c * std::conj(e)) * space_.raising(antiparticle_slot(j));
        }
        return out;
    }

    [[nodiscard]] SparseMatrix phi_dagger(const SpacetimePoint &p) const {
        return phi(p).adjoint();
    }

    /// Phibar for DiracLike, Phi^dagger for ScalarLike.
    [[nodiscard]] SparseMatrix phi_partner(const SpacetimePoint &p) const {
        if (model_.fieldClass == FieldClass::ScalarLike) {
            return phi_dagger(p);
        }
        SparseMatrix out(dim(), dim());
        for (std::size_t j = 0; j < model_.mode_count(); ++j) {
            const double c = amplitude(j);
            const cplx e = model_.plane_wave(j, p);
            out += (c * std::conj(e)) * space_.raising(particle_slot(j));
            out -= (c * e) * space_.lowering(antiparticle_slot(j));
        }
        return out;
    }

    /// Local product observable Phi(x) Phi^dagger(x), resp. Phi(x) Phibar(x).
    [[nodiscard]] SparseMatrix product_observable(const SpacetimePoint &p) const {
        return SparseMatrix(phi(p) * phi_partner(p));
    }

  private:
    static FieldModel validated(FieldModel m) {
        m.validate();
        return m;
    }
    [[nodiscard]] Eigen::Index dim() const noexcept {
        return static_cast<Eigen::Index>(space_.dim());
    }
    [[nodiscard]] double amplitude(std::size_t j) const {
        return 1.0 / std::sqrt(2.0 * model_.boxLength * model_.omega(j));
    }

    FieldModel model_;
    FockSpace space_;
};

/**
 * @brief Dense Phi(point) for a ScalarLike model.
 *
 * The Fock dimension is (occupationCutoff + 1)^(2M) for Bose and 2^(2M) for
 * Fermi, reduced by particleCap when set; it must fit model.fockBudget.
 */
inline Operator build_field_operator(const FieldModel &model, const SpacetimePoint &point) {
    NOSIG_REQUIRE(model.fieldClass == FieldClass::ScalarLike,
                  ErrorKind::UnsupportedFieldClass,
                  "build_field_operator supports ScalarLike models only");
    const ChargedField field(model);
    return Operator(Matrix(field.phi(point)));
}

struct BracketScanEntry {
    SpacetimePoint sep;
    IntervalType intervalType = IntervalType::Spacelike;
    cplx deltaPlusForward;
    cplx deltaPlusBackward;
    cplx cNumberBracket;
    /// ||[Phi(sep) Phi'(sep), Phi(0) Phi'(0)]|| below the truncation edge;
    /// empty when the truncation leaves no room for a degree-4 product.
    std::optional<double> operatorBracketNorm;
    /// ||[Phi(sep), Phi'(0)]_{-+} - cNumberBracket * 1|| below the edge.
    std::optional<double> bracketResidual;
};

struct BracketScan {
    FieldModel model;
    std::vector<BracketScanEntry> values;
};

struct ScanOptions {
    bool operatorLevel = true;
    unsigned threads = 1;
};

inline BracketScanEntry c_number_entry(const FieldModel &model, const SpacetimePoint &sep) {
    BracketScanEntry e;
    e.sep = sep;
    e.intervalType = classify_interval(sep);
    e.deltaPlusForward = delta_plus(model, sep);
    e.deltaPlusBackward = delta_plus(model, -sep);
    e.cNumberBracket =
        e.deltaPlusForward +
        static_cast<double>(bracket_sign(model.fieldClass, model.statistics)) *
            e.deltaPlusBackward;
    return e;
}

/// Operator-level quantities at separation sep between the points sep and
/// the origin.
inline void fill_operator_entry(const ChargedField &field, BracketScanEntry &e) {
    const SpacetimePoint origin{0.0, 0.0};
    const Statistics st = field.model().statistics;
    const auto cols2 = field.space().safe_columns(2);
    if (!cols2.empty()) {
        const SparseMatrix br =
            statistics_bracket(st, field.phi(e.sep), field.phi_partner(origin));
        e.bracketResidual = restricted_norm_minus_identity(br, e.cNumberBracket, cols2);
    }
    const auto cols4 = field.space().safe_columns(4);
    if (!cols4.empty()) {
        const SparseMatrix a = field.product_observable(e.sep);
        const SparseMatrix b = field.product_observable(origin);
        e.operatorBracketNorm = restricted_norm(sparse_commutator(a, b), cols4);
    }
}

inline BracketScan operator_bracket_scan(const FieldModel &model,
                                         const std::vector<SpacetimePoint> &grid,
                                         const ScanOptions &opt = {}) {
    model.validate();
    BracketScan scan{model, std::vector<BracketScanEntry>(grid.size())};
    std::optional<ChargedField> field;
    if (opt.operatorLevel) {
        field.emplace(model);
    }
    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        scan.values[i] = c_number_entry(model, grid[i]);
        if (field) {
            fill_operator_entry(*field, scan.values[i]);
        }
    });
    return scan;
}

inline void write_scan_csv(std::ostream &out, const BracketScan &scan) {
    using detail::format_double;
    auto opt = [](const std::optional<double> &v) {
        return v ? format_double(*v) : std::string();
    };
    out << "t,x,intervalType,reDeltaPlusForward,imDeltaPlusForward,"
           "reDeltaPlusBackward,imDeltaPlusBackward,reCNumberBracket,imCNumberBracket,"
           "operatorBracketNorm,bracketResidual\n";
    for (const auto &e : scan.values) {
        out << format_double(e.sep.t) << ',' << format_double(e.sep.x) << ','
            << to_string(e.intervalType) << ',' << format_double(e.deltaPlusForward.real())
            << ',' << format_double(e.deltaPlusForward.imag()) << ','
            << format_double(e.deltaPlusBackward.real()) << ','
            << format_double(e.deltaPlusBackward.imag()) << ','
            << format_double(e.cNumberBracket.real()) << ','
            << format_double(e.cNumberBracket.imag()) << ',' << opt(e.operatorBracketNorm)
            << ',' << opt(e.bracketResidual) << '\n';
    }
}

} // namespace nosig
