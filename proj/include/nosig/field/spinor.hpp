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

// Two-component spinor fields in 1+1 dimensions.
//
// Charged (Dirac) field, representation gamma^0 = sigma_z, gamma^1 = i sigma_y,
// one-particle Hamiltonian h(k) = sigma_x k + sigma_z m:
//
//   psi(x) = L^{-1/2} sum_n [ b_n u_+(k_n) e^{-ipx} + d_n^dagger u_-(-k_n) e^{+ipx} ]
//
// with u_+(k), u_-(k) the unit eigenvectors of h(k) for +w and -w. With
// anticommuting ladders
//
//   {psi_a(x), psi_b^dagger(y)} = L^{-1} sum_n e^{ik dx} [P_+ e^{-iw dt} + P_- e^{+iw dt}]_ab
//
// and commuting ladders give the same with -P_-. The mass channel
// tr(S gamma^0) / (2m) of either bracket S is Delta_+(dx) -+ Delta_+(-dx).
//
// Hermitian (Majorana) field, representation gamma^0 = sigma_y,
// h(k) = sigma_z k + sigma_y m, which is purely imaginary in position space:
//
//   chi(x) = L^{-1/2} sum_n [ a_n u_+(k_n) e^{-ipx} + a_n^dagger u_+(k_n)^* e^{+ipx} ]

#pragma once

#include <cmath>
#include <string>

#include "nosig/field/scalar_field.hpp"

namespace nosig {

using Spinor = Eigen::Vector2cd;
using SpinorMatrix = Eigen::Matrix2cd;

namespace detail {

/// w + k without cancellation for k << 0.
inline double omega_plus_k(double w, double k, double m) {
    return k >= 0.0 ? w + k : m * m / (w - k);
}

} // namespace detail

/// Positive-energy eigenvector of sigma_x k + sigma_z m.
inline Spinor dirac_u_plus(double k, double m) {
    const double w = std::sqrt(k * k + m * m);
    const double n = std::sqrt(2.0 * w * (w + m));
    return Spinor((w + m) / n, k / n);
}

/// Negative-energy eigenvector of sigma_x k + sigma_z m.
inline Spinor dirac_u_minus(double k, double m) {
    const double w = std::sqrt(k * k + m * m);
    const double n = std::sqrt(2.0 * w * (w + m));
    return Spinor(-k / n, (w + m) / n);
}

/// Positive-energy eigenvector of sigma_z k + sigma_y m.
inline Spinor majorana_u_plus(double k, double m) {
    const double w = std::sqrt(k * k + m * m);
    const double wk = detail::omega_plus_k(w, k, m);
    const double n = std::sqrt(2.0 * w * wk);
    return Spinor(cplx(wk / n, 0.0), cplx(0.0, m / n));
}

inline SpinorMatrix gamma0_dirac() { return paulis::z().mat(); }
inline SpinorMatrix gamma0_majorana() { return paulis::y().mat(); }

/**
 * @brief Analytic bracket matrix S_ab(dx) of the charged spinor field, the
 * anticommutator for Fermi and the commutator for Bose statistics.
 */
inline SpinorMatrix spinor_c_number(const FieldModel &model, const SpacetimePoint &sep) {
    model.validate();
    const double sign = model.statistics == Statistics::Fermi ? 1.0 : -1.0;
    SpinorMatrix s = SpinorMatrix::Zero();
    for (std::size_t j = 0; j < model.mode_count(); ++j) {
        const double k = model.k(j);
        const double w = model.omega(j);
        const Spinor up = dirac_u_plus(k, model.mass);
        const Spinor um = dirac_u_minus(k, model.mass);
        const cplx space = std::exp(kI * k * sep.x);
        s += space * (std::exp(-kI * w * sep.t) * (up * up.adjoint()) +
                      sign * std::exp(kI * w * sep.t) * (um * um.adjoint()));
    }
    return s / model.boxLength;
}

/// tr(S gamma^0) / (2m)
inline cplx spinor_mass_channel(const FieldModel &model, const SpinorMatrix &s) {
    return (s * gamma0_dirac()).trace() / (2.0 * model.mass);
}

/// Charged spinor field on the Fock space of particles b_n (slots [0, M)) and
/// antiparticles d_n (slots [M, 2M)).
class DiracSpinorField {
  public:
    explicit DiracSpinorField(FieldModel model)
        : model_(validated(std::move(model))),
          space_(2 * model_.mode_count(), model_.per_mode_cutoff(), model_.particleCap,
                 model_.statistics == Statistics::Fermi, model_.fockBudget) {}

    [[nodiscard]] const FieldModel &model() const noexcept { return model_; }
    [[nodiscard]] const FockSpace &space() const noexcept { return space_; }

    [[nodiscard]] SparseMatrix psi(std::size_t a, const SpacetimePoint &p) const {
        NOSIG_REQUIRE(a < 2, ErrorKind::InvalidArgument, "spinor component must be 0 or 1");
        const auto n = static_cast<Eigen::Index>(space_.dim());
        const std::size_t mc = model_.mode_count();
        SparseMatrix out(n, n);
        for (std::size_t j = 0; j < mc; ++j) {
            const double k = model_.k(j);
            const cplx e = model_.plane_wave(j, p);
            const cplx up = dirac_u_plus(k, model_.mass)(static_cast<Eigen::Index>(a));
            const cplx um = dirac_u_minus(-k, model_.mass)(static_cast<Eigen::Index>(a));
            out += (up * e) * space_.lowering(j);
            out += (um * std::conj(e)) * space_.raising(mc + j);
        }
        return out / std::sqrt(model_.boxLength);
    }

    [[nodiscard]] SparseMatrix psi_dagger(std::size_t a, const SpacetimePoint &p) const {
        return psi(a, p).adjoint();
    }

  private:
    static FieldModel validated(FieldModel m) {
        m.validate();
        return m;
    }

    FieldModel model_;
    FockSpace space_;
};

struct SpinorBracket {
    /// Analytic bracket matrix S_ab.
    SpinorMatrix cNumber;
    /// max_ab ||[psi_a(x), psi_b^dagger(y)]_{-+} - S_ab 1|| below the edge.
    double operatorResidual = 0.0;
    /// ||S||_F, the size of the componentwise bracket.
    double componentNorm = 0.0;
    cplx massChannel;
};

inline DiracSpinorField dirac_mode_model(const FieldModel &model) {
    return DiracSpinorField(model);
}

inline SpinorBracket spinor_bracket(const DiracSpinorField &field, const SpacetimePoint &x,
                                    const SpacetimePoint &y) {
    const FieldModel &model = field.model();
    SpinorBracket out;
    out.cNumber = spinor_c_number(model, x - y);
    out.componentNorm = out.cNumber.norm();
    out.massChannel = spinor_mass_channel(model, out.cNumber);
    const auto cols = field.space().safe_columns(2);
    NOSIG_REQUIRE(!cols.empty(), ErrorKind::InvalidArgument,
                  "truncation leaves no room for a two-ladder bracket");
    for (std::size_t a = 0; a < 2; ++a) {
        const SparseMatrix pa = field.psi(a, x);
        for (std::size_t b = 0; b < 2; ++b) {
            const SparseMatrix br =
                statistics_bracket(model.statistics, pa, field.psi_dagger(b, y));
            const double r = restricted_norm_minus_identity(
                br, out.cNumber(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)),
                cols);
            out.operatorResidual = std::max(out.operatorResidual, r);
        }
    }
    return out;
}

/// Hermitian spinor field on the Fock space of the a_n alone.
class MajoranaField {
  public:
    explicit MajoranaField(FieldModel model)
        : model_(validated(std::move(model))),
          space_(model_.mode_count(), 1, model_.particleCap, true, model_.fockBudget) {}

    [[nodiscard]] const FieldModel &model() const noexcept { return model_; }
    [[nodiscard]] const FockSpace &space() const noexcept { return space_; }

    [[nodiscard]] SparseMatrix chi(std::size_t a, const SpacetimePoint &p) const {
        NOSIG_REQUIRE(a < 2, ErrorKind::InvalidArgument, "spinor component must be 0 or 1");
        const auto n = static_cast<Eigen::Index>(space_.dim());
        SparseMatrix out(n, n);
        for (std::size_t j = 0; j < model_.mode_count(); ++j) {
            const cplx e = model_.plane_wave(j, p);
            const cplx u = majorana_u_plus(model_.k(j), model_.mass)(static_cast<Eigen::Index>(a));
            out += (u * e) * space_.lowering(j);
            out += std::conj(u * e) * space_.raising(j);
        }
        return out / std::sqrt(model_.boxLength);
    }

  private:
    static FieldModel validated(FieldModel m) {
        m.validate();
        NOSIG_REQUIRE(m.statistics == Statistics::Fermi, ErrorKind::UnsupportedStatistics,
                      "the Hermitian spinor demo needs Fermi statistics");
        return m;
    }

    FieldModel model_;
    FockSpace space_;
};

enum class Measurability { NotMeasurable, Inconclusive };

inline std::string to_string(Measurability m) {
    return m == Measurability::NotMeasurable ? "NotMeasurable" : "Inconclusive";
}

struct FermionDemoResult {
    double anticommNorm = 0.0;
    double commNorm = 0.0;
    double productNorm = 0.0;
    Measurability verdict = Measurability::Inconclusive;
};

/**
 * @brief Bilinears of a Hermitian Fermi spinor field at two points,
 * contracted with gamma^0:
 *
 *   anti = sum_ab g0_ba {chi_a(x), chi_b(y)}
 *   comm = sum_ab g0_ba [chi_a(x), chi_b(y)]
 *   prod = sum_ab g0_ba chi_a(x) chi_b(y)       (anti + comm = 2 prod)
 *
 * At spacelike separation anti vanishes, so the field cannot also commute
 * with itself there, and anti = 0 with prod != 0 rules out the
 * commutativity a measurable field would need.
 */
inline FermionDemoResult fermion_measurability_demo(const FieldModel &model,
                                                    const SpacetimePoint &x,
                                                    const SpacetimePoint &y,
                                                    double tol = 1e-10) {
    NOSIG_REQUIRE(model.statistics == Statistics::Fermi, ErrorKind::UnsupportedStatistics,
                  "fermion_measurability_demo needs Fermi statistics");
    const MajoranaField field(model);
    const SpinorMatrix g0 = gamma0_majorana();
    const auto n = static_cast<Eigen::Index>(field.space().dim());
    SparseMatrix anti(n, n);
    SparseMatrix comm(n, n);
    SparseMatrix prod(n, n);
    for (std::size_t a = 0; a < 2; ++a) {
        const SparseMatrix ca = field.chi(a, x);
        for (std::size_t b = 0; b < 2; ++b) {
            const cplx g = g0(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
            if (g == cplx(0.0, 0.0)) {
                continue;
            }
            const SparseMatrix cb = field.chi(b, y);
            const SparseMatrix ab = ca * cb;
            const SparseMatrix ba = cb * ca;
            anti += g * (ab + ba);
            comm += g * (ab - ba);
            prod += g * ab;
        }
    }
    const auto cols = field.space().safe_columns(2);
    FermionDemoResult r;
    r.anticommNorm = restricted_norm(anti, cols);
    r.commNorm = restricted_norm(comm, cols);
    r.productNorm = restricted_norm(prod, cols);
    r.verdict = (r.anticommNorm <= tol && r.commNorm > tol && r.productNorm > tol)
                    ? Measurability::NotMeasurable
                    : Measurability::Inconclusive;
    return r;
}

} // namespace nosig
