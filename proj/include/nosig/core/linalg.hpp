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

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nosig/core/operator.hpp"

namespace nosig {

inline Operator dagger(const Operator &a) { return Operator(a.mat().adjoint()); }

inline double frobenius_norm(const Operator &a) { return a.mat().norm(); }

/// Largest singular value.
inline double operator_norm(const Matrix &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

inline double operator_norm(const Operator &a) { return operator_norm(a.mat()); }

inline Operator commutator(const Operator &a, const Operator &b) {
    NOSIG_REQUIRE(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
                  "commutator of operators with mismatched dims");
    return Operator(a.mat() * b.mat() - b.mat() * a.mat());
}

inline Operator anticommutator(const Operator &a, const Operator &b) {
    NOSIG_REQUIRE(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
                  "anticommutator of operators with mismatched dims");
    return Operator(a.mat() * b.mat() + b.mat() * a.mat());
}

/// entry[(i*db+k),(j*db+l)] = a[i,j] * b[k,l].
inline Operator tensor_product(const Operator &a, const Operator &b) {
    const auto da = static_cast<Eigen::Index>(a.dim());
    const auto db = static_cast<Eigen::Index>(b.dim());
    Matrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a.mat()(i, j) * b.mat();
        }
    }
    return Operator(std::move(out));
}

inline Operator partial_trace(const Operator &rho, const BipartiteDims &dims,
                              Subsystem over) {
    require_dims(rho, dims);
    const auto d1 = static_cast<Eigen::Index>(dims.d1);
    const auto d2 = static_cast<Eigen::Index>(dims.d2);
    const Matrix &m = rho.mat();
    if (over == Subsystem::First) {
        Matrix out = Matrix::Zero(d2, d2);
        for (Eigen::Index i = 0; i < d1; ++i) {
            out += m.block(i * d2, i * d2, d2, d2);
        }
        return Operator(std::move(out));
    }
    Matrix out(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i) {
        for (Eigen::Index j = 0; j < d1; ++j) {
            out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
        }
    }
    return Operator(std::move(out));
}

inline double hermiticity_defect(const Operator &a) {
    return (a.mat() - a.mat().adjoint()).norm();
}

inline bool is_hermitian(const Operator &a, double relTol = 1e-10) {
    return hermiticity_defect(a) <= relTol * std::max(a.mat().norm(), kZeroTol);
}

/// ||U^dagger U - I||_F
inline double unitarity_defect(const Operator &u) {
    return (u.mat().adjoint() * u.mat() -
            Matrix::Identity(u.mat().rows(), u.mat().cols()))
        .norm();
}

inline bool is_unitary(const Operator &u, double tol = 1e-9) {
    return unitarity_defect(u) <= tol;
}

struct SpectralCluster {
    double eigenvalue = 0.0;
    Operator projector;
    std::size_t rank = 0;
};

/**
 * @brief Spectral projectors of a Hermitian operator.
 *
 * Clusters are sorted by ascending eigenvalue. Eigenvalues closer than the
 * degeneracy tolerance to their neighbour share one cluster, and the cluster
 * eigenvalue is their mean.
 */
struct SpectralDecomposition {
    std::vector<SpectralCluster> clusters;
    std::size_t sourceDim = 0;

    [[nodiscard]] Operator reconstruct() const {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(sourceDim),
                                static_cast<Eigen::Index>(sourceDim));
        for (const auto &c : clusters) {
            m += c.eigenvalue * c.projector.mat();
        }
        return Operator(std::move(m));
    }
};

/// Default merge gap for eigenvalue clustering: 1e-8 * ||a||_op.
inline double default_degeneracy_tol(const Operator &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat(), Eigen::EigenvaluesOnly);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    return 1e-8 * scale;
}

inline SpectralDecomposition
hermitian_spectral(const Operator &a, std::optional<double> degeneracyTol = {}) {
    NOSIG_REQUIRE(is_hermitian(a), ErrorKind::NotHermitian,
                  "hermitian_spectral: ||a - a^dagger||_F = " +
                      std::to_string(hermiticity_defect(a)));
    // Symmetrize so round-off in the input cannot leak into the eigenbasis.
    const Matrix h = 0.5 * (a.mat() + a.mat().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RealVector &evals = es.eigenvalues();
    const Matrix &evecs = es.eigenvectors();
    const double tol = degeneracyTol.value_or(
        1e-8 * evals.cwiseAbs().maxCoeff());

    SpectralDecomposition out;
    out.sourceDim = a.dim();
    const Eigen::Index n = evals.size();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && evals(end) - evals(end - 1) <= tol) {
            ++end;
        }
        const Eigen::Index width = end - start;
        const Matrix basis = evecs.middleCols(start, width);
        SpectralCluster cluster;
        cluster.eigenvalue = evals.segment(start, width).mean();
        cluster.projector = Operator(basis * basis.adjoint());
        cluster.rank = static_cast<std::size_t>(width);
        out.clusters.push_back(std::move(cluster));
        start = end;
    }
    return out;
}

/// exp(-i * h * t) for Hermitian h, through its eigendecomposition.
inline Operator unitary_evolution(const Operator &h, double t) {
    NOSIG_REQUIRE(is_hermitian(h), ErrorKind::NotHermitian,
                  "unitary_evolution needs a Hermitian generator");
    const Matrix sym = 0.5 * (h.mat() + h.mat().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::exp(-kI * es.eigenvalues()(i) * t);
    }
    return Operator(es.eigenvectors() * phases.asDiagonal() *
                    es.eigenvectors().adjoint());
}

/// Conjugation by the swap of the two tensor factors: returns V a V^dagger on
/// H2 (x) H1, where V|i,k> = |k,i>.
inline Operator swap_factors(const Operator &a, const BipartiteDims &dims) {
    require_dims(a, dims);
    const BipartiteDims out = dims.swapped();
    Matrix m(a.mat().rows(), a.mat().cols());
    for (std::size_t i = 0; i < dims.d1; ++i) {
        for (std::size_t k = 0; k < dims.d2; ++k) {
            for (std::size_t j = 0; j < dims.d1; ++j) {
                for (std::size_t l = 0; l < dims.d2; ++l) {
                    m(static_cast<Eigen::Index>(out.index(k, i)),
                      static_cast<Eigen::Index>(out.index(l, j))) =
                        a(dims.index(i, k), dims.index(j, l));
                }
            }
        }
    }
    return Operator(std::move(m));
}

namespace paulis {

inline Operator identity2() { return Operator::identity(2).set_label("I"); }

inline Operator x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(m, "X");
}

inline Operator y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return Operator(m, "Y");
}

inline Operator z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return Operator(m, "Z");
}

inline Operator hadamard() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return Operator(m, "H");
}

/// Control on the first factor, target on the second.
inline Operator cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return Operator(m, "CNOT");
}

inline Operator swap() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
    return Operator(m, "SWAP");
}

/// |Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2).
inline Operator bell_phi_plus() {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return Operator(v * v.adjoint(), "PhiPlus");
}

} // namespace paulis

} // namespace nosig
