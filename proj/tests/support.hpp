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


// Test-only helpers: naive reference implementations used as oracles.

#pragma once

#include <complex>
#include <cstdint>

#include "nosig/nosig.hpp"

namespace nosig::testing {

/// Arbitrary (non-Hermitian) complex matrix from substream `index`.
inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                            std::uint64_t index = 0) {
    RandomStream rng(seed, index, 99);
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) = rng.complex_normal();
        }
    }
    return m;
}

/// Kronecker product by the textbook index formula.
inline Matrix naive_kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

/// tr_1 by explicit summation over the first index.
inline Matrix naive_trace_first(const Matrix &rho, std::size_t d1, std::size_t d2) {
    const auto n2 = static_cast<Eigen::Index>(d2);
    Matrix out = Matrix::Zero(n2, n2);
    for (std::size_t i = 0; i < d1; ++i) {
        const auto off = static_cast<Eigen::Index>(i) * n2;
        out += rho.block(off, off, n2, n2);
    }
    return out;
}

/// Bob's marginal after U, with Alice's Lueders measurement of `obs` applied
/// first when `measure` is set. Projectors come from a fresh eigensolver.
inline Matrix reference_bob_marginal(const Matrix &u, const Matrix &rho, const Matrix &obs,
                                     std::size_t d1, std::size_t d2, bool measure) {
    Matrix state = rho;
    if (measure) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(obs);
        Matrix after = Matrix::Zero(rho.rows(), rho.cols());
        const Matrix id2 = Matrix::Identity(static_cast<Eigen::Index>(d2),
                                            static_cast<Eigen::Index>(d2));
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            const Vector v = es.eigenvectors().col(j);
            const Matrix p = naive_kron(v * v.adjoint(), id2);
            after += p * rho * p;
        }
        state = after;
    }
    return naive_trace_first(u * state * u.adjoint(), d1, d2);
}

inline Matrix haar_product(std::size_t d1, std::size_t d2, std::uint64_t seed,
                           std::uint64_t index) {
    return naive_kron(random_unitary(d1, seed, 2 * index).mat(),
                      random_unitary(d2, seed, 2 * index + 1).mat());
}

} // namespace nosig::testing
