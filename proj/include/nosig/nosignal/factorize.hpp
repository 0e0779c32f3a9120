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
#include <variant>
#include <vector>

#include <Eigen/SVD>

#include "nosig/nosignal/criteria.hpp"

namespace nosig {

struct ProductFactors {
    Operator u1;
    Operator u2;
    /// Residual global phase: U = exp(i phase) u1 (x) u2.
    double phase = 0.0;
    double reconstructionError = 0.0;
};

struct NotProductWitness {
    LambdaIndex witness{0, 0, 0, 0};
    double residual = 0.0;
};

struct FactorizationResult {
    std::variant<ProductFactors, NotProductWitness> verdict;

    [[nodiscard]] bool is_product() const noexcept {
        return std::holds_alternative<ProductFactors>(verdict);
    }
    [[nodiscard]] const ProductFactors &product() const {
        return std::get<ProductFactors>(verdict);
    }
    [[nodiscard]] const NotProductWitness &not_product() const {
        return std::get<NotProductWitness>(verdict);
    }
};

namespace detail {

/// Row-major index of the first entry whose magnitude is within a relative
/// 1e-9 of the largest one. The slack keeps the choice stable when several
/// entries tie up to round-off (e.g. a Hadamard).
inline std::pair<Eigen::Index, Eigen::Index> phase_anchor(const Matrix &m) {
    const double peak = m.cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (std::abs(m(r, c)) >= peak * (1.0 - 1e-9)) {
                return {r, c};
            }
        }
    }
    return {0, 0};
}

} // namespace detail

/**
 * @brief Splits U into u1 (x) u2 when U satisfies the block criterion.
 *
 * With blocks B_kl and lambda as in lambda_tensor, the pivot (k0, l0)
 * maximizes lambda_{k0 k0 l0 l0} = ||B_{k0 l0}||_F^2 / d1, then
 *
 *   u1       = B_{k0 l0} / sqrt(lambda_0)
 *   u2[k, l] = tr(u1^dagger B_kl) / d1
 *
 * and the largest entry of u1 is rotated to the positive real axis, the
 * inverse rotation going into u2.
 */
inline FactorizationResult factorize_unitary(const Operator &u, const BipartiteDims &dims,
                                             double tol = kAnalyticTol) {
    require_dims(u, dims);
    const BlockDecomposition bd = block_decompose(u, dims);
    const LambdaTensor lt = lambda_tensor(bd);
    const auto [witness, residual] = lt.max_residual();
    const double threshold = tol * u.mat().norm();
    if (residual > threshold) {
        return {NotProductWitness{witness, residual}};
    }

    std::size_t k0 = 0;
    std::size_t l0 = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < dims.d2; ++k) {
        for (std::size_t l = 0; l < dims.d2; ++l) {
            const double mag = std::abs(lt.value({k, k, l, l}));
            if (mag > best) {
                best = mag;
                k0 = k;
                l0 = l;
            }
        }
    }
    NOSIG_REQUIRE(best > 0.0, ErrorKind::InternalInconsistency,
                  "factorize_unitary: every block of a unitary vanished");

    const double d1 = static_cast<double>(dims.d1);
    const auto n2 = static_cast<Eigen::Index>(dims.d2);
    Matrix u1 = bd.block(k0, l0) / std::sqrt(best);
    Matrix u2(n2, n2);
    for (Eigen::Index k = 0; k < n2; ++k) {
        for (Eigen::Index l = 0; l < n2; ++l) {
            u2(k, l) = (u1.adjoint() * bd.block(static_cast<std::size_t>(k),
                                                static_cast<std::size_t>(l)))
                           .trace() /
                       d1;
        }
    }

    const auto [ar, ac] = detail::phase_anchor(u1);
    const cplx anchor = u1(ar, ac);
    const cplx rot = std::abs(anchor) > 0.0 ? std::conj(anchor) / std::abs(anchor) : 1.0;
    u1 *= rot;
    u2 /= rot;

    Operator f1(std::move(u1));
    Operator f2(std::move(u2));
    const Matrix prod = tensor_product(f1, f2).mat();
    const double phase = std::arg((prod.adjoint() * u.mat()).trace());
    const double err = (u.mat() - std::exp(kI * phase) * prod).norm();

    NOSIG_REQUIRE(err <= threshold && is_unitary(f1, kUnitaryTol) &&
                      is_unitary(f2, kUnitaryTol),
                  ErrorKind::InternalInconsistency,
                  "factorize_unitary: block criterion holds but reconstruction error is " +
                      std::to_string(err));
    return {ProductFactors{std::move(f1), std::move(f2), phase, err}};
}

struct SchmidtRank {
    std::size_t rank = 0;
    std::vector<double> singularValues;
};

/// Operator-Schmidt rank via the realignment
/// M[(i, i'), (k, l)] = u[(i, k), (i', l)].
inline SchmidtRank operator_schmidt_rank(const Operator &u, const BipartiteDims &dims,
                                         double tol = kAnalyticTol) {
    require_dims(u, dims);
    const auto d1 = static_cast<Eigen::Index>(dims.d1);
    const auto d2 = static_cast<Eigen::Index>(dims.d2);
    Matrix m(d1 * d1, d2 * d2);
    for (Eigen::Index i = 0; i < d1; ++i) {
        for (Eigen::Index ip = 0; ip < d1; ++ip) {
            for (Eigen::Index k = 0; k < d2; ++k) {
                for (Eigen::Index l = 0; l < d2; ++l) {
                    m(i * d1 + ip, k * d2 + l) = u.mat()(i * d2 + k, ip * d2 + l);
                }
            }
        }
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    const RealVector &s = svd.singularValues();
    SchmidtRank out;
    out.singularValues.assign(s.data(), s.data() + s.size());
    const double cut = s.size() > 0 ? tol * s(0) : 0.0;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        if (s(j) > cut) {
            ++out.rank;
        }
    }
    return out;
}

} // namespace nosig
