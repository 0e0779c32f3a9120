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

#include <array>
#include <cstddef>
#include <vector>

#include "nosig/core/linalg.hpp"

namespace nosig {

inline constexpr double kUnitaryTol = 1e-9;

inline void require_unitary(const Operator &u, const char *where) {
    NOSIG_REQUIRE(is_unitary(u, kUnitaryTol), ErrorKind::NotUnitary,
                  std::string(where) + ": ||U^dagger U - I||_F = " +
                      std::to_string(unitarity_defect(u)));
}

/**
 * @brief Partial matrix elements of a bipartite operator with respect to the
 * canonical basis of the second factor.
 *
 * block(k, l) = (1 (x) <k|) U (1 (x) |l>), an operator on H1, so that
 * U = sum_{k,l} block(k, l) (x) |k><l|.
 */
class BlockDecomposition {
  public:
    BlockDecomposition(BipartiteDims dims, std::vector<Matrix> blocks)
        : dims_(dims), blocks_(std::move(blocks)) {}

    [[nodiscard]] const BipartiteDims &dims() const noexcept { return dims_; }

    [[nodiscard]] const Matrix &block(std::size_t k, std::size_t l) const {
        return blocks_[k * dims_.d2 + l];
    }

    [[nodiscard]] Operator reassemble() const {
        const auto d1 = static_cast<Eigen::Index>(dims_.d1);
        const auto d2 = static_cast<Eigen::Index>(dims_.d2);
        Matrix u(d1 * d2, d1 * d2);
        for (Eigen::Index k = 0; k < d2; ++k) {
            for (Eigen::Index l = 0; l < d2; ++l) {
                const Matrix &b = block(static_cast<std::size_t>(k),
                                        static_cast<std::size_t>(l));
                for (Eigen::Index i = 0; i < d1; ++i) {
                    for (Eigen::Index j = 0; j < d1; ++j) {
                        u(i * d2 + k, j * d2 + l) = b(i, j);
                    }
                }
            }
        }
        return Operator(std::move(u));
    }

  private:
    BipartiteDims dims_;
    std::vector<Matrix> blocks_;
};

/// Unchecked variant; callers that need the unitarity precondition use
/// block_decompose.
inline BlockDecomposition block_decompose_any(const Operator &u,
                                              const BipartiteDims &dims) {
    require_dims(u, dims);
    const auto d1 = static_cast<Eigen::Index>(dims.d1);
    const auto d2 = static_cast<Eigen::Index>(dims.d2);
    std::vector<Matrix> blocks;
    blocks.reserve(dims.d2 * dims.d2);
    for (Eigen::Index k = 0; k < d2; ++k) {
        for (Eigen::Index l = 0; l < d2; ++l) {
            Matrix b(d1, d1);
            for (Eigen::Index i = 0; i < d1; ++i) {
                for (Eigen::Index j = 0; j < d1; ++j) {
                    b(i, j) = u.mat()(i * d2 + k, j * d2 + l);
                }
            }
            blocks.push_back(std::move(b));
        }
    }
    return BlockDecomposition(dims, std::move(blocks));
}

inline BlockDecomposition block_decompose(const Operator &u, const BipartiteDims &dims) {
    require_dims(u, dims);
    require_unitary(u, "block_decompose");
    return block_decompose_any(u, dims);
}

/// Index tuple (k, k', l, l') into the lambda tensor.
using LambdaIndex = std::array<std::size_t, 4>;

/**
 * @brief Dilation coefficients of a block decomposition.
 *
 * value(k,k',l,l')    = tr(B_{k'l'}^dagger B_{kl}) / d1
 * residual(k,k',l,l') = || B_{k'l'}^dagger B_{kl} - value * 1 ||_F
 *
 * All residuals vanish exactly when every block product is a multiple of
 * the identity.
 */
class LambdaTensor {
  public:
    LambdaTensor(BipartiteDims dims, std::vector<cplx> values,
                 std::vector<double> residuals)
        : dims_(dims), values_(std::move(values)), residuals_(std::move(residuals)) {}

    [[nodiscard]] const BipartiteDims &dims() const noexcept { return dims_; }

    [[nodiscard]] std::size_t flat(const LambdaIndex &idx) const noexcept {
        const std::size_t n = dims_.d2;
        return ((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3];
    }

    [[nodiscard]] cplx value(const LambdaIndex &idx) const {
        return values_[flat(idx)];
    }
    [[nodiscard]] double residual(const LambdaIndex &idx) const {
        return residuals_[flat(idx)];
    }

    /// First index (in k, k', l, l' lexicographic order) of the largest residual.
    [[nodiscard]] std::pair<LambdaIndex, double> max_residual() const {
        const std::size_t n = dims_.d2;
        LambdaIndex best{0, 0, 0, 0};
        double bestValue = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t kp = 0; kp < n; ++kp) {
                for (std::size_t l = 0; l < n; ++l) {
                    for (std::size_t lp = 0; lp < n; ++lp) {
                        const LambdaIndex idx{k, kp, l, lp};
                        const double r = residual(idx);
                        if (r > bestValue) {
                            bestValue = r;
                            best = idx;
                        }
                    }
                }
            }
        }
        return {best, bestValue};
    }

  private:
    BipartiteDims dims_;
    std::vector<cplx> values_;
    std::vector<double> residuals_;
};

inline LambdaTensor lambda_tensor(const BlockDecomposition &bd) {
    const std::size_t n = bd.dims().d2;
    const auto d1 = static_cast<Eigen::Index>(bd.dims().d1);
    const Matrix id = Matrix::Identity(d1, d1);
    std::vector<cplx> values(n * n * n * n);
    std::vector<double> residuals(values.size());
    std::size_t flat = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t kp = 0; kp < n; ++kp) {
            for (std::size_t l = 0; l < n; ++l) {
                for (std::size_t lp = 0; lp < n; ++lp, ++flat) {
                    const Matrix prod = bd.block(kp, lp).adjoint() * bd.block(k, l);
                    const cplx lambda = prod.trace() / static_cast<double>(d1);
                    values[flat] = lambda;
                    residuals[flat] = (prod - lambda * id).norm();
                }
            }
        }
    }
    return LambdaTensor(bd.dims(), std::move(values), std::move(residuals));
}

} // namespace nosig
