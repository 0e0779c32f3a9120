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

#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "nosig/core/error.hpp"

namespace nosig {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Absolute tolerance for quantities that are exactly zero analytically.
inline constexpr double kZeroTol = 1e-12;

/**
 * @brief Dense square complex matrix acting on a finite-dimensional Hilbert
 * space.
 *
 * Thin value wrapper around an Eigen matrix that enforces squareness and a
 * nonzero dimension. Arithmetic goes through `mat()`.
 */
class Operator {
  public:
    Operator() : m_(Matrix::Identity(1, 1)) {}

    explicit Operator(Matrix m, std::string label = {})
        : m_(std::move(m)), label_(std::move(label)) {
        NOSIG_REQUIRE(m_.rows() == m_.cols(), ErrorKind::DimensionMismatch,
                      "operator must be square, got " +
                          std::to_string(m_.rows()) + "x" +
                          std::to_string(m_.cols()));
        NOSIG_REQUIRE(m_.rows() >= 1, ErrorKind::DimensionMismatch,
                      "operator dimension must be at least 1");
    }

    static Operator identity(std::size_t dim) {
        return Operator(Matrix::Identity(static_cast<Eigen::Index>(dim),
                                         static_cast<Eigen::Index>(dim)));
    }

    static Operator zero(std::size_t dim) {
        return Operator(Matrix::Zero(static_cast<Eigen::Index>(dim),
                                     static_cast<Eigen::Index>(dim)));
    }

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] const Matrix &mat() const noexcept { return m_; }
    [[nodiscard]] const std::string &label() const noexcept { return label_; }

    [[nodiscard]] cplx operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    Operator &set_label(std::string label) {
        label_ = std::move(label);
        return *this;
    }

  private:
    Matrix m_;
    std::string label_;
};

inline Operator operator*(const Operator &a, const Operator &b) {
    NOSIG_REQUIRE(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
                  "product of operators with dims " + std::to_string(a.dim()) +
                      " and " + std::to_string(b.dim()));
    return Operator(a.mat() * b.mat());
}

inline Operator operator+(const Operator &a, const Operator &b) {
    NOSIG_REQUIRE(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
                  "sum of operators with mismatched dims");
    return Operator(a.mat() + b.mat());
}

inline Operator operator-(const Operator &a, const Operator &b) {
    NOSIG_REQUIRE(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
                  "difference of operators with mismatched dims");
    return Operator(a.mat() - b.mat());
}

inline Operator operator*(cplx s, const Operator &a) {
    return Operator(s * a.mat());
}

/// Split of a composite space H1 (x) H2. Composite index is i*d2 + k.
struct BipartiteDims {
    std::size_t d1 = 1;
    std::size_t d2 = 1;

    [[nodiscard]] constexpr std::size_t total() const noexcept {
        return d1 * d2;
    }
    [[nodiscard]] constexpr std::size_t index(std::size_t i,
                                              std::size_t k) const noexcept {
        return i * d2 + k;
    }
    [[nodiscard]] constexpr BipartiteDims swapped() const noexcept {
        return {d2, d1};
    }
    friend constexpr bool operator==(const BipartiteDims &,
                                     const BipartiteDims &) = default;
};

inline void require_dims(const Operator &op, const BipartiteDims &dims) {
    NOSIG_REQUIRE(dims.d1 >= 1 && dims.d2 >= 1, ErrorKind::DimensionMismatch,
                  "subsystem dimensions must be positive");
    NOSIG_REQUIRE(op.dim() == dims.total(), ErrorKind::DimensionMismatch,
                  "operator dim " + std::to_string(op.dim()) +
                      " does not equal d1*d2 = " + std::to_string(dims.d1) +
                      "*" + std::to_string(dims.d2));
}

enum class Subsystem { First, Second };

} // namespace nosig
