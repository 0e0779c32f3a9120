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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "nosig/core/linalg.hpp"
#include "nosig/quantum/rng.hpp"

namespace nosig {

/// Positive semidefinite, unit-trace operator.
class DensityMatrix {
  public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPositivityTol = -1e-10;

    explicit DensityMatrix(Operator op) : op_(std::move(op)) {
        NOSIG_REQUIRE(is_hermitian(op_, kHermitianTol), ErrorKind::InvalidState,
                      "density matrix is not Hermitian");
        const cplx tr = op_.mat().trace();
        NOSIG_REQUIRE(std::abs(tr - 1.0) <= kTraceTol, ErrorKind::InvalidState,
                      "density matrix trace is " + std::to_string(tr.real()));
        NOSIG_REQUIRE(min_eigenvalue() >= kPositivityTol, ErrorKind::InvalidState,
                      "density matrix has eigenvalue " +
                          std::to_string(min_eigenvalue()));
    }

    [[nodiscard]] const Operator &op() const noexcept { return op_; }
    [[nodiscard]] const Matrix &mat() const noexcept { return op_.mat(); }
    [[nodiscard]] std::size_t dim() const noexcept { return op_.dim(); }

    [[nodiscard]] double min_eigenvalue() const {
        const Matrix h = 0.5 * (op_.mat() + op_.mat().adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0);
    }

  private:
    Operator op_;
};

inline DensityMatrix product_state(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(tensor_product(a.op(), b.op()));
}

inline DensityMatrix pure_state(const Vector &psi) {
    const Vector v = psi / psi.norm();
    return DensityMatrix(Operator(v * v.adjoint()));
}

inline DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(Operator(Matrix::Identity(static_cast<Eigen::Index>(dim),
                                                   static_cast<Eigen::Index>(dim)) /
                                  static_cast<double>(dim)));
}

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
  public:
    static constexpr double kTraceTol = 1e-9;

    explicit KrausChannel(std::vector<Operator> kraus) : kraus_(std::move(kraus)) {
        NOSIG_REQUIRE(!kraus_.empty(), ErrorKind::InvalidChannel,
                      "channel needs at least one Kraus operator");
        const std::size_t d = kraus_.front().dim();
        Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(d),
                                  static_cast<Eigen::Index>(d));
        for (const auto &k : kraus_) {
            NOSIG_REQUIRE(k.dim() == d, ErrorKind::DimensionMismatch,
                          "Kraus operators have different dimensions");
            sum += k.mat().adjoint() * k.mat();
        }
        const double defect =
            (sum - Matrix::Identity(sum.rows(), sum.cols())).norm();
        NOSIG_REQUIRE(defect <= kTraceTol, ErrorKind::InvalidChannel,
                      "sum K^dagger K deviates from identity by " +
                          std::to_string(defect));
    }

    static KrausChannel identity(std::size_t dim) {
        return KrausChannel({Operator::identity(dim)});
    }

    [[nodiscard]] const std::vector<Operator> &kraus() const noexcept {
        return kraus_;
    }
    [[nodiscard]] std::size_t dim() const noexcept { return kraus_.front().dim(); }

  private:
    std::vector<Operator> kraus_;
};

/// Hermitian operator together with its spectral projectors.
class Observable {
  public:
    explicit Observable(Operator op, std::optional<double> degeneracyTol = {})
        : op_(std::move(op)), spectral_(hermitian_spectral(op_, degeneracyTol)) {}

    [[nodiscard]] const Operator &op() const noexcept { return op_; }
    [[nodiscard]] const SpectralDecomposition &spectral() const noexcept {
        return spectral_;
    }
    [[nodiscard]] std::size_t dim() const noexcept { return op_.dim(); }

  private:
    Operator op_;
    SpectralDecomposition spectral_;
};

inline Matrix apply_kraus(const KrausChannel &psi, const Matrix &rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto &k : psi.kraus()) {
        out.noalias() += k.mat() * rho * k.mat().adjoint();
    }
    return out;
}

inline DensityMatrix apply_channel(const KrausChannel &psi, const DensityMatrix &rho) {
    NOSIG_REQUIRE(psi.dim() == rho.dim(), ErrorKind::DimensionMismatch,
                  "channel acts on dim " + std::to_string(psi.dim()) +
                      " but state has dim " + std::to_string(rho.dim()));
    return DensityMatrix(Operator(apply_kraus(psi, rho.mat())));
}

/// Psi (x) 1 on H1 (x) H2.
inline KrausChannel lift_to_first(const KrausChannel &psi, const BipartiteDims &dims) {
    NOSIG_REQUIRE(psi.dim() == dims.d1, ErrorKind::DimensionMismatch,
                  "channel dim " + std::to_string(psi.dim()) + " != d1 = " +
                      std::to_string(dims.d1));
    std::vector<Operator> lifted;
    lifted.reserve(psi.kraus().size());
    const Operator id2 = Operator::identity(dims.d2);
    for (const auto &k : psi.kraus()) {
        lifted.push_back(tensor_product(k, id2));
    }
    return KrausChannel(std::move(lifted));
}

/// Kraus list {Pi_x} of the Lueders measurement of `obs`.
inline KrausChannel projector_channel(const Observable &obs) {
    std::vector<Operator> kraus;
    kraus.reserve(obs.spectral().clusters.size());
    for (const auto &c : obs.spectral().clusters) {
        kraus.push_back(c.projector);
    }
    return KrausChannel(std::move(kraus));
}

inline Matrix pinch(const SpectralDecomposition &spectral, const Matrix &rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto &c : spectral.clusters) {
        out.noalias() += c.projector.mat() * rho * c.projector.mat();
    }
    return out;
}

/// rho -> sum_x Pi_x rho Pi_x
inline DensityMatrix nonselective_measurement(const Observable &obs,
                                              const DensityMatrix &rho) {
    NOSIG_REQUIRE(obs.dim() == rho.dim(), ErrorKind::DimensionMismatch,
                  "observable dim " + std::to_string(obs.dim()) +
                      " != state dim " + std::to_string(rho.dim()));
    return DensityMatrix(Operator(pinch(obs.spectral(), rho.mat())));
}

// Random ensembles. Every draw is a pure function of (dim, seed, index).

inline DensityMatrix random_density(std::size_t dim, std::uint64_t seed,
                                    std::uint64_t index = 0) {
    NOSIG_REQUIRE(dim >= 1, ErrorKind::InvalidArgument, "dim must be >= 1");
    RandomStream rng(seed, index, stream_tag::kDensity);
    const Matrix g = rng.ginibre(dim);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(Operator(std::move(rho)));
}

/// Haar unitary: QR of a Ginibre matrix, each column rephased so that the
/// corresponding diagonal entry of R is real positive.
inline Operator haar_unitary(RandomStream &rng, std::size_t dim) {
    const Matrix g = rng.ginibre(dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const cplx pivot = r(j, j);
        const double mag = std::abs(pivot);
        if (mag > 0.0) {
            q.col(j) *= pivot / mag;
        }
    }
    return Operator(std::move(q));
}

inline Operator random_unitary(std::size_t dim, std::uint64_t seed,
                               std::uint64_t index = 0) {
    NOSIG_REQUIRE(dim >= 1, ErrorKind::InvalidArgument, "dim must be >= 1");
    RandomStream rng(seed, index, stream_tag::kUnitary);
    return haar_unitary(rng, dim);
}

inline Observable random_hermitian(std::size_t dim, std::uint64_t seed,
                                   std::uint64_t index = 0) {
    NOSIG_REQUIRE(dim >= 1, ErrorKind::InvalidArgument, "dim must be >= 1");
    RandomStream rng(seed, index, stream_tag::kHermitian);
    const Matrix g = rng.ginibre(dim);
    return Observable(Operator(0.5 * (g + g.adjoint())));
}

/// Random channel with `nKraus` Kraus operators, cut from a Haar isometry
/// C^dim -> C^(dim*nKraus).
inline KrausChannel random_channel(std::size_t dim, std::size_t nKraus,
                                   std::uint64_t seed, std::uint64_t index = 0) {
    NOSIG_REQUIRE(dim >= 1 && nKraus >= 1, ErrorKind::InvalidArgument,
                  "random_channel needs dim >= 1 and nKraus >= 1");
    RandomStream rng(seed, index, stream_tag::kChannel);
    const Operator u = haar_unitary(rng, dim * nKraus);
    const auto d = static_cast<Eigen::Index>(dim);
    std::vector<Operator> kraus;
    kraus.reserve(nKraus);
    for (std::size_t j = 0; j < nKraus; ++j) {
        kraus.emplace_back(u.mat().block(static_cast<Eigen::Index>(j) * d, 0, d, d));
    }
    return KrausChannel(std::move(kraus));
}

} // namespace nosig
