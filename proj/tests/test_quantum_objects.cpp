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


#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace nosig;
using nosig::testing::naive_kron;

namespace {

double min_eig(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

KrausChannel depolarizing_qubit() {
    std::vector<Operator> k;
    k.emplace_back(0.5 * paulis::identity2().mat());
    k.emplace_back(0.5 * paulis::x().mat());
    k.emplace_back(0.5 * paulis::y().mat());
    k.emplace_back(0.5 * paulis::z().mat());
    return KrausChannel(std::move(k));
}

} // namespace

TEST_CASE("density matrix validation", "[quantum-objects]") {
    CHECK_NOTHROW(DensityMatrix(Operator(Matrix::Identity(3, 3) / 3.0)));
    CHECK_THROWS_AS(DensityMatrix(Operator::identity(2)), Error);
    Matrix neg = Matrix::Zero(2, 2);
    neg.diagonal() << 1.5, -0.5;
    try {
        DensityMatrix d{Operator(neg)};
        FAIL("negative eigenvalue accepted");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::InvalidState);
    }
    Matrix nonherm = Matrix::Identity(2, 2) / 2.0;
    nonherm(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix(Operator(nonherm)), Error);
}

TEST_CASE("channel application", "[quantum-objects]") {
    const DensityMatrix rho = random_density(2, 3);
    SECTION("identity channel") {
        CHECK(apply_channel(KrausChannel::identity(2), rho).mat() == rho.mat());
    }
    SECTION("completely depolarizing qubit channel") {
        const DensityMatrix out = apply_channel(depolarizing_qubit(), rho);
        CHECK((out.mat() - Matrix::Identity(2, 2) / 2.0).norm() <= 1e-15);
    }
    SECTION("random channels preserve trace and positivity") {
        for (std::uint64_t i = 0; i < 30; ++i) {
            const std::size_t dim = 2 + i % 7;
            const KrausChannel psi = random_channel(dim, 1 + i % 3, 4, i);
            const DensityMatrix r = random_density(dim, 5, i);
            const Matrix out = apply_kraus(psi, r.mat());
            CHECK(std::abs(out.trace() - 1.0) <= 1e-10);
            CHECK(min_eig(out) >= -1e-12);
        }
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(apply_channel(KrausChannel::identity(3), rho), Error);
    }
    SECTION("non trace-preserving Kraus list is rejected") {
        try {
            KrausChannel bad({Operator(2.0 * Matrix::Identity(2, 2))});
            FAIL("accepted");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::InvalidChannel);
        }
    }
}

TEST_CASE("lifting a channel to the first factor", "[quantum-objects]") {
    const BipartiteDims dims{2, 3};
    const KrausChannel lifted = lift_to_first(KrausChannel::identity(2), dims);
    REQUIRE(lifted.kraus().size() == 1);
    CHECK(lifted.kraus()[0].mat() == Matrix::Identity(6, 6));

    const KrausChannel psi = random_channel(2, 2, 61);
    const DensityMatrix r1 = random_density(2, 62);
    const DensityMatrix r2 = random_density(3, 63);
    const Matrix out = apply_kraus(lift_to_first(psi, dims), naive_kron(r1.mat(), r2.mat()));
    CHECK((out - naive_kron(apply_kraus(psi, r1.mat()), r2.mat())).norm() <= 1e-14);

    // Without a later joint unitary, Bob's marginal cannot see the channel.
    const DensityMatrix ent = random_density(6, 64);
    const Matrix after = apply_kraus(lift_to_first(psi, dims), ent.mat());
    CHECK((testing::naive_trace_first(after, 2, 3) - testing::naive_trace_first(ent.mat(), 2, 3))
              .norm() <= 1e-14);

    CHECK_THROWS_AS(lift_to_first(KrausChannel::identity(3), dims), Error);
}

TEST_CASE("nonselective measurement", "[quantum-objects]") {
    SECTION("commuting observable leaves the state alone") {
        Matrix d = Matrix::Zero(3, 3);
        d.diagonal() << 0.2, 0.3, 0.5;
        Matrix a = Matrix::Zero(3, 3);
        a.diagonal() << 1.0, 2.0, 3.0;
        const DensityMatrix rho{Operator(d)};
        CHECK((nonselective_measurement(Observable(Operator(a)), rho).mat() - d).norm() <= 1e-15);
    }
    SECTION("sigma_z dephases |+>") {
        Vector plus(2);
        plus << 1.0, 1.0;
        const DensityMatrix rho = pure_state(plus);
        const DensityMatrix out = nonselective_measurement(Observable(paulis::z()), rho);
        CHECK((out.mat() - Matrix::Identity(2, 2) / 2.0).norm() <= 1e-15);
    }
    SECTION("random inputs: idempotent, trace preserving, commutes, equals projector channel") {
        for (std::uint64_t i = 0; i < 30; ++i) {
            const std::size_t dim = 2 + i % 6;
            const Observable obs = random_hermitian(dim, 71, i);
            const DensityMatrix rho = random_density(dim, 72, i);
            const DensityMatrix once = nonselective_measurement(obs, rho);
            const DensityMatrix twice = nonselective_measurement(obs, once);
            CHECK((once.mat() - twice.mat()).norm() <= 1e-12);
            CHECK(std::abs(once.mat().trace() - 1.0) <= 1e-12);
            CHECK((obs.op().mat() * once.mat() - once.mat() * obs.op().mat()).norm() <= 1e-9);
            const Matrix viaKraus = apply_kraus(projector_channel(obs), rho.mat());
            CHECK((viaKraus - once.mat()).norm() <= 1e-13);
        }
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(nonselective_measurement(Observable(paulis::z()), random_density(3, 1)),
                        Error);
    }
}

TEST_CASE("random ensembles", "[quantum-objects]") {
    for (std::size_t dim = 2; dim <= 32; dim += 3) {
        const Operator u = random_unitary(dim, 81, dim);
        const auto n = static_cast<Eigen::Index>(dim);
        CHECK((u.mat().adjoint() * u.mat() - Matrix::Identity(n, n)).norm() <= 1e-10);
        const DensityMatrix rho = random_density(dim, 82, dim);
        CHECK(min_eig(rho.mat()) >= -1e-12);
        CHECK(std::abs(rho.mat().trace() - 1.0) <= 1e-12);
        const Observable h = random_hermitian(dim, 83, dim);
        CHECK(h.op().mat() == h.op().mat().adjoint());
    }
    SECTION("fixed seed reproduces bit-identical draws") {
        CHECK(random_unitary(5, 9, 4).mat() == random_unitary(5, 9, 4).mat());
        CHECK(random_density(5, 9, 4).mat() == random_density(5, 9, 4).mat());
        CHECK(random_hermitian(5, 9, 4).op().mat() == random_hermitian(5, 9, 4).op().mat());
        CHECK(random_channel(3, 2, 9, 4).kraus()[1].mat() ==
              random_channel(3, 2, 9, 4).kraus()[1].mat());
        CHECK(random_unitary(5, 9, 4).mat() != random_unitary(5, 9, 5).mat());
        CHECK(random_unitary(5, 9, 4).mat() != random_unitary(5, 10, 4).mat());
    }
    SECTION("Haar phase convention: diagonal of R is real positive") {
        const Operator u = random_unitary(6, 84);
        RandomStream rng(84, 0, stream_tag::kUnitary);
        const Matrix g = rng.ginibre(6);
        // G = U R with R upper triangular and positive diagonal.
        const Matrix r = u.mat().adjoint() * g;
        for (Eigen::Index j = 0; j < 6; ++j) {
            CHECK(r(j, j).real() > 0.0);
            CHECK(std::abs(r(j, j).imag()) <= 1e-12);
            for (Eigen::Index i = j + 1; i < 6; ++i) {
                CHECK(std::abs(r(i, j)) <= 1e-12);
            }
        }
    }
    SECTION("Haar moments: E|U_00|^2 = 1/d") {
        double acc = 0.0;
        const int n = 2000;
        for (int i = 0; i < n; ++i) {
            acc += std::norm(random_unitary(4, 85, static_cast<std::uint64_t>(i)).mat()(0, 0));
        }
        CHECK(acc / n == Catch::Approx(0.25).margin(0.02));
    }
}

TEST_CASE("uniform and normal deviates", "[quantum-objects]") {
    RandomStream rng(1, 2, 3);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double g = rng.normal();
        sum += g;
        sq += g * g;
    }
    CHECK(sum / n == Catch::Approx(0.0).margin(0.03));
    CHECK(sq / n == Catch::Approx(1.0).margin(0.03));
}
