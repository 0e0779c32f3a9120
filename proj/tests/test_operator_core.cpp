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
#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"

using namespace nosig;
using nosig::testing::naive_kron;
using nosig::testing::random_matrix;

TEST_CASE("tensor product of identities and diagonals", "[operator-core]") {
    const Operator id4 = tensor_product(Operator::identity(2), Operator::identity(2));
    CHECK(id4.mat() == Matrix::Identity(4, 4));

    Matrix a = Matrix::Zero(2, 2);
    a.diagonal() << 1.0, 2.0;
    Matrix b = Matrix::Zero(2, 2);
    b.diagonal() << 3.0, 4.0;
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << 3.0, 4.0, 6.0, 8.0;
    CHECK(tensor_product(Operator(a), Operator(b)).mat() == expected);
}

TEST_CASE("tensor product follows the i*d2+k index convention", "[operator-core]") {
    const Matrix a = random_matrix(3, 3, 1);
    const Matrix b = random_matrix(2, 2, 2);
    const Matrix t = tensor_product(Operator(a), Operator(b)).mat();
    const BipartiteDims dims{3, 2};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    CHECK(t(static_cast<Eigen::Index>(dims.index(i, k)),
                            static_cast<Eigen::Index>(dims.index(j, l))) ==
                          a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                              b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)));
                }
            }
        }
    }
}

TEST_CASE("mixed-product identity", "[operator-core][property]") {
    for (std::size_t trial = 0; trial < 20; ++trial) {
        const std::size_t da = 2 + trial % 2;
        const std::size_t db = 3 - trial % 2;
        const Matrix a = random_matrix(da, da, 10, trial);
        const Matrix c = random_matrix(da, da, 11, trial);
        const Matrix b = random_matrix(db, db, 12, trial);
        const Matrix d = random_matrix(db, db, 13, trial);
        const Matrix lhs = tensor_product(Operator(a * c), Operator(b * d)).mat();
        const Matrix rhs = naive_kron(a, b) * naive_kron(c, d);
        CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
    }
}

TEST_CASE("partial trace", "[operator-core]") {
    const DensityMatrix r1 = random_density(2, 5, 0);
    const DensityMatrix r2 = random_density(2, 5, 1);
    const BipartiteDims dims{2, 2};
    const Operator joint = tensor_product(r1.op(), r2.op());

    SECTION("product state") {
        const Matrix t2 = partial_trace(joint, dims, Subsystem::Second).mat();
        CHECK((t2 - r1.mat() * r2.mat().trace()).norm() <= 1e-14);
    }
    SECTION("Bell state marginal is maximally mixed") {
        const Matrix t1 = partial_trace(paulis::bell_phi_plus(), dims, Subsystem::First).mat();
        CHECK((t1 - Matrix::Identity(2, 2) / 2.0).norm() <= 1e-15);
    }
    SECTION("duality with the lifted observable") {
        const Matrix x = random_matrix(6, 6, 7);
        const Matrix b = random_matrix(3, 3, 8);
        const BipartiteDims d23{2, 3};
        const cplx lhs = (partial_trace(Operator(x), d23, Subsystem::First).mat() * b).trace();
        const cplx rhs = (x * naive_kron(Matrix::Identity(2, 2), b)).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-12 * x.norm() * b.norm());
    }
    SECTION("trace is preserved") {
        const Matrix x = random_matrix(12, 12, 9);
        const BipartiteDims d34{3, 4};
        for (auto over : {Subsystem::First, Subsystem::Second}) {
            CHECK(std::abs(partial_trace(Operator(x), d34, over).mat().trace() - x.trace()) <=
                  1e-12);
        }
        CHECK((partial_trace(Operator(x), d34, Subsystem::First).mat() -
               testing::naive_trace_first(x, 3, 4))
                  .norm() <= 1e-13);
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(partial_trace(Operator::identity(5), dims, Subsystem::First), Error);
        try {
            partial_trace(Operator::identity(5), dims, Subsystem::First);
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::DimensionMismatch);
        }
    }
}

TEST_CASE("spectral decomposition", "[operator-core]") {
    SECTION("degenerate diagonal") {
        Matrix a = Matrix::Zero(3, 3);
        a.diagonal() << 1.0, 1.0, 2.0;
        const auto sd = hermitian_spectral(Operator(a), 1e-8);
        REQUIRE(sd.clusters.size() == 2);
        CHECK(sd.clusters[0].eigenvalue == Catch::Approx(1.0));
        CHECK(sd.clusters[0].rank == 2);
        CHECK(sd.clusters[1].eigenvalue == Catch::Approx(2.0));
        CHECK(sd.clusters[1].rank == 1);
        Matrix p0 = Matrix::Zero(3, 3);
        p0(0, 0) = p0(1, 1) = 1.0;
        CHECK((sd.clusters[0].projector.mat() - p0).norm() <= 1e-12);
    }
    SECTION("Pauli x") {
        const auto sd = hermitian_spectral(paulis::x());
        REQUIRE(sd.clusters.size() == 2);
        CHECK(sd.clusters[0].eigenvalue == Catch::Approx(-1.0));
        CHECK(sd.clusters[1].eigenvalue == Catch::Approx(1.0));
        Matrix minus(2, 2);
        minus << 0.5, -0.5, -0.5, 0.5;
        Matrix plus(2, 2);
        plus << 0.5, 0.5, 0.5, 0.5;
        CHECK((sd.clusters[0].projector.mat() - minus).norm() <= 1e-12);
        CHECK((sd.clusters[1].projector.mat() - plus).norm() <= 1e-12);
    }
    SECTION("not Hermitian") {
        try {
            hermitian_spectral(Operator(random_matrix(3, 3, 4)));
            FAIL("expected NotHermitian");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::NotHermitian);
        }
    }
}

TEST_CASE("spectral invariants on random Hermitian matrices", "[operator-core][property]") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::size_t dim = 2 + i % 15;
        const Matrix g = random_matrix(dim, dim, 21, i);
        const Matrix a = 0.5 * (g + g.adjoint());
        const auto sd = hermitian_spectral(Operator(a));
        const auto n = static_cast<Eigen::Index>(dim);
        Matrix sum = Matrix::Zero(n, n);
        for (std::size_t p = 0; p < sd.clusters.size(); ++p) {
            const Matrix &P = sd.clusters[p].projector.mat();
            CHECK((P * P - P).norm() <= 1e-10 * static_cast<double>(dim));
            CHECK((P - P.adjoint()).norm() <= 1e-12);
            for (std::size_t q = p + 1; q < sd.clusters.size(); ++q) {
                CHECK((P * sd.clusters[q].projector.mat()).norm() <= 1e-10);
            }
            if (p > 0) {
                CHECK(sd.clusters[p].eigenvalue > sd.clusters[p - 1].eigenvalue);
            }
            sum += P;
        }
        CHECK((sum - Matrix::Identity(n, n)).norm() <= 1e-10);
        CHECK((sd.reconstruct().mat() - a).norm() <= 1e-8 * a.norm());
    }
}

TEST_CASE("near-degenerate eigenvalues merge into one cluster", "[operator-core]") {
    Matrix a = Matrix::Zero(3, 3);
    a.diagonal() << 1.0, 1.0 + 1e-12, 3.0;
    const auto sd = hermitian_spectral(Operator(a));
    REQUIRE(sd.clusters.size() == 2);
    CHECK(sd.clusters[0].rank == 2);
    const auto split = hermitian_spectral(Operator(a), 1e-14);
    CHECK(split.clusters.size() == 3);
}

TEST_CASE("elementary operations", "[operator-core]") {
    const Operator x = paulis::x();
    const Operator y = paulis::y();
    const Operator z = paulis::z();
    CHECK(frobenius_norm(commutator(z, z)) == 0.0);
    CHECK(frobenius_norm(anticommutator(x, y)) == 0.0);
    CHECK((commutator(x, y).mat() - 2.0 * kI * z.mat()).norm() <= 1e-15);

    const Matrix a = random_matrix(4, 4, 31);
    CHECK(dagger(dagger(Operator(a))).mat() == a);
    CHECK(frobenius_norm(Operator(a)) == Catch::Approx(std::sqrt(a.cwiseAbs2().sum())));

    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 0.5, -4.0, 2.0;
    CHECK(operator_norm(Operator(d)) == Catch::Approx(4.0));
    CHECK_THROWS_AS(commutator(Operator::identity(2), Operator::identity(3)), Error);
}

TEST_CASE("operator validation", "[operator-core]") {
    CHECK_THROWS_AS(Operator(Matrix::Zero(2, 3)), Error);
    CHECK_THROWS_AS(Operator(Matrix(0, 0)), Error);
}

TEST_CASE("operator text format round trip", "[operator-core]") {
    const Operator u = random_unitary(3, 17);
    const Operator back = parse_operator(to_text(u));
    CHECK(back.mat() == u.mat());

    const Operator cnot = load_operator(NOSIG_DATA_DIR "/cnot.op");
    CHECK(cnot.mat() == paulis::cnot().mat());
    CHECK(cnot.label() == "CNOT");

    CHECK_THROWS_AS(parse_operator(std::string("dim 2\n1 0\n0 0\n")), Error);
    CHECK_THROWS_AS(load_operator(NOSIG_DATA_DIR "/malformed.op"), Error);
    CHECK_THROWS_AS(parse_operator(std::string("size 2\n")), Error);
}

TEST_CASE("swap_factors exchanges the tensor factors", "[operator-core]") {
    const Matrix a = random_matrix(2, 2, 41);
    const Matrix b = random_matrix(3, 3, 42);
    const Operator ab(naive_kron(a, b));
    const Operator ba = swap_factors(ab, {2, 3});
    CHECK((ba.mat() - naive_kron(b, a)).norm() <= 1e-14);
}

TEST_CASE("unitary evolution", "[operator-core]") {
    const Operator h = random_hermitian(4, 51).op();
    const Operator u = unitary_evolution(h, 0.7);
    CHECK(unitarity_defect(u) <= 1e-12);
    const Matrix series = (-kI * 0.7 * h.mat()).exp();
    CHECK((u.mat() - series).norm() <= 1e-12);
}
