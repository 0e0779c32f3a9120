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

// Frame-reordering consistency. With Alice's operation Psi at t1, Bob's
// reduced state at t2 must not depend on whether the operation is inserted:
//
//   tr_1(U_{t0,t2} rho U_{t0,t2}^dagger)
//     == tr_1(U_{t1,t2} (Psi (x) 1)(U_{t0,t1} rho U_{t0,t1}^dagger) U_{t1,t2}^dagger)

#pragma once

#include <variant>

#include "nosig/nosignal/criteria.hpp"

namespace nosig {

/// Time-independent generator of U_{a,b} = exp(-i H (b - a)), either
/// factorized (H = h1 (x) 1 + 1 (x) h2) or an arbitrary joint Hamiltonian.
class Dynamics {
  public:
    static Dynamics factorized(Observable h1, Observable h2) {
        const BipartiteDims dims{h1.dim(), h2.dim()};
        return Dynamics(dims, Factorized{std::move(h1), std::move(h2)});
    }

    static Dynamics joint(Operator h, const BipartiteDims &dims) {
        require_dims(h, dims);
        NOSIG_REQUIRE(is_hermitian(h), ErrorKind::NotHermitian,
                      "joint Hamiltonian is not Hermitian");
        return Dynamics(dims, std::move(h));
    }

    [[nodiscard]] const BipartiteDims &dims() const noexcept { return dims_; }
    [[nodiscard]] bool is_factorized() const noexcept {
        return std::holds_alternative<Factorized>(gen_);
    }

    [[nodiscard]] Operator evolution(double a, double b) const {
        const double dt = b - a;
        if (const auto *f = std::get_if<Factorized>(&gen_)) {
            return tensor_product(unitary_evolution(f->h1.op(), dt),
                                  unitary_evolution(f->h2.op(), dt));
        }
        return unitary_evolution(std::get<Operator>(gen_), dt);
    }

  private:
    struct Factorized {
        Observable h1;
        Observable h2;
    };

    Dynamics(BipartiteDims dims, std::variant<Factorized, Operator> gen)
        : dims_(dims), gen_(std::move(gen)) {}

    BipartiteDims dims_;
    std::variant<Factorized, Operator> gen_;
};

struct CovarianceVerdict {
    bool consistent = false;
    /// Frobenius distance between the two Bob marginals.
    double deviation = 0.0;
    /// ||U_{t0,t2} - U_{t1,t2} U_{t0,t1}||_F
    double compositionResidual = 0.0;
    double tolerance = 0.0;
};

inline constexpr double kCompositionTol = 1e-9;

inline CovarianceVerdict check_covariance_reordering(const Dynamics &dyn,
                                                     const KrausChannel &psi,
                                                     const DensityMatrix &rho, double t0,
                                                     double t1, double t2,
                                                     double tol = 1e-10) {
    const BipartiteDims &dims = dyn.dims();
    NOSIG_REQUIRE(psi.dim() == dims.d1, ErrorKind::DimensionMismatch,
                  "channel must act on H1");
    NOSIG_REQUIRE(rho.dim() == dims.total(), ErrorKind::DimensionMismatch,
                  "state dim does not match d1*d2");
    NOSIG_REQUIRE(t0 <= t1 && t1 <= t2, ErrorKind::InvalidArgument,
                  "times must satisfy t0 <= t1 <= t2");

    const Operator u02 = dyn.evolution(t0, t2);
    const Operator u01 = dyn.evolution(t0, t1);
    const Operator u12 = dyn.evolution(t1, t2);

    CovarianceVerdict v;
    v.tolerance = tol;
    v.compositionResidual = (u02.mat() - u12.mat() * u01.mat()).norm();
    NOSIG_REQUIRE(v.compositionResidual <= kCompositionTol, ErrorKind::InternalInconsistency,
                  "evolution does not compose: residual " +
                      std::to_string(v.compositionResidual));

    const Matrix direct = bob_marginal(u02, dims, rho.mat());
    const Matrix mid = u01.mat() * rho.mat() * u01.mat().adjoint();
    const Matrix operated = apply_kraus(lift_to_first(psi, dims), mid);
    const Matrix reordered = bob_marginal(u12, dims, operated);
    v.deviation = (direct - reordered).norm();
    v.consistent = v.deviation <= tol;
    return v;
}

} // namespace nosig
