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

#include "nosig/quantum/states.hpp"

namespace nosig {

struct PinchingResult {
    bool pinched = false;
    /// ||sum_l P_l b P_l - b||_F / ||b||_F
    double pinchResidual = 0.0;
    /// ||[a, b]||_F / (||a||_F ||b||_F)
    double commutatorResidual = 0.0;
    bool commutes = false;
    /// pinched == commutes
    bool consistent = false;
};

/**
 * @brief Fixed-point test of the pinching b -> sum_l P_l b P_l for the
 * spectral projectors P_l of a.
 *
 * b is a fixed point iff it is block diagonal in the eigenspaces of a, which
 * is the same as [a, b] = 0. Both residuals are relative; a zero b counts as
 * pinched and commuting.
 */
inline PinchingResult pinching_check(const Observable &a, const Operator &b,
                                     double tol = 1e-8, double commTol = 1e-8) {
    NOSIG_REQUIRE(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
                  "pinching_check: observable and operator dims differ");
    PinchingResult r;
    const double bn = b.mat().norm();
    const double an = a.op().mat().norm();
    if (bn == 0.0) {
        r.pinched = r.commutes = r.consistent = true;
        return r;
    }
    r.pinchResidual = (pinch(a.spectral(), b.mat()) - b.mat()).norm() / bn;
    const Matrix comm = a.op().mat() * b.mat() - b.mat() * a.op().mat();
    r.commutatorResidual = an == 0.0 ? 0.0 : comm.norm() / (an * bn);
    r.pinched = r.pinchResidual <= tol;
    r.commutes = r.commutatorResidual <= commTol;
    r.consistent = r.pinched == r.commutes;
    return r;
}

} // namespace nosig
