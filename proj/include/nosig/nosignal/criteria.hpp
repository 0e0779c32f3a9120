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

// Checkers for the no-signalling conditions on a joint unitary U acting on
// H1 (x) H2 after a local intervention on H1.
//
//   (C)  tr_1(U (Psi (x) 1)(rho) U^dagger) == tr_1(U rho U^dagger)  for all Psi, rho
//   (MC) the same with Psi restricted to Lueders measurements
//        rho -> sum_x (Pi_x (x) 1) rho (Pi_x (x) 1)
//
// The analytic checker is exact: (MC) holds iff every product
// B_{k'l'}^dagger B_{kl} of the blocks of U is proportional to the identity.
// The sampled checkers evaluate the defining equations on random draws and
// can only ever find violations, not prove their absence.

#pragma once

#include <optional>
#include <vector>

#include "nosig/core/parallel.hpp"
#include "nosig/nosignal/blocks.hpp"
#include "nosig/quantum/states.hpp"

namespace nosig {

inline constexpr double kAnalyticTol = 1e-8;
inline constexpr double kSampledTol = 1e-7;

struct AnalyticVerdict {
    bool holds = false;
    LambdaIndex witness{0, 0, 0, 0};
    double residual = 0.0;
    /// Absolute threshold the residual was compared with (tol * ||U||_F).
    double threshold = 0.0;
};

inline AnalyticVerdict check_mc_analytic(const Operator &u, const BipartiteDims &dims,
                                         double tol = kAnalyticTol) {
    const LambdaTensor lt = lambda_tensor(block_decompose(u, dims));
    const auto [witness, residual] = lt.max_residual();
    AnalyticVerdict v;
    v.threshold = tol * u.mat().norm();
    v.residual = residual;
    v.witness = witness;
    v.holds = residual <= v.threshold;
    return v;
}

/// Bob's marginal after U: tr_1(U rho U^dagger).
inline Matrix bob_marginal(const Operator &u, const BipartiteDims &dims,
                           const Matrix &rho) {
    return partial_trace(Operator(u.mat() * rho * u.mat().adjoint()), dims,
                         Subsystem::First)
        .mat();
}

/// (Pi_x (x) 1) projectors of a local observable on H1.
inline std::vector<Matrix> lifted_projectors(const Observable &alice,
                                             const BipartiteDims &dims) {
    std::vector<Matrix> out;
    const Operator id2 = Operator::identity(dims.d2);
    for (const auto &c : alice.spectral().clusters) {
        out.push_back(tensor_product(c.projector, id2).mat());
    }
    return out;
}

inline Matrix lifted_pinch(const std::vector<Matrix> &projectors, const Matrix &rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto &p : projectors) {
        out.noalias() += p * rho * p;
    }
    return out;
}

/// ||tr_1(U M(rho) U^dagger) - tr_1(U rho U^dagger)||_F for the Lueders
/// measurement M of `alice` on H1.
inline double mc_deviation(const Operator &u, const BipartiteDims &dims,
                           const DensityMatrix &rho, const Observable &alice) {
    require_dims(u, dims);
    NOSIG_REQUIRE(rho.dim() == dims.total(), ErrorKind::DimensionMismatch,
                  "state dim does not match d1*d2");
    NOSIG_REQUIRE(alice.dim() == dims.d1, ErrorKind::DimensionMismatch,
                  "observable must act on H1");
    const Matrix measured = lifted_pinch(lifted_projectors(alice, dims), rho.mat());
    return (bob_marginal(u, dims, measured) - bob_marginal(u, dims, rho.mat())).norm();
}

/// ||tr_1(U (Psi (x) 1)(rho) U^dagger) - tr_1(U rho U^dagger)||_F
inline double c_deviation(const Operator &u, const BipartiteDims &dims,
                          const KrausChannel &psi, const DensityMatrix &rho) {
    require_dims(u, dims);
    NOSIG_REQUIRE(rho.dim() == dims.total(), ErrorKind::DimensionMismatch,
                  "state dim does not match d1*d2");
    const KrausChannel lifted = lift_to_first(psi, dims);
    const Matrix after = apply_kraus(lifted, rho.mat());
    return (bob_marginal(u, dims, after) - bob_marginal(u, dims, rho.mat())).norm();
}

struct SampledVerdict {
    bool holds = false;
    double maxDeviation = 0.0;
    double tolerance = 0.0;
    std::size_t evaluations = 0;
    /// Index of the evaluation with the largest deviation.
    std::size_t witnessIndex = 0;
    std::optional<DensityMatrix> witnessState;
    std::optional<Observable> witnessObservable;
    std::optional<KrausChannel> witnessChannel;
};

struct SamplingOptions {
    std::size_t nSamples = 100;
    std::uint64_t seed = 0;
    double tol = kSampledTol;
    unsigned threads = 1;
};

namespace detail {

inline std::size_t argmax_first(const std::vector<double> &v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) {
            best = i;
        }
    }
    return best;
}

} // namespace detail

/// Draws (rho_i, A_i) from substream i of `seed`: rho_i Ginibre-random on
/// H1 (x) H2, A_i GUE-random on H1.
inline SampledVerdict check_mc_sampled(const Operator &u, const BipartiteDims &dims,
                                       const SamplingOptions &opt) {
    require_dims(u, dims);
    require_unitary(u, "check_mc_sampled");
    NOSIG_REQUIRE(opt.nSamples >= 1, ErrorKind::InvalidArgument,
                  "check_mc_sampled needs nSamples >= 1");
    std::vector<double> deviations(opt.nSamples, 0.0);
    parallel_for(opt.nSamples, opt.threads, [&](std::size_t i) {
        const DensityMatrix rho = random_density(dims.total(), opt.seed, i);
        const Observable alice = random_hermitian(dims.d1, opt.seed, i);
        deviations[i] = mc_deviation(u, dims, rho, alice);
    });
    SampledVerdict v;
    v.tolerance = opt.tol;
    v.evaluations = opt.nSamples;
    v.witnessIndex = detail::argmax_first(deviations);
    v.maxDeviation = deviations[v.witnessIndex];
    v.holds = v.maxDeviation <= opt.tol;
    v.witnessState = random_density(dims.total(), opt.seed, v.witnessIndex);
    v.witnessObservable = random_hermitian(dims.d1, opt.seed, v.witnessIndex);
    return v;
}

/**
 * @brief Sampled check of (C) over supplied and random (channel, state) pairs.
 *
 * A list left empty is filled with nSamples random draws (channels with d1
 * Kraus operators). When both lists are random they are zipped; otherwise
 * every channel is paired with every state. The verdict is taken over all
 * pairs, so a single passing channel never establishes (C).
 */
inline SampledVerdict check_c_sampled(const Operator &u, const BipartiteDims &dims,
                                      std::vector<KrausChannel> channels,
                                      std::vector<DensityMatrix> states,
                                      const SamplingOptions &opt) {
    require_dims(u, dims);
    require_unitary(u, "check_c_sampled");
    for (const auto &c : channels) {
        NOSIG_REQUIRE(c.dim() == dims.d1, ErrorKind::DimensionMismatch,
                      "channel must act on H1");
    }
    for (const auto &s : states) {
        NOSIG_REQUIRE(s.dim() == dims.total(), ErrorKind::DimensionMismatch,
                      "state dim does not match d1*d2");
    }
    const bool zip = channels.empty() && states.empty();
    if (channels.empty() || states.empty()) {
        NOSIG_REQUIRE(opt.nSamples >= 1, ErrorKind::InvalidArgument,
                      "check_c_sampled needs nSamples >= 1 to draw random inputs");
    }
    if (channels.empty()) {
        for (std::size_t i = 0; i < opt.nSamples; ++i) {
            channels.push_back(random_channel(dims.d1, dims.d1, opt.seed, i));
        }
    }
    if (states.empty()) {
        for (std::size_t i = 0; i < opt.nSamples; ++i) {
            states.push_back(random_density(dims.total(), opt.seed, i));
        }
    }
    const std::size_t nPairs = zip ? channels.size() : channels.size() * states.size();
    auto pair_of = [&](std::size_t p) -> std::pair<std::size_t, std::size_t> {
        if (zip) {
            return {p, p};
        }
        return {p / states.size(), p % states.size()};
    };
    std::vector<double> deviations(nPairs, 0.0);
    parallel_for(nPairs, opt.threads, [&](std::size_t p) {
        const auto [ci, si] = pair_of(p);
        deviations[p] = c_deviation(u, dims, channels[ci], states[si]);
    });
    SampledVerdict v;
    v.tolerance = opt.tol;
    v.evaluations = nPairs;
    v.witnessIndex = detail::argmax_first(deviations);
    v.maxDeviation = deviations[v.witnessIndex];
    v.holds = v.maxDeviation <= opt.tol;
    const auto [ci, si] = pair_of(v.witnessIndex);
    v.witnessChannel = channels[ci];
    v.witnessState = states[si];
    return v;
}

} // namespace nosig
