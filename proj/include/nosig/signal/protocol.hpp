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

// Two-party signalling protocol. Alice encodes bit 0 by doing nothing and
// bit 1 by a nonselective measurement of her observable; the pair then
// evolves under the joint unitary and Bob measures his observable on each of
// `shots` copies. Bob's outcome space is the list of spectral clusters of his
// observable, in ascending eigenvalue order.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nosig/core/parallel.hpp"
#include "nosig/core/serialize.hpp"
#include "nosig/nosignal/criteria.hpp"

namespace nosig {

inline constexpr double kNoSignalTol = 1e-10;
inline constexpr std::size_t kShotChunk = 1024;

struct ProtocolSpec {
    BipartiteDims dims;
    DensityMatrix initialState;
    Observable aliceObservable;
    Operator jointUnitary;
    Observable bobObservable;
    std::size_t shots = 1;
    std::uint64_t seed = 0;

    void validate() const {
        require_dims(jointUnitary, dims);
        require_unitary(jointUnitary, "protocol");
        NOSIG_REQUIRE(initialState.dim() == dims.total(), ErrorKind::DimensionMismatch,
                      "initial state dim does not match d1*d2");
        NOSIG_REQUIRE(aliceObservable.dim() == dims.d1, ErrorKind::DimensionMismatch,
                      "Alice's observable must act on H1");
        NOSIG_REQUIRE(bobObservable.dim() == dims.d2, ErrorKind::DimensionMismatch,
                      "Bob's observable must act on H2");
        NOSIG_REQUIRE(shots >= 1, ErrorKind::InvalidArgument, "shots must be >= 1");
    }
};

struct BobDistributions {
    /// Alice idle.
    std::vector<double> p0;
    /// Alice measured.
    std::vector<double> p1;
};

inline double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    NOSIG_REQUIRE(p.size() == q.size(), ErrorKind::DimensionMismatch,
                  "distributions have different lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += std::abs(p[i] - q[i]);
    }
    return 0.5 * s;
}

inline std::vector<double> outcome_probabilities(const SpectralDecomposition &bob,
                                                 const Matrix &rhoB) {
    std::vector<double> p;
    p.reserve(bob.clusters.size());
    for (const auto &c : bob.clusters) {
        p.push_back((c.projector.mat() * rhoB).trace().real());
    }
    return p;
}

inline BobDistributions bob_marginal_distributions(const ProtocolSpec &spec) {
    spec.validate();
    const Matrix &rho = spec.initialState.mat();
    const Matrix measured =
        lifted_pinch(lifted_projectors(spec.aliceObservable, spec.dims), rho);
    const auto &bob = spec.bobObservable.spectral();
    return {outcome_probabilities(bob, bob_marginal(spec.jointUnitary, spec.dims, rho)),
            outcome_probabilities(bob,
                                  bob_marginal(spec.jointUnitary, spec.dims, measured))};
}

/// Shots needed for a given (eps, delta); empty when no number of shots helps.
struct ShotsForError {
    double epsilon = 0.0;
    double delta = 0.0;
    std::optional<std::size_t> shots;
};

/**
 * Hoeffding bound. Let E be the set of Bob outcomes with p0 > p1, so that
 * p0(E) - p1(E) = tv. With n shots per branch, each empirical frequency of E
 * lies within r of its mean with probability >= 1 - delta once
 * n >= ln(2/delta) / (2 r^2). Taking r = min(eps, tv/2) both separates the
 * two branches (bit decoded) and pins each frequency to within eps; for
 * eps >= tv/2 this is n >= 2 ln(2/delta) / tv^2.
 */
inline std::optional<std::size_t> shots_for_error(double tv, double eps, double delta,
                                                  double tol = kNoSignalTol) {
    NOSIG_REQUIRE(eps > 0.0 && delta > 0.0 && delta < 1.0, ErrorKind::InvalidArgument,
                  "need eps > 0 and 0 < delta < 1");
    if (tv <= tol) {
        return std::nullopt;
    }
    const double r = std::min(eps, 0.5 * tv);
    return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta) / (2.0 * r * r)));
}

inline constexpr const char *kShotsBound =
    "Hoeffding: n >= ln(2/delta) / (2 min(eps, tv/2)^2) shots per branch";

struct SignalReport {
    std::vector<double> bobDistNoMeasure;
    std::vector<double> bobDistMeasure;
    std::vector<double> bobEigenvalues;
    std::vector<std::size_t> countsNoMeasure;
    std::vector<std::size_t> countsMeasure;
    double tvExact = 0.0;
    double tvEmpirical = 0.0;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<ShotsForError> shotsForError;
};

namespace detail {

/// Inverse-CDF draw; the last outcome absorbs any round-off in the total.
inline std::size_t sample_index(const std::vector<double> &cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                                 cdf.size() - 1);
}

/// Counts for `shots` draws from p. Chunk c uses substream
/// (seed, branch * 2^40 + c), so counts do not depend on `threads`.
inline std::vector<std::size_t> sample_counts(const std::vector<double> &p,
                                              std::size_t shots, std::uint64_t seed,
                                              std::uint64_t branch, unsigned threads) {
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += std::max(p[i], 0.0);
        cdf[i] = acc;
    }
    for (auto &c : cdf) {
        c /= acc;
    }
    const std::size_t nChunks = (shots + kShotChunk - 1) / kShotChunk;
    std::vector<std::vector<std::size_t>> partial(nChunks,
                                                  std::vector<std::size_t>(p.size(), 0));
    parallel_for(nChunks, threads, [&](std::size_t c) {
        RandomStream rng(seed, (branch << 40U) + c, stream_tag::kShots);
        const std::size_t n = std::min(kShotChunk, shots - c * kShotChunk);
        for (std::size_t s = 0; s < n; ++s) {
            ++partial[c][sample_index(cdf, rng.uniform())];
        }
    });
    std::vector<std::size_t> counts(p.size(), 0);
    for (const auto &part : partial) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
            counts[i] += part[i];
        }
    }
    return counts;
}

} // namespace detail

inline SignalReport
simulate_protocol(const ProtocolSpec &spec,
                  const std::vector<std::pair<double, double>> &errorTargets = {{0.01, 0.05}},
                  unsigned threads = 1, double tol = kNoSignalTol) {
    const BobDistributions d = bob_marginal_distributions(spec);
    SignalReport r;
    r.bobDistNoMeasure = d.p0;
    r.bobDistMeasure = d.p1;
    for (const auto &c : spec.bobObservable.spectral().clusters) {
        r.bobEigenvalues.push_back(c.eigenvalue);
    }
    r.tvExact = total_variation(d.p0, d.p1);
    r.shots = spec.shots;
    r.seed = spec.seed;
    r.countsNoMeasure = detail::sample_counts(d.p0, spec.shots, spec.seed, 0, threads);
    r.countsMeasure = detail::sample_counts(d.p1, spec.shots, spec.seed, 1, threads);
    std::vector<double> e0;
    std::vector<double> e1;
    for (std::size_t i = 0; i < d.p0.size(); ++i) {
        e0.push_back(static_cast<double>(r.countsNoMeasure[i]) /
                     static_cast<double>(spec.shots));
        e1.push_back(static_cast<double>(r.countsMeasure[i]) /
                     static_cast<double>(spec.shots));
    }
    r.tvEmpirical = total_variation(e0, e1);
    for (const auto &[eps, delta] : errorTargets) {
        r.shotsForError.push_back({eps, delta, shots_for_error(r.tvExact, eps, delta, tol)});
    }
    return r;
}

/// outcomeIndex,p0,p1
inline void write_distribution_csv(std::ostream &out, const SignalReport &r) {
    out << "outcomeIndex,p0,p1\n";
    for (std::size_t i = 0; i < r.bobDistNoMeasure.size(); ++i) {
        out << i << ',' << detail::format_double(r.bobDistNoMeasure[i]) << ','
            << detail::format_double(r.bobDistMeasure[i]) << '\n';
    }
}

} // namespace nosig
