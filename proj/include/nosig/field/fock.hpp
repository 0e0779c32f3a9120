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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "nosig/core/operator.hpp"

namespace nosig {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

/**
 * @brief Truncated multi-ladder Fock space.
 *
 * Basis states are occupation vectors (n_0, ..., n_{L-1}) with n_j <= perModeCap
 * and, when totalCap is set, sum_j n_j <= totalCap. They are listed in
 * lexicographic order, so index 0 is the vacuum.
 *
 * Lowering operators are exact on every state that keeps room for the
 * intermediate states of the identity being checked; see safe_columns. For
 * Fermi spaces the Jordan-Wigner string (-1)^(n_0 + ... + n_{j-1}) makes
 * distinct ladders anticommute exactly.
 */
class FockSpace {
  public:
    using State = std::vector<std::uint8_t>;

    FockSpace(std::size_t ladders, std::size_t perModeCap, std::optional<std::size_t> totalCap,
              bool fermi, std::size_t budget)
        : ladders_(ladders), perModeCap_(fermi ? 1 : perModeCap), totalCap_(totalCap),
          fermi_(fermi) {
        NOSIG_REQUIRE(ladders >= 1, ErrorKind::InvalidArgument, "Fock space needs a ladder");
        NOSIG_REQUIRE(perModeCap_ >= 1 && perModeCap_ < 256, ErrorKind::InvalidArgument,
                      "per-mode cutoff must be in [1, 255]");
        const std::size_t count = count_states(ladders, perModeCap_, totalCap, budget);
        NOSIG_REQUIRE(count <= budget, ErrorKind::BudgetExceeded,
                      "Fock dimension " +
                          (count > budget ? std::string("> ") + std::to_string(budget)
                                          : std::to_string(count)) +
                          " exceeds budget " + std::to_string(budget));
        enumerate();
        build_lowering();
    }

    /// Number of basis states; saturates at budget + 1.
    static std::size_t count_states(std::size_t ladders, std::size_t perModeCap,
                                    std::optional<std::size_t> totalCap, std::size_t budget) {
        const std::size_t limit = budget + 1;
        const std::size_t maxTotal = totalCap.value_or(ladders * perModeCap);
        // ways[t] = configurations of the ladders seen so far with total t
        std::vector<std::size_t> ways(maxTotal + 1, 0);
        ways[0] = 1;
        for (std::size_t j = 0; j < ladders; ++j) {
            std::vector<std::size_t> next(maxTotal + 1, 0);
            for (std::size_t t = 0; t <= maxTotal; ++t) {
                if (ways[t] == 0) {
                    continue;
                }
                for (std::size_t n = 0; n <= perModeCap && t + n <= maxTotal; ++n) {
                    next[t + n] = std::min(limit, next[t + n] + ways[t]);
                }
            }
            ways = std::move(next);
        }
        std::size_t total = 0;
        for (const auto w : ways) {
            total = std::min(limit, total + w);
        }
        return total;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return states_.size(); }
    [[nodiscard]] std::size_t ladders() const noexcept { return ladders_; }
    [[nodiscard]] bool fermi() const noexcept { return fermi_; }
    [[nodiscard]] const std::vector<State> &states() const noexcept { return states_; }
    [[nodiscard]] std::size_t total_occupation(std::size_t idx) const noexcept {
        return totals_[idx];
    }

    [[nodiscard]] const SparseMatrix &lowering(std::size_t j) const { return lower_.at(j); }
    [[nodiscard]] SparseMatrix raising(std::size_t j) const { return lower_.at(j).adjoint(); }

    /// Occupation at which truncation starts to bite: the smaller of the
    /// boson per-mode cap and the total cap. Empty for an untruncated Fermi
    /// space, where every identity holds on the whole space.
    [[nodiscard]] std::optional<std::size_t> edge() const noexcept {
        std::optional<std::size_t> e;
        if (!fermi_) {
            e = perModeCap_;
        }
        if (totalCap_) {
            e = e ? std::min(*e, *totalCap_) : *totalCap_;
        }
        return e;
    }

    /// Basis states on which a degree-d polynomial in the ladders is computed
    /// without truncation error: total occupation <= edge - (d - 1).
    [[nodiscard]] std::vector<Eigen::Index> safe_columns(std::size_t degree) const {
        std::vector<Eigen::Index> cols;
        const auto e = edge();
        const std::size_t slack = degree == 0 ? 0 : degree - 1;
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (!e || (*e >= slack && totals_[i] <= *e - slack)) {
                cols.push_back(static_cast<Eigen::Index>(i));
            }
        }
        return cols;
    }

  private:
    void enumerate() {
        State s(ladders_, 0);
        const std::size_t maxTotal = totalCap_.value_or(ladders_ * perModeCap_);
        recurse(s, 0, 0, maxTotal);
        for (std::size_t i = 0; i < states_.size(); ++i) {
            index_.emplace(states_[i], i);
        }
    }

    void recurse(State &s, std::size_t j, std::size_t total, std::size_t maxTotal) {
        if (j == ladders_) {
            states_.push_back(s);
            totals_.push_back(total);
            return;
        }
        for (std::size_t n = 0; n <= perModeCap_ && total + n <= maxTotal; ++n) {
            s[j] = static_cast<std::uint8_t>(n);
            recurse(s, j + 1, total + n, maxTotal);
        }
        s[j] = 0;
    }

    void build_lowering() {
        const auto n = static_cast<Eigen::Index>(states_.size());
        lower_.reserve(ladders_);
        for (std::size_t j = 0; j < ladders_; ++j) {
            std::vector<Eigen::Triplet<cplx>> trip;
            for (std::size_t c = 0; c < states_.size(); ++c) {
                const State &s = states_[c];
                if (s[j] == 0) {
                    continue;
                }
                State t = s;
                --t[j];
                double amp = std::sqrt(static_cast<double>(s[j]));
                if (fermi_) {
                    std::size_t parity = 0;
                    for (std::size_t q = 0; q < j; ++q) {
                        parity += s[q];
                    }
                    if (parity % 2 == 1) {
                        amp = -amp;
                    }
                }
                trip.emplace_back(static_cast<Eigen::Index>(index_.at(t)),
                                  static_cast<Eigen::Index>(c), amp);
            }
            SparseMatrix m(n, n);
            m.setFromTriplets(trip.begin(), trip.end());
            lower_.push_back(std::move(m));
        }
    }

    std::size_t ladders_;
    std::size_t perModeCap_;
    std::optional<std::size_t> totalCap_;
    bool fermi_;
    std::vector<State> states_;
    std::vector<std::size_t> totals_;
    std::map<State, std::size_t> index_;
    std::vector<SparseMatrix> lower_;
};

/// Dense copy of the selected columns.
inline Matrix column_block(const SparseMatrix &op, const std::vector<Eigen::Index> &cols) {
    Matrix out = Matrix::Zero(op.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (SparseMatrix::InnerIterator it(op, cols[c]); it; ++it) {
            out(it.row(), static_cast<Eigen::Index>(c)) = it.value();
        }
    }
    return out;
}

/// Spectral norm of a tall column block, through its Gram matrix.
inline double spectral_norm(const Matrix &block) {
    if (block.size() == 0) {
        return 0.0;
    }
    const Matrix gram = block.adjoint() * block;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// ||op restricted to cols||_2
inline double restricted_norm(const SparseMatrix &op, const std::vector<Eigen::Index> &cols) {
    return spectral_norm(column_block(op, cols));
}

/// ||(op - c 1) restricted to cols||_2
inline double restricted_norm_minus_identity(const SparseMatrix &op, cplx c,
                                             const std::vector<Eigen::Index> &cols) {
    Matrix b = column_block(op, cols);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        b(cols[k], static_cast<Eigen::Index>(k)) -= c;
    }
    return spectral_norm(b);
}

} // namespace nosig
