// Copyright 2026 The triqwit Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/** @file
 * Pure-state bipartite concurrence (amplitude form and Pauli-polynomial form)
 * and the exact fully separable / biseparable / genuine classifier.
 *
 * "Squared concurrence" here is (sum|a_0jk|^2)(sum|a_1jk|^2) - |sum a_0jk
 * a_1jk^*|^2 = det(rho_1), which is half of 1 - tr(rho_1^2). GHZ gives 1/4.
 */

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "core.hpp"
#include "observables.hpp"
#include "witness.hpp"

namespace triqwit {

/// Single qubit `party` against the other two.
enum class Bipartition { Cut1_23 = 1, Cut2_13 = 2, Cut3_12 = 3 };

inline constexpr std::array<Bipartition, 3> kAllCuts{
    Bipartition::Cut1_23, Bipartition::Cut2_13, Bipartition::Cut3_12};

inline std::size_t isolated_party(Bipartition cut) {
    return static_cast<std::size_t>(cut);
}

inline std::string to_string(Bipartition cut) {
    switch (cut) {
    case Bipartition::Cut1_23: return "1|23";
    case Bipartition::Cut2_13: return "2|13";
    case Bipartition::Cut3_12: return "12|3";
    }
    return "?";
}

/// Squared concurrence straight from the amplitudes; value in [0, 1/4].
inline double concurrence_sq_oracle(const PureState &psi, Bipartition cut) {
    const std::size_t mask = std::size_t{1} << (3 - isolated_party(cut));
    double n0 = 0.0;
    double n1 = 0.0;
    Complex overlap{0.0, 0.0};
    for (std::size_t idx = 0; idx < 8; ++idx) {
        if (idx & mask) {
            continue;
        }
        const Complex a0 = psi.amplitudes()(static_cast<Eigen::Index>(idx));
        const Complex a1 =
            psi.amplitudes()(static_cast<Eigen::Index>(idx | mask));
        n0 += std::norm(a0);
        n1 += std::norm(a1);
        overlap += a0 * std::conj(a1);
    }
    return n0 * n1 - std::norm(overlap);
}

inline WitnessId g_id(std::size_t which) {
    switch (which) {
    case 1: return WitnessId::G1;
    case 2: return WitnessId::G2;
    case 3: return WitnessId::G3;
    default:
        throw std::out_of_range("G witness index must be 1, 2 or 3");
    }
}

/// Pauli-polynomial form of the squared concurrence of cut `which`|rest.
inline double g_witness(const DensityMatrix &rho, std::size_t which) {
    return witness_value(rho, WitnessSetting::pauli(), g_id(which));
}

inline double g_witness(const PureState &psi, std::size_t which) {
    return g_witness(outer(psi), which);
}

enum class PureLabel { FullySeparable, Biseparable, GenuineEntangled };

inline std::string to_string(PureLabel l) {
    switch (l) {
    case PureLabel::FullySeparable: return "FullySeparable";
    case PureLabel::Biseparable: return "Biseparable";
    case PureLabel::GenuineEntangled: return "GenuineEntangled";
    }
    return "?";
}

struct PureClassification {
    PureLabel label;
    /// Isolated party (1..3) when label is Biseparable, otherwise 0.
    std::size_t party = 0;
    std::array<double, 3> g_values{};
    double tol = 1e-8;

    [[nodiscard]] std::string describe() const {
        if (label == PureLabel::Biseparable) {
            return "Biseparable(" + std::to_string(party) + ")";
        }
        return to_string(label);
    }
};

/// Raised when the G values form a pattern no exact pure state can produce.
class InconsistentClassification : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Labels a pure state from its three G values.
 *
 * At least two values <= tol means fully separable. The third value must then
 * be small too: for pure states each G is bounded by the sum of the other
 * two, so a third value above g_i + g_j + tol signals numerical trouble and
 * throws InconsistentClassification.
 */
inline PureClassification classify_pure(const PureState &psi,
                                        double tol = 1e-8) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("classification tolerance must be > 0");
    }
    PureClassification out{PureLabel::GenuineEntangled, 0, {}, tol};
    const auto rho = outer(psi);
    std::size_t below = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        out.g_values[i] = g_witness(rho, i + 1);
        if (out.g_values[i] <= tol) {
            ++below;
        }
    }
    const auto &g = out.g_values;
    if (below >= 2) {
        for (std::size_t k = 0; k < 3; ++k) {
            const double others = g[(k + 1) % 3] + g[(k + 2) % 3];
            if (g[k] > others + tol) {
                throw InconsistentClassification(
                    "two G values vanish but G" + std::to_string(k + 1) +
                    " = " + std::to_string(g[k]) + " does not");
            }
        }
        out.label = PureLabel::FullySeparable;
    } else if (below == 1) {
        out.label = PureLabel::Biseparable;
        for (std::size_t i = 0; i < 3; ++i) {
            if (g[i] <= tol) {
                out.party = i + 1;
            }
        }
    }
    return out;
}

} // namespace triqwit
