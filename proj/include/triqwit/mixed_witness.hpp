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
 * Mixed-state witnesses built from complementary local observables.
 *
 *  - T1 < 0 rules out separability w.r.t. both 1|23 and 12|3; T2 the pair
 *    2|13 and 12|3; T3 the pair 1|23 and 2|13.
 *  - any F_l < 0 rules out full separability.
 *  - F1 + F2 + F3 < -2 certifies genuine entanglement.
 */

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "observables.hpp"
#include "witness.hpp"

namespace triqwit {

inline double t_witness(const DensityMatrix &rho, const WitnessSetting &s,
                        std::size_t which) {
    switch (which) {
    case 1: return witness_value(rho, s, WitnessId::T1);
    case 2: return witness_value(rho, s, WitnessId::T2);
    case 3: return witness_value(rho, s, WitnessId::T3);
    default: throw std::out_of_range("T witness index must be 1, 2 or 3");
    }
}

inline double f_witness(const DensityMatrix &rho, const WitnessSetting &s,
                        std::size_t which) {
    switch (which) {
    case 1: return witness_value(rho, s, WitnessId::F1);
    case 2: return witness_value(rho, s, WitnessId::F2);
    case 3: return witness_value(rho, s, WitnessId::F3);
    default: throw std::out_of_range("F witness index must be 1, 2 or 3");
    }
}

inline double f_sum(const DensityMatrix &rho, const WitnessSetting &s) {
    return witness_value(rho, s, WitnessId::Fsum);
}

/// Lower bound of F1 + F2 + F3 over biseparable states.
inline constexpr double kBiseparableFsumBound = -2.0;

struct WitnessValue {
    WitnessId id;
    double value;
    std::size_t setting_index;
};

struct VerdictFlag {
    bool set = false;
    /// Most negative witnessing value seen over all settings.
    double value = std::numeric_limits<double>::infinity();
    WitnessId witness = WitnessId::T1;
    std::size_t setting_index = 0;
};

struct MixedVerdict {
    VerdictFlag not_sep_1_23_and_12_3;
    VerdictFlag not_sep_2_13_and_12_3;
    VerdictFlag not_sep_1_23_and_2_13;
    VerdictFlag not_fully_separable;
    VerdictFlag genuine_entangled;
    /// Every evaluated value, setting-major.
    std::vector<WitnessValue> values;

    [[nodiscard]] bool any() const {
        return not_sep_1_23_and_12_3.set || not_sep_2_13_and_12_3.set ||
               not_sep_1_23_and_2_13.set || not_fully_separable.set ||
               genuine_entangled.set;
    }
};

namespace detail {

// Strictly smaller wins, so the lowest setting index survives ties.
inline void track(VerdictFlag &f, WitnessId id, double value, std::size_t idx,
                  double threshold) {
    if (value < f.value) {
        f.value = value;
        f.witness = id;
        f.setting_index = idx;
    }
    f.set = f.value < threshold;
}

} // namespace detail

/**
 * Evaluates T1..T3, F1..F3 and Fsum for every setting and raises each flag
 * when some setting crosses its bound by more than `tol`.
 */
inline MixedVerdict verdict(const DensityMatrix &rho,
                            std::span<const WitnessSetting> settings,
                            double tol = 1e-9) {
    if (settings.empty()) {
        throw std::invalid_argument("verdict needs at least one setting");
    }
    MixedVerdict v;
    for (std::size_t i = 0; i < settings.size(); ++i) {
        DirectExpectations expect(rho, settings[i]);
        auto eval = [&](WitnessId id) {
            const double value = evaluate(polynomial(id), expect);
            v.values.push_back({id, value, i});
            return value;
        };
        detail::track(v.not_sep_1_23_and_12_3, WitnessId::T1,
                      eval(WitnessId::T1), i, -tol);
        detail::track(v.not_sep_2_13_and_12_3, WitnessId::T2,
                      eval(WitnessId::T2), i, -tol);
        detail::track(v.not_sep_1_23_and_2_13, WitnessId::T3,
                      eval(WitnessId::T3), i, -tol);
        for (const auto id : {WitnessId::F1, WitnessId::F2, WitnessId::F3}) {
            detail::track(v.not_fully_separable, id, eval(id), i, -tol);
        }
        detail::track(v.genuine_entangled, WitnessId::Fsum,
                      eval(WitnessId::Fsum), i, kBiseparableFsumBound - tol);
    }
    return v;
}

inline MixedVerdict verdict(const DensityMatrix &rho, const WitnessSetting &s,
                            double tol = 1e-9) {
    return verdict(rho, std::span<const WitnessSetting>(&s, 1), tol);
}

/// The verdict flag a single witness value bears on, by witness id.
struct WitnessBound {
    double threshold;
    std::string meaning;
};

inline WitnessBound witness_bound(WitnessId id) {
    switch (id) {
    case WitnessId::T1:
        return {0.0, "not separable under both 1|23 and 12|3"};
    case WitnessId::T2:
        return {0.0, "not separable under both 2|13 and 12|3"};
    case WitnessId::T3:
        return {0.0, "not separable under both 1|23 and 2|13"};
    case WitnessId::F1:
    case WitnessId::F2:
    case WitnessId::F3:
        return {0.0, "not fully separable"};
    case WitnessId::Fsum:
        return {kBiseparableFsumBound, "genuine entangled"};
    case WitnessId::G1:
        return {0.0, "entangled across 1|23 (pure states)"};
    case WitnessId::G2:
        return {0.0, "entangled across 2|13 (pure states)"};
    case WitnessId::G3:
        return {0.0, "entangled across 12|3 (pure states)"};
    }
    return {0.0, ""};
}

/// True when `value` certifies what witness_bound(id).meaning states.
inline bool violates(WitnessId id, double value, double tol = 1e-9) {
    if (is_pauli_only(id)) {
        return value > tol;
    }
    return value < witness_bound(id).threshold - tol;
}

} // namespace triqwit
