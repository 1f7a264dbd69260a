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
 * Finite-shot simulation of joint +-1 coincidence measurements of local
 * product observables, and witness estimates with bootstrap error bars.
 *
 * Each product observable is measured projectively as a whole: one shot is
 * one +-1 outcome with P(+1) = (1 + <O>) / 2.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "core.hpp"
#include "observables.hpp"
#include "witness.hpp"

namespace triqwit {

/// Per party either a Bloch-vector observable or the identity.
struct ProductObservable {
    std::array<std::optional<BlochVector>, 3> factors;

    [[nodiscard]] bool is_identity() const {
        return !factors[0] && !factors[1] && !factors[2];
    }

    [[nodiscard]] HermitianOperator lifted() const {
        std::array<HermitianOperator, 3> ops{
            HermitianOperator::identity(2), HermitianOperator::identity(2),
            HermitianOperator::identity(2)};
        for (std::size_t p = 0; p < 3; ++p) {
            if (factors[p]) {
                ops[p] = observable_from_bloch(*factors[p]);
            }
        }
        return tensor(ops);
    }

    /// Pauli string such as "ZZZ" or "IXI".
    static ProductObservable from_pauli(std::string_view s) {
        if (s.size() != 3) {
            throw std::invalid_argument("Pauli product needs 3 letters");
        }
        ProductObservable o;
        for (std::size_t p = 0; p < 3; ++p) {
            switch (s[p]) {
            case 'I': break;
            case 'X': o.factors[p] = BlochVector(1, 0, 0); break;
            case 'Y': o.factors[p] = BlochVector(0, 1, 0); break;
            case 'Z': o.factors[p] = BlochVector(0, 0, 1); break;
            default:
                throw std::invalid_argument("bad Pauli letter in " +
                                            std::string(s));
            }
        }
        return o;
    }

    static ProductObservable from_setting(const WitnessSetting &s,
                                          const LocalProduct &p) {
        ProductObservable o;
        for (std::size_t party = 0; party < 3; ++party) {
            if (p.ops[party] != 0) {
                o.factors[party] = s.party(party).vector(p.ops[party] - 1u);
            }
        }
        return o;
    }
};

struct MeasurementPlan {
    std::vector<ProductObservable> settings;
    std::uint64_t shots = 1;
};

struct ExpectationEstimate {
    double mean = 1.0;
    double standard_error = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t plus_count = 0;
};

namespace detail {

inline ExpectationEstimate estimate_from_counts(std::uint64_t plus,
                                                std::uint64_t shots) {
    const double n = static_cast<double>(shots);
    const double mean = (2.0 * static_cast<double>(plus) - n) / n;
    return {mean, std::sqrt(std::max(0.0, 1.0 - mean * mean) / n), shots, plus};
}

/// Probability of the +1 outcome, snapping round-off at the poles.
inline double plus_probability(double exact) {
    if (std::abs(exact) > 1.0 + 1e-9) {
        throw std::logic_error("expectation outside [-1, 1]");
    }
    if (exact >= 1.0 - 1e-14) return 1.0;
    if (exact <= -1.0 + 1e-14) return 0.0;
    return (1.0 + exact) / 2.0;
}

inline std::uint64_t draw_plus_count(Rng &rng, std::uint64_t shots, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return shots;
    // Number of +1 outcomes among `shots` independent Bernoulli(p) trials.
    std::binomial_distribution<std::uint64_t> dist(shots, p);
    return dist(rng);
}

} // namespace detail

inline ExpectationEstimate sample_expectation(const DensityMatrix &rho,
                                              const ProductObservable &obs,
                                              std::uint64_t shots,
                                              std::uint64_t seed,
                                              std::uint64_t stream = 0) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be >= 1");
    }
    if (obs.is_identity()) {
        return {1.0, 0.0, shots, shots};
    }
    const double p = detail::plus_probability(expectation(rho, obs.lifted()));
    Rng rng = make_rng(seed, stream);
    return detail::estimate_from_counts(detail::draw_plus_count(rng, shots, p),
                                        shots);
}

/// Runs every setting of a plan; setting i draws from stream i.
inline std::vector<ExpectationEstimate>
run_plan(const DensityMatrix &rho, const MeasurementPlan &plan,
         std::uint64_t seed) {
    std::vector<ExpectationEstimate> out;
    out.reserve(plan.settings.size());
    for (std::size_t i = 0; i < plan.settings.size(); ++i) {
        out.push_back(
            sample_expectation(rho, plan.settings[i], plan.shots, seed, i));
    }
    return out;
}

inline constexpr std::size_t kBootstrapResamples = 200;

struct WitnessEstimate {
    WitnessId witness;
    double value;
    double error;
    std::uint64_t shots_per_setting;
    std::vector<LocalProduct> products;
    std::vector<ExpectationEstimate> expectations;
};

/**
 * Measures each distinct product of the witness once (shared across the
 * brackets that use it), plugs the means into the polynomial, and reports the
 * standard deviation of 200 bootstrap resamples of the per-setting outcome
 * counts as the error.
 */
inline WitnessEstimate estimate_witness(const DensityMatrix &rho,
                                        WitnessId witness,
                                        const WitnessSetting &setting,
                                        std::uint64_t shots,
                                        std::uint64_t seed,
                                        std::size_t resamples =
                                            kBootstrapResamples) {
    const auto &poly = polynomial(witness);
    const WitnessSetting &s =
        is_pauli_only(witness) ? WitnessSetting::pauli() : setting;
    MeasurementPlan plan;
    plan.shots = shots;
    const auto products = distinct_products(poly);
    for (const auto &p : products) {
        plan.settings.push_back(ProductObservable::from_setting(s, p));
    }
    const auto estimates = run_plan(rho, plan, seed);

    auto value_from = [&](const std::vector<double> &means) {
        return evaluate(poly, [&](const LocalProduct &p) {
            const auto it = std::lower_bound(products.begin(), products.end(), p);
            return means[static_cast<std::size_t>(it - products.begin())];
        });
    };

    std::vector<double> means;
    for (const auto &e : estimates) {
        means.push_back(e.mean);
    }
    WitnessEstimate out{witness, value_from(means), 0.0, shots, products,
                        estimates};

    if (resamples >= 2) {
        Rng rng = make_rng(seed, 0xB0075724ull);
        std::vector<double> boot;
        boot.reserve(resamples);
        std::vector<double> resampled(means.size());
        for (std::size_t r = 0; r < resamples; ++r) {
            for (std::size_t i = 0; i < estimates.size(); ++i) {
                const double phat = static_cast<double>(estimates[i].plus_count) /
                                    static_cast<double>(shots);
                resampled[i] = detail::estimate_from_counts(
                                   detail::draw_plus_count(rng, shots, phat),
                                   shots)
                                   .mean;
            }
            boot.push_back(value_from(resampled));
        }
        double mean = 0.0;
        for (const double b : boot) mean += b;
        mean /= static_cast<double>(boot.size());
        double var = 0.0;
        for (const double b : boot) var += (b - mean) * (b - mean);
        out.error = std::sqrt(var / static_cast<double>(boot.size() - 1));
    }
    return out;
}

} // namespace triqwit
