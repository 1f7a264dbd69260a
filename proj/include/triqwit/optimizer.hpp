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
 * Best-effort minimization of a mixed-state witness over complementary local
 * observables, and fixed-setting parameter scans over state families.
 *
 * The search space is 9 Z-Y-Z Euler angles (three per party) with every
 * triple pinned to orientation +1. Start 0 begins at zero angles (the Pauli
 * setting); later starts draw uniform angles. Each start runs a coordinate pattern
 * search: probe +step then -step on each angle, keep any improvement, halve
 * the step after a sweep without one.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "core.hpp"
#include "observables.hpp"
#include "witness.hpp"

namespace triqwit {

struct OptimizerConfig {
    std::size_t starts = 64;
    std::size_t max_iterations = 400;
    double initial_step = 0.5;
    double shrink = 0.5;
    double min_step = 1e-7;
    std::uint64_t seed = 0;
    /// Keep the accepted-value sequence of every start.
    bool record_trace = false;

    void validate() const {
        if (starts == 0 || max_iterations == 0 || !(initial_step > 0.0) ||
            !(min_step > 0.0) || !(shrink > 0.0 && shrink < 1.0)) {
            throw std::invalid_argument("invalid optimizer configuration");
        }
    }
};

using EulerAngles = std::array<double, 9>;

struct OptimizationResult {
    WitnessId witness;
    double best_value;
    EulerAngles best_angles{};
    std::size_t best_start = 0;
    std::vector<double> start_values;
    std::size_t evaluations = 0;
    /// Filled only with OptimizerConfig::record_trace.
    std::vector<std::vector<double>> traces;
};

/// Setting for angles (alpha, beta, gamma) of party A, then B, then C.
inline WitnessSetting setting_from_angles(const EulerAngles &a) {
    return {triple_from_euler(a[0], a[1], a[2]),
            triple_from_euler(a[3], a[4], a[5]),
            triple_from_euler(a[6], a[7], a[8])};
}

inline OptimizationResult minimize_witness(const DensityMatrix &rho,
                                           WitnessId witness,
                                           const OptimizerConfig &cfg = {}) {
    cfg.validate();
    if (is_pauli_only(witness)) {
        throw std::invalid_argument(std::string(to_string(witness)) +
                                    " is fixed to Pauli observables and "
                                    "cannot be optimized");
    }
    const CorrelationTensor corr(rho);
    const auto &poly = polynomial(witness);

    OptimizationResult result;
    result.witness = witness;
    result.best_value = std::numeric_limits<double>::infinity();
    auto objective = [&](const EulerAngles &a) {
        ++result.evaluations;
        const auto s = setting_from_angles(a);
        return evaluate(poly, [&](const LocalProduct &p) {
            return corr.expectation_of(s, p);
        });
    };

    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::size_t start = 0; start < cfg.starts; ++start) {
        // Start 0 sits on the canonical Pauli setting, so the result can
        // never be worse than it.
        Rng rng = make_rng(cfg.seed, start);
        EulerAngles x{};
        if (start > 0) {
            for (auto &v : x) {
                v = angle(rng);
            }
        }
        double fx = objective(x);
        std::vector<double> trace;
        if (cfg.record_trace) {
            trace.push_back(fx);
        }
        double step = cfg.initial_step;
        for (std::size_t it = 0;
             it < cfg.max_iterations && step >= cfg.min_step; ++it) {
            bool improved = false;
            for (std::size_t k = 0; k < x.size(); ++k) {
                for (const double dir : {+1.0, -1.0}) {
                    EulerAngles y = x;
                    y[k] += dir * step;
                    const double fy = objective(y);
                    if (fy < fx) {
                        x = y;
                        fx = fy;
                        improved = true;
                        if (cfg.record_trace) {
                            trace.push_back(fx);
                        }
                        break;
                    }
                }
            }
            if (!improved) {
                step *= cfg.shrink;
            }
        }
        result.start_values.push_back(fx);
        if (cfg.record_trace) {
            result.traces.push_back(std::move(trace));
        }
        if (fx < result.best_value) {
            result.best_value = fx;
            result.best_angles = x;
            result.best_start = start;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Parameter scans

/// One grid axis: values lo, lo + step, ..., hi (inclusive).
struct GridAxis {
    std::string name;
    double lo;
    double hi;
    double step;

    [[nodiscard]] std::vector<double> points() const {
        if (!(step > 0.0) || !(hi >= lo)) {
            throw std::invalid_argument("grid axis " + name +
                                        " needs lo <= hi and step > 0");
        }
        const auto n =
            static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = lo + static_cast<double>(i) * step;
        }
        if (std::abs(out.back() - hi) <= 1e-9 * std::max(1.0, std::abs(hi))) {
            out.back() = hi;
        }
        return out;
    }
};

/// Parses "name:lo:hi:step".
inline GridAxis parse_grid_axis(const std::string &spec) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = spec.find(':', pos);
        parts.push_back(spec.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() != 4 || parts[0].empty()) {
        throw std::invalid_argument("grid must be name:lo:hi:step, got " + spec);
    }
    try {
        return {parts[0], std::stod(parts[1]), std::stod(parts[2]),
                std::stod(parts[3])};
    } catch (const std::logic_error &) {
        throw std::invalid_argument("grid bounds are not numbers: " + spec);
    }
}

struct ScanTable {
    std::vector<std::string> columns; ///< parameter names, then "value"
    std::vector<std::vector<double>> rows;
};

/**
 * Evaluates a fixed-setting witness over the Cartesian product of `grid`,
 * first axis outermost. Every family parameter must be covered by exactly
 * one axis or by `fixed`.
 */
inline ScanTable scan_witness(FamilyId family, std::span<const GridAxis> grid,
                              WitnessId witness, const WitnessSetting &setting,
                              std::span<const std::pair<std::string, double>>
                                  fixed = {}) {
    const auto &info = family_info(family);
    std::vector<int> axis_of(info.params.size(), -1);
    std::vector<double> values(info.params.size(), 0.0);
    std::vector<bool> bound(info.params.size(), false);
    auto slot = [&](const std::string &name) -> std::size_t {
        for (std::size_t i = 0; i < info.params.size(); ++i) {
            if (info.params[i] == name) {
                if (bound[i]) {
                    throw std::invalid_argument("parameter " + name +
                                                " given twice");
                }
                bound[i] = true;
                return i;
            }
        }
        throw std::invalid_argument("family " + std::string(info.name) +
                                    " has no parameter " + name);
    };
    std::vector<std::vector<double>> points;
    for (std::size_t a = 0; a < grid.size(); ++a) {
        axis_of[slot(grid[a].name)] = static_cast<int>(a);
        points.push_back(grid[a].points());
        if (points.back().front() < 0.0 || points.back().back() > 1.0 + 1e-12) {
            throw std::domain_error("grid axis " + grid[a].name +
                                    " leaves [0, 1]");
        }
    }
    for (const auto &[name, v] : fixed) {
        values[slot(name)] = v;
    }
    for (std::size_t i = 0; i < bound.size(); ++i) {
        if (!bound[i]) {
            throw std::invalid_argument("parameter " +
                                        std::string(info.params[i]) +
                                        " is neither scanned nor fixed");
        }
    }

    ScanTable table;
    for (const auto &g : grid) {
        table.columns.push_back(g.name);
    }
    table.columns.emplace_back("value");

    std::vector<std::size_t> idx(grid.size(), 0);
    std::size_t total = 1;
    for (const auto &p : points) {
        total *= p.size();
    }
    for (std::size_t n = 0; n < total; ++n) {
        std::vector<double> row;
        for (std::size_t a = 0; a < grid.size(); ++a) {
            row.push_back(points[a][idx[a]]);
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (axis_of[i] >= 0) {
                values[i] = std::min(1.0, row[static_cast<std::size_t>(axis_of[i])]);
            }
        }
        const auto rho = to_density(make(family, values));
        row.push_back(witness_value(rho, setting, witness));
        table.rows.push_back(std::move(row));
        // Odometer increment, last axis fastest.
        for (std::size_t a = grid.size(); a-- > 0;) {
            if (++idx[a] < points[a].size()) break;
            idx[a] = 0;
        }
    }
    return table;
}

} // namespace triqwit
