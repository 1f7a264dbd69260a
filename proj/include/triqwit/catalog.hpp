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
 * Named states and state families, the fixed single-qubit unitaries of the
 * worked examples, and seeded random-state generators.
 *
 * Random generators take an explicit engine; the (seed, index) overloads
 * build an independent engine per draw so ensembles do not depend on draw
 * order.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "core.hpp"
#include "observables.hpp"
#include "pure_witness.hpp"

namespace triqwit {

using State = std::variant<PureState, DensityMatrix>;

inline DensityMatrix to_density(const State &s) {
    if (const auto *psi = std::get_if<PureState>(&s)) {
        return outer(*psi);
    }
    return std::get<DensityMatrix>(s);
}

enum class FamilyId {
    zero,
    ghz,
    w,
    psi_plus,
    rho1,
    sigma_insep,
    phi_b,
    sigma_b,
    rho3,
    rho_w,
};

struct FamilyInfo {
    FamilyId id;
    std::string_view name;
    std::vector<std::string_view> params;
    bool pure;
    std::string_view description;
};

inline const std::vector<FamilyInfo> &families() {
    static const std::vector<FamilyInfo> table{
        {FamilyId::zero, "zero", {}, true, "|000>"},
        {FamilyId::ghz, "ghz", {}, true, "(|000> + |111>)/sqrt2"},
        {FamilyId::w, "w", {}, true, "(|001> + |010> + |100>)/sqrt3"},
        {FamilyId::psi_plus, "psi_plus", {}, true,
         "|0> (x) (|00> + |11>)/sqrt2 on qubits 2,3"},
        {FamilyId::rho1, "rho1", {}, false,
         "equal mixture of a Bell pair on AB, AC, BC with the third qubit in "
         "|0>"},
        {FamilyId::sigma_insep, "sigma_insep", {}, false,
         "2/7 (P1 + P2 + P3) + 1/7 |011><011|"},
        {FamilyId::phi_b, "phi_b", {"b"}, true,
         "|1> (x) (sqrt((1+b)/2)|00> + sqrt((1-b)/2)|10>)"},
        {FamilyId::sigma_b, "sigma_b", {"b"}, false,
         "7b/(7b+1) sigma_insep + 1/(7b+1) |phi_b><phi_b| (PPT entangled)"},
        {FamilyId::rho3, "rho3", {"b", "p"}, false,
         "p sigma_b + (1-p) I/8"},
        {FamilyId::rho_w, "rho_w", {"p"}, false, "p |W><W| + (1-p) I/8"},
    };
    return table;
}

inline const FamilyInfo &family_info(FamilyId id) {
    for (const auto &f : families()) {
        if (f.id == id) {
            return f;
        }
    }
    throw std::logic_error("family missing from table");
}

inline std::optional<FamilyId> parse_family(std::string_view name) {
    for (const auto &f : families()) {
        if (f.name == name) {
            return f.id;
        }
    }
    return std::nullopt;
}

namespace detail {

inline Vec8 ket(std::initializer_list<std::pair<int, double>> entries) {
    Vec8 v = Vec8::Zero();
    for (const auto &[idx, amp] : entries) {
        v(idx) = amp;
    }
    return v;
}

inline Mat8 projector(const Vec8 &v) { return v * v.adjoint(); }

inline void require_unit_interval(std::string_view name, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("parameter " + std::string(name) + " = " +
                                std::to_string(x) + " outside [0, 1]");
    }
}

inline Vec8 phi_b(double b) {
    // |1> (x) (sqrt((1+b)/2)|00> + sqrt((1-b)/2)|10>) = |100>, |110>
    return ket({{4, std::sqrt((1.0 + b) / 2.0)},
                {6, std::sqrt((1.0 - b) / 2.0)}});
}

inline Mat8 sigma_insep() {
    const double r = 1.0 / std::numbers::sqrt2;
    const Vec8 p1 = ket({{0, r}, {5, r}}); // |000> + |101>
    const Vec8 p2 = ket({{1, r}, {6, r}}); // |001> + |110>
    const Vec8 p3 = ket({{2, r}, {7, r}}); // |010> + |111>
    return 2.0 / 7.0 * (projector(p1) + projector(p2) + projector(p3)) +
           1.0 / 7.0 * projector(ket({{3, 1.0}}));
}

/// Mixing weights {7b/(7b+1), 1/(7b+1)}; the first is 1 - second so they
/// add up to exactly one.
inline std::array<double, 2> sigma_b_weights(double b) {
    const double pure = 1.0 / (7.0 * b + 1.0);
    return {1.0 - pure, pure};
}

inline Mat8 sigma_b(double b) {
    const auto w = sigma_b_weights(b);
    return w[0] * sigma_insep() + w[1] * projector(phi_b(b));
}

} // namespace detail

/// Constructs a named state. `params` follows family_info(id).params order.
inline State make(FamilyId id, std::span<const double> params = {}) {
    const auto &info = family_info(id);
    if (params.size() != info.params.size()) {
        throw std::invalid_argument(
            "family " + std::string(info.name) + " takes " +
            std::to_string(info.params.size()) + " parameter(s), got " +
            std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        detail::require_unit_interval(info.params[i], params[i]);
    }
    const double r2 = 1.0 / std::numbers::sqrt2;
    const double r3 = 1.0 / std::sqrt(3.0);
    switch (id) {
    case FamilyId::zero:
        return PureState::basis(0, 0, 0);
    case FamilyId::ghz:
        return PureState(detail::ket({{0, r2}, {7, r2}}));
    case FamilyId::w:
        return PureState(detail::ket({{1, r3}, {2, r3}, {4, r3}}));
    case FamilyId::psi_plus:
        return PureState(detail::ket({{0, r2}, {3, r2}}));
    case FamilyId::rho1: {
        const Vec8 ab = detail::ket({{0, r2}, {6, r2}}); // |000> + |110>
        const Vec8 ac = detail::ket({{0, r2}, {5, r2}}); // |000> + |101>
        const Vec8 bc = detail::ket({{0, r2}, {3, r2}}); // |000> + |011>
        return DensityMatrix((detail::projector(ab) + detail::projector(ac) +
                              detail::projector(bc)) /
                             3.0);
    }
    case FamilyId::sigma_insep:
        return DensityMatrix(detail::sigma_insep());
    case FamilyId::phi_b:
        return PureState(detail::phi_b(params[0]));
    case FamilyId::sigma_b:
        return DensityMatrix(detail::sigma_b(params[0]));
    case FamilyId::rho3: {
        const double b = params[0];
        const double p = params[1];
        return DensityMatrix(p * detail::sigma_b(b) +
                             (1.0 - p) / 8.0 * Mat8::Identity());
    }
    case FamilyId::rho_w: {
        const double p = params[0];
        const Vec8 w = detail::ket({{1, r3}, {2, r3}, {4, r3}});
        return DensityMatrix(p * detail::projector(w) +
                             (1.0 - p) / 8.0 * Mat8::Identity());
    }
    }
    throw std::logic_error("unhandled family");
}

inline State make(FamilyId id, std::initializer_list<double> params) {
    return make(id, std::span<const double>(params.begin(), params.size()));
}

enum class FixedUnitary { u1, u2, v2 };

inline SingleQubitUnitary fixed_unitary(FixedUnitary name) {
    Mat2 m;
    switch (name) {
    case FixedUnitary::u1:
    case FixedUnitary::u2:
        // |0><1| - |1><0|
        m << 0.0, 1.0, -1.0, 0.0;
        break;
    case FixedUnitary::v2: {
        const double r = 1.0 / std::numbers::sqrt2;
        m << r, r, -r, r;
        break;
    }
    }
    return SingleQubitUnitary(m);
}

/// A = U1-conjugated Paulis, B = C = Paulis.
inline WitnessSetting example1_setting() {
    return {triple_from_unitary(fixed_unitary(FixedUnitary::u1)),
            pauli_triple(), pauli_triple()};
}

/// A = U2-conjugated, B = V2-conjugated, C = Paulis.
inline WitnessSetting example2_setting() {
    return {triple_from_unitary(fixed_unitary(FixedUnitary::u2)),
            triple_from_unitary(fixed_unitary(FixedUnitary::v2)),
            pauli_triple()};
}

/// Closed form of T1 on sigma_b under example2_setting().
inline double sigma_b_t1_closed_form(double b) {
    return -32.0 * b * (-1.0 + b + std::sqrt(1.0 - b * b)) /
           ((1.0 + 7.0 * b) * (1.0 + 7.0 * b));
}

// ---------------------------------------------------------------------------
// Random states

using Rng = std::mt19937_64;

/// Independent engine for draw `index` of stream `seed`.
inline Rng make_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

inline Complex complex_gaussian(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

template <int N>
Eigen::Matrix<Complex, N, 1> haar_ket(Rng &rng) {
    Eigen::Matrix<Complex, N, 1> v;
    for (int i = 0; i < N; ++i) {
        v(i) = complex_gaussian(rng);
    }
    return v / v.norm();
}

/// Wootters concurrence 2|a00 a11 - a01 a10| of a two-qubit ket.
inline double two_qubit_concurrence(const Eigen::Vector4cd &v) {
    return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

inline PureState haar_pure(Rng &rng) { return PureState(haar_ket<8>(rng)); }

inline PureState product_pure(Rng &rng) {
    const auto a = haar_ket<2>(rng);
    const auto b = haar_ket<2>(rng);
    const auto c = haar_ket<2>(rng);
    return PureState::product(a, b, c);
}

/// Minimum concurrence of the entangled pair in bisep_pure draws.
inline constexpr double kBiseparablePairConcurrence = 0.1;

/**
 * Haar qubit on `party` (1..3) times a Haar two-qubit state of the others,
 * resampled until the pair's concurrence reaches 0.1 so the cut is the only
 * separable one.
 */
inline PureState bisep_pure(Rng &rng, std::size_t party) {
    const std::size_t mask = detail::party_mask(party, 3);
    const std::size_t low = mask - 1;
    const auto q = haar_ket<2>(rng);
    Eigen::Vector4cd pair;
    do {
        pair = haar_ket<4>(rng);
    } while (two_qubit_concurrence(pair) < kBiseparablePairConcurrence);
    Vec8 v;
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const std::size_t bit = (idx & mask) ? 1 : 0;
        const std::size_t rest = ((idx >> 1) & ~low) | (idx & low);
        v(static_cast<Eigen::Index>(idx)) =
            q(static_cast<Eigen::Index>(bit)) *
            pair(static_cast<Eigen::Index>(rest));
    }
    return PureState(v);
}

/// Uniform point on the probability simplex with k vertices.
inline std::vector<double> simplex_weights(Rng &rng, std::size_t k) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto &x : w) {
        x = e(rng);
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

namespace detail {

inline DensityMatrix mixture_of(Rng &rng, std::size_t k, auto &&draw) {
    const auto w = simplex_weights(rng, k);
    Mat8 rho = Mat8::Zero();
    for (std::size_t i = 0; i < k; ++i) {
        const PureState psi = draw();
        rho += w[i] * (psi.amplitudes() * psi.amplitudes().adjoint());
    }
    return DensityMatrix(rho);
}

} // namespace detail

inline constexpr std::size_t kDefaultMixtureSize = 8;

inline DensityMatrix fully_sep_mixed(Rng &rng,
                                     std::size_t k = kDefaultMixtureSize) {
    return detail::mixture_of(rng, k, [&] { return product_pure(rng); });
}

/**
 * Mixture of bisep_pure draws whose isolated party is picked uniformly from
 * `parties` (default: all three).
 */
inline DensityMatrix bisep_mixed(Rng &rng, std::span<const std::size_t> parties,
                                 std::size_t k = kDefaultMixtureSize) {
    if (parties.empty()) {
        throw std::invalid_argument("bisep_mixed needs at least one party");
    }
    std::uniform_int_distribution<std::size_t> pick(0, parties.size() - 1);
    return detail::mixture_of(
        rng, k, [&] { return bisep_pure(rng, parties[pick(rng)]); });
}

inline DensityMatrix bisep_mixed(Rng &rng, std::size_t k = kDefaultMixtureSize) {
    static constexpr std::array<std::size_t, 3> all{1, 2, 3};
    return bisep_mixed(rng, all, k);
}

/// G G^dagger / tr, G an 8 x 8 complex Ginibre matrix.
inline DensityMatrix random_mixed(Rng &rng) {
    Mat8 g;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            g(r, c) = complex_gaussian(rng);
        }
    }
    Mat8 rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Clear round-off asymmetry from the product.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(rho);
}

/// Haar-random element of SO(3).
inline Eigen::Matrix3d random_rotation(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix3d g;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            g(r, c) = n(rng);
        }
    }
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
    Eigen::Matrix3d q = qr.householderQ();
    const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 3; ++i) {
        if (r(i, i) < 0.0) {
            q.col(i) *= -1.0;
        }
    }
    if (q.determinant() < 0.0) {
        q.col(0) *= -1.0;
    }
    return q;
}

/// Random setting; every triple gets orientation `orientation` (+1 or -1).
inline WitnessSetting random_setting(Rng &rng, int orientation = 1) {
    const Eigen::Matrix3d flip =
        Eigen::Vector3d(1.0, 1.0, orientation < 0 ? -1.0 : 1.0).asDiagonal();
    return {triple_from_rotation(flip * random_rotation(rng)),
            triple_from_rotation(flip * random_rotation(rng)),
            triple_from_rotation(flip * random_rotation(rng))};
}

enum class GeneratorId {
    haar_pure,
    product_pure,
    bisep_pure,
    fully_sep_mixed,
    bisep_mixed,
    random_mixed,
};

inline std::optional<GeneratorId> parse_generator(std::string_view name) {
    static constexpr std::array<std::pair<std::string_view, GeneratorId>, 6>
        names{{{"haar_pure", GeneratorId::haar_pure},
               {"product_pure", GeneratorId::product_pure},
               {"bisep_pure", GeneratorId::bisep_pure},
               {"fully_sep_mixed", GeneratorId::fully_sep_mixed},
               {"bisep_mixed", GeneratorId::bisep_mixed},
               {"random_mixed", GeneratorId::random_mixed}}};
    for (const auto &[n, id] : names) {
        if (n == name) {
            return id;
        }
    }
    return std::nullopt;
}

/**
 * Draw `index` of generator `gen` under `seed`.
 *
 * params: bisep_pure takes the isolated party (1..3); the mixed generators
 * optionally take the mixture size.
 */
inline State random_state(GeneratorId gen, std::uint64_t seed,
                          std::uint64_t index,
                          std::span<const double> params = {}) {
    Rng rng = make_rng(seed, index);
    auto size_param = [&] {
        return params.empty() ? kDefaultMixtureSize
                              : static_cast<std::size_t>(params[0]);
    };
    switch (gen) {
    case GeneratorId::haar_pure:
        return haar_pure(rng);
    case GeneratorId::product_pure:
        return product_pure(rng);
    case GeneratorId::bisep_pure: {
        if (params.size() != 1) {
            throw std::invalid_argument("bisep_pure needs the isolated party");
        }
        return bisep_pure(rng, static_cast<std::size_t>(params[0]));
    }
    case GeneratorId::fully_sep_mixed:
        return fully_sep_mixed(rng, size_param());
    case GeneratorId::bisep_mixed:
        return bisep_mixed(rng, size_param());
    case GeneratorId::random_mixed:
        return random_mixed(rng);
    }
    throw std::logic_error("unhandled generator");
}

} // namespace triqwit
