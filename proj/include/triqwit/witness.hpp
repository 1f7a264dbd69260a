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
 * Witnesses as data: every G, T and F witness is
 *
 *     constant + sum_b weight_b * < sum_t coeff_t * O_t >^2
 *
 * where each O_t is a local product (one factor per party, each factor the
 * identity or one observable of that party's complementary triple). The
 * tables below are transcribed from the published formulas in their own
 * notation ("A3B3C3", "IZZ") so they can be audited term by term.
 */

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "observables.hpp"

namespace triqwit {

enum class WitnessId { G1, G2, G3, T1, T2, T3, F1, F2, F3, Fsum };

inline constexpr std::array<WitnessId, 10> kAllWitnesses{
    WitnessId::G1, WitnessId::G2, WitnessId::G3, WitnessId::T1,
    WitnessId::T2, WitnessId::T3, WitnessId::F1, WitnessId::F2,
    WitnessId::F3, WitnessId::Fsum};

inline std::string_view to_string(WitnessId id) {
    switch (id) {
    case WitnessId::G1: return "G1";
    case WitnessId::G2: return "G2";
    case WitnessId::G3: return "G3";
    case WitnessId::T1: return "T1";
    case WitnessId::T2: return "T2";
    case WitnessId::T3: return "T3";
    case WitnessId::F1: return "F1";
    case WitnessId::F2: return "F2";
    case WitnessId::F3: return "F3";
    case WitnessId::Fsum: return "Fsum";
    }
    return "?";
}

inline std::optional<WitnessId> parse_witness(std::string_view name) {
    for (const auto id : kAllWitnesses) {
        if (to_string(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

/// G witnesses are fixed to the Pauli setting.
inline bool is_pauli_only(WitnessId id) {
    return id == WitnessId::G1 || id == WitnessId::G2 || id == WitnessId::G3;
}

/**
 * One factor per party: 0 is the identity, 1..3 selects observable 1..3 of
 * that party's triple.
 */
struct LocalProduct {
    std::array<std::uint8_t, 3> ops{};

    [[nodiscard]] bool is_identity() const {
        return ops[0] == 0 && ops[1] == 0 && ops[2] == 0;
    }
    auto operator<=>(const LocalProduct &) const = default;
};

/// Pauli-string label of a product under the Pauli setting, e.g. "IZX".
inline std::string pauli_label(const LocalProduct &p) {
    static constexpr std::array<char, 4> letters{'I', 'X', 'Y', 'Z'};
    std::string s;
    for (const auto o : p.ops) {
        s += letters.at(o);
    }
    return s;
}

struct Term {
    double coeff;
    LocalProduct product;
};

struct Bracket {
    double weight;
    std::vector<Term> terms;
};

struct WitnessPolynomial {
    WitnessId id;
    double constant = 0.0;
    std::vector<Bracket> brackets;
};

namespace detail {

/// "1" or any sequence of party-tagged factors such as "A3B3C3" or "B1C1".
inline LocalProduct parse_party_product(std::string_view s) {
    LocalProduct p;
    if (s == "1") {
        return p;
    }
    if (s.size() % 2 != 0) {
        throw std::invalid_argument("bad product token " + std::string(s));
    }
    for (std::size_t i = 0; i < s.size(); i += 2) {
        const int party = s[i] - 'A';
        const int obs = s[i + 1] - '0';
        if (party < 0 || party > 2 || obs < 1 || obs > 3 ||
            p.ops[static_cast<std::size_t>(party)] != 0) {
            throw std::invalid_argument("bad product token " + std::string(s));
        }
        p.ops[static_cast<std::size_t>(party)] = static_cast<std::uint8_t>(obs);
    }
    return p;
}

/// Three-letter Pauli string such as "IZX".
inline LocalProduct parse_pauli_product(std::string_view s) {
    if (s.size() != 3) {
        throw std::invalid_argument("Pauli string must have 3 letters");
    }
    LocalProduct p;
    for (std::size_t i = 0; i < 3; ++i) {
        switch (s[i]) {
        case 'I': p.ops[i] = 0; break;
        case 'X': p.ops[i] = 1; break;
        case 'Y': p.ops[i] = 2; break;
        case 'Z': p.ops[i] = 3; break;
        default:
            throw std::invalid_argument("bad Pauli letter in " + std::string(s));
        }
    }
    return p;
}

/// weight * <t1 + t2 + ...>^2 with unit coefficients.
inline Bracket bracket(double weight,
                       std::initializer_list<std::string_view> terms) {
    Bracket b{weight, {}};
    for (const auto t : terms) {
        b.terms.push_back({1.0, parse_party_product(t)});
    }
    return b;
}

struct PauliCoefficient {
    double coeff;
    std::string_view pauli;
};

/// (1/16) (3 + sum coeff * <pauli>^2)
inline WitnessPolynomial g_polynomial(
    WitnessId id, std::initializer_list<PauliCoefficient> table) {
    WitnessPolynomial w{id, 3.0 / 16.0, {}};
    for (const auto &row : table) {
        w.brackets.push_back(
            {row.coeff / 16.0, {{1.0, parse_pauli_product(row.pauli)}}});
    }
    return w;
}

inline std::map<WitnessId, WitnessPolynomial> build_tables() {
    std::map<WitnessId, WitnessPolynomial> t;

    // Squared concurrence of the cut 1|23 as Pauli expectations.
    t[WitnessId::G1] = g_polynomial(
        WitnessId::G1,
        {{-1, "IIZ"}, {-1, "IZI"}, {-3, "ZII"}, {+1, "ZZI"}, {+1, "ZIZ"},
         {-1, "IZZ"}, {+1, "ZZZ"}, {-3, "XII"}, {+1, "XIZ"}, {+1, "XZI"},
         {+1, "XZZ"}, {-3, "YII"}, {+1, "YIZ"}, {+1, "YZI"}, {+1, "YZZ"}});
    // Cut 2|13.
    t[WitnessId::G2] = g_polynomial(
        WitnessId::G2,
        {{-1, "IIZ"}, {-1, "ZII"}, {-3, "IZI"}, {+1, "ZZI"}, {+1, "IZZ"},
         {-1, "ZIZ"}, {+1, "ZZZ"}, {-3, "IXI"}, {+1, "IXZ"}, {+1, "ZXI"},
         {+1, "ZXZ"}, {-3, "IYI"}, {+1, "IYZ"}, {+1, "ZYI"}, {+1, "ZYZ"}});
    // Cut 3|12.
    t[WitnessId::G3] = g_polynomial(
        WitnessId::G3,
        {{-1, "ZII"}, {-1, "IZI"}, {-3, "IIZ"}, {+1, "IZZ"}, {+1, "ZIZ"},
         {-1, "ZZI"}, {+1, "ZZZ"}, {-3, "IIX"}, {+1, "ZIX"}, {+1, "IZX"},
         {+1, "ZZX"}, {-3, "IIY"}, {+1, "ZIY"}, {+1, "IZY"}, {+1, "ZZY"}});

    t[WitnessId::T1] = {WitnessId::T1, 0.0,
                        {bracket(+1, {"1", "B3", "A3C3", "A3B3C3"}),
                         bracket(-1, {"C3", "B3C3", "A3", "A3B3"}),
                         bracket(-1, {"A1C1", "A1B3C1", "A2C2", "A2B3C2"})}};
    t[WitnessId::T2] = {WitnessId::T2, 0.0,
                        {bracket(+1, {"1", "A3", "B3C3", "A3B3C3"}),
                         bracket(-1, {"C3", "A3C3", "B3", "A3B3"}),
                         bracket(-1, {"B1C1", "A3B1C1", "B2C2", "A3B2C2"})}};
    t[WitnessId::T3] = {WitnessId::T3, 0.0,
                        {bracket(+1, {"1", "C3", "A3B3", "A3B3C3"}),
                         bracket(-1, {"B3", "B3C3", "A3", "A3C3"}),
                         bracket(-1, {"A1B1", "A1B1C3", "A2B2", "A2B2C3"})}};

    t[WitnessId::F1] = {WitnessId::F1, 0.0,
                        {bracket(+1, {"1", "B3C3"}), bracket(-1, {"B3", "C3"}),
                         bracket(-1, {"B1C1", "B2C2"})}};
    t[WitnessId::F2] = {WitnessId::F2, 0.0,
                        {bracket(+1, {"1", "A3C3"}), bracket(-1, {"A3", "C3"}),
                         bracket(-1, {"A1C1", "A2C2"})}};
    t[WitnessId::F3] = {WitnessId::F3, 0.0,
                        {bracket(+1, {"1", "A3B3"}), bracket(-1, {"A3", "B3"}),
                         bracket(-1, {"A1B1", "A2B2"})}};

    WitnessPolynomial sum{WitnessId::Fsum, 0.0, {}};
    for (const auto id : {WitnessId::F1, WitnessId::F2, WitnessId::F3}) {
        const auto &b = t[id].brackets;
        sum.brackets.insert(sum.brackets.end(), b.begin(), b.end());
    }
    t[WitnessId::Fsum] = std::move(sum);
    return t;
}

} // namespace detail

inline const WitnessPolynomial &polynomial(WitnessId id) {
    static const auto tables = detail::build_tables();
    return tables.at(id);
}

/// Sorted, de-duplicated non-identity products a witness needs measured.
inline std::vector<LocalProduct> distinct_products(const WitnessPolynomial &w) {
    std::vector<LocalProduct> out;
    for (const auto &b : w.brackets) {
        for (const auto &t : b.terms) {
            if (!t.product.is_identity()) {
                out.push_back(t.product);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Evaluates the polynomial given any source of product expectations.
template <class Expect>
double evaluate(const WitnessPolynomial &w, Expect &&expect) {
    double value = w.constant;
    for (const auto &b : w.brackets) {
        double inner = 0.0;
        for (const auto &t : b.terms) {
            inner += t.coeff * (t.product.is_identity()
                                    ? 1.0
                                    : static_cast<double>(expect(t.product)));
        }
        value += b.weight * inner * inner;
    }
    return value;
}

/// The 2 x 2 factor a product places on `party` (0-based).
inline Mat2 local_factor(const WitnessSetting &s, const LocalProduct &p,
                         std::size_t party) {
    const auto o = p.ops.at(party);
    return o == 0 ? Mat2::Identity() : s.party(party).observable(o - 1u);
}

/// Product lifted to an 8 x 8 operator with identities on absent parties.
inline HermitianOperator lift(const WitnessSetting &s, const LocalProduct &p) {
    return tensor({HermitianOperator(Matrix(local_factor(s, p, 0))),
                   HermitianOperator(Matrix(local_factor(s, p, 1))),
                   HermitianOperator(Matrix(local_factor(s, p, 2)))});
}

/// Expectations by explicit tr(rho O) on lifted 8 x 8 operators, memoized.
class DirectExpectations {
  public:
    DirectExpectations(const DensityMatrix &rho, const WitnessSetting &s)
        : rho_(rho), s_(s) {}

    double operator()(const LocalProduct &p) {
        const auto it = cache_.find(p);
        if (it != cache_.end()) {
            return it->second;
        }
        const double v = expectation(rho_, lift(s_, p));
        cache_.emplace(p, v);
        return v;
    }

  private:
    const DensityMatrix &rho_;
    const WitnessSetting &s_;
    std::map<LocalProduct, double> cache_;
};

/**
 * Real coefficients tr(rho sigma_a (x) sigma_b (x) sigma_c), a,b,c in 0..3
 * with sigma_0 = I. Any local product expectation is a contraction of this
 * tensor with the parties' Bloch vectors.
 */
class CorrelationTensor {
  public:
    explicit CorrelationTensor(const DensityMatrix &rho) {
        const auto &s = pauli_matrices();
        std::array<Mat2, 4> basis{Mat2::Identity(), s[0], s[1], s[2]};
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                for (int c = 0; c < 4; ++c) {
                    const auto op = tensor(
                        {HermitianOperator(Matrix(basis[static_cast<std::size_t>(a)])),
                         HermitianOperator(Matrix(basis[static_cast<std::size_t>(b)])),
                         HermitianOperator(Matrix(basis[static_cast<std::size_t>(c)]))});
                    t_[static_cast<std::size_t>(16 * a + 4 * b + c)] =
                        expectation(rho, op);
                }
            }
        }
    }

    [[nodiscard]] double operator()(int a, int b, int c) const {
        return t_[static_cast<std::size_t>(16 * a + 4 * b + c)];
    }

    /// <product> under setting `s`.
    [[nodiscard]] double expectation_of(const WitnessSetting &s,
                                        const LocalProduct &p) const {
        std::array<std::array<double, 4>, 3> u{};
        for (std::size_t party = 0; party < 3; ++party) {
            const auto o = p.ops[party];
            if (o == 0) {
                u[party] = {1.0, 0.0, 0.0, 0.0};
            } else {
                const auto &v = s.party(party).vector(o - 1u);
                u[party] = {0.0, v[0], v[1], v[2]};
            }
        }
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) {
            if (u[0][a] == 0.0) continue;
            for (int b = 0; b < 4; ++b) {
                if (u[1][b] == 0.0) continue;
                const double ab = u[0][a] * u[1][b];
                for (int c = 0; c < 4; ++c) {
                    acc += ab * u[2][c] * (*this)(a, b, c);
                }
            }
        }
        return acc;
    }

  private:
    std::array<double, 64> t_{};
};

/// Witness value by explicit matrix traces.
inline double witness_value(const DensityMatrix &rho, const WitnessSetting &s,
                            WitnessId id) {
    DirectExpectations expect(rho, s);
    return evaluate(polynomial(id), expect);
}

/// Witness value through a precomputed correlation tensor.
inline double witness_value(const CorrelationTensor &t, const WitnessSetting &s,
                            WitnessId id) {
    return evaluate(polynomial(id),
                    [&](const LocalProduct &p) { return t.expectation_of(s, p); });
}

} // namespace triqwit
