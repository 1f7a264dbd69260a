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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>

#include <triqwit/catalog.hpp>
#include <triqwit/pure_witness.hpp>

#include "oracles.hpp"

using namespace triqwit;
using Catch::Approx;

namespace {

oracle::V8 to_oracle(const PureState &psi) {
    oracle::V8 out{};
    for (int i = 0; i < 8; ++i) out[i] = psi.amplitudes()(i);
    return out;
}

Mat2 random_unitary(Rng &rng) {
    const Eigen::Vector2cd c = haar_ket<2>(rng);
    Mat2 u;
    u << c(0), -std::conj(c(1)), c(1), std::conj(c(0));
    return u;
}

PureState local_rotate(const PureState &psi, Rng &rng) {
    const Mat2 a = random_unitary(rng), b = random_unitary(rng), c = random_unitary(rng);
    Vec8 out = Vec8::Zero();
    for (int r = 0; r < 8; ++r)
        for (int s = 0; s < 8; ++s)
            out(r) += a(r >> 2, s >> 2) * b((r >> 1) & 1, (s >> 1) & 1) * c(r & 1, s & 1) *
                      psi.amplitudes()(s);
    return PureState(out);
}

PureState named(FamilyId id) { return std::get<PureState>(make(id)); }

using Row = std::pair<int, std::string>;

std::set<Row> table_rows(WitnessId id) {
    std::set<Row> rows;
    for (const auto &b : polynomial(id).brackets) {
        REQUIRE(b.terms.size() == 1);
        rows.insert({static_cast<int>(std::lround(b.weight * 16.0)), pauli_label(b.terms[0].product)});
    }
    return rows;
}

} // namespace

TEST_CASE("concurrence oracle examples", "[pure]") {
    for (const auto cut : kAllCuts) CHECK(concurrence_sq_oracle(PureState::basis(0, 0, 0), cut) == 0.0);
    CHECK(concurrence_sq_oracle(named(FamilyId::ghz), Bipartition::Cut1_23) == Approx(0.25).epsilon(0).margin(1e-15));
    CHECK(concurrence_sq_oracle(named(FamilyId::w), Bipartition::Cut1_23) == Approx(2.0 / 9.0).epsilon(0).margin(1e-15));
}

TEST_CASE("G witness examples", "[pure]") {
    for (std::size_t w = 1; w <= 3; ++w) CHECK(g_witness(PureState::basis(0, 0, 0), w) == Approx(0.0).epsilon(0).margin(1e-15));
    CHECK(g_witness(named(FamilyId::ghz), 1) == Approx(0.25).epsilon(0).margin(1e-14));
    const auto pp = named(FamilyId::psi_plus);
    CHECK(g_witness(pp, 1) == Approx(0.0).epsilon(0).margin(1e-14));
    CHECK(g_witness(pp, 2) == Approx(0.25).epsilon(0).margin(1e-14));
    CHECK(g_witness(pp, 3) == Approx(0.25).epsilon(0).margin(1e-14));
    for (std::size_t w = 1; w <= 3; ++w) CHECK(g_witness(named(FamilyId::w), w) == Approx(2.0 / 9.0).epsilon(0).margin(1e-14));
}

TEST_CASE("G tables match the displayed Pauli polynomials", "[pure][tables]") {
    const std::set<Row> g1{{-1, "IIZ"}, {-1, "IZI"}, {-3, "ZII"}, {1, "ZZI"}, {1, "ZIZ"},
                           {-1, "IZZ"}, {1, "ZZZ"}, {-3, "XII"}, {1, "XIZ"}, {1, "XZI"},
                           {1, "XZZ"}, {-3, "YII"}, {1, "YIZ"}, {1, "YZI"}, {1, "YZZ"}};
    CHECK(table_rows(WitnessId::G1) == g1);

    // G2 and G3 are G1 with the isolated party moved
    auto permuted = [&](std::size_t target) {
        std::set<Row> out;
        for (auto [c, s] : g1) {
            std::swap(s[0], s[target]);
            out.insert({c, s});
        }
        return out;
    };
    CHECK(table_rows(WitnessId::G2) == permuted(1));
    CHECK(table_rows(WitnessId::G3) == permuted(2));

    for (const auto id : {WitnessId::G1, WitnessId::G2, WitnessId::G3}) {
        CHECK(polynomial(id).constant == 3.0 / 16.0);
        CHECK(polynomial(id).brackets.size() == 15);
    }
}

TEST_CASE("G equals the concurrence oracle on Haar states", "[pure][oracle]") {
    Rng rng = make_rng(2024, 0);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const auto psi = haar_pure(rng);
        const auto ref = to_oracle(psi);
        for (std::size_t w = 1; w <= 3; ++w) {
            const double g = g_witness(psi, w);
            worst = std::max(worst, std::abs(g - concurrence_sq_oracle(psi, kAllCuts[w - 1])));
            // independent route: det of the explicit reduced 2x2 matrix
            worst = std::max(worst, std::abs(g - oracle::det_reduced(ref, static_cast<int>(w))));
            CHECK(g >= -1e-12);
            CHECK(g <= 0.25 + 1e-12);
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("G values are local-unitary invariant", "[pure]") {
    Rng rng = make_rng(77, 0);
    for (int n = 0; n < 100; ++n) {
        const auto psi = haar_pure(rng);
        const auto moved = local_rotate(psi, rng);
        for (std::size_t w = 1; w <= 3; ++w)
            CHECK(std::abs(g_witness(psi, w) - g_witness(moved, w)) <= 1e-10);
    }
}

TEST_CASE("product states have all G values near zero", "[pure]") {
    Rng rng = make_rng(31, 0);
    for (int n = 0; n < 200; ++n) {
        const auto psi = product_pure(rng);
        std::array<double, 3> g{};
        for (std::size_t w = 1; w <= 3; ++w) g[w - 1] = g_witness(psi, w);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if (g[i] <= 1e-12 && g[j] <= 1e-12) CHECK(g[3 - i - j] <= 1e-10);
    }
}

TEST_CASE("small G means a nearly pure reduced state", "[pure]") {
    Rng rng = make_rng(41, 0);
    const double tol = 1e-8;
    for (int n = 0; n < 100; ++n) {
        const auto psi = bisep_pure(rng, 1 + n % 3);
        const auto rho = outer(psi);
        for (std::size_t w = 1; w <= 3; ++w) {
            if (g_witness(psi, w) > tol) continue;
            // tracing out the isolated party leaves the other side of the cut
            CHECK(purity(partial_trace(rho, w)) >= 1.0 - 4.0 * tol);
        }
    }
}

TEST_CASE("pure classification", "[pure][classify]") {
    CHECK(classify_pure(PureState::basis(0, 0, 0)).label == PureLabel::FullySeparable);

    const auto pp = classify_pure(named(FamilyId::psi_plus));
    CHECK(pp.label == PureLabel::Biseparable);
    CHECK(pp.party == 1);
    CHECK(pp.describe() == "Biseparable(1)");

    CHECK(classify_pure(named(FamilyId::w)).label == PureLabel::GenuineEntangled);
    CHECK(classify_pure(named(FamilyId::ghz)).label == PureLabel::GenuineEntangled);

    Rng rng = make_rng(8, 0);
    for (std::size_t party = 1; party <= 3; ++party) {
        for (int n = 0; n < 20; ++n) {
            const auto c = classify_pure(bisep_pure(rng, party));
            CHECK(c.label == PureLabel::Biseparable);
            CHECK(c.party == party);
        }
    }
    for (int n = 0; n < 20; ++n) CHECK(classify_pure(product_pure(rng)).label == PureLabel::FullySeparable);

    CHECK_THROWS_AS(classify_pure(named(FamilyId::w), 0.0), std::invalid_argument);
}

TEST_CASE("G values obey the pairwise sum bound on pure states", "[pure]") {
    Rng rng = make_rng(12, 0);
    for (int n = 0; n < 500; ++n) {
        const auto psi = haar_pure(rng);
        std::array<double, 3> g{};
        for (std::size_t w = 1; w <= 3; ++w) g[w - 1] = g_witness(psi, w);
        for (std::size_t k = 0; k < 3; ++k) CHECK(g[k] <= g[(k + 1) % 3] + g[(k + 2) % 3] + 1e-12);
    }
}
