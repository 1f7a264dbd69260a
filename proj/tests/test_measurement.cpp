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

#include <cmath>

#include <triqwit/measurement.hpp>
#include <triqwit/mixed_witness.hpp>

using namespace triqwit;
using Catch::Approx;

namespace {

DensityMatrix dm(FamilyId id, std::initializer_list<double> p = {}) { return to_density(make(id, p)); }

} // namespace

TEST_CASE("degenerate and identity observables", "[measurement]") {
    const auto zero = to_density(PureState::basis(0, 0, 0));
    for (const std::uint64_t shots : {1ull, 10ull, 12345ull}) {
        const auto e = sample_expectation(zero, ProductObservable::from_pauli("ZII"), shots, 1);
        CHECK(e.mean == 1.0);
        CHECK(e.standard_error == 0.0);
        CHECK(e.shots == shots);
    }
    const auto id = sample_expectation(dm(FamilyId::w), ProductObservable::from_pauli("III"), 100, 1);
    CHECK(id.mean == 1.0);
    CHECK(id.standard_error == 0.0);
    CHECK_THROWS_AS(sample_expectation(zero, ProductObservable::from_pauli("ZII"), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ProductObservable::from_pauli("ZQI"), std::invalid_argument);
}

TEST_CASE("GHZ ZZZ averages to zero", "[measurement]") {
    const auto e = sample_expectation(dm(FamilyId::ghz), ProductObservable::from_pauli("ZZZ"), 10000, 4);
    CHECK(std::abs(e.mean) <= 5.0 / 100.0);
    CHECK(e.standard_error == Approx(std::sqrt((1 - e.mean * e.mean) / 10000.0)).epsilon(0).margin(1e-12));
    CHECK(std::abs(e.mean) <= 1.0);
}

TEST_CASE("sampling is deterministic per seed and stream", "[measurement]") {
    const auto rho = dm(FamilyId::rho1);
    const auto o = ProductObservable::from_pauli("XXI");
    CHECK(sample_expectation(rho, o, 1000, 9).plus_count == sample_expectation(rho, o, 1000, 9).plus_count);
    const auto a = estimate_witness(rho, WitnessId::T1, example1_setting(), 1000, 3);
    const auto b = estimate_witness(rho, WitnessId::T1, example1_setting(), 1000, 3);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
}

TEST_CASE("shared expectations are measured once", "[measurement]") {
    const auto e = estimate_witness(dm(FamilyId::rho1), WitnessId::T1, example1_setting(), 100, 1);
    // 11 non-identity products in the three brackets, none repeated
    CHECK(e.products.size() == 11);
    const auto f = estimate_witness(dm(FamilyId::rho1), WitnessId::Fsum, WitnessSetting::pauli(), 100, 1);
    // each F uses 4 two-body and 2 one-body products; the one-body ones repeat across the sum
    CHECK(f.products.size() == 3 * 3 + 3);
}

TEST_CASE("F1 on |000> samples its degenerate terms exactly", "[measurement]") {
    const auto zero = to_density(PureState::basis(0, 0, 0));
    for (const std::uint64_t shots : {1ull, 7ull, 1000ull}) {
        const auto e = estimate_witness(zero, WitnessId::F1, WitnessSetting::pauli(), shots, shots);
        REQUIRE(e.products.size() == e.expectations.size());
        for (std::size_t i = 0; i < e.products.size(); ++i) {
            const double exact = expectation(zero, lift(WitnessSetting::pauli(), e.products[i]));
            if (std::abs(exact) == 1.0) {
                CHECK(e.expectations[i].mean == exact);
                CHECK(e.expectations[i].standard_error == 0.0);
            }
        }
    }
    // <1 + ZZ>^2 - <Z + Z>^2 cancels exactly; only the XX + YY bracket is noisy
    const auto e = estimate_witness(zero, WitnessId::F1, WitnessSetting::pauli(), 1000, 2);
    CHECK(e.value <= 0.0);
    CHECK(e.value >= -0.1);
}

TEST_CASE("T1 on rho1 lands within five errors of -16/9", "[measurement]") {
    const auto rho = dm(FamilyId::rho1);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto e = estimate_witness(rho, WitnessId::T1, example1_setting(), 100000, seed);
        if (std::abs(e.value + 16.0 / 9.0) <= 5.0 * e.error) ++hits;
    }
    CHECK(hits >= 19);
}

TEST_CASE("error halves when shots quadruple", "[measurement]") {
    const auto rho = dm(FamilyId::rho1);
    double small = 0, large = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        small += estimate_witness(rho, WitnessId::T1, example1_setting(), 10000, seed).error;
        large += estimate_witness(rho, WitnessId::T1, example1_setting(), 40000, seed).error;
    }
    CHECK(large / small == Approx(0.5).epsilon(0.25));
}

TEST_CASE("estimates converge with more shots", "[measurement]") {
    const auto rho = dm(FamilyId::rho_w, {0.8});
    const auto s = WitnessSetting::pauli();
    const double exact = f_sum(rho, s);
    double previous_gap = 0.0;
    for (const std::uint64_t shots : {1000ull, 100000ull, 10000000ull}) {
        int hits = 0;
        double gap = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto e = estimate_witness(rho, WitnessId::Fsum, s, shots, seed);
            gap += std::abs(e.value - exact);
            if (std::abs(e.value - exact) <= 5.0 * e.error) ++hits;
        }
        CHECK(hits >= 19);
        if (previous_gap > 0.0) CHECK(gap < previous_gap);
        previous_gap = gap;
    }
}

TEST_CASE("sample means are unbiased", "[measurement]") {
    const auto rho = dm(FamilyId::w);
    const auto o = ProductObservable::from_pauli("XXI");
    const double exact = expectation(rho, o.lifted());
    double sum = 0.0, var = 0.0;
    const int seeds = 1000;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto e = sample_expectation(rho, o, 100, static_cast<std::uint64_t>(seed));
        sum += e.mean;
        var += e.standard_error * e.standard_error;
    }
    const double pooled = std::sqrt(var) / seeds;
    CHECK(std::abs(sum / seeds - exact) <= 3.0 * pooled);
}

TEST_CASE("plans draw one stream per setting", "[measurement]") {
    const auto rho = dm(FamilyId::ghz);
    MeasurementPlan plan;
    plan.shots = 500;
    plan.settings = {ProductObservable::from_pauli("XXX"), ProductObservable::from_pauli("XXX")};
    const auto r = run_plan(rho, plan, 8);
    REQUIRE(r.size() == 2);
    CHECK(r[0].plus_count == sample_expectation(rho, plan.settings[0], 500, 8, 0).plus_count);
    CHECK(r[1].plus_count == sample_expectation(rho, plan.settings[1], 500, 8, 1).plus_count);
}
