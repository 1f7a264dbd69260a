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
#include <filesystem>
#include <fstream>
#include <sstream>

#include <triqwit/commands.hpp>

using namespace triqwit;
using Catch::Approx;
using Json = nlohmann::json;

namespace {

struct Captured {
    std::ostringstream out, err;
    cli::Streams io{out, err};
};

std::filesystem::path temp_file(const std::string &name, const std::string &text) {
    const auto p = std::filesystem::temp_directory_path() / ("triqwit_io_" + name);
    std::ofstream(p) << text;
    return p;
}

Json machine(const std::string &text) { return Json::parse(text); }

} // namespace

TEST_CASE("family references", "[io]") {
    const auto a = parse_family_ref("sigma_b(0.5)");
    REQUIRE(a);
    CHECK(a->id == FamilyId::sigma_b);
    CHECK(a->get("b") == 0.5);

    const auto b = parse_family_ref("rho3(p=1, b=0.25)");
    REQUIRE(b);
    CHECK(b->values() == std::vector<double>{0.25, 1.0});

    const auto c = parse_family_ref("rho3(b=0.5)");
    REQUIRE(c);
    CHECK(c->unbound() == std::vector<std::string>{"p"});
    CHECK_THROWS_AS(c->values(), InputError);

    CHECK_FALSE(parse_family_ref("not_a_family").has_value());
    CHECK(parse_family_ref("ghz")->params.empty());
    CHECK_THROWS_AS(parse_family_ref("sigma_b(0.5"), InputError);
    CHECK_THROWS_AS(parse_family_ref("sigma_b(x)"), InputError);
    CHECK_THROWS_AS(parse_family_ref("sigma_b(q=1)"), InputError);
    CHECK_THROWS_AS(parse_family_ref("sigma_b(0.1,0.2)"), InputError);
    CHECK_THROWS_AS(parse_family_ref("rho3(b=0.1,b=0.2)"), InputError);
    CHECK_THROWS_AS(make(*parse_family_ref("sigma_b(2)")), InputError);
}

TEST_CASE("state files round-trip bit for bit", "[io]") {
    Rng rng = make_rng(44, 0);
    for (int n = 0; n < 20; ++n) {
        const State pure = haar_pure(rng);
        const auto back = state_from_json(Json::parse(state_to_json(pure).dump()));
        CHECK(std::get<PureState>(back).amplitudes() == std::get<PureState>(pure).amplitudes());

        const State mixed = random_mixed(rng);
        const auto mback = state_from_json(Json::parse(state_to_json(mixed).dump(2)));
        CHECK(std::get<DensityMatrix>(mback).matrix() == std::get<DensityMatrix>(mixed).matrix());
    }
}

TEST_CASE("state file forms", "[io]") {
    const auto fam = state_from_json(Json::parse(R"({"family":"rho_w","params":{"p":0.5}})"));
    CHECK(std::get<DensityMatrix>(fam).matrix() == std::get<DensityMatrix>(make(FamilyId::rho_w, {0.5})).matrix());
    const auto arr = state_from_json(Json::parse(R"({"family":"rho3","params":[0.5,1]})"));
    CHECK(std::holds_alternative<DensityMatrix>(arr));

    Json flat = {{"kind", "mixed"}, {"entries", Json::array()}};
    for (int k = 0; k < 64; ++k) flat["entries"].push_back({k % 9 == 0 ? 0.125 : 0.0, 0.0});
    CHECK(std::get<DensityMatrix>(state_from_json(flat)).matrix() == Mat8::Identity() / 8.0);

    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"pure","amplitudes":[[1,0]]})")), InputError);
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"odd"})")), InputError);
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"family":"nope"})")), InputError);
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"pure","amplitudes":[[1,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})")),
                    InputError);
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"pure","amplitudes":"x"})")), InputError);
}

TEST_CASE("setting files", "[io]") {
    for (const auto &name : named_settings()) {
        const auto s = resolve_setting(std::string(name));
        const auto back = setting_from_json(Json::parse(setting_to_json(s).dump()));
        for (std::size_t p = 0; p < 3; ++p) CHECK(back.party(p).vector_matrix() == s.party(p).vector_matrix());
    }
    const auto ex1 = setting_from_json(Json::parse(R"({"A":{"unitary":[[[0,0],[1,0]],[[-1,0],[0,0]]]},"B":"pauli","C":"pauli"})"));
    CHECK(ex1.party(0).vector_matrix() == example1_setting().party(0).vector_matrix());
    const auto eul = setting_from_json(Json::parse(R"({"A":{"euler_zyz":[0,0,0]},"B":"pauli","C":{"rotation":[[1,0,0],[0,1,0],[0,0,1]]}})"));
    CHECK(eul.orientation() == 1);

    CHECK_THROWS_AS(setting_from_json(Json::parse(R"({"A":"pauli","B":"pauli","C":{"rotation":[[1,0,0],[0,1,0],[0,0,-1]]}})")),
                    MixedOrientationError);
    CHECK_THROWS_AS(setting_from_json(Json::parse(R"({"A":"pauli","B":"pauli"})")), InputError);
    CHECK_THROWS_AS(setting_from_json(Json::parse(R"({"A":"other","B":"pauli","C":"pauli"})")), InputError);
    CHECK_THROWS_AS(setting_from_json(Json::parse(R"({"A":{"rotation":[[1,0,0],[1,0,0],[0,0,1]]},"B":"pauli","C":"pauli"})")),
                    InputError);
    CHECK_THROWS_AS(resolve_setting("no_such_setting"), InputError);
}

TEST_CASE("resolution prefers names and accepts files", "[io]") {
    const auto path = temp_file("zero.json", R"({"kind":"pure","amplitudes":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})");
    CHECK(std::holds_alternative<PureState>(resolve_state("@" + path.string())));
    CHECK(std::holds_alternative<PureState>(resolve_state(path.string())));
    CHECK(std::holds_alternative<PureState>(resolve_state("ghz")));
    CHECK_THROWS_AS(resolve_state("@/nonexistent/x.json"), InputError);
    CHECK_THROWS_AS(resolve_state("nothing_here"), InputError);
    CHECK(resolve_witness("Fsum") == WitnessId::Fsum);
    CHECK_THROWS_AS(resolve_witness("T4"), InputError);
}

TEST_CASE("threshold search", "[io][threshold]") {
    const auto t = find_threshold([](double x) { return x * x; }, 0.25);
    CHECK(t.root == Approx(0.5).epsilon(0).margin(1e-10));
    CHECK(t.hi - t.lo <= 1e-10);
    CHECK_THROWS_AS(find_threshold([](double x) { return x; }, 2.0), NoResult);
    CHECK_THROWS_AS(find_threshold([](double x) { return (x - 0.5) * (x - 0.5); }, 0.1), InputError);

    // F1 on white-noise W: 19p^2 + 6p - 9 = 0
    const auto s = WitnessSetting::pauli();
    const auto f1 = find_threshold(
        [&](double p) { return witness_value(to_density(make(FamilyId::rho_w, {p})), s, WitnessId::F1); }, 0.0);
    CHECK(f1.root == Approx((-6 + std::sqrt(720.0)) / 38).epsilon(0).margin(1e-9));
    const auto fs = find_threshold(
        [&](double p) { return witness_value(to_density(make(FamilyId::rho_w, {p})), s, WitnessId::Fsum); }, -2.0);
    CHECK(fs.root == Approx((-6 + std::sqrt(1176.0)) / 38).epsilon(0).margin(1e-9));
}

TEST_CASE("ledger and reference claims", "[io][ledger]") {
    DiscrepancyLedger l;
    l.append("x", 0.5, 0.56);
    REQUIRE(l.entries().size() == 1);
    CHECK(l.entries()[0].abs_difference == Approx(0.06));
    CHECK(l.to_json()[0]["claim"] == "x");
    CHECK(find_claims(FamilyId::rho_w, "pauli", WitnessId::F1, 0.0).size() == 1);
    CHECK(find_claims(FamilyId::rho_w, "pauli", WitnessId::Fsum, -2.0).size() == 1);
    CHECK(find_claims(FamilyId::rho_w, "pauli", WitnessId::F1, 1.0).empty());
    CHECK(find_claims(FamilyId::rho1, "example1", WitnessId::T1, std::nullopt).size() == 1);
    CHECK(kReferenceTableVersion >= 1);
}

TEST_CASE("csv formatting", "[io][scan]") {
    ScanTable t{{"b", "value"}, {{0.1, -1.0 / 3.0}, {1.0, 0.0}}};
    CHECK(scan_to_csv(t) == "b,value\n0.1,-0.333333333333\n1,0\n");
    CHECK(format_number(16.0 / 9.0) == "1.77777777778");
}

TEST_CASE("classify command", "[io][cmd]") {
    Captured c;
    CHECK(cli::cmd_classify({"ghz", 1e-8, true}, c.io) == cli::kOk);
    const auto j = machine(c.out.str());
    CHECK(j["label"] == "GenuineEntangled");
    CHECK(j["g1"].get<double>() == Approx(0.25).epsilon(0).margin(1e-12));

    Captured w;
    CHECK(cli::cmd_classify({"w", 1e-8, false}, w.io) == cli::kOk);
    CHECK(w.out.str().find("label: GenuineEntangled") != std::string::npos);

    Captured m;
    CHECK(cli::cmd_classify({"rho1", 1e-8, false}, m.io) == cli::kInputError);
    CHECK(m.err.str().find("pure") != std::string::npos);

    const auto path = temp_file("zero2.json", R"({"kind":"pure","amplitudes":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})");
    Captured z;
    CHECK(cli::cmd_classify({"@" + path.string(), 1e-8, true}, z.io) == cli::kOk);
    CHECK(machine(z.out.str())["label"] == "FullySeparable");

    const auto bad = temp_file("bad.json", "{ not json");
    Captured b;
    CHECK(cli::cmd_classify({"@" + bad.string(), 1e-8, true}, b.io) == cli::kInputError);
}

TEST_CASE("witness command", "[io][cmd]") {
    Captured c;
    cli::WitnessOptions o{"rho1", "T1", "example1", 1e-9, true};
    CHECK(cli::cmd_witness(o, c.io) == cli::kOk);
    const auto j = machine(c.out.str());
    CHECK(j["value"].get<double>() == Approx(-16.0 / 9.0).epsilon(0).margin(1e-12));
    CHECK(j["verdict"]["not_sep_1|23_and_12|3"]["set"] == true);
    CHECK(j["ledger"][0]["abs_difference"].get<double>() <= 1e-12);

    Captured s;
    CHECK(cli::cmd_witness({"sigma_b(0.5)", "T1", "example2", 1e-9, true}, s.io) == cli::kOk);
    CHECK(machine(s.out.str())["value"].get<double>() == Approx(sigma_b_t1_closed_form(0.5)).epsilon(0).margin(1e-12));

    Captured w;
    CHECK(cli::cmd_witness({"rho_w(1)", "Fsum", "pauli", 1e-9, true}, w.io) == cli::kOk);
    const auto wj = machine(w.out.str());
    CHECK(wj["value"].get<double>() == Approx(-16.0 / 3.0).epsilon(0).margin(1e-12));
    CHECK(wj["verdict"]["genuine_entangled"]["set"] == true);

    const auto mixed = temp_file("mixed_setting.json",
                                 R"({"A":"pauli","B":"pauli","C":{"rotation":[[1,0,0],[0,1,0],[0,0,-1]]}})");
    Captured m;
    CHECK(cli::cmd_witness({"rho1", "T1", "@" + mixed.string(), 1e-9, true}, m.io) == cli::kInputError);
    CHECK(m.err.str().find("orientation") != std::string::npos);

    Captured u;
    CHECK(cli::cmd_witness({"rho1", "T9", "pauli", 1e-9, true}, u.io) == cli::kInputError);
}

TEST_CASE("scan command", "[io][cmd]") {
    Captured c;
    cli::ScanOptions o{"sigma_b", "T1", {"b:0:1:0.5"}, "example2", ""};
    CHECK(cli::cmd_scan(o, c.io) == cli::kOk);
    const auto csv = c.out.str();
    CHECK(csv.rfind("b,value\n0,", 0) == 0);
    CHECK(csv.find("\n0.5," + format_number(sigma_b_t1_closed_form(0.5)) + "\n") != std::string::npos);

    const auto path = std::filesystem::temp_directory_path() / "triqwit_io_scan.csv";
    o.out_path = path.string();
    Captured f;
    CHECK(cli::cmd_scan(o, f.io) == cli::kOk);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == csv);

    Captured bad;
    CHECK(cli::cmd_scan({"unknown", "T1", {"b:0:1:0.5"}, "pauli", ""}, bad.io) == cli::kInputError);
    Captured wide;
    CHECK(cli::cmd_scan({"sigma_b", "T1", {"b:0:2:0.5"}, "pauli", ""}, wide.io) == cli::kInputError);
}

TEST_CASE("threshold command", "[io][cmd]") {
    Captured c;
    cli::ThresholdOptions o{"rho_w", "F1", "pauli", 0.0, "", true};
    CHECK(cli::cmd_threshold(o, c.io) == cli::kOk);
    const auto j = machine(c.out.str());
    CHECK(std::abs(j["root"].get<double>() - (-6 + std::sqrt(720.0)) / 38) <= 1e-9);
    REQUIRE(j["ledger"].size() == 1);
    CHECK(j["ledger"][0]["reference"].get<double>() == 0.56);

    Captured g;
    CHECK(cli::cmd_threshold({"rho_w", "Fsum", "pauli", -2.0, "", true}, g.io) == cli::kOk);
    const auto gj = machine(g.out.str());
    CHECK(std::abs(gj["root"].get<double>() - (-6 + std::sqrt(1176.0)) / 38) <= 1e-9);
    CHECK(std::abs(gj["ledger"][0]["abs_difference"].get<double>() - (0.92 - (-6 + std::sqrt(1176.0)) / 38)) <= 1e-9);

    Captured none;
    CHECK(cli::cmd_threshold({"rho_w", "F1", "pauli", -100.0, "", true}, none.io) == cli::kNoResult);
    Captured two;
    CHECK(cli::cmd_threshold({"rho3", "T1", "example2", 0.0, "", true}, two.io) == cli::kInputError);
    Captured one;
    CHECK(cli::cmd_threshold({"rho3(b=0.5)", "T1", "example2", 0.0, "p", true}, one.io) == cli::kOk);
}

TEST_CASE("optimize, sample and export commands", "[io][cmd]") {
    Captured c;
    cli::OptimizeOptions o{"rho1", "T1", {}, true};
    o.config.starts = 8;
    CHECK(cli::cmd_optimize(o, c.io) == cli::kOk);
    CHECK(machine(c.out.str())["best_value"].get<double>() <= -16.0 / 9.0 + 1e-6);

    Captured g;
    CHECK(cli::cmd_optimize({"ghz", "G1", {}, true}, g.io) == cli::kInputError);

    Captured s;
    cli::SampleOptions so{"ghz", "", "ZZZ", "pauli", 10000, 0, true};
    CHECK(cli::cmd_sample(so, s.io) == cli::kOk);
    CHECK(std::abs(machine(s.out.str())["mean"].get<double>()) <= 0.05);

    Captured t;
    CHECK(cli::cmd_sample({"rho1", "T1", "", "example1", 100000, 1, true}, t.io) == cli::kOk);
    const auto tj = machine(t.out.str());
    CHECK(std::abs(tj["estimate"].get<double>() + 16.0 / 9.0) <= 5 * tj["error"].get<double>());

    Captured both;
    CHECK(cli::cmd_sample({"rho1", "T1", "ZZZ", "pauli", 10, 1, true}, both.io) == cli::kInputError);
    Captured zero;
    CHECK(cli::cmd_sample({"rho1", "T1", "", "pauli", 0, 1, true}, zero.io) == cli::kInputError);

    const auto path = std::filesystem::temp_directory_path() / "triqwit_io_state.json";
    Captured e;
    CHECK(cli::cmd_export_state({"sigma_b(0.3)", path.string()}, e.io) == cli::kOk);
    CHECK(std::get<DensityMatrix>(resolve_state("@" + path.string())).matrix() ==
          std::get<DensityMatrix>(make(FamilyId::sigma_b, {0.3})).matrix());

    const auto spath = std::filesystem::temp_directory_path() / "triqwit_io_setting.json";
    Captured es;
    CHECK(cli::cmd_export_setting({"example2", spath.string()}, es.io) == cli::kOk);
    const auto back = resolve_setting("@" + spath.string());
    for (std::size_t p = 0; p < 3; ++p)
        CHECK(back.party(p).vector_matrix() == example2_setting().party(p).vector_matrix());
}
