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
 * State and setting file formats (JSON), named-state / named-setting
 * resolution, scan CSV output, threshold root finding and the ledger of
 * published reference values.
 *
 * State file:
 *   {"kind": "pure",  "amplitudes": [[re, im] x 8]}
 *   {"kind": "mixed", "entries": [[[re, im] x 8] x 8]}   (row-major)
 *   {"family": "sigma_b", "params": {"b": 0.5}}
 *
 * Setting file, one entry per party "A", "B", "C":
 *   "pauli" | {"unitary": [[[re,im],[re,im]],[[re,im],[re,im]]]}
 *           | {"rotation": [[3 reals] x 3]} | {"euler_zyz": [a, b, c]}
 */

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "core.hpp"
#include "observables.hpp"
#include "optimizer.hpp"
#include "witness.hpp"

namespace triqwit {

using Json = nlohmann::json;

/// Bad user input: unreadable file, unknown name, malformed spec.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed query without an answer (e.g. no sign change).
class NoResult : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Named families with parameters: "ghz", "sigma_b(0.5)", "rho3(p=1,b=0.5)"

struct FamilyRef {
    FamilyId id;
    /// (name, value) pairs in family declaration order; may be partial.
    std::vector<std::pair<std::string, double>> params;

    [[nodiscard]] std::optional<double> get(std::string_view name) const {
        for (const auto &[n, v] : params) {
            if (n == name) return v;
        }
        return std::nullopt;
    }

    /// Parameter values in declaration order; all must be bound.
    [[nodiscard]] std::vector<double> values() const {
        const auto &info = family_info(id);
        std::vector<double> out;
        for (const auto name : info.params) {
            const auto v = get(name);
            if (!v) {
                throw InputError("family " + std::string(info.name) +
                                 " needs parameter " + std::string(name));
            }
            out.push_back(*v);
        }
        return out;
    }

    /// Declared parameters with no value.
    [[nodiscard]] std::vector<std::string> unbound() const {
        std::vector<std::string> out;
        for (const auto name : family_info(id).params) {
            if (!get(name)) out.emplace_back(name);
        }
        return out;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline double parse_number(std::string_view s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw InputError("not a number: '" + t + "'");
    }
    return v;
}

} // namespace detail

/// Returns nullopt when `spec`'s name is not a known family.
inline std::optional<FamilyRef> parse_family_ref(std::string_view spec) {
    const auto open = spec.find('(');
    const std::string name = detail::trim(spec.substr(0, open));
    const auto id = parse_family(name);
    if (!id) {
        return std::nullopt;
    }
    FamilyRef ref{*id, {}};
    if (open == std::string_view::npos) {
        return ref;
    }
    if (spec.back() != ')') {
        throw InputError("unbalanced parentheses in '" + std::string(spec) + "'");
    }
    const auto &declared = family_info(*id).params;
    const std::string_view inner = spec.substr(open + 1, spec.size() - open - 2);
    if (detail::trim(inner).empty()) {
        return ref;
    }
    std::size_t positional = 0;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
        const auto comma = inner.find(',', pos);
        const auto item = inner.substr(pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - pos);
        const auto eq = item.find('=');
        std::string key;
        double value = 0.0;
        if (eq == std::string_view::npos) {
            if (positional >= declared.size()) {
                throw InputError("too many parameters for " + name);
            }
            key = std::string(declared[positional++]);
            value = detail::parse_number(item);
        } else {
            key = detail::trim(item.substr(0, eq));
            value = detail::parse_number(item.substr(eq + 1));
        }
        bool known = false;
        for (const auto d : declared) known = known || d == key;
        if (!known) {
            throw InputError("family " + name + " has no parameter " + key);
        }
        if (ref.get(key)) {
            throw InputError("parameter " + key + " given twice");
        }
        ref.params.emplace_back(key, value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return ref;
}

inline State make(const FamilyRef &ref) {
    const auto v = ref.values();
    try {
        return make(ref.id, v);
    } catch (const std::domain_error &e) {
        throw InputError(e.what());
    }
}

// ---------------------------------------------------------------------------
// JSON helpers

namespace detail {

inline Complex complex_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
        throw InputError("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception &e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

inline void write_text_file(const std::filesystem::path &path,
                            const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << text;
}

} // namespace detail

inline State state_from_json(const Json &j) {
    try {
        if (j.contains("family")) {
            const auto name = j.at("family").get<std::string>();
            const auto id = parse_family(name);
            if (!id) {
                throw InputError("unknown family " + name);
            }
            FamilyRef ref{*id, {}};
            const auto &declared = family_info(*id).params;
            if (j.contains("params")) {
                const auto &p = j.at("params");
                if (p.is_array()) {
                    if (p.size() > declared.size()) {
                        throw InputError("too many parameters for " + name);
                    }
                    for (std::size_t i = 0; i < p.size(); ++i) {
                        ref.params.emplace_back(std::string(declared[i]),
                                                p[i].get<double>());
                    }
                } else {
                    for (const auto &[k, v] : p.items()) {
                        ref.params.emplace_back(k, v.get<double>());
                    }
                }
            }
            return make(ref);
        }
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "pure") {
            const auto &a = j.at("amplitudes");
            if (!a.is_array() || a.size() != 8) {
                throw InputError("pure state needs 8 amplitudes");
            }
            Vec8 v;
            for (int i = 0; i < 8; ++i) {
                v(i) = detail::complex_from_json(a[static_cast<std::size_t>(i)]);
            }
            return PureState(v);
        }
        if (kind == "mixed") {
            const auto &e = j.at("entries");
            Mat8 m;
            if (e.is_array() && e.size() == 8) {
                for (int r = 0; r < 8; ++r) {
                    const auto &row = e[static_cast<std::size_t>(r)];
                    if (!row.is_array() || row.size() != 8) {
                        throw InputError("mixed state rows need 8 entries");
                    }
                    for (int c = 0; c < 8; ++c) {
                        m(r, c) = detail::complex_from_json(
                            row[static_cast<std::size_t>(c)]);
                    }
                }
            } else if (e.is_array() && e.size() == 64) {
                for (int k = 0; k < 64; ++k) {
                    m(k / 8, k % 8) =
                        detail::complex_from_json(e[static_cast<std::size_t>(k)]);
                }
            } else {
                throw InputError("mixed state needs 8x8 entries");
            }
            return DensityMatrix(m);
        }
        throw InputError("state kind must be 'pure' or 'mixed'");
    } catch (const Json::exception &e) {
        throw InputError(std::string("malformed state file: ") + e.what());
    } catch (const ValidationError &e) {
        throw InputError(std::string("invalid state: ") + e.what());
    }
}

inline Json state_to_json(const State &s) {
    if (const auto *psi = std::get_if<PureState>(&s)) {
        Json a = Json::array();
        for (int i = 0; i < 8; ++i) {
            a.push_back(detail::complex_to_json(psi->amplitudes()(i)));
        }
        return {{"kind", "pure"}, {"amplitudes", a}};
    }
    const auto &rho = std::get<DensityMatrix>(s);
    Json rows = Json::array();
    for (int r = 0; r < 8; ++r) {
        Json row = Json::array();
        for (int c = 0; c < 8; ++c) {
            row.push_back(detail::complex_to_json(rho(r, c)));
        }
        rows.push_back(row);
    }
    return {{"kind", "mixed"}, {"entries", rows}};
}

inline ObservableTriple triple_from_json(const Json &j) {
    try {
        if (j.is_string()) {
            if (j.get<std::string>() == "pauli") {
                return pauli_triple();
            }
            throw InputError("unknown party setting " + j.get<std::string>());
        }
        if (j.contains("unitary")) {
            const auto &u = j.at("unitary");
            if (!u.is_array() || u.size() != 2) {
                throw InputError("unitary must be 2x2");
            }
            Mat2 m;
            for (int r = 0; r < 2; ++r) {
                const auto &row = u[static_cast<std::size_t>(r)];
                if (!row.is_array() || row.size() != 2) {
                    throw InputError("unitary must be 2x2");
                }
                for (int c = 0; c < 2; ++c) {
                    m(r, c) = detail::complex_from_json(
                        row[static_cast<std::size_t>(c)]);
                }
            }
            return triple_from_unitary(SingleQubitUnitary(m));
        }
        if (j.contains("rotation")) {
            const auto &rj = j.at("rotation");
            if (!rj.is_array() || rj.size() != 3) {
                throw InputError("rotation must be 3x3");
            }
            Eigen::Matrix3d r;
            for (int a = 0; a < 3; ++a) {
                const auto &row = rj[static_cast<std::size_t>(a)];
                if (!row.is_array() || row.size() != 3) {
                    throw InputError("rotation must be 3x3");
                }
                for (int b = 0; b < 3; ++b) {
                    r(a, b) = row[static_cast<std::size_t>(b)].get<double>();
                }
            }
            return triple_from_rotation(r);
        }
        if (j.contains("euler_zyz")) {
            const auto &e = j.at("euler_zyz");
            if (!e.is_array() || e.size() != 3) {
                throw InputError("euler_zyz needs 3 angles");
            }
            return triple_from_euler(e[0].get<double>(), e[1].get<double>(),
                                     e[2].get<double>());
        }
        throw InputError("party setting needs one of pauli, unitary, "
                         "rotation, euler_zyz");
    } catch (const Json::exception &e) {
        throw InputError(std::string("malformed setting: ") + e.what());
    }
}

/// Throws MixedOrientationError (not InputError) for opposite orientations.
inline WitnessSetting setting_from_json(const Json &j) {
    if (!j.is_object()) {
        throw InputError("setting file must be an object with A, B, C");
    }
    for (const char *k : {"A", "B", "C"}) {
        if (!j.contains(k)) {
            throw InputError(std::string("setting file lacks party ") + k);
        }
    }
    try {
        return {triple_from_json(j.at("A")), triple_from_json(j.at("B")),
                triple_from_json(j.at("C"))};
    } catch (const MixedOrientationError &) {
        throw;
    } catch (const ValidationError &e) {
        throw InputError(std::string("invalid setting: ") + e.what());
    }
}

/// Writes every party as its rotation (rows = Bloch vectors).
inline Json setting_to_json(const WitnessSetting &s) {
    Json out = Json::object();
    const char *names[3] = {"A", "B", "C"};
    for (std::size_t p = 0; p < 3; ++p) {
        const Eigen::Matrix3d m = s.party(p).vector_matrix();
        Json rows = Json::array();
        for (int r = 0; r < 3; ++r) {
            rows.push_back(Json::array({m(r, 0), m(r, 1), m(r, 2)}));
        }
        out[names[p]] = {{"rotation", rows}};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spec resolution: named first, then "@file" or a plain path.

inline State resolve_state(const std::string &spec) {
    if (!spec.empty() && spec.front() == '@') {
        return state_from_json(detail::read_json_file(spec.substr(1)));
    }
    if (const auto ref = parse_family_ref(spec)) {
        return make(*ref);
    }
    if (std::filesystem::exists(spec)) {
        return state_from_json(detail::read_json_file(spec));
    }
    throw InputError("unknown state '" + spec + "' (not a named state or file)");
}

inline const std::vector<std::string_view> &named_settings() {
    static const std::vector<std::string_view> names{"pauli", "example1",
                                                     "example2"};
    return names;
}

inline WitnessSetting resolve_setting(const std::string &spec) {
    if (spec == "pauli") return WitnessSetting::pauli();
    if (spec == "example1") return example1_setting();
    if (spec == "example2") return example2_setting();
    const std::string path =
        (!spec.empty() && spec.front() == '@') ? spec.substr(1) : spec;
    if (std::filesystem::exists(path)) {
        return setting_from_json(detail::read_json_file(path));
    }
    throw InputError("unknown setting '" + spec + "'");
}

inline WitnessId resolve_witness(const std::string &name) {
    const auto id = parse_witness(name);
    if (!id) {
        throw InputError("unknown witness '" + name +
                         "' (G1..G3, T1..T3, F1..F3, Fsum)");
    }
    return *id;
}

// ---------------------------------------------------------------------------
// Reference values and the discrepancy ledger

/**
 * A published number this toolkit can recompute. Either a witness value
 * (no target) or the parameter at which a one-parameter family crosses
 * `target`.
 */
struct ReferenceClaim {
    std::string claim;
    FamilyId family;
    std::string setting;
    WitnessId witness;
    std::optional<double> target;
    std::function<double(std::span<const double>)> reference;
};

/// Versioned registry of published values.
inline constexpr int kReferenceTableVersion = 1;

inline const std::vector<ReferenceClaim> &reference_claims() {
    static const std::vector<ReferenceClaim> table{
        {"T1 of rho1 under the U1/Pauli/Pauli setting", FamilyId::rho1,
         "example1", WitnessId::T1, std::nullopt,
         [](std::span<const double>) { return -16.0 / 9.0; }},
        {"T1 of sigma_b under the U2/V2/Pauli setting (closed form)",
         FamilyId::sigma_b, "example2", WitnessId::T1, std::nullopt,
         [](std::span<const double> p) { return sigma_b_t1_closed_form(p[0]); }},
        {"rho_w entangled (F_l < 0) above p = 0.56", FamilyId::rho_w, "pauli",
         WitnessId::F1, 0.0, [](std::span<const double>) { return 0.56; }},
        {"rho_w genuine entangled (Fsum < -2) above p = 0.92", FamilyId::rho_w,
         "pauli", WitnessId::Fsum, -2.0,
         [](std::span<const double>) { return 0.92; }},
    };
    return table;
}

struct LedgerEntry {
    std::string claim;
    double computed;
    double reference;
    double abs_difference;
};

/// Append-only record of computed-vs-published comparisons for one run.
class DiscrepancyLedger {
  public:
    void append(std::string claim, double computed, double reference) {
        entries_.push_back({std::move(claim), computed, reference,
                            std::abs(computed - reference)});
    }

    [[nodiscard]] const std::vector<LedgerEntry> &entries() const {
        return entries_;
    }

    [[nodiscard]] Json to_json() const {
        Json out = Json::array();
        for (const auto &e : entries_) {
            out.push_back({{"claim", e.claim},
                           {"computed", e.computed},
                           {"reference", e.reference},
                           {"abs_difference", e.abs_difference}});
        }
        return out;
    }

  private:
    std::vector<LedgerEntry> entries_;
};

/// Claims registered for this (family, setting, witness, target) query.
inline std::vector<const ReferenceClaim *>
find_claims(FamilyId family, const std::string &setting, WitnessId witness,
            std::optional<double> target) {
    std::vector<const ReferenceClaim *> out;
    for (const auto &c : reference_claims()) {
        const bool same_target =
            c.target.has_value() == target.has_value() &&
            (!target || std::abs(*c.target - *target) < 1e-12);
        if (c.family == family && c.setting == setting && c.witness == witness &&
            same_target) {
            out.push_back(&c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Threshold search

struct ThresholdResult {
    double root;
    double lo;
    double hi;
    std::size_t iterations;
};

/**
 * Parameter in [0, 1] where f crosses `target`.
 *
 * f must be monotone on a 101-point sample of [0, 1]; otherwise InputError.
 * Throws NoResult when f - target does not change sign. Bisects until the
 * bracket is at most `width` wide.
 */
inline ThresholdResult find_threshold(const std::function<double(double)> &f,
                                      double target, double width = 1e-10) {
    std::vector<double> samples(101);
    for (std::size_t i = 0; i <= 100; ++i) {
        samples[i] = f(static_cast<double>(i) / 100.0);
    }
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        up = up && samples[i] >= samples[i - 1] - 1e-12;
        down = down && samples[i] <= samples[i - 1] + 1e-12;
    }
    if (!up && !down) {
        throw InputError("witness is not monotone in the free parameter");
    }
    double lo = 0.0;
    double hi = 1.0;
    const double g_lo = samples.front() - target;
    const double g_hi = samples.back() - target;
    if (g_lo == 0.0) return {0.0, 0.0, 0.0, 0};
    if (g_hi == 0.0) return {1.0, 1.0, 1.0, 0};
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        throw NoResult("no threshold: witness does not cross the target on [0, 1]");
    }
    const bool lo_positive = g_lo > 0.0;
    std::size_t it = 0;
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        const double g = f(mid) - target;
        if ((g > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++it;
    }
    return {0.5 * (lo + hi), lo, hi, it};
}

// ---------------------------------------------------------------------------
// Output

/// "%.{digits}g" formatting, locale independent.
inline std::string format_number(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string scan_to_csv(const ScanTable &t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + t.columns[i];
    }
    out += '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i], 12);
        }
        out += '\n';
    }
    return out;
}

/**
 * Ordered report: `key: value` lines for people, or one JSON object per run
 * with --machine.
 */
class Report {
  public:
    template <class T>
    Report &set(const std::string &key, T &&value) {
        data_[key] = std::forward<T>(value);
        return *this;
    }

    [[nodiscard]] const nlohmann::ordered_json &data() const { return data_; }

    void emit(std::ostream &out, bool machine) const {
        if (machine) {
            out << data_.dump() << '\n';
            return;
        }
        emit_text(out, data_, "");
    }

  private:
    static void emit_text(std::ostream &out, const nlohmann::ordered_json &j,
                          const std::string &prefix) {
        for (const auto &[k, v] : j.items()) {
            const std::string key = prefix.empty() ? k : prefix + "." + k;
            if (v.is_object()) {
                emit_text(out, v, key);
            } else if (v.is_array() && !v.empty() &&
                       (v.front().is_object())) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    emit_text(out, v[i], key + "[" + std::to_string(i) + "]");
                }
            } else {
                out << key << ": " << scalar(v) << '\n';
            }
        }
    }

    static std::string scalar(const nlohmann::ordered_json &v) {
        if (v.is_number_float()) return format_number(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += (i ? ", " : "") + scalar(v[i]);
            }
            return s + "]";
        }
        return v.dump();
    }

    nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
};

} // namespace triqwit
