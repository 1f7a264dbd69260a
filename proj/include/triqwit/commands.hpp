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
 * Command implementations behind the triqwit CLI. Each command writes its
 * report to `out`, diagnostics to `err`, and returns the process exit code:
 * 0 success, 2 input error, 3 no result.
 */

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "core.hpp"
#include "io.hpp"
#include "measurement.hpp"
#include "mixed_witness.hpp"
#include "optimizer.hpp"
#include "pure_witness.hpp"
#include "witness.hpp"

namespace triqwit::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNoResult = 3 };

struct Streams {
    std::ostream &out;
    std::ostream &err;
};

namespace detail {

/// Maps exceptions onto the exit-code contract.
inline int guarded(const Streams &io, const std::function<int()> &body) {
    try {
        return body();
    } catch (const NoResult &e) {
        io.err << "triqwit: " << e.what() << '\n';
        return kNoResult;
    } catch (const InconsistentClassification &e) {
        io.err << "triqwit: numerical inconsistency: " << e.what() << '\n';
        return kNoResult;
    } catch (const std::invalid_argument &e) {
        // InputError, ValidationError, MixedOrientationError, DimensionError
        io.err << "triqwit: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error &e) {
        io.err << "triqwit: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range &e) {
        io.err << "triqwit: " << e.what() << '\n';
        return kInputError;
    }
}

inline nlohmann::ordered_json flag_json(const VerdictFlag &f) {
    nlohmann::ordered_json j;
    j["set"] = f.set;
    j["value"] = f.value;
    j["witness"] = std::string(to_string(f.witness));
    return j;
}

inline nlohmann::ordered_json verdict_json(const MixedVerdict &v) {
    nlohmann::ordered_json j;
    j["not_sep_1|23_and_12|3"] = flag_json(v.not_sep_1_23_and_12_3);
    j["not_sep_2|13_and_12|3"] = flag_json(v.not_sep_2_13_and_12_3);
    j["not_sep_1|23_and_2|13"] = flag_json(v.not_sep_1_23_and_2_13);
    j["not_fully_separable"] = flag_json(v.not_fully_separable);
    j["genuine_entangled"] = flag_json(v.genuine_entangled);
    return j;
}

inline nlohmann::ordered_json ledger_json(const DiscrepancyLedger &l) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto &e : l.entries()) {
        nlohmann::ordered_json j;
        j["claim"] = e.claim;
        j["computed"] = e.computed;
        j["reference"] = e.reference;
        j["abs_difference"] = e.abs_difference;
        out.push_back(j);
    }
    return out;
}

/// Family and parameters when `spec` names a family (not a file).
inline std::optional<FamilyRef> family_of(const std::string &spec) {
    if (!spec.empty() && spec.front() == '@') return std::nullopt;
    return parse_family_ref(spec);
}

} // namespace detail

struct ClassifyOptions {
    std::string state;
    double tol = 1e-8;
    bool machine = false;
};

inline int cmd_classify(const ClassifyOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        const State s = resolve_state(o.state);
        const auto *psi = std::get_if<PureState>(&s);
        if (!psi) {
            throw InputError("classify needs a pure state; '" + o.state +
                             "' is mixed");
        }
        const auto c = classify_pure(*psi, o.tol);
        Report r;
        r.set("state", o.state)
            .set("g1", c.g_values[0])
            .set("g2", c.g_values[1])
            .set("g3", c.g_values[2])
            .set("label", c.describe())
            .set("tol", o.tol);
        r.emit(io.out, o.machine);
        return static_cast<int>(kOk);
    });
}

struct WitnessOptions {
    std::string state;
    std::string witness;
    std::string setting = "pauli";
    double tol = 1e-9;
    bool machine = false;
};

inline int cmd_witness(const WitnessOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        const WitnessId id = resolve_witness(o.witness);
        const State s = resolve_state(o.state);
        const auto rho = to_density(s);
        const WitnessSetting setting = is_pauli_only(id)
                                           ? WitnessSetting::pauli()
                                           : resolve_setting(o.setting);
        const double value = witness_value(rho, setting, id);
        const auto bound = witness_bound(id);

        Report r;
        r.set("state", o.state)
            .set("witness", std::string(to_string(id)))
            .set("setting", is_pauli_only(id) ? "pauli" : o.setting)
            .set("value", value)
            .set("threshold", bound.threshold)
            .set("violation", violates(id, value, o.tol))
            .set("meaning", bound.meaning);
        if (!is_pauli_only(id)) {
            r.set("verdict", detail::verdict_json(verdict(rho, setting, o.tol)));
        }
        if (const auto fam = detail::family_of(o.state)) {
            DiscrepancyLedger ledger;
            const auto params = fam->values();
            for (const auto *c : find_claims(fam->id, o.setting, id, std::nullopt)) {
                ledger.append(c->claim, value, c->reference(params));
            }
            if (!ledger.entries().empty()) {
                r.set("ledger", detail::ledger_json(ledger));
            }
        }
        r.emit(io.out, o.machine);
        return static_cast<int>(kOk);
    });
}

struct ScanOptions {
    std::string family;
    std::string witness;
    std::vector<std::string> grid;
    std::string setting = "pauli";
    std::string out_path;
};

inline int cmd_scan(const ScanOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        const auto fam = parse_family_ref(o.family);
        if (!fam) {
            throw InputError("unknown family '" + o.family + "'");
        }
        const WitnessId id = resolve_witness(o.witness);
        const WitnessSetting setting = resolve_setting(o.setting);
        std::vector<GridAxis> axes;
        for (const auto &g : o.grid) {
            axes.push_back(parse_grid_axis(g));
        }
        const auto table = scan_witness(fam->id, axes, id, setting, fam->params);
        const std::string csv = scan_to_csv(table);
        if (o.out_path.empty()) {
            io.out << csv;
        } else {
            triqwit::detail::write_text_file(o.out_path, csv);
        }
        return static_cast<int>(kOk);
    });
}

struct ThresholdOptions {
    std::string family;
    std::string witness;
    std::string setting = "pauli";
    double target = 0.0;
    std::string free_param;
    bool machine = false;
};

inline int cmd_threshold(const ThresholdOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        const auto fam = parse_family_ref(o.family);
        if (!fam) {
            throw InputError("unknown family '" + o.family + "'");
        }
        const WitnessId id = resolve_witness(o.witness);
        const WitnessSetting setting = is_pauli_only(id)
                                           ? WitnessSetting::pauli()
                                           : resolve_setting(o.setting);
        const auto unbound = fam->unbound();
        std::string free = o.free_param;
        if (free.empty()) {
            if (unbound.size() != 1) {
                throw InputError("threshold needs exactly one free parameter; "
                                 "bind the others or pass --free");
            }
            free = unbound.front();
        } else if (unbound.size() != 1 || unbound.front() != free) {
            throw InputError("parameter " + free +
                             " must be the only unbound parameter");
        }
        auto f = [&](double x) {
            FamilyRef ref = *fam;
            ref.params.emplace_back(free, x);
            return witness_value(to_density(make(ref)), setting, id);
        };
        const auto t = find_threshold(f, o.target);

        Report r;
        r.set("family", o.family)
            .set("witness", std::string(to_string(id)))
            .set("setting", o.setting)
            .set("parameter", free)
            .set("target", o.target)
            .set("root", t.root)
            .set("bracket", nlohmann::ordered_json::array({t.lo, t.hi}))
            .set("value_at_root", f(t.root));
        DiscrepancyLedger ledger;
        for (const auto *c : find_claims(fam->id, o.setting, id, o.target)) {
            ledger.append(c->claim, t.root, c->reference({}));
        }
        if (!ledger.entries().empty()) {
            r.set("ledger", detail::ledger_json(ledger));
        }
        r.emit(io.out, o.machine);
        return static_cast<int>(kOk);
    });
}

struct OptimizeOptions {
    std::string state;
    std::string witness;
    OptimizerConfig config;
    bool machine = false;
};

inline int cmd_optimize(const OptimizeOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        const WitnessId id = resolve_witness(o.witness);
        const auto rho = to_density(resolve_state(o.state));
        const auto res = minimize_witness(rho, id, o.config);
        nlohmann::ordered_json angles = nlohmann::ordered_json::array();
        for (const double a : res.best_angles) angles.push_back(a);
        Report r;
        r.set("state", o.state)
            .set("witness", std::string(to_string(id)))
            .set("best_value", res.best_value)
            .set("euler_zyz", angles)
            .set("best_start", res.best_start)
            .set("starts", o.config.starts)
            .set("seed", o.config.seed)
            .set("evaluations", res.evaluations)
            .set("violation", violates(id, res.best_value));
        r.emit(io.out, o.machine);
        return static_cast<int>(kOk);
    });
}

struct SampleOptions {
    std::string state;
    std::string witness;     ///< empty when `observable` is used
    std::string observable;  ///< Pauli string such as "ZZZ"
    std::string setting = "pauli";
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    bool machine = false;
};

inline int cmd_sample(const SampleOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        if (o.shots == 0) {
            throw InputError("--shots must be >= 1");
        }
        const auto rho = to_density(resolve_state(o.state));
        Report r;
        r.set("state", o.state);
        if (!o.observable.empty()) {
            if (!o.witness.empty()) {
                throw InputError("give either a witness or --observable");
            }
            const auto obs = ProductObservable::from_pauli(o.observable);
            const auto e = sample_expectation(rho, obs, o.shots, o.seed);
            r.set("observable", o.observable)
                .set("mean", e.mean)
                .set("error", e.standard_error)
                .set("shots", e.shots)
                .set("exact", obs.is_identity()
                                  ? 1.0
                                  : expectation(rho, obs.lifted()));
        } else {
            if (o.witness.empty()) {
                throw InputError("sample needs a witness or --observable");
            }
            const WitnessId id = resolve_witness(o.witness);
            const WitnessSetting setting = is_pauli_only(id)
                                               ? WitnessSetting::pauli()
                                               : resolve_setting(o.setting);
            const auto est = estimate_witness(rho, id, setting, o.shots, o.seed);
            r.set("witness", std::string(to_string(id)))
                .set("estimate", est.value)
                .set("error", est.error)
                .set("shots", o.shots)
                .set("settings_measured", est.products.size())
                .set("exact", witness_value(rho, setting, id));
        }
        r.set("seed", o.seed);
        r.emit(io.out, o.machine);
        return static_cast<int>(kOk);
    });
}

struct ExportOptions {
    std::string spec;
    std::string out_path;
};

inline int cmd_export_state(const ExportOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        const std::string text = state_to_json(resolve_state(o.spec)).dump(2) + "\n";
        if (o.out_path.empty()) {
            io.out << text;
        } else {
            triqwit::detail::write_text_file(o.out_path, text);
        }
        return static_cast<int>(kOk);
    });
}

inline int cmd_export_setting(const ExportOptions &o, const Streams &io) {
    return detail::guarded(io, [&] {
        const std::string text =
            setting_to_json(resolve_setting(o.spec)).dump(2) + "\n";
        if (o.out_path.empty()) {
            io.out << text;
        } else {
            triqwit::detail::write_text_file(o.out_path, text);
        }
        return static_cast<int>(kOk);
    });
}

} // namespace triqwit::cli
