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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <triqwit/commands.hpp>

namespace cli = triqwit::cli;

int main(int argc, char **argv) {
    CLI::App app{"triqwit: three-qubit entanglement witnesses"};
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--machine", machine, "emit one JSON object instead of key: value lines");

    const cli::Streams io{std::cout, std::cerr};
    int code = cli::kOk;

    cli::ClassifyOptions classify;
    auto *c = app.add_subcommand("classify", "classify a pure state by its G values");
    c->add_option("state", classify.state, "named state or @file")->required();
    c->add_option("--tol", classify.tol, "G value counted as zero at or below this");
    c->callback([&] {
        classify.machine = machine;
        code = cli::cmd_classify(classify, io);
    });

    cli::WitnessOptions witness;
    auto *w = app.add_subcommand("witness", "evaluate one witness for a fixed setting");
    w->add_option("state", witness.state, "named state or @file")->required();
    w->add_option("witness", witness.witness, "G1..G3, T1..T3, F1..F3, Fsum")->required();
    w->add_option("--setting", witness.setting, "pauli, example1, example2 or @file");
    w->add_option("--tol", witness.tol, "violation margin");
    w->callback([&] {
        witness.machine = machine;
        code = cli::cmd_witness(witness, io);
    });

    cli::ScanOptions scan;
    auto *s = app.add_subcommand("scan", "tabulate a witness over a family parameter grid (CSV)");
    s->add_option("family", scan.family, "family, optionally with fixed parameters, e.g. rho3 or rho3(b=0.5)")
        ->required();
    s->add_option("witness", scan.witness, "witness id")->required();
    s->add_option("--grid", scan.grid, "name:lo:hi:step, repeat per parameter (first is outermost)")
        ->required();
    s->add_option("--setting", scan.setting, "pauli, example1, example2 or @file");
    s->add_option("--out", scan.out_path, "CSV path (stdout when omitted)");
    s->callback([&] { code = cli::cmd_scan(scan, io); });

    cli::ThresholdOptions threshold;
    auto *t = app.add_subcommand("threshold", "find where a witness crosses a target along one parameter");
    t->add_option("family", threshold.family, "family with all but one parameter bound")->required();
    t->add_option("witness", threshold.witness, "witness id")->required();
    t->add_option("--target", threshold.target, "target witness value")->required();
    t->add_option("--setting", threshold.setting, "pauli, example1, example2 or @file");
    t->add_option("--free", threshold.free_param, "name of the free parameter");
    t->callback([&] {
        threshold.machine = machine;
        code = cli::cmd_threshold(threshold, io);
    });

    cli::OptimizeOptions optimize;
    auto *o = app.add_subcommand("optimize", "minimize a witness over complementary local observables");
    o->add_option("state", optimize.state, "named state or @file")->required();
    o->add_option("witness", optimize.witness, "T1..T3, F1..F3 or Fsum")->required();
    o->add_option("--starts", optimize.config.starts, "number of random starts");
    o->add_option("--seed", optimize.config.seed, "random seed");
    o->add_option("--iterations", optimize.config.max_iterations, "sweeps per start");
    o->add_option("--step", optimize.config.initial_step, "initial angle step (radians)");
    o->add_option("--min-step", optimize.config.min_step, "stop when the step falls below this");
    o->callback([&] {
        optimize.machine = machine;
        code = cli::cmd_optimize(optimize, io);
    });

    cli::SampleOptions sample;
    auto *m = app.add_subcommand("sample", "simulate finite-shot coincidence measurements");
    m->add_option("state", sample.state, "named state or @file")->required();
    m->add_option("witness", sample.witness, "witness id (omit with --observable)");
    m->add_option("--observable", sample.observable, "single Pauli product such as ZZZ");
    m->add_option("--setting", sample.setting, "pauli, example1, example2 or @file");
    m->add_option("--shots", sample.shots, "shots per measured setting");
    m->add_option("--seed", sample.seed, "random seed");
    m->callback([&] {
        sample.machine = machine;
        code = cli::cmd_sample(sample, io);
    });

    cli::ExportOptions export_state;
    auto *es = app.add_subcommand("export-state", "write a state file");
    es->add_option("state", export_state.spec, "named state or @file")->required();
    es->add_option("--out", export_state.out_path, "path (stdout when omitted)");
    es->callback([&] { code = cli::cmd_export_state(export_state, io); });

    cli::ExportOptions export_setting;
    auto *ex = app.add_subcommand("export-setting", "write a setting file");
    ex->add_option("setting", export_setting.spec, "pauli, example1, example2 or @file")->required();
    ex->add_option("--out", export_setting.out_path, "path (stdout when omitted)");
    ex->callback([&] { code = cli::cmd_export_setting(export_setting, io); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::kOk : cli::kInputError;
    }
    return code;
}
