// Copyright 2026 The nosig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 the tested condition holds (or the
// unitary factorizes), 1 a violation was found, 2 bad input or usage.
//
// Reports are JSON objects with at least the keys operation, dims, verdict,
// witness, residual, tolerance, seed. With --out the report (or, for
// field-scan, the CSV) goes to that file and stdout gets a one-line summary.

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "nosig/cli/config.hpp"
#include "nosig/field/spinor.hpp"
#include "nosig/nosignal/factorize.hpp"

namespace nosig::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

struct CommonOptions {
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::string out;
    unsigned threads = 1;
};

struct OperatorInput {
    std::string input;
    std::string preset;
    std::string dims;
};

struct CheckOptions {
    OperatorInput op;
    std::string mode = "mc-analytic";
    std::size_t nSamples = 100;
};

struct SignalOptions {
    std::string protocol;
    std::optional<std::size_t> shots;
    std::optional<std::uint64_t> seed;
    std::string csv;
};

struct FieldOptions {
    std::string config;
    std::optional<bool> operatorLevel;
    std::string x;
    std::string y;
    std::string sep;
};

inline json matrix_to_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json dims_to_json(const BipartiteDims &d) { return json::array({d.d1, d.d2}); }

inline json base_report(const std::string &operation, json dims, const std::string &verdict,
                        json witness, double residual, double tolerance, std::uint64_t seed) {
    json r;
    r["operation"] = operation;
    r["dims"] = std::move(dims);
    r["verdict"] = verdict;
    r["witness"] = std::move(witness);
    r["residual"] = residual;
    r["tolerance"] = tolerance;
    r["seed"] = seed;
    return r;
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    NOSIG_REQUIRE(f.good(), ErrorKind::InvalidArgument, "cannot write " + path);
    f << text;
}

/// Sends the report to --out, or to stdout when no file was requested.
inline void emit_report(const json &report, const CommonOptions &common, std::ostream &out) {
    const std::string text = report.dump(2) + "\n";
    if (common.out.empty()) {
        out << text;
        return;
    }
    write_text_file(common.out, text);
    out << report.at("operation").get<std::string>() << ": "
        << report.at("verdict").get<std::string>() << '\n';
}

inline std::pair<Operator, BipartiteDims> load_operator_input(const OperatorInput &in) {
    NOSIG_REQUIRE(in.input.empty() != in.preset.empty(), ErrorKind::InvalidArgument,
                  "give exactly one of --input and --preset");
    Operator u = in.preset.empty() ? load_operator(in.input) : operator_preset(in.preset);
    NOSIG_REQUIRE(!in.dims.empty(), ErrorKind::InvalidArgument, "--dims is required");
    const BipartiteDims dims = parse_dims(in.dims);
    require_dims(u, dims);
    return {std::move(u), dims};
}

inline json witness_to_json(const LambdaIndex &w) {
    return json{{"k", w[0]}, {"kPrime", w[1]}, {"l", w[2]}, {"lPrime", w[3]}};
}

inline int cmd_factorize(const OperatorInput &in, const CommonOptions &common,
                         std::ostream &out) {
    const auto [u, dims] = load_operator_input(in);
    const double tol = common.tol.value_or(kAnalyticTol);
    const FactorizationResult f = factorize_unitary(u, dims, tol);
    if (f.is_product()) {
        const ProductFactors &p = f.product();
        json r = base_report("factorize", dims_to_json(dims), "Product", nullptr,
                             p.reconstructionError, tol * u.mat().norm(), common.seed);
        r["phase"] = p.phase;
        r["u1"] = matrix_to_json(p.u1.mat());
        r["u2"] = matrix_to_json(p.u2.mat());
        emit_report(r, common, out);
        return kExitHolds;
    }
    const NotProductWitness &w = f.not_product();
    json r = base_report("factorize", dims_to_json(dims), "NotProduct",
                         witness_to_json(w.witness), w.residual, tol * u.mat().norm(),
                         common.seed);
    const SchmidtRank sr = operator_schmidt_rank(u, dims, tol);
    r["operatorSchmidtRank"] = sr.rank;
    emit_report(r, common, out);
    return kExitViolated;
}

inline int cmd_check(const CheckOptions &opt, const CommonOptions &common, std::ostream &out) {
    const auto [u, dims] = load_operator_input(opt.op);
    if (opt.mode == "mc-analytic") {
        const double tol = common.tol.value_or(kAnalyticTol);
        const AnalyticVerdict v = check_mc_analytic(u, dims, tol);
        json r = base_report("check", dims_to_json(dims), v.holds ? "Holds" : "Violated",
                             witness_to_json(v.witness), v.residual, v.threshold,
                             common.seed);
        r["mode"] = opt.mode;
        emit_report(r, common, out);
        return v.holds ? kExitHolds : kExitViolated;
    }
    NOSIG_REQUIRE(opt.mode == "mc-sampled" || opt.mode == "c-sampled",
                  ErrorKind::InvalidArgument, "unknown mode '" + opt.mode + "'");
    NOSIG_REQUIRE(opt.nSamples >= 1, ErrorKind::InvalidArgument,
                  "sampled modes need --samples >= 1");
    SamplingOptions so;
    so.nSamples = opt.nSamples;
    so.seed = common.seed;
    so.tol = common.tol.value_or(kSampledTol);
    so.threads = common.threads;
    const SampledVerdict v = opt.mode == "mc-sampled"
                                 ? check_mc_sampled(u, dims, so)
                                 : check_c_sampled(u, dims, {}, {}, so);
    json witness;
    witness["sampleIndex"] = v.witnessIndex;
    witness["state"] = matrix_to_json(v.witnessState->mat());
    if (v.witnessObservable) {
        witness["observable"] = matrix_to_json(v.witnessObservable->op().mat());
    }
    if (v.witnessChannel) {
        json kraus = json::array();
        for (const auto &k : v.witnessChannel->kraus()) {
            kraus.push_back(matrix_to_json(k.mat()));
        }
        witness["kraus"] = std::move(kraus);
    }
    json r = base_report("check", dims_to_json(dims), v.holds ? "Holds" : "Violated",
                         std::move(witness), v.maxDeviation, v.tolerance, common.seed);
    r["mode"] = opt.mode;
    r["samples"] = v.evaluations;
    emit_report(r, common, out);
    return v.holds ? kExitHolds : kExitViolated;
}

inline int cmd_signal(const SignalOptions &opt, const CommonOptions &common,
                      std::ostream &out) {
    NOSIG_REQUIRE(!opt.protocol.empty(), ErrorKind::InvalidArgument, "--protocol is required");
    const json j = load_json(opt.protocol);
    ProtocolConfig cfg = [&] {
        try {
            return parse_protocol(j, std::filesystem::path(opt.protocol).parent_path());
        } catch (const json::exception &e) {
            throw Error(ErrorKind::ParseError, opt.protocol + ": " + e.what());
        }
    }();
    if (opt.shots) {
        cfg.spec.shots = *opt.shots;
    }
    if (opt.seed) {
        cfg.spec.seed = *opt.seed;
    }
    const double tol = common.tol.value_or(cfg.tol);
    const SignalReport s = simulate_protocol(cfg.spec, cfg.errorTargets, common.threads, tol);
    const bool signalling = s.tvExact > tol;
    json r = base_report("signal", dims_to_json(cfg.spec.dims),
                         signalling ? "Signalling" : "NoSignalling", nullptr, s.tvExact, tol,
                         s.seed);
    r["shots"] = s.shots;
    r["bobEigenvalues"] = s.bobEigenvalues;
    r["bobDistNoMeasure"] = s.bobDistNoMeasure;
    r["bobDistMeasure"] = s.bobDistMeasure;
    r["countsNoMeasure"] = s.countsNoMeasure;
    r["countsMeasure"] = s.countsMeasure;
    r["tvExact"] = s.tvExact;
    r["tvEmpirical"] = s.tvEmpirical;
    r["shotsBound"] = kShotsBound;
    json table = json::array();
    for (const auto &e : s.shotsForError) {
        table.push_back(json{{"epsilon", e.epsilon},
                             {"delta", e.delta},
                             {"shots", e.shots ? json(*e.shots) : json("unbounded")}});
    }
    r["shotsForError"] = std::move(table);
    if (!opt.csv.empty()) {
        std::ostringstream csv;
        write_distribution_csv(csv, s);
        write_text_file(opt.csv, csv.str());
    }
    emit_report(r, common, out);
    return signalling ? kExitViolated : kExitHolds;
}

inline json load_field_config(const std::string &path) {
    NOSIG_REQUIRE(!path.empty(), ErrorKind::InvalidArgument, "--config is required");
    return load_json(path);
}

template <typename F> auto with_json_errors(const std::string &where, F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw Error(ErrorKind::ParseError, where + ": " + e.what());
    }
}

inline int cmd_field_scan(const FieldOptions &opt, const CommonOptions &common,
                          std::ostream &out) {
    const json j = load_field_config(opt.config);
    const auto [model, grid, operatorLevel] = with_json_errors(opt.config, [&] {
        return std::tuple{parse_model(require_field(j, "model")),
                          parse_grid(require_field(j, "grid")),
                          j.value("operatorLevel", true)};
    });
    const double tol = common.tol.value_or(1e-6);
    ScanOptions so;
    so.operatorLevel = opt.operatorLevel.value_or(operatorLevel);
    so.threads = common.threads;
    const BracketScan scan = operator_bracket_scan(model, grid, so);

    double worst = 0.0;
    std::optional<std::size_t> worstIndex;
    double worstResidual = 0.0;
    for (std::size_t i = 0; i < scan.values.size(); ++i) {
        const auto &e = scan.values[i];
        if (e.bracketResidual) {
            worstResidual = std::max(worstResidual, *e.bracketResidual);
        }
        if (e.intervalType != IntervalType::Spacelike) {
            continue;
        }
        double v = std::abs(e.cNumberBracket);
        if (e.operatorBracketNorm) {
            v = std::max(v, *e.operatorBracketNorm);
        }
        if (!worstIndex || v > worst) {
            worst = v;
            worstIndex = i;
        }
    }
    const bool holds = !worstIndex || worst <= tol;

    std::ostringstream csv;
    write_scan_csv(csv, scan);
    if (common.out.empty()) {
        out << csv.str();
    } else {
        write_text_file(common.out, csv.str());
        json witness = nullptr;
        if (worstIndex) {
            const auto &e = scan.values[*worstIndex];
            witness = json::array({e.sep.t, e.sep.x});
        }
        json r = base_report("field-scan", nullptr,
                             holds ? "MicrocausalityHolds" : "MicrocausalityViolated",
                             std::move(witness), worst, tol, common.seed);
        r["model"] = model_to_json(model);
        r["points"] = scan.values.size();
        r["maxBracketResidual"] = worstResidual;
        out << r.dump(2) << '\n';
    }
    return holds ? kExitHolds : kExitViolated;
}

inline int cmd_fermion_demo(const FieldOptions &opt, const CommonOptions &common,
                            std::ostream &out) {
    const json j = load_field_config(opt.config);
    const auto [model, x, y] = with_json_errors(opt.config, [&] {
        return std::tuple{parse_model(require_field(j, "model")),
                          opt.x.empty() ? parse_point(require_field(j, "x")) : parse_point(opt.x),
                          opt.y.empty() ? parse_point(require_field(j, "y"))
                                        : parse_point(opt.y)};
    });
    const double tol = common.tol.value_or(1e-10);
    const FermionDemoResult d = fermion_measurability_demo(model, x, y, tol);
    json r = base_report("fermion-demo", nullptr, to_string(d.verdict),
                         json::array({json::array({x.t, x.x}), json::array({y.t, y.x})}),
                         d.anticommNorm, tol, common.seed);
    r["model"] = model_to_json(model);
    r["interval"] = to_string(classify_interval(x - y));
    r["anticommNorm"] = d.anticommNorm;
    r["commNorm"] = d.commNorm;
    r["productNorm"] = d.productNorm;
    emit_report(r, common, out);
    return d.verdict == Measurability::NotMeasurable ? kExitHolds : kExitViolated;
}

inline int cmd_pauli_jordan(const FieldOptions &opt, const CommonOptions &common,
                            std::ostream &out) {
    json r = base_report("pauli-jordan", nullptr, "Table", nullptr, 0.0,
                         common.tol.value_or(0.0), common.seed);
    std::optional<FieldModel> model;
    std::optional<SpacetimePoint> sep;
    if (!opt.config.empty()) {
        const json j = load_json(opt.config);
        model = with_json_errors(opt.config, [&] { return parse_model(require_field(j, "model")); });
    }
    if (!opt.sep.empty()) {
        sep = parse_point(opt.sep);
        if (!model) {
            model = FieldModel{};
            model->nMax = 2000;
        }
    }
    json table = json::array();
    for (const auto &row : bracket_table()) {
        json e{{"fieldClass", to_string(row.fieldClass)},
               {"statistics", to_string(row.statistics)},
               {"bracket", row.bracket},
               {"value", row.formula},
               {"vanishesSpacelike", row.microcausal}};
        if (model && sep) {
            FieldModel m = *model;
            m.fieldClass = row.fieldClass;
            m.statistics = row.statistics;
            e["at"] = complex_to_json(c_number_bracket(m, *sep));
        }
        table.push_back(std::move(e));
    }
    r["table"] = std::move(table);
    if (model && sep) {
        r["model"] = model_to_json(*model);
        r["separation"] = json::array({sep->t, sep->x});
        r["interval"] = to_string(classify_interval(*sep));
        r["deltaPlusForward"] = complex_to_json(delta_plus(*model, *sep));
        r["deltaPlusBackward"] = complex_to_json(delta_plus(*model, -*sep));
    }
    emit_report(r, common, out);
    return kExitHolds;
}

/// Parses argv and runs one subcommand; never throws.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Numerical checks of no-signalling, unitary factorization and "
                 "field microcausality",
                 "nosig"};
    app.require_subcommand(1);
    CommonOptions common;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--seed", common.seed, "RNG seed");
        sub->add_option("--tol", common.tol, "decision tolerance");
        sub->add_option("--out", common.out, "output file");
        sub->add_option("--threads", common.threads, "worker threads")
            ->check(CLI::Range(1U, 256U));
    };
    auto add_operator = [](CLI::App *sub, OperatorInput &in) {
        sub->add_option("--input", in.input, "operator text file");
        sub->add_option("--preset", in.preset, "named operator (I2 X Y Z H CNOT SWAP)");
        sub->add_option("--dims", in.dims, "subsystem dims d1,d2")->required();
    };

    OperatorInput factorIn;
    CLI::App *factorize = app.add_subcommand("factorize", "split U into u1 (x) u2");
    add_operator(factorize, factorIn);
    add_common(factorize);

    CheckOptions checkOpt;
    CLI::App *check = app.add_subcommand("check", "test the no-signalling conditions");
    add_operator(check, checkOpt.op);
    check->add_option("--mode", checkOpt.mode, "mc-analytic | mc-sampled | c-sampled");
    check->add_option("--samples", checkOpt.nSamples, "samples for sampled modes");
    add_common(check);

    SignalOptions signalOpt;
    CLI::App *signal = app.add_subcommand("signal", "simulate the signalling protocol");
    signal->add_option("--protocol", signalOpt.protocol, "protocol JSON")->required();
    signal->add_option("--shots", signalOpt.shots, "shots per branch");
    signal->add_option("--csv", signalOpt.csv, "outcome distribution CSV");
    add_common(signal);
    signal->get_option("--seed")->description("overrides the protocol seed");

    FieldOptions scanOpt;
    CLI::App *scan = app.add_subcommand("field-scan", "bracket scan over a grid");
    scan->add_option("--config", scanOpt.config, "model and grid JSON")->required();
    scan->add_option("--operator-level", scanOpt.operatorLevel,
                     "compute Fock-space brackets (true/false)");
    add_common(scan);

    FieldOptions demoOpt;
    CLI::App *demo = app.add_subcommand("fermion-demo", "Hermitian Fermi field bilinears");
    demo->add_option("--config", demoOpt.config, "model and points JSON")->required();
    demo->add_option("--x", demoOpt.x, "first point t,x");
    demo->add_option("--y", demoOpt.y, "second point t,x");
    add_common(demo);

    FieldOptions pjOpt;
    CLI::App *pj = app.add_subcommand("pauli-jordan", "c-number bracket table");
    pj->add_option("--config", pjOpt.config, "model JSON");
    pj->add_option("--sep", pjOpt.sep, "separation t,x to evaluate");
    add_common(pj);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        app.exit(e, out, err);
        return kExitHolds;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (signal->parsed() && signal->get_option("--seed")->count() > 0) {
            signalOpt.seed = common.seed;
        }
        if (factorize->parsed()) {
            return cmd_factorize(factorIn, common, out);
        }
        if (check->parsed()) {
            return cmd_check(checkOpt, common, out);
        }
        if (signal->parsed()) {
            return cmd_signal(signalOpt, common, out);
        }
        if (scan->parsed()) {
            return cmd_field_scan(scanOpt, common, out);
        }
        if (demo->parsed()) {
            return cmd_fermion_demo(demoOpt, common, out);
        }
        return cmd_pauli_jordan(pjOpt, common, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception &e) {
        err << "error: ParseError: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace nosig::cli
