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

// JSON run configurations.
//
// Operator spec, one of
//   "CNOT"                                  preset name
//   {"preset": "CNOT"}
//   {"file": "cnot.op"}                     text operator file, relative to the config
//   {"tensor": [spec, spec, ...]}           Kronecker product, left to right
//   {"dim": 2, "entries": [[re, im], ...]}  row-major
//
// State spec, one of
//   "bell_phi_plus" | {"preset": ...}       also "maximally_mixed:<dim>"
//   {"pure": [[re, im], ...]}
//   {"tensor": [state, state]}
//   any operator spec                       taken as the density matrix
//
// Presets: I2, X, Y, Z, H, CNOT, SWAP, bell_phi_plus (|Phi+><Phi+|).

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nosig/core/serialize.hpp"
#include "nosig/field/model.hpp"
#include "nosig/signal/protocol.hpp"

namespace nosig::cli {

using json = nlohmann::ordered_json;

inline json load_json(const std::string &path) {
    std::ifstream in(path);
    NOSIG_REQUIRE(in.good(), ErrorKind::ParseError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

inline const json &require_field(const json &obj, const char *key) {
    NOSIG_REQUIRE(obj.is_object() && obj.contains(key), ErrorKind::ParseError,
                  std::string("missing field '") + key + "'");
    return obj.at(key);
}

inline Operator operator_preset(const std::string &name) {
    if (name == "I2") {
        return paulis::identity2();
    }
    if (name == "X") {
        return paulis::x();
    }
    if (name == "Y") {
        return paulis::y();
    }
    if (name == "Z") {
        return paulis::z();
    }
    if (name == "H") {
        return paulis::hadamard();
    }
    if (name == "CNOT") {
        return paulis::cnot();
    }
    if (name == "SWAP") {
        return paulis::swap();
    }
    if (name == "bell_phi_plus") {
        return paulis::bell_phi_plus();
    }
    throw Error(ErrorKind::ParseError, "unknown operator preset '" + name + "'");
}

inline std::vector<cplx> parse_complex_list(const json &arr) {
    NOSIG_REQUIRE(arr.is_array(), ErrorKind::ParseError, "expected a list of [re, im]");
    std::vector<cplx> out;
    for (const auto &e : arr) {
        NOSIG_REQUIRE(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
                      ErrorKind::ParseError, "complex entries are [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

inline Operator parse_operator_spec(const json &spec, const std::filesystem::path &base) {
    if (spec.is_string()) {
        return operator_preset(spec.get<std::string>());
    }
    NOSIG_REQUIRE(spec.is_object(), ErrorKind::ParseError, "operator spec must be an object");
    if (spec.contains("preset")) {
        return operator_preset(spec.at("preset").get<std::string>());
    }
    if (spec.contains("file")) {
        return load_operator((base / spec.at("file").get<std::string>()).string());
    }
    if (spec.contains("tensor")) {
        const json &parts = spec.at("tensor");
        NOSIG_REQUIRE(parts.is_array() && !parts.empty(), ErrorKind::ParseError,
                      "'tensor' needs a nonempty list");
        Operator out = parse_operator_spec(parts[0], base);
        for (std::size_t i = 1; i < parts.size(); ++i) {
            out = tensor_product(out, parse_operator_spec(parts[i], base));
        }
        return out;
    }
    const auto dim = require_field(spec, "dim").get<std::size_t>();
    const auto entries = parse_complex_list(require_field(spec, "entries"));
    NOSIG_REQUIRE(dim >= 1 && entries.size() == dim * dim, ErrorKind::ParseError,
                  "'entries' must hold dim*dim values");
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = entries[static_cast<std::size_t>(r * n + c)];
        }
    }
    return Operator(std::move(m));
}

inline DensityMatrix parse_state_spec(const json &spec, const std::filesystem::path &base) {
    std::string preset;
    if (spec.is_string()) {
        preset = spec.get<std::string>();
    } else if (spec.is_object() && spec.contains("preset")) {
        preset = spec.at("preset").get<std::string>();
    }
    const std::string mixed = "maximally_mixed:";
    if (preset.rfind(mixed, 0) == 0) {
        return maximally_mixed(static_cast<std::size_t>(
            detail::parse_double(preset.substr(mixed.size()))));
    }
    if (spec.is_object() && spec.contains("pure")) {
        const auto amps = parse_complex_list(spec.at("pure"));
        NOSIG_REQUIRE(!amps.empty(), ErrorKind::ParseError, "'pure' needs amplitudes");
        Vector v(static_cast<Eigen::Index>(amps.size()));
        for (std::size_t i = 0; i < amps.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = amps[i];
        }
        NOSIG_REQUIRE(v.norm() > 0.0, ErrorKind::InvalidState, "zero state vector");
        return pure_state(v);
    }
    if (spec.is_object() && spec.contains("tensor")) {
        const json &parts = spec.at("tensor");
        NOSIG_REQUIRE(parts.is_array() && !parts.empty(), ErrorKind::ParseError,
                      "'tensor' needs a nonempty list");
        DensityMatrix out = parse_state_spec(parts[0], base);
        for (std::size_t i = 1; i < parts.size(); ++i) {
            out = product_state(out, parse_state_spec(parts[i], base));
        }
        return out;
    }
    return DensityMatrix(parse_operator_spec(spec, base));
}

inline BipartiteDims parse_dims(const json &j) {
    NOSIG_REQUIRE(j.is_array() && j.size() == 2 && j[0].is_number_unsigned() &&
                      j[1].is_number_unsigned(),
                  ErrorKind::ParseError, "dims must be [d1, d2]");
    return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

/// Parses "d1,d2" or "d1xd2".
inline BipartiteDims parse_dims(const std::string &text) {
    const auto sep = text.find_first_of(",x");
    NOSIG_REQUIRE(sep != std::string::npos, ErrorKind::ParseError,
                  "dims must look like 2,2");
    const double a = detail::parse_double(text.substr(0, sep));
    const double b = detail::parse_double(text.substr(sep + 1));
    NOSIG_REQUIRE(a >= 1 && b >= 1 && a == std::floor(a) && b == std::floor(b),
                  ErrorKind::ParseError, "dims must be positive integers");
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

struct ProtocolConfig {
    ProtocolSpec spec;
    std::vector<std::pair<double, double>> errorTargets;
    double tol = kNoSignalTol;
};

inline ProtocolConfig parse_protocol(const json &j, const std::filesystem::path &base) {
    const BipartiteDims dims = parse_dims(require_field(j, "dims"));
    ProtocolConfig cfg{
        ProtocolSpec{dims, parse_state_spec(require_field(j, "initialState"), base),
                     Observable(parse_operator_spec(require_field(j, "aliceObservable"), base)),
                     parse_operator_spec(require_field(j, "jointUnitary"), base),
                     Observable(parse_operator_spec(require_field(j, "bobObservable"), base)),
                     require_field(j, "shots").get<std::size_t>(),
                     require_field(j, "seed").get<std::uint64_t>()},
        {},
        kNoSignalTol};
    if (j.contains("errorTargets")) {
        for (const auto &t : j.at("errorTargets")) {
            NOSIG_REQUIRE(t.is_array() && t.size() == 2, ErrorKind::ParseError,
                          "errorTargets entries are [eps, delta]");
            cfg.errorTargets.emplace_back(t[0].get<double>(), t[1].get<double>());
        }
    } else {
        cfg.errorTargets = {{0.01, 0.05}, {0.001, 0.01}};
    }
    if (j.contains("tol")) {
        cfg.tol = j.at("tol").get<double>();
    }
    return cfg;
}

/// Model keys: mass, boxLength, nMax, statistics, fieldClass,
/// occupationCutoff, particleCap, fockBudget. Missing keys keep defaults.
inline FieldModel parse_model(const json &j) {
    NOSIG_REQUIRE(j.is_object(), ErrorKind::ParseError, "model must be an object");
    FieldModel m;
    if (j.contains("mass")) {
        m.mass = j.at("mass").get<double>();
    }
    if (j.contains("boxLength")) {
        m.boxLength = j.at("boxLength").get<double>();
    }
    if (j.contains("nMax")) {
        m.nMax = j.at("nMax").get<std::size_t>();
    }
    if (j.contains("statistics")) {
        m.statistics = parse_statistics(j.at("statistics").get<std::string>());
    }
    if (j.contains("fieldClass")) {
        m.fieldClass = parse_field_class(j.at("fieldClass").get<std::string>());
    }
    if (j.contains("occupationCutoff")) {
        m.occupationCutoff = j.at("occupationCutoff").get<std::size_t>();
    }
    if (j.contains("particleCap") && !j.at("particleCap").is_null()) {
        m.particleCap = j.at("particleCap").get<std::size_t>();
    }
    if (j.contains("fockBudget")) {
        m.fockBudget = j.at("fockBudget").get<std::size_t>();
    }
    m.validate();
    return m;
}

inline json model_to_json(const FieldModel &m) {
    json j;
    j["mass"] = m.mass;
    j["boxLength"] = m.boxLength;
    j["nMax"] = m.nMax;
    j["statistics"] = to_string(m.statistics);
    j["fieldClass"] = to_string(m.fieldClass);
    j["occupationCutoff"] = m.per_mode_cutoff();
    j["particleCap"] = m.particleCap ? json(*m.particleCap) : json(nullptr);
    j["fockBudget"] = m.fockBudget;
    return j;
}

inline SpacetimePoint parse_point(const json &j) {
    NOSIG_REQUIRE(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
                  ErrorKind::ParseError, "points are [t, x]");
    return {j[0].get<double>(), j[1].get<double>()};
}

/// Parses "t,x".
inline SpacetimePoint parse_point(const std::string &text) {
    const auto sep = text.find(',');
    NOSIG_REQUIRE(sep != std::string::npos, ErrorKind::ParseError, "points look like t,x");
    return {detail::parse_double(text.substr(0, sep)),
            detail::parse_double(text.substr(sep + 1))};
}

/// Grid spec: {"points": [[t, x], ...]} or
/// {"t": t, "xFrom": a, "xTo": b, "count": n} (n evenly spaced x, both ends included).
inline std::vector<SpacetimePoint> parse_grid(const json &j) {
    std::vector<SpacetimePoint> grid;
    if (j.contains("points")) {
        for (const auto &p : j.at("points")) {
            grid.push_back(parse_point(p));
        }
        return grid;
    }
    const double t = j.value("t", 0.0);
    const double a = require_field(j, "xFrom").get<double>();
    const double b = require_field(j, "xTo").get<double>();
    const auto n = require_field(j, "count").get<std::size_t>();
    NOSIG_REQUIRE(n >= 1, ErrorKind::ParseError, "grid count must be >= 1");
    for (std::size_t i = 0; i < n; ++i) {
        const double x = n == 1 ? a : a + (b - a) * static_cast<double>(i) /
                                              static_cast<double>(n - 1);
        grid.push_back({t, x});
    }
    return grid;
}

} // namespace nosig::cli
