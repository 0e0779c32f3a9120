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


#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nosig/cli/app.hpp"

using nosig::cli::json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "nosig");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = nosig::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string data(const std::string &name) { return std::string(NOSIG_DATA_DIR) + "/" + name; }

std::string slurp(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "nosig_test_cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("factorize command", "[cli]") {
    const Outcome id = invoke({"factorize", "--input", data("identity4.op"), "--dims", "2,2"});
    CHECK(id.code == 0);
    const json r = json::parse(id.out);
    CHECK(r["operation"] == "factorize");
    CHECK(r["verdict"] == "Product");
    CHECK(r["dims"] == json::array({2, 2}));
    for (const char *key : {"witness", "residual", "tolerance", "seed", "u1", "u2", "phase"}) {
        CHECK(r.contains(key));
    }

    const Outcome cnot = invoke({"factorize", "--input", data("cnot.op"), "--dims", "2,2"});
    CHECK(cnot.code == 1);
    const json c = json::parse(cnot.out);
    CHECK(c["verdict"] == "NotProduct");
    CHECK(c["witness"].contains("kPrime"));
    CHECK(c["operatorSchmidtRank"] == 2);

    const Outcome bad = invoke({"factorize", "--input", data("malformed.op"), "--dims", "2,2"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());

    CHECK(invoke({"factorize", "--preset", "CNOT", "--dims", "3,2"}).code == 2);
    CHECK(invoke({"factorize", "--preset", "CNOT", "--input", data("cnot.op"), "--dims", "2,2"})
              .code == 2);
    CHECK(invoke({"factorize", "--input", data("no_such_file.op"), "--dims", "2,2"}).code == 2);
}

TEST_CASE("check command", "[cli]") {
    for (const char *mode : {"mc-analytic", "mc-sampled", "c-sampled"}) {
        CHECK(invoke({"check", "--input", data("hadamard_x.op"), "--dims", "2,2", "--mode", mode,
                      "--samples", "20"})
                  .code == 0);
        CHECK(invoke({"check", "--preset", "CNOT", "--dims", "2,2", "--mode", mode, "--samples",
                      "20"})
                  .code == 1);
    }
    const json r = json::parse(
        invoke({"check", "--preset", "CNOT", "--dims", "2,2", "--mode", "mc-analytic"}).out);
    CHECK(r["residual"].get<double>() >= 0.5);
    CHECK(invoke({"check", "--preset", "CNOT", "--dims", "2,2", "--mode", "mc-sampled",
                  "--samples", "0"})
              .code == 2);
    CHECK(invoke({"check", "--preset", "CNOT", "--dims", "2,2", "--mode", "bogus"}).code == 2);
    CHECK(invoke({"check", "--preset", "SWAP", "--dims", "2,2", "--mode", "c-sampled",
                  "--samples", "5", "--seed", "9"})
              .out == invoke({"check", "--preset", "SWAP", "--dims", "2,2", "--mode",
                              "c-sampled", "--samples", "5", "--seed", "9", "--threads", "3"})
                          .out);
}

TEST_CASE("signal command", "[cli]") {
    const auto report = scratch("signal.json");
    const auto csv = scratch("signal.csv");
    const Outcome o = invoke({"signal", "--protocol", data("protocol_cnot_bell.json"), "--out",
                              report.string(), "--csv", csv.string()});
    CHECK(o.code == 1);
    CHECK(o.out == "signal: Signalling\n");
    const json r = json::parse(slurp(report));
    CHECK(r["tvExact"].get<double>() == Catch::Approx(0.5).margin(1e-12));
    CHECK(std::abs(r["tvEmpirical"].get<double>() - 0.5) <= 0.02);
    CHECK(r["shots"] == 10000);
    CHECK(r["shotsForError"].size() == 2);
    CHECK(slurp(csv).rfind("outcomeIndex,p0,p1\n", 0) == 0);

    const json p = json::parse(invoke({"signal", "--protocol", data("protocol_product.json")}).out);
    CHECK(p["verdict"] == "NoSignalling");
    CHECK(p["shotsForError"][0]["shots"] == "unbounded");

    CHECK(invoke({"signal", "--protocol", data("protocol_missing_field.json")}).code == 2);
    const json s = json::parse(
        invoke({"signal", "--protocol", data("protocol_cnot_bell.json"), "--shots", "50",
                "--seed", "4"})
            .out);
    CHECK(s["shots"] == 50);
    CHECK(s["seed"] == 4);
}

TEST_CASE("field commands", "[cli]") {
    const auto scanCsv = scratch("scan.csv");
    const Outcome bose = invoke({"field-scan", "--config", data("scan_scalar_bose.json"), "--out",
                                 scanCsv.string()});
    CHECK(bose.code == 0);
    CHECK(json::parse(bose.out)["verdict"] == "MicrocausalityHolds");
    CHECK(slurp(scanCsv).rfind("t,x,intervalType,", 0) == 0);

    const Outcome fermi = invoke({"field-scan", "--config", data("scan_scalar_fermi.json"), "--out",
                                  scanCsv.string()});
    CHECK(fermi.code == 1);
    CHECK(json::parse(fermi.out)["verdict"] == "MicrocausalityViolated");

    CHECK(invoke({"field-scan", "--config", data("scan_dirac_fermi.json"), "--out",
                  scanCsv.string()})
              .code == 0);
    CHECK(invoke({"field-scan", "--config", data("scan_dirac_bose.json"), "--out",
                  scanCsv.string()})
              .code == 1);
    const Outcome budget = invoke({"field-scan", "--config", data("scan_budget.json")});
    CHECK(budget.code == 2);
    CHECK(budget.err.find("budget") != std::string::npos);

    const Outcome cnum = invoke({"field-scan", "--config", data("scan_cnumber.json")});
    CHECK(cnum.code == 0);
    CHECK(std::count(cnum.out.begin(), cnum.out.end(), '\n') == 21);

    const Outcome demo = invoke({"fermion-demo", "--config", data("majorana.json")});
    CHECK(demo.code == 0);
    const json d = json::parse(demo.out);
    CHECK(d["verdict"] == "NotMeasurable");
    CHECK(d["commNorm"].get<double>() >= 1e-2);
    CHECK(invoke({"fermion-demo", "--config", data("majorana.json"), "--x", "2,0", "--y", "0,0"})
              .code == 1);
    CHECK(invoke({"fermion-demo", "--config", data("majorana_bose.json")}).code == 2);

    const Outcome pj = invoke({"pauli-jordan", "--sep", "0,2"});
    CHECK(pj.code == 0);
    const json t = json::parse(pj.out);
    REQUIRE(t["table"].size() == 4);
    const auto at = t["table"][0]["at"];
    CHECK(std::hypot(at[0].get<double>(), at[1].get<double>()) <= 1e-6);
    CHECK(json::parse(invoke({"pauli-jordan"}).out)["table"].size() == 4);
}

TEST_CASE("usage errors", "[cli]") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"factorize"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}
