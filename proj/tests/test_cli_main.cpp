// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qccs/parser.hpp"
#include "qccs/protocols.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_file = std::string(QCCS_PROTO_DIR) + "/../build/cli_test_out.tmp";
    std::string cmd = std::string(QCCS_BIN_PATH) + " " + args + " > " + out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string proto(const char* name) { return std::string(QCCS_PROTO_DIR) + "/" + name; }

} // namespace

TEST_CASE("the shipped protocol files stay in sync with the builders") {
    using namespace qccs;
    struct Row {
        const char* file;
        ProtocolModel model;
    };
    std::vector<Row> rows;
    rows.push_back({"sdc.qccs", build_sdc()});
    rows.push_back({"teleport.qccs", build_teleport()});
    rows.push_back({"set_vs_measure.qccs", build_set_vs_measure()});
    rows.push_back({"gates_hh.qccs", law_seq_unitaries(mat_hadamard(), mat_hadamard())});
    for (const auto& row : rows) {
        auto res = parse_file(proto(row.file));
        REQUIRE_MESSAGE(res.program.has_value(), row.file);
        CHECK(res.program->universe == row.model.program.universe);
        for (const auto& [name, def] : row.model.program.constants) {
            REQUIRE_MESSAGE(res.program->constants.count(name), row.file << "::" << name);
            CHECK_MESSAGE(alpha_equal(res.program->constants.at(name).body, def.body),
                          row.file << "::" << name);
        }
    }
}

TEST_CASE("check exits 0 on the entangled initialization") {
    auto r = run("check " + proto("sdc.qccs") + " Sdc SdcSpec --state bell");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PassedUpToProbes") != std::string::npos);
    CHECK(r.out.find("caveat") != std::string::npos);
}

TEST_CASE("check exits 1 with a witness on the product initialization") {
    auto r = run("check " + proto("sdc.qccs") + " Sdc SdcSpec --state zero --format json");
    CHECK(r.exit_code == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"] == "Refuted");
    CHECK(j.contains("witness"));
    CHECK(j["witness"].size() > 0);
}

TEST_CASE("usage errors exit 3") {
    CHECK(run("check missing.qccs A B").exit_code == 3);
    CHECK(run("check " + proto("sdc.qccs") + " Nope SdcSpec").exit_code == 3);
    CHECK(run("frobnicate").exit_code == 3);
    CHECK(run("check " + proto("sdc.qccs") + " Sdc SdcSpec --probes bogus").exit_code == 3);
}

TEST_CASE("simulate is reproducible and honors scripted inputs") {
    std::string args = "simulate " + proto("sdc.qccs") + " Sdc --state bell --input 1 --seed 7";
    auto a = run(args);
    auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("c?1") != std::string::npos);
    CHECK(a.out.find("d!1") != std::string::npos);

    auto t = run("simulate " + proto("teleport.qccs") + " Tel --state bell --seed 11");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("qc?") != std::string::npos);
    CHECK(t.out.find("qd!q2") != std::string::npos);
}

TEST_CASE("simulating an inert process yields an empty trace") {
    auto r = run("simulate " + proto("set_vs_measure.qccs") + " B --state zero --max-steps 4");
    // the loop starts with an input, which the sampler takes; use nil via an
    // unknown-free trick: the A process blocks only after a full cycle, so
    // instead check a process with no transitions: BMut after zero steps is
    // not inert — craft one inline
    std::string tmp = std::string(QCCS_PROTO_DIR) + "/../build/inert.qccs";
    std::ofstream(tmp) << "qubits w1;\nproc Idle() = nil;\n";
    auto idle = run("simulate " + tmp + " Idle --state zero");
    CHECK(idle.exit_code == 0);
    CHECK(idle.out.find("trace: (empty)") != std::string::npos);
    CHECK(r.exit_code == 0);
}

TEST_CASE("lts exports are deterministic and well-shaped") {
    auto zero = run("lts " + proto("sdc.qccs") + " Sdc --state bell --depth 0 --format json");
    CHECK(zero.exit_code == 0);
    auto j = nlohmann::json::parse(zero.out);
    CHECK(j["nodes"].size() == 1);
    CHECK(j["edges"].size() == 0);

    auto two = run("lts " + proto("sdc.qccs") + " Sdc --state bell --depth 2 --format json");
    auto j2 = nlohmann::json::parse(two.out);
    // root, 4 input branches, and their coding successors
    CHECK(j2["nodes"].size() == 9);
    bool has_input_edge = false;
    for (const auto& e : j2["edges"])
        if (e["action"] == "c?2") has_input_edge = true;
    CHECK(has_input_edge);

    auto dot = run("lts " + proto("sdc.qccs") + " Sdc --state bell --depth 1 --format dot");
    CHECK(dot.exit_code == 0);
    CHECK(dot.out.rfind("digraph lts {", 0) == 0);
    CHECK(dot.out.find("->") != std::string::npos);
    CHECK(dot.out.find("}") != std::string::npos);

    auto again = run("lts " + proto("sdc.qccs") + " Sdc --state bell --depth 2 --format json");
    CHECK(two.out == again.out);
}

TEST_CASE("exhausting the pair cap exits 2") {
    auto r = run("check " + proto("gates_hh.qccs") + " csG spG --state zero --node-cap 40");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("CapExceeded") != std::string::npos);
}

TEST_CASE("equality flag distinguishes a leading internal step") {
    std::string tmp = std::string(QCCS_PROTO_DIR) + "/../build/tau.qccs";
    std::ofstream(tmp) << "qubits w1;\nchannel c : {0};\nproc P() = c!0.nil;\nproc TP() = tau.c!0.nil;\n";
    CHECK(run("check " + tmp + " TP P --state zero").exit_code == 0);
    CHECK(run("check " + tmp + " TP P --state zero --equality").exit_code == 1);
}
