// SPDX-License-Identifier: Apache-2.0
//
// qccs — interpreter and equivalence checker for a quantum process calculus.
//
//   qccs check <file> <P> <Q> [--state ...] [--equality] [--process-level] ...
//   qccs simulate <file> <P>  [--state ...] [--seed N] [--input v,v,...] ...
//   qccs lts <file> <P>       [--state ...] [--depth N] [--format json|dot]
//
// Exit codes: 0 check passed, 1 refuted, 2 budget/cap exhaustion, 3 usage or
// input errors.

#include "qccs/bisim.hpp"
#include "qccs/export.hpp"
#include "qccs/parser.hpp"
#include "qccs/protocols.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace qccs;

constexpr int kExitPassed = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitUsage = 3;

struct CommonFlags {
    std::string state = "bell";
    int budget = 64;
    int rounds = 64;
    std::string probes = "basic";
    long node_cap = 100000;
    unsigned long seed = 0;
    bool seed_set = false;
    std::string format = "text";
    double tol = 0.0;
};

unsigned long effective_seed(const CommonFlags& f) {
    if (f.seed_set) return f.seed;
    if (const char* env = std::getenv("QCCS_SEED")) return std::strtoul(env, nullptr, 10);
    return 0;
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

std::optional<Program> load_program(const std::string& path, int& rc) {
    auto res = parse_file(path);
    for (const auto& d : res.diagnostics) std::cerr << d.str(path) << "\n";
    if (!res.program) rc = kExitUsage;
    return res.program;
}

std::optional<Configuration> entry_config(const Program& prog, const std::string& name,
                                          const DensityOperator& state, int& rc) {
    auto it = prog.constants.find(name);
    if (it == prog.constants.end()) {
        rc = fail_usage("unknown process '" + name + "'");
        return std::nullopt;
    }
    for (const auto& w : it->second.params) {
        if (!prog.universe.contains(w)) {
            rc = fail_usage("process '" + name + "' parameter '" + w +
                            "' is not a declared qubit; entry processes are instantiated "
                            "with their parameter names");
            return std::nullopt;
        }
    }
    return Configuration(ProcessTerm::constant(name, it->second.params), state);
}

std::optional<DensityOperator> initial_state(const Program& prog, const CommonFlags& flags,
                                             int& rc) {
    const QubitRegister& reg = prog.universe;
    if (reg.size() == 0) {
        rc = fail_usage("program declares no qubits");
        return std::nullopt;
    }
    if (flags.state == "zero") return zeros_state(reg);
    if (flags.state == "bell") {
        if (reg.size() < 2) {
            rc = fail_usage("bell preset needs at least two qubits");
            return std::nullopt;
        }
        // the designated pair is the first two wires in canonical order
        return bell_pair_state(reg, reg.wires()[0], reg.wires()[1]);
    }
    if (flags.state.rfind("random:", 0) == 0) {
        unsigned long seed = std::strtoul(flags.state.c_str() + 7, nullptr, 10);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<Complex> amps(reg.dim());
        double norm = 0.0;
        for (auto& a : amps) {
            a = Complex(gauss(rng), gauss(rng));
            norm += std::norm(a);
        }
        norm = std::sqrt(norm);
        for (auto& a : amps) a /= norm;
        return DensityOperator::pure(reg, amps);
    }
    // otherwise: a file holding a full-universe density matrix literal
    std::ifstream in(flags.state);
    if (!in) {
        rc = fail_usage("unknown state preset or unreadable state file: " + flags.state);
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    std::vector<Diagnostic> diags;
    auto m = parse_matrix_literal(ss.str(), diags);
    for (const auto& d : diags) std::cerr << d.str(flags.state) << "\n";
    if (!m || m->rows() != reg.dim() || m->cols() != reg.dim()) {
        rc = fail_usage("state file must hold a " + std::to_string(reg.dim()) + "x" +
                        std::to_string(reg.dim()) + " density matrix");
        return std::nullopt;
    }
    DensityOperator rho(reg, *m);
    if (!rho.is_valid(1e-6)) {
        rc = fail_usage("state file is not a density matrix (hermitian, positive, trace <= 1)");
        return std::nullopt;
    }
    return rho;
}

CheckOptions check_options(const CommonFlags& flags) {
    CheckOptions opts;
    opts.budget = flags.budget;
    opts.rounds = flags.rounds;
    opts.node_cap = flags.node_cap;
    opts.probes = ProbeSet::by_name(flags.probes);
    return opts;
}

void print_verdict_text(const Verdict& v) {
    std::cout << "result: " << v.kind_str() << "\n";
    std::cout << "pairs explored: " << v.pairs_explored << "\n";
    std::cout << "probes instantiated: " << v.probe_count << "\n";
    std::cout << "budget: " << v.budget << (v.budget_limited ? " (limited)" : "") << "\n";
    if (!v.note.empty()) std::cout << "caveat: " << v.note << "\n";
    if (!v.witness.empty()) {
        std::cout << "witness:\n";
        for (const auto& s : v.witness) {
            std::cout << "  [" << s.side << "] " << s.action << ": " << s.reason;
            if (!s.probe.empty()) std::cout << " (probe " << s.probe << ")";
            std::cout << "\n    left:  " << s.left_term << "\n    right: " << s.right_term << "\n";
        }
    }
}

int run_check(const std::string& file, const std::string& pname, const std::string& qname,
              const CommonFlags& flags, bool equality, bool process_level) {
    int rc = kExitPassed;
    auto prog = load_program(file, rc);
    if (!prog) return rc;
    auto rho = initial_state(*prog, flags, rc);
    if (!rho) return rc;
    auto c1 = entry_config(*prog, pname, *rho, rc);
    if (!c1) return rc;
    auto c2 = entry_config(*prog, qname, *rho, rc);
    if (!c2) return rc;

    CheckOptions opts = check_options(flags);
    Verdict v;
    try {
        if (process_level) {
            StateSampleSpec samples;
            samples.seed = static_cast<unsigned>(effective_seed(flags));
            samples.explicit_states.push_back(*rho);
            v = process_equiv(*prog, c1->process, c2->process, samples, opts, equality);
        } else if (equality) {
            v = check_equality(*prog, *c1, *c2, opts);
        } else {
            v = bisimilar(*prog, *c1, *c2, opts);
        }
    } catch (const QccsError& e) {
        return fail_usage(e.what());
    }

    if (flags.format == "json")
        std::cout << v.to_json(2) << "\n";
    else
        print_verdict_text(v);

    switch (v.kind) {
    case Verdict::Kind::Passed: return kExitPassed;
    case Verdict::Kind::Refuted: return kExitRefuted;
    case Verdict::Kind::CapExceeded: return kExitExhausted;
    }
    return kExitUsage;
}

int run_simulate(const std::string& file, const std::string& pname, const CommonFlags& flags,
                 int max_steps, const std::string& scripted) {
    int rc = kExitPassed;
    auto prog = load_program(file, rc);
    if (!prog) return rc;
    auto rho = initial_state(*prog, flags, rc);
    if (!rho) return rc;
    auto c = entry_config(*prog, pname, *rho, rc);
    if (!c) return rc;

    std::vector<Rational> script;
    if (!scripted.empty()) {
        std::stringstream ss(scripted);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                script.push_back(Rational::parse(item));
            } catch (const std::exception&) {
                return fail_usage("bad scripted value: " + item);
            }
        }
    }

    std::mt19937_64 rng(effective_seed(flags));
    Configuration cur = *c;
    nlohmann::json jtrace = nlohmann::json::array();
    std::vector<std::string> lines;
    std::size_t script_pos = 0;

    for (int stepno = 0; stepno < max_steps; ++stepno) {
        std::vector<Transition> ts;
        try {
            ts = step(*prog, cur);
        } catch (const QccsError& e) {
            return fail_usage(e.what());
        }
        if (ts.empty()) break;

        const Transition* chosen = nullptr;
        if (script_pos < script.size()) {
            for (const auto& tr : ts) {
                if (tr.action.kind == Action::Kind::ClassicalIn &&
                    tr.action.value == script[script_pos]) {
                    chosen = &tr;
                    ++script_pos;
                    break;
                }
            }
        }
        if (!chosen) {
            std::uniform_int_distribution<std::size_t> pick(0, ts.size() - 1);
            chosen = &ts[pick(rng)];
        }

        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        double acc = 0.0;
        const Distribution::Entry* branch = &chosen->target.entries().back();
        for (const auto& e : chosen->target.entries()) {
            acc += e.prob / chosen->target.total_probability();
            if (u <= acc) {
                branch = &e;
                break;
            }
        }
        lines.push_back(chosen->action.str());
        jtrace.push_back(chosen->action.str());
        cur = branch->config;
    }

    if (flags.format == "json") {
        nlohmann::json j;
        j["trace"] = jtrace;
        j["final_term"] = render_term(cur.process);
        nlohmann::json state = nlohmann::json::array();
        for (const auto& v : cur.state.matrix().entries())
            state.push_back(nlohmann::json::array({v.real(), v.imag()}));
        j["final_state"] = std::move(state);
        j["final_trace_mass"] = cur.state.trace();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "trace:";
        if (lines.empty()) std::cout << " (empty)";
        std::cout << "\n";
        for (const auto& l : lines) std::cout << "  " << l << "\n";
        std::cout << "final term: " << render_term(cur.process) << "\n";
        std::cout << "final state (row-major):\n";
        const auto& m = cur.state.matrix();
        std::cout.precision(6);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            std::cout << " ";
            for (std::size_t col = 0; col < m.cols(); ++col) {
                std::cout << " " << m.at(r, col).real() << (m.at(r, col).imag() < 0 ? "-" : "+")
                          << std::abs(m.at(r, col).imag()) << "i";
            }
            std::cout << "\n";
        }
    }
    return kExitPassed;
}

int run_lts(const std::string& file, const std::string& pname, const CommonFlags& flags, int depth,
            const std::string& out_path) {
    int rc = kExitPassed;
    auto prog = load_program(file, rc);
    if (!prog) return rc;
    auto rho = initial_state(*prog, flags, rc);
    if (!rho) return rc;
    auto c = entry_config(*prog, pname, *rho, rc);
    if (!c) return rc;

    Lts lts;
    try {
        lts = explore_lts(*prog, *c, depth, static_cast<std::size_t>(flags.node_cap));
    } catch (const QccsError& e) {
        return fail_usage(e.what());
    }
    std::string text;
    if (flags.format == "dot")
        text = lts_to_dot(lts);
    else
        text = lts_to_json(lts, 2) + "\n";

    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) return fail_usage("cannot write " + out_path);
        out << text;
    }
    return kExitPassed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interpreter and equivalence checker for a quantum process calculus"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--state", flags.state,
                        "initial state: bell | zero | random:<seed> | <matrix file>");
        cmd->add_option("--budget", flags.budget, "weak-transition tau budget")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--rounds", flags.rounds, "visible rounds verified before assuming")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--probes", flags.probes, "probe preset: basic | extended")
            ->check(CLI::IsMember({"basic", "extended"}));
        cmd->add_option("--node-cap", flags.node_cap, "explored-pair cap")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", flags.seed, "random seed (fallback: QCCS_SEED)")
            ->each([&flags](const std::string&) { flags.seed_set = true; });
        cmd->add_option("--tol", flags.tol, "state-equality tolerance override")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--format", flags.format, "output format")
            ->check(CLI::IsMember({"text", "json", "dot"}));
    };

    std::string file, proc1, proc2;
    bool equality = false, process_level = false;
    auto* check = app.add_subcommand("check", "decide bisimilarity or equality of two processes");
    check->add_option("file", file, "qccs source file")->required();
    check->add_option("P", proc1, "first process name")->required();
    check->add_option("Q", proc2, "second process name")->required();
    check->add_flag("--equality", equality, "rooted equality instead of plain bisimilarity");
    check->add_flag("--process-level", process_level,
                    "sample initial states and classical valuations (process equivalence)");
    add_common(check);

    int max_steps = 256;
    std::string scripted;
    auto* simulate = app.add_subcommand("simulate", "sample one resolved run");
    simulate->add_option("file", file, "qccs source file")->required();
    simulate->add_option("P", proc1, "process name")->required();
    simulate->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
    simulate->add_option("--input", scripted, "comma-separated classical inputs to prefer");
    add_common(simulate);

    int depth = 8;
    std::string out_path;
    auto* lts = app.add_subcommand("lts", "export the bounded-depth transition system");
    lts->add_option("file", file, "qccs source file")->required();
    lts->add_option("P", proc1, "process name")->required();
    lts->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
    lts->add_option("-o,--output", out_path, "write to a file instead of stdout");
    add_common(lts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (flags.tol > 0.0) set_comparison_tolerance(flags.tol);

    try {
        if (check->parsed()) return run_check(file, proc1, proc2, flags, equality, process_level);
        if (simulate->parsed()) return run_simulate(file, proc1, flags, max_steps, scripted);
        if (lts->parsed()) {
            if (flags.format == "text") flags.format = "json";
            return run_lts(file, proc1, flags, depth, out_path);
        }
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    return kExitUsage;
}
