// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the assertions below.

#include "helpers.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

using namespace qccs;
using namespace qccs::testing;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

#define REQUIRE_OR(cond, msg)                                                                      \
    do {                                                                                           \
        if (!(cond)) {                                                                             \
            detail = msg;                                                                          \
            return false;                                                                          \
        }                                                                                          \
    } while (0)

// -- criterion 1: superdense coding functional correctness -------------------

bool criterion1(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    auto sdc = build_sdc();
    const Program& p = sdc.program;
    std::mt19937_64 rng(1001);

    ComplexMatrix env = ComplexMatrix::outer(random_pure_amplitudes(2, rng));
    ComplexMatrix bell{{0.5, 0, 0, 0.5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0.5}};
    DensityOperator init = assemble_state(p.universe, {{{"q1", "q2"}, bell}, {{"r"}, env}});

    for (int v = 0; v < 4; ++v) {
        Configuration cur = sdc.impl_config(init);
        auto ts = step(p, cur);
        const Transition* recv = nullptr;
        for (const auto& tr : ts)
            if (tr.action == Action::c_in("c", Rational(v))) recv = &tr;
        REQUIRE_OR(recv && recv->target.size() == 1, "missing classical input transition");
        cur = recv->target.entries()[0].config;

        // the continuation is deterministic: a unique maximal trace
        std::vector<std::string> trace;
        for (;;) {
            auto inner = step(p, cur);
            if (inner.empty()) break;
            REQUIRE_OR(inner.size() == 1, "trace after c?v is not unique");
            REQUIRE_OR(inner[0].target.size() == 1, "unexpected probabilistic branching");
            trace.push_back(inner[0].action.str());
            cur = inner[0].target.entries()[0].config;
            REQUIRE_OR(trace.size() < 16, "runaway trace");
        }
        REQUIRE_OR(!trace.empty() && trace.back() == "d!" + std::to_string(v),
                   "trace does not end with d!v");

        DensityOperator expect = assemble_state(
            p.universe,
            {{{"q1"}, ComplexMatrix{{v < 2 ? 1.0 : 0.0, 0.0}, {0.0, v < 2 ? 0.0 : 1.0}}},
             {{"q2"}, ComplexMatrix{{v % 2 == 0 ? 1.0 : 0.0, 0.0}, {0.0, v % 2 == 0 ? 0.0 : 1.0}}},
             {{"r"}, env}});
        REQUIRE_OR(trace_distance(cur.state, expect) <= 1e-9, "final state differs from [|v~>] (x) rho");
    }
    double dt = seconds_since(t0);
    REQUIRE_OR(dt < 1.0, "runtime bound (1 s) exceeded");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "4 values, %.3f s", dt);
    detail = buf;
    return true;
}

// -- criterion 2: teleportation functional correctness ------------------------

bool criterion2(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    auto model = build_teleport();
    const Program& p = model.program;
    std::mt19937_64 rng(2002);
    ComplexMatrix bell{{0.5, 0, 0, 0.5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0.5}};
    QubitRegister out_reg({"q2"});

    for (int iter = 0; iter < 20; ++iter) {
        ComplexMatrix in = ComplexMatrix::outer(random_pure_amplitudes(2, rng));
        DensityOperator init = assemble_state(p.universe, {{{"q1", "q2"}, bell}, {{"r"}, in}});
        Configuration cur(ProcessTerm::constant("Tel", {"q1", "q2"}), init);

        auto ts = step(p, cur);
        const Transition* recv = nullptr;
        for (const auto& tr : ts)
            if (tr.action == Action::q_in("qc", {"r"})) recv = &tr;
        REQUIRE_OR(recv, "missing quantum input transition");
        cur = recv->target.entries()[0].config;

        // two decoding unitaries, then the measurement
        for (int k = 0; k < 2; ++k) {
            auto inner = step(p, cur);
            REQUIRE_OR(inner.size() == 1 && inner[0].action.is_tau(), "unexpected pre-measurement step");
            cur = inner[0].target.entries()[0].config;
        }
        auto meas = step(p, cur);
        REQUIRE_OR(meas.size() == 1 && meas[0].action.is_tau(), "missing measurement step");
        REQUIRE_OR(meas[0].target.size() == 4, "measurement does not have four branches");
        for (const auto& e : meas[0].target.entries())
            REQUIRE_OR(std::abs(e.prob - 0.25) <= 1e-9, "branch probability differs from 1/4");

        // each branch: classical synchronization, correction, then the output
        for (const auto& branch : meas[0].target.entries()) {
            Configuration bc = branch.config;
            for (int k = 0; k < 2; ++k) {
                auto inner = step(p, bc);
                REQUIRE_OR(inner.size() == 1 && inner[0].action.is_tau(), "unexpected branch step");
                bc = inner[0].target.entries()[0].config;
            }
            auto fin = step(p, bc);
            REQUIRE_OR(fin.size() == 1 && fin[0].action == Action::q_out("qd", {"q2"}),
                       "branch does not end in the quantum output");
            DensityOperator outst = fin[0].target.entries()[0].config.state;
            DensityOperator red = partial_trace(outst, {"q1", "r", "s"});
            REQUIRE_OR(trace_distance(red, DensityOperator(out_reg, in)) <= 1e-9,
                       "output wire state differs from the input");
        }
    }
    double dt = seconds_since(t0);
    REQUIRE_OR(dt < 5.0, "runtime bound (5 s) exceeded");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "20 random inputs, %.3f s", dt);
    detail = buf;
    return true;
}

// -- criterion 3: bisimilarity claims -----------------------------------------

bool criterion3(std::string& detail) {
    CheckOptions opts; // default budget
    double worst = 0.0;

    auto timed = [&](const std::function<Verdict()>& f, bool want_pass, const char* what,
                     std::string& out) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = f();
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        if (dt >= 60.0) {
            out = std::string(what) + ": runtime bound (60 s) exceeded";
            return false;
        }
        if (want_pass != v.passed()) {
            out = std::string(what) + ": got " + v.kind_str();
            return false;
        }
        return true;
    };

    auto sdc = build_sdc();
    auto tel = build_teleport();
    ProbeSet probes = ProbeSet::basic();

    std::string err;
    bool ok =
        timed([&] { return check_relation(sdc.program,
                                          sdc.relation_generator(probes, sdc.default_state), opts); },
              true, "sdc relation", err) &&
        timed([&] { return bisimilar(sdc.program, sdc.impl_config(), sdc.spec_config(), opts); },
              true, "sdc on-the-fly", err) &&
        timed([&] { return check_relation(tel.program,
                                          tel.relation_generator(probes, tel.default_state), opts); },
              true, "teleport relation", err) &&
        timed([&] { return bisimilar(tel.program, tel.impl_config(), tel.spec_config(), opts); },
              true, "teleport on-the-fly", err) &&
        timed([&] {
                  DensityOperator z = zeros_state(sdc.program.universe);
                  return bisimilar(sdc.program, sdc.impl_config(z), sdc.spec_config(z), opts);
              },
              false, "sdc product-state refutation", err) &&
        timed([&] {
                  DensityOperator z = zeros_state(tel.program.universe);
                  return bisimilar(tel.program, tel.impl_config(z), tel.spec_config(z), opts);
              },
              false, "teleport product-state refutation", err) &&
        timed([&] {
                  DensityOperator z = zeros_state(sdc.program.universe);
                  return check_relation(sdc.program, sdc.relation_generator(probes, z), opts);
              },
              false, "sdc product-state relation refutation", err) &&
        timed([&] {
                  DensityOperator z = zeros_state(tel.program.universe);
                  return check_relation(tel.program, tel.relation_generator(probes, z), opts);
              },
              false, "teleport product-state relation refutation", err);
    if (!ok) {
        detail = err;
        return false;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "8 checks, slowest %.2f s", worst);
    detail = buf;
    return true;
}

// -- criterion 4: gate-law suite ----------------------------------------------

bool criterion4(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(4004);
    CheckOptions opts;
    opts.rounds = 1; // one fully verified gate cycle per check

    for (int k = 0; k < 5; ++k) {
        ComplexMatrix u = random_unitary(2, rng), v = random_unitary(2, rng);

        auto seq = law_seq_unitaries(u, v);
        Verdict r1 = bisimilar(seq.program, seq.impl_config(), seq.spec_config(), opts);
        REQUIRE_OR(r1.passed(), "sequential unitary law failed (instance " + std::to_string(k) + ")");

        auto meas = law_seq_measurement(u, mat_pauli_z());
        Verdict r2 = bisimilar(meas.program, meas.impl_config(), meas.spec_config(), opts);
        REQUIRE_OR(r2.passed(), "measurement commutation law failed (instance " + std::to_string(k) + ")");

        auto par = law_par_unitaries(u, v);
        Verdict r3 = bisimilar(par.program, par.impl_config(), par.spec_config(), opts);
        REQUIRE_OR(r3.passed(), "parallel composition law failed (instance " + std::to_string(k) + ")");
    }
    double dt = seconds_since(t0);
    REQUIRE_OR(dt < 120.0, "runtime bound (120 s) exceeded");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "15 checks, %.1f s", dt);
    detail = buf;
    return true;
}

// -- criterion 5: recursive reset/measure pair ---------------------------------

bool criterion5(std::string& detail) {
    auto ab = build_set_vs_measure();
    CheckOptions opts;
    ConfigRelation rel = ab.relation_generator(ProbeSet::basic(), ab.default_state);
    Verdict via_rel = check_relation(ab.program, rel, opts);
    REQUIRE_OR(via_rel.passed(), "candidate relation rejected");

    Verdict fly = bisimilar(ab.program, ab.impl_config(), ab.spec_config(), opts);
    REQUIRE_OR(fly.passed(), "on-the-fly check disagrees with the relation");

    Configuration mut(ProcessTerm::constant("BMut", {}), ab.default_state);
    Verdict bad = bisimilar(ab.program, ab.impl_config(), mut, opts);
    REQUIRE_OR(bad.refuted(), "mutated correction not refuted");
    REQUIRE_OR(replay_witness(ab.program, bad, opts), "witness does not replay");

    char buf[64];
    std::snprintf(buf, sizeof(buf), "relation size %zu", rel.size());
    detail = buf;
    return true;
}

// -- criterion 6: transition-lemma properties ----------------------------------

bool criterion6(std::string& detail) {
    Program p = fixture_program();
    TermGen gen(p, 6006);
    std::mt19937_64 rng(66);
    long configs = 0, transitions = 0;

    while (configs < 1000) {
        TermPtr t = gen.term(5);
        if (!t->fv.empty()) continue;
        DensityOperator rho = DensityOperator::pure(p.universe, random_pure_amplitudes(16, rng));
        Configuration c(t, rho);
        std::vector<Transition> ts;
        try {
            ts = step(p, c);
        } catch (const QccsError&) {
            continue;
        }
        ++configs;
        for (const auto& tr : ts) {
            ++transitions;
            REQUIRE_OR(std::abs(tr.target.trace() - rho.trace()) <= 1e-9,
                       "transition changed the trace");
            auto allowed = t->qv;
            for (const auto& w : tr.action.bound_wires()) allowed.insert(w);
            for (const auto& w : tr.target.qv())
                REQUIRE_OR(allowed.count(w) > 0, "free wires escaped qv(P) + bv(alpha)");
        }
    }

    // external channels on wires outside qv(P) commute with every transition
    auto sdc = build_sdc();
    int fchecked = 0;
    for (int k = 0; k < 100; ++k) {
        SuperOperator f = random_tp_channel(1, rng);
        Configuration root = sdc.impl_config();
        for (const auto& tr : step(sdc.program, root)) {
            DensityOperator moved = apply_super(f, {"r"}, root.state);
            Configuration troot(root.process, moved);
            bool matched = false;
            for (const auto& mtr : step(sdc.program, troot)) {
                if (mtr.action == tr.action &&
                    distributions_equal(mtr.target, tr.target.apply_superop(f, {"r"}), 1e-9))
                    matched = true;
            }
            REQUIRE_OR(matched, "external channel does not commute with a step");
            ++fchecked;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%ld configs, %ld transitions, %d commutation checks", configs,
                  transitions, fchecked);
    detail = buf;
    return true;
}

// -- criterion 7: weight-function oracle equivalence ----------------------------

bool criterion7(std::string& detail) {
    Program p = token_program();
    std::vector<Configuration> tokens;
    for (int k = 0; k < 6; ++k) tokens.push_back(token_config(p, k));
    std::mt19937_64 rng(7007);
    std::uniform_int_distribution<std::size_t> support(1, 4);

    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t m = support(rng), k = support(rng);
        RationalFlowInstance inst;
        inst.mu = random_rational_dist(m, rng);
        inst.nu = random_rational_dist(k, rng);
        double dens = std::uniform_real_distribution<double>(0.1, 0.95)(rng);
        inst.related.assign(m, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j)
                inst.related[i][j] = std::uniform_real_distribution<double>(0, 1)(rng) < dens;

        Distribution mu, nu;
        for (std::size_t i = 0; i < m; ++i) mu.add(tokens[i], inst.mu[i].to_double());
        for (std::size_t j = 0; j < k; ++j) nu.add(tokens[j], inst.nu[j].to_double());
        auto related = [&](const Configuration& a, const Configuration& b) {
            std::size_t ia = 9, ib = 9;
            for (std::size_t x = 0; x < 6; ++x) {
                if (configs_equal(tokens[x], a)) ia = x;
                if (configs_equal(tokens[x], b)) ib = x;
            }
            return ia < m && ib < k && inst.related[ia][ib];
        };
        bool flow = weight_function(mu, nu, related).has_value();
        bool exact = rational_feasible(inst);
        if (flow != exact) {
            detail = "disagreement at instance " + std::to_string(iter);
            return false;
        }
    }
    detail = "1000 instances agree";
    return true;
}

// -- criterion 8: algebraic-law instance suite ----------------------------------

Program law_program() {
    Program p = empty_program_with_builtins();
    p.universe = QubitRegister::canonical({"wa", "wb", "wc"});
    p.classical_channels["c1"] = {Rational(0), Rational(1)};
    p.classical_channels["c2"] = {Rational(0), Rational(1), Rational(2)};
    p.quantum_channels["qa"] = 1;
    p.quantum_channels["qb"] = 1;
    ComplexMatrix mz(2, 2);
    mz.at(1, 1) = 1.0;
    p.observables.emplace("MZ", Observable::spectral_decompose(mz));
    p.superops.emplace("Set0", prep_superop(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));
    return p;
}

struct LawContext {
    Program prog;
    TermGen gen;
    std::mt19937_64 rng;
    CheckOptions opts;

    LawContext() : prog(law_program()), gen(prog, 8008), rng(88) {
        opts.rounds = 3;
        opts.node_cap = 20000;
        opts.max_results = 1024;
    }

    TermPtr closed_term(int depth) {
        for (;;) {
            TermPtr t = gen.term(depth);
            if (t->fv.empty()) return t;
        }
    }
    TermPtr classical_term(int depth) {
        for (;;) {
            TermPtr t = closed_term(depth);
            if (t->qv.empty()) return t;
        }
    }
    DensityOperator state() {
        return DensityOperator::pure(prog.universe, random_pure_amplitudes(prog.universe.dim(), rng));
    }
    bool equal(const TermPtr& a, const TermPtr& b) {
        DensityOperator rho = state();
        return check_equality(prog, Configuration(a, rho), Configuration(b, rho), opts).passed();
    }
    // a random visible prefix around a continuation
    TermPtr prefixed(const TermPtr& cont, std::string& chan) {
        switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
            chan = "c1";
            return ProcessTerm::c_output("c1", Expr::literal(Rational(0)), cont);
        case 1:
            chan = "c2";
            return ProcessTerm::c_output("c2", Expr::literal(Rational(1)), cont);
        default:
            chan = "";
            return ProcessTerm::tau(cont);
        }
    }
};

bool criterion8(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    LawContext cx;
    Relabeling swap_classical;
    swap_classical.table = {{"c1", "c2"}, {"c2", "c1"}};
    Relabeling swap_quantum;
    swap_quantum.table = {{"qa", "qb"}, {"qb", "qa"}};
    Relabeling identity;

    for (int inst = 0; inst < 10; ++inst) {
        TermPtr P = cx.closed_term(3);
        TermPtr Q = cx.closed_term(2);
        TermPtr R = cx.closed_term(2);

        // monoid laws
        REQUIRE_OR(cx.equal(ProcessTerm::sum(P, ProcessTerm::nil()), P), "P + nil failed");
        REQUIRE_OR(cx.equal(ProcessTerm::sum(P, P), P), "P + P failed");
        REQUIRE_OR(cx.equal(ProcessTerm::sum(P, Q), ProcessTerm::sum(Q, P)), "sum commutativity failed");
        REQUIRE_OR(cx.equal(ProcessTerm::sum(P, ProcessTerm::sum(Q, R)),
                            ProcessTerm::sum(ProcessTerm::sum(P, Q), R)),
                   "sum associativity failed");

        // parallel monoid laws need disjoint quantum parts; classical-only
        // companions keep every pairing well-formed
        TermPtr Pc = cx.classical_term(3), Qc = cx.classical_term(2), Rc = cx.classical_term(2);
        REQUIRE_OR(cx.equal(ProcessTerm::parallel(P, ProcessTerm::nil()), P), "P || nil failed");
        REQUIRE_OR(cx.equal(ProcessTerm::parallel(P, Qc), ProcessTerm::parallel(Qc, P)),
                   "parallel commutativity failed");
        REQUIRE_OR(cx.equal(ProcessTerm::parallel(P, ProcessTerm::parallel(Qc, Rc)),
                            ProcessTerm::parallel(ProcessTerm::parallel(P, Qc), Rc)),
                   "parallel associativity failed");

        // prefix-restriction laws
        std::string chan;
        TermPtr aPc = cx.prefixed(Pc, chan);
        if (!chan.empty()) {
            REQUIRE_OR(cx.equal(ProcessTerm::restricted(aPc, {chan}), ProcessTerm::nil()),
                       "(a.P)\\L with cn(a) in L failed");
        }
        std::string other = chan == "c1" ? "c2" : "c1";
        if (!chan.empty()) {
            // (a.P)\L = a.(P\L) when cn(a) not in L
            TermPtr lhs = ProcessTerm::restricted(aPc, {other});
            TermPtr rhs = chan == "c1"
                              ? ProcessTerm::c_output("c1", Expr::literal(Rational(0)),
                                                      ProcessTerm::restricted(Pc, {other}))
                              : ProcessTerm::c_output("c2", Expr::literal(Rational(1)),
                                                      ProcessTerm::restricted(Pc, {other}));
            REQUIRE_OR(cx.equal(lhs, rhs), "(a.P)\\L with cn(a) not in L failed");

            // (a.P)[f] = f(a).(P[f])
            TermPtr flhs = ProcessTerm::relabeled(aPc, swap_classical);
            TermPtr frhs = chan == "c1"
                               ? ProcessTerm::c_output("c2", Expr::literal(Rational(0)),
                                                       ProcessTerm::relabeled(Pc, swap_classical))
                               : ProcessTerm::c_output("c1", Expr::literal(Rational(1)),
                                                       ProcessTerm::relabeled(Pc, swap_classical));
            REQUIRE_OR(cx.equal(flhs, frhs), "(a.P)[f] failed");
        }

        // distribution laws
        REQUIRE_OR(cx.equal(ProcessTerm::restricted(ProcessTerm::sum(P, Q), {"c1"}),
                            ProcessTerm::sum(ProcessTerm::restricted(P, {"c1"}),
                                             ProcessTerm::restricted(Q, {"c1"}))),
                   "(P+Q)\\L failed");
        REQUIRE_OR(cx.equal(ProcessTerm::relabeled(ProcessTerm::sum(P, Q), swap_classical),
                            ProcessTerm::sum(ProcessTerm::relabeled(P, swap_classical),
                                             ProcessTerm::relabeled(Q, swap_classical))),
                   "(P+Q)[f] failed");

        // inert restriction
        std::set<std::string> unused;
        auto used = free_channels(P, cx.prog);
        for (const auto& c : {"c1", "c2", "qa", "qb"})
            if (!used.count(c)) unused.insert(c);
        if (!unused.empty()) {
            REQUIRE_OR(cx.equal(ProcessTerm::restricted(P, unused), P),
                       "P\\L with unused channels failed");
        }

        // nested restrictions
        REQUIRE_OR(cx.equal(ProcessTerm::restricted(ProcessTerm::restricted(P, {"c1"}), {"c2"}),
                            ProcessTerm::restricted(P, {"c1", "c2"})),
                   "(P\\K)\\L failed");

        // restriction distributes over parallel when no shared restricted channel
        auto cnP = free_channels(P, cx.prog);
        auto cnQc = free_channels(Qc, cx.prog);
        std::set<std::string> lset = {"qa"};
        bool shares = cnP.count("qa") && cnQc.count("qa");
        if (!shares) {
            REQUIRE_OR(cx.equal(ProcessTerm::restricted(ProcessTerm::parallel(P, Qc), lset),
                                ProcessTerm::parallel(ProcessTerm::restricted(P, lset),
                                                      ProcessTerm::restricted(Qc, lset))),
                       "(P||Q)\\L failed");
        }

        // relabeling vs restriction: P[f]\L = (P\f^{-1}(L))[f]
        REQUIRE_OR(cx.equal(ProcessTerm::restricted(ProcessTerm::relabeled(P, swap_classical), {"c1"}),
                            ProcessTerm::relabeled(ProcessTerm::restricted(P, {"c2"}), swap_classical)),
                   "P[f]\\L failed");

        // identity relabeling
        REQUIRE_OR(cx.equal(ProcessTerm::relabeled(P, identity), P), "P[Id] failed");

        // maps agreeing on the used channels
        Relabeling agree = swap_quantum;
        if (!free_channels(P, cx.prog).count("c1") && !free_channels(P, cx.prog).count("c2")) {
            Relabeling extended = swap_quantum;
            extended.table.emplace_back("c1", "c2");
            extended.table.emplace_back("c2", "c1");
            REQUIRE_OR(cx.equal(ProcessTerm::relabeled(P, agree),
                                ProcessTerm::relabeled(P, extended)),
                       "P[f] = P[f'] on agreeing maps failed");
        }

        // composition of relabelings
        REQUIRE_OR(cx.equal(ProcessTerm::relabeled(ProcessTerm::relabeled(P, swap_classical),
                                                   swap_classical),
                            ProcessTerm::relabeled(P, identity)),
                   "P[f][f'] failed");

        // relabeling distributes over parallel
        REQUIRE_OR(cx.equal(ProcessTerm::relabeled(ProcessTerm::parallel(P, Qc), swap_classical),
                            ProcessTerm::parallel(ProcessTerm::relabeled(P, swap_classical),
                                                  ProcessTerm::relabeled(Qc, swap_classical))),
                   "(P||Q)[f] failed");
    }

    // one expansion-law instance: a synchronizing pair equals the tau-prefixed
    // interleaving remainder
    {
        TermPtr sender = ProcessTerm::c_output("c1", Expr::literal(Rational(1)), ProcessTerm::nil());
        TermPtr receiver = ProcessTerm::c_input("c1", "x", ProcessTerm::nil());
        TermPtr lhs = ProcessTerm::restricted(ProcessTerm::parallel(sender, receiver), {"c1"});
        TermPtr rhs = ProcessTerm::tau(ProcessTerm::restricted(
            ProcessTerm::parallel(ProcessTerm::nil(), ProcessTerm::nil()), {"c1"}));
        REQUIRE_OR(cx.equal(lhs, rhs), "expansion-law instance failed");
    }

    double dt = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "10 instances per law, %.1f s", dt);
    detail = buf;
    return true;
}

// -- criterion 9: equivalence-relation sanity -----------------------------------

bool criterion9(std::string& detail) {
    CheckOptions opts;
    opts.rounds = 4;

    std::vector<std::pair<Program, Configuration>> suite;
    auto sdc = build_sdc();
    suite.emplace_back(sdc.program, sdc.impl_config());
    suite.emplace_back(sdc.program, sdc.spec_config());
    auto tel = build_teleport();
    suite.emplace_back(tel.program, tel.impl_config());
    suite.emplace_back(tel.program, tel.spec_config());
    auto ab = build_set_vs_measure();
    suite.emplace_back(ab.program, ab.impl_config());
    suite.emplace_back(ab.program, ab.spec_config());
    suite.emplace_back(ab.program,
                       Configuration(ProcessTerm::constant("BMut", {}), ab.default_state));

    for (const auto& [prog, c] : suite) {
        Verdict v = bisimilar(prog, c, c, opts);
        REQUIRE_OR(v.passed(), "reflexivity failed on " + render_term(c.process));
        REQUIRE_OR(!v.note.empty(), "report lacks the completeness caveat");
    }

    // symmetry on random pairs over a shared program
    Program p = fixture_program();
    TermGen gen(p, 9009);
    std::mt19937_64 rng(99);
    int checked = 0;
    while (checked < 50) {
        TermPtr a = gen.term(3), b = gen.term(3);
        if (!a->fv.empty() || !b->fv.empty()) continue;
        DensityOperator rho = DensityOperator::pure(p.universe, random_pure_amplitudes(16, rng));
        Configuration ca(a, rho), cb(b, rho);
        Verdict fwd, bwd;
        try {
            fwd = bisimilar(p, ca, cb, opts);
            bwd = bisimilar(p, cb, ca, opts);
        } catch (const QccsError&) {
            continue;
        }
        REQUIRE_OR(fwd.kind == bwd.kind,
                   "asymmetric verdicts on " + render_term(a) + " vs " + render_term(b));
        ++checked;
    }
    detail = "7 reflexivity checks, 50 symmetric pairs";
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "superdense coding functional correctness", criterion1},
        {2, "teleportation functional correctness", criterion2},
        {3, "bisimilarity of protocols and their specifications", criterion3},
        {4, "gate-law suite on random unitaries", criterion4},
        {5, "recursive reset/measure pair", criterion5},
        {6, "transition-lemma properties", criterion6},
        {7, "weight-function oracle equivalence", criterion7},
        {8, "algebraic-law instance suite", criterion8},
        {9, "equivalence-relation sanity", criterion9},
    };

    int failures = 0;
    for (auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(),
                    detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("note: passed verdicts are relative to the finite probe family and the configured "
                "budgets\n");
    return failures == 0 ? 0 : 1;
}
