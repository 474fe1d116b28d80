// SPDX-License-Identifier: Apache-2.0
#include "qccs/protocols.hpp"

#include <algorithm>
#include <cmath>

namespace qccs {

namespace {

ExprPtr lit(int n) { return Expr::literal(Rational(n)); }

TermPtr guard_eq(const std::string& x, int v, TermPtr body) {
    return ProcessTerm::guarded(Expr::binary(ExprKind::Eq, Expr::variable(x), lit(v)), std::move(body));
}

TermPtr sum_all(std::vector<TermPtr> parts) {
    TermPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = ProcessTerm::sum(acc, parts[i]);
    return acc;
}

ComplexMatrix basis_density(std::size_t dim, std::size_t idx) {
    ComplexMatrix m(dim, dim);
    m.at(idx, idx) = 1.0;
    return m;
}

void merge_program(Program& dst, const Program& src) {
    for (const auto& w : src.universe.wires()) {
        if (!dst.universe.contains(w)) {
            std::set<std::string> ws(dst.universe.wires().begin(), dst.universe.wires().end());
            ws.insert(w);
            dst.universe = QubitRegister::canonical(ws);
        }
    }
    for (const auto& [name, dom] : src.classical_channels) {
        auto it = dst.classical_channels.find(name);
        if (it == dst.classical_channels.end()) {
            dst.classical_channels.emplace(name, dom);
        } else if (it->second != dom) {
            throw QccsError("conflicting domains for classical channel '" + name + "'");
        }
    }
    for (const auto& [name, cap] : src.quantum_channels) {
        auto it = dst.quantum_channels.find(name);
        if (it == dst.quantum_channels.end()) {
            dst.quantum_channels.emplace(name, cap);
        } else if (it->second != cap) {
            throw QccsError("conflicting capacities for quantum channel '" + name + "'");
        }
    }
    for (const auto& [name, op] : src.superops) dst.superops.emplace(name, op);
    for (const auto& [name, ob] : src.observables) dst.observables.emplace(name, ob);
    for (const auto& [name, def] : src.constants) dst.constants.emplace(name, def);
}

} // namespace

// ---------------------------------------------------------------------------
// State helpers.

DensityOperator zeros_state(const QubitRegister& reg) {
    return DensityOperator::basis(reg, std::vector<int>(reg.size(), 0));
}

DensityOperator bell_pair_state(const QubitRegister& reg, const std::string& a,
                                const std::string& b) {
    const std::size_t n = reg.size();
    std::size_t pa = reg.index_of(a), pb = reg.index_of(b);
    std::vector<Complex> amps(reg.dim(), 0.0);
    const double s = 1.0 / std::sqrt(2.0);
    amps[0] = s;
    amps[(std::size_t(1) << (n - 1 - pa)) | (std::size_t(1) << (n - 1 - pb))] = s;
    return DensityOperator::pure(reg, amps);
}

SuperOperator prep_superop(const ComplexMatrix& rho) {
    if (!rho.is_hermitian(kEps)) throw QccsError("preparation target is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-6) throw QccsError("preparation target has trace != 1");
    std::vector<double> evs;
    ComplexMatrix vecs;
    jacobi_hermitian(rho, evs, vecs);
    const std::size_t dim = rho.rows();
    std::vector<ComplexMatrix> kraus;
    for (std::size_t k = 0; k < dim; ++k) {
        if (evs[k] <= 1e-12) continue;
        double root = std::sqrt(evs[k]);
        for (std::size_t b = 0; b < dim; ++b) {
            ComplexMatrix kr(dim, dim);
            for (std::size_t i = 0; i < dim; ++i) kr.at(i, b) = root * vecs.at(i, k);
            kraus.push_back(std::move(kr));
        }
    }
    return SuperOperator::from_kraus(std::move(kraus));
}

DensityOperator assemble_state(
    const QubitRegister& reg,
    const std::vector<std::pair<std::vector<std::string>, ComplexMatrix>>& factors) {
    DensityOperator state = zeros_state(reg);
    for (const auto& [wires, rho] : factors)
        state = apply_super(prep_superop(rho), wires, state);
    return state;
}

DensityOperator wire_state(const QubitRegister& reg, const std::string& wire,
                           const ComplexMatrix& rho1q) {
    return assemble_state(reg, {{{wire}, rho1q}});
}

// ---------------------------------------------------------------------------
// Superdense coding.

namespace {

ConfigRelation sdc_relation(const Program& prog, const TermPtr& implT, const TermPtr& specT,
                            const DensityOperator& rho) {
    ConfigRelation rel;
    Configuration impl(implT, rho), spec(specT, rho);
    rel.add(impl, spec);
    WeakCache cache;
    WeakOptions wo;
    wo.cache = &cache;

    for (const auto& v : prog.domain("c")) {
        Action recv = Action::c_in("c", v);
        Configuration spec_mid, spec_late;
        bool have_mid = false, have_late = false;
        for (const auto& w : weak_s_transition(prog, Distribution::point(spec), {recv}, wo)) {
            for (const auto& e : w.dist.entries()) {
                if (!e.config.process->qv.empty() && !have_mid) {
                    spec_mid = e.config;
                    have_mid = true;
                } else if (e.config.process->qv.empty() && !have_late) {
                    spec_late = e.config;
                    have_late = true;
                }
            }
        }
        for (const auto& w : weak_s_transition(prog, Distribution::point(impl), {recv}, wo)) {
            for (const auto& e : w.dist.entries()) {
                if (!e.config.process->qv.empty()) {
                    if (have_mid) rel.add(e.config, spec_mid);
                } else if (have_late) {
                    rel.add(e.config, Configuration(spec_late.process, e.config.state));
                }
            }
        }
        Action send = Action::c_out("d", v);
        Configuration spec_end;
        bool have_end = false;
        for (const auto& w : weak_s_transition(prog, Distribution::point(spec), {recv, send}, wo)) {
            for (const auto& e : w.dist.entries()) {
                spec_end = e.config;
                have_end = true;
                break;
            }
            if (have_end) break;
        }
        if (!have_end) continue;
        for (const auto& w : weak_s_transition(prog, Distribution::point(impl), {recv, send}, wo))
            for (const auto& e : w.dist.entries())
                rel.add(e.config, Configuration(spec_end.process, e.config.state));
    }
    return rel;
}

} // namespace

ProtocolModel build_sdc() {
    Program p = empty_program_with_builtins();
    p.universe = QubitRegister::canonical({"q1", "q2", "r"});
    p.classical_channels["c"] = {Rational(0), Rational(1), Rational(2), Rational(3)};
    p.classical_channels["d"] = {Rational(0), Rational(1), Rational(2), Rational(3)};
    p.quantum_channels["e"] = 1;
    for (int i = 0; i < 4; ++i)
        p.superops.emplace("Set" + std::to_string(i),
                           prep_superop(basis_density(4, static_cast<std::size_t>(i))));
    ComplexMatrix m4(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m4.at(i, i) = static_cast<double>(i);
    p.observables.emplace("M4", Observable::spectral_decompose(m4));

    // Alice applies the Pauli coding (0 -> I, 1 -> X, 2 -> Z, 3 -> Y) and
    // ships her half of the pair.
    const char* codes[4] = {"I", "X", "Z", "Y"};
    std::vector<TermPtr> branches;
    for (int i = 0; i < 4; ++i) {
        TermPtr send = ProcessTerm::q_output("e", {"q1"}, ProcessTerm::nil());
        TermPtr apply = ProcessTerm::super_op(codes[i], {"q1"}, send);
        branches.push_back(guard_eq("x", i, apply));
    }
    p.constants["AliceS"] = {{"q1"}, ProcessTerm::c_input("c", "x", sum_all(branches))};

    TermPtr bob = ProcessTerm::q_input(
        "e", {"qa"},
        ProcessTerm::super_op(
            "CN", {"qa", "q2"},
            ProcessTerm::super_op(
                "H", {"qa"},
                ProcessTerm::measurement(
                    "M4", {"qa", "q2"}, "x",
                    ProcessTerm::c_output("d", Expr::variable("x"), ProcessTerm::nil())))));
    p.constants["BobS"] = {{"q2"}, bob};

    p.constants["Sdc"] = {{"q1", "q2"},
                          ProcessTerm::restricted(
                              ProcessTerm::parallel(ProcessTerm::constant("AliceS", {"q1"}),
                                                    ProcessTerm::constant("BobS", {"q2"})),
                              {"e"})};

    std::vector<TermPtr> spec_branches;
    for (int i = 0; i < 4; ++i) {
        TermPtr send = ProcessTerm::c_output("d", Expr::variable("x"), ProcessTerm::nil());
        TermPtr set = ProcessTerm::super_op("Set" + std::to_string(i), {"q1", "q2"}, send);
        spec_branches.push_back(guard_eq("x", i, set));
    }
    p.constants["SdcSpec"] = {{"q1", "q2"}, ProcessTerm::c_input("c", "x", sum_all(spec_branches))};

    ProtocolModel model;
    model.name = "sdc";
    model.program = std::move(p);
    model.impl_constant = "Sdc";
    model.spec_constant = "SdcSpec";
    model.impl_args = {"q1", "q2"};
    model.spec_args = {"q1", "q2"};
    model.default_state = bell_pair_state(model.program.universe, "q1", "q2");
    auto prog = std::make_shared<Program>(model.program);
    TermPtr implT = model.impl_term(), specT = model.spec_term();
    model.relation_generator = [prog, implT, specT](const ProbeSet&, const DensityOperator& rho) {
        return sdc_relation(*prog, implT, specT, rho);
    };
    return model;
}

// ---------------------------------------------------------------------------
// Teleportation.

namespace {

ConfigRelation tel_relation(const Program& prog, const TermPtr& implT, const TermPtr& specT,
                            const DensityOperator& rho, const ProbeSet& probes) {
    ConfigRelation rel;
    Configuration impl(implT, rho), spec(specT, rho);
    rel.add(impl, spec);
    WeakCache cache;
    WeakOptions wo;
    wo.cache = &cache;

    for (const auto& tr : step(prog, impl)) {
        if (!tr.action.is_quantum_input()) continue;
        Distribution spec_nu;
        bool found = false;
        for (const auto& str : step(prog, spec)) {
            if (str.action == tr.action) {
                spec_nu = str.target;
                found = true;
                break;
            }
        }
        if (!found) continue;

        std::set<std::string> protected_wires = tr.target.qv();
        for (const auto& w : tr.action.bound_wires()) protected_wires.erase(w);

        for (const auto& probe : probes.instantiate(prog.universe, protected_wires)) {
            Distribution emu = tr.target.apply_superop(probe.op, probe.wires);
            Distribution enu = spec_nu.apply_superop(probe.op, probe.wires);
            Configuration mid = enu.entries().front().config;

            Configuration late, fin;
            bool have_late = false, have_fin = false;
            Action out_act;
            for (const auto& st : step(prog, mid)) {
                if (st.action.is_tau()) {
                    late = st.target.entries().front().config;
                    have_late = true;
                    break;
                }
            }
            if (have_late) {
                for (const auto& st : step(prog, late)) {
                    if (st.action.kind == Action::Kind::QuantumOut) {
                        out_act = st.action;
                        fin = st.target.entries().front().config;
                        have_fin = true;
                        break;
                    }
                }
            }

            for (const auto& w : weak_closure(prog, emu, wo)) {
                for (const auto& e : w.dist.entries()) {
                    if (e.config.process->qv == mid.process->qv)
                        rel.add(e.config, mid);
                    else if (have_late && e.config.process->qv == late.process->qv)
                        rel.add(e.config, late);
                }
            }
            if (have_fin) {
                for (const auto& w : weak_s_transition(prog, emu, {out_act}, wo))
                    for (const auto& e : w.dist.entries()) rel.add(e.config, fin);
            }
        }
    }
    return rel;
}

TermPtr pauli_correction_chain(const std::string& wire, const std::string& out_chan) {
    const char* codes[4] = {"I", "X", "Z", "Y"};
    std::vector<TermPtr> branches;
    for (int i = 0; i < 4; ++i) {
        TermPtr send = ProcessTerm::q_output(out_chan, {wire}, ProcessTerm::nil());
        branches.push_back(guard_eq("x", i, ProcessTerm::super_op(codes[i], {wire}, send)));
    }
    return ProcessTerm::c_input("e", "x", sum_all(branches));
}

} // namespace

ProtocolModel build_teleport() {
    Program p = empty_program_with_builtins();
    p.universe = QubitRegister::canonical({"q1", "q2", "r", "s"});
    p.classical_channels["e"] = {Rational(0), Rational(1), Rational(2), Rational(3)};
    p.quantum_channels["qc"] = 1;
    p.quantum_channels["qd"] = 1;

    ComplexMatrix psi(4, 4);
    psi.at(0, 0) = 0.5;
    psi.at(0, 3) = 0.5;
    psi.at(3, 0) = 0.5;
    psi.at(3, 3) = 0.5;
    p.superops.emplace("SetPsi", prep_superop(psi));

    // three-qubit unitary exchanging the first and third wires
    ComplexMatrix swap13(8, 8);
    for (std::size_t j = 0; j < 8; ++j) {
        std::size_t b1 = (j >> 2) & 1, b2 = (j >> 1) & 1, b3 = j & 1;
        std::size_t i = (b3 << 2) | (b2 << 1) | b1;
        swap13.at(i, j) = 1.0;
    }
    p.superops.emplace("SWAP13", SuperOperator::unitary(swap13));

    ComplexMatrix m4(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m4.at(i, i) = static_cast<double>(i);
    p.observables.emplace("M4", Observable::spectral_decompose(m4));

    auto alice = [&](bool reprepare) {
        TermPtr tail = ProcessTerm::c_output("e", Expr::variable("x"), ProcessTerm::nil());
        if (reprepare) tail = ProcessTerm::super_op("SetPsi", {"qa", "q1"}, tail);
        return ProcessTerm::q_input(
            "qc", {"qa"},
            ProcessTerm::super_op(
                "CN", {"qa", "q1"},
                ProcessTerm::super_op("H", {"qa"},
                                      ProcessTerm::measurement("M4", {"qa", "q1"}, "x", tail))));
    };
    p.constants["AliceT"] = {{"q1"}, alice(true)};
    p.constants["AliceO"] = {{"q1"}, alice(false)};
    p.constants["BobT"] = {{"q2"}, pauli_correction_chain("q2", "qd")};

    auto wire_pair = [&](const std::string& a) {
        return ProcessTerm::restricted(
            ProcessTerm::parallel(ProcessTerm::constant(a, {"q1"}),
                                  ProcessTerm::constant("BobT", {"q2"})),
            {"e"});
    };
    p.constants["TelPrime"] = {{"q1", "q2"}, wire_pair("AliceT")};
    p.constants["Tel"] = {{"q1", "q2"}, wire_pair("AliceO")};
    p.constants["TelSpec"] = {{"q1", "q2"},
                              ProcessTerm::q_input(
                                  "qc", {"qa"},
                                  ProcessTerm::super_op(
                                      "SWAP13", {"qa", "q1", "q2"},
                                      ProcessTerm::q_output("qd", {"q2"}, ProcessTerm::nil())))};

    ProtocolModel model;
    model.name = "teleport";
    model.program = std::move(p);
    model.impl_constant = "TelPrime";
    model.spec_constant = "TelSpec";
    model.impl_args = {"q1", "q2"};
    model.spec_args = {"q1", "q2"};
    model.default_state = bell_pair_state(model.program.universe, "q1", "q2");
    auto prog = std::make_shared<Program>(model.program);
    TermPtr implT = model.impl_term(), specT = model.spec_term();
    model.relation_generator = [prog, implT, specT](const ProbeSet& probes,
                                                    const DensityOperator& rho) {
        return tel_relation(*prog, implT, specT, rho, probes);
    };
    return model;
}

// ---------------------------------------------------------------------------
// The recursive reset-vs-measure pair.

namespace {

ConfigRelation ab_relation(const Program& prog, const TermPtr& implT, const TermPtr& specT,
                           const DensityOperator& rho, const ProbeSet& probes) {
    ConfigRelation rel;
    WeakCache cache;
    WeakOptions wo;
    wo.cache = &cache;
    auto insts = probes.instantiate(prog.universe, {});

    auto push_state = [](std::vector<DensityOperator>& v, const DensityOperator& s) {
        for (const auto& x : v)
            if (states_equal(x, s)) return;
        v.push_back(s);
    };

    // orbit of root states: every probe image followed by the reset collapse
    const SuperOperator& reset = prog.superops.at("Set0q");
    std::vector<DensityOperator> roots{rho};
    for (std::size_t i = 0; i < roots.size() && roots.size() < 256; ++i) {
        DensityOperator sigma = roots[i];
        for (const auto& probe : insts) {
            DensityOperator probed = probe.wires.empty() ? sigma : apply_super(probe.op, probe.wires, sigma);
            for (const auto& w : prog.universe.wires())
                push_state(roots, apply_super(reset, {w}, probed));
        }
    }
    std::vector<DensityOperator> probe_states;
    for (const auto& sigma : roots)
        for (const auto& probe : insts)
            push_state(probe_states,
                       probe.wires.empty() ? sigma : apply_super(probe.op, probe.wires, sigma));

    for (const auto& sigma : roots) {
        std::vector<Configuration> family0 = {Configuration(implT, sigma), Configuration(specT, sigma)};
        for (const auto& a : family0)
            for (const auto& b : family0) rel.add(a, b);
    }

    for (const auto& sigma : probe_states) {
        for (const auto& w : prog.universe.wires()) {
            std::vector<Configuration> family;
            auto collect = [&](const TermPtr& root) {
                Configuration c(root, sigma);
                for (const auto& tr : step(prog, c)) {
                    if (!tr.action.is_quantum_input() || tr.action.wires != std::vector<std::string>{w})
                        continue;
                    for (const auto& wr : weak_closure(prog, tr.target, wo))
                        for (const auto& e : wr.dist.entries()) {
                            bool seen = false;
                            for (const auto& f : family)
                                if (configs_equal(f, e.config)) seen = true;
                            if (!seen) family.push_back(e.config);
                        }
                }
            };
            collect(implT);
            collect(specT);
            for (const auto& a : family)
                for (const auto& b : family) rel.add(a, b);
        }
    }
    return rel;
}

TermPtr measure_correct_loop(const std::string& self, const char* on_zero, const char* on_one) {
    TermPtr out0 = ProcessTerm::q_output("qc", {"qa"}, ProcessTerm::constant(self, {}));
    TermPtr out1 = ProcessTerm::q_output("qc", {"qa"}, ProcessTerm::constant(self, {}));
    TermPtr b0 = guard_eq("x", 0, ProcessTerm::super_op(on_zero, {"qa"}, out0));
    TermPtr b1 = guard_eq("x", 1, ProcessTerm::super_op(on_one, {"qa"}, out1));
    return ProcessTerm::q_input("qc", {"qa"},
                                ProcessTerm::measurement("M01", {"qa"}, "x", ProcessTerm::sum(b0, b1)));
}

} // namespace

ProtocolModel build_set_vs_measure() {
    Program p = empty_program_with_builtins();
    p.universe = QubitRegister::canonical({"w1"});
    p.quantum_channels["qc"] = 1;
    p.superops.emplace("Set0q", prep_superop(basis_density(2, 0)));
    ComplexMatrix m01(2, 2);
    m01.at(1, 1) = 1.0;
    p.observables.emplace("M01", Observable::spectral_decompose(m01));

    p.constants["A"] = {{},
                        ProcessTerm::q_input(
                            "qc", {"qa"},
                            ProcessTerm::super_op(
                                "Set0q", {"qa"},
                                ProcessTerm::q_output("qc", {"qa"}, ProcessTerm::constant("A", {}))))};
    p.constants["B"] = {{}, measure_correct_loop("B", "I", "X")};
    p.constants["BMut"] = {{}, measure_correct_loop("BMut", "X", "X")};

    ProtocolModel model;
    model.name = "set_vs_measure";
    model.program = std::move(p);
    model.impl_constant = "A";
    model.spec_constant = "B";
    model.default_state = zeros_state(model.program.universe);
    auto prog = std::make_shared<Program>(model.program);
    TermPtr implT = model.impl_term(), specT = model.spec_term();
    model.relation_generator = [prog, implT, specT](const ProbeSet& probes,
                                                    const DensityOperator& rho) {
        return ab_relation(*prog, implT, specT, rho, probes);
    };
    return model;
}

// ---------------------------------------------------------------------------
// Gate encodings.

std::size_t GateDef::arity() const {
    std::size_t a = 0;
    while ((std::size_t(1) << a) < matrix.rows()) ++a;
    return a;
}

GateDef unitary_gate(const ComplexMatrix& u) { return {false, u}; }
GateDef measurement_gate(const ComplexMatrix& m) { return {true, m}; }

GateModel build_gate(const GateDef& g, const std::string& tag, const std::string& in_chan,
                     const std::string& out_chan, const std::string& outcome_chan) {
    Program p = empty_program_with_builtins();
    const std::size_t n = g.arity();
    p.quantum_channels[in_chan] = n;
    p.quantum_channels[out_chan] = n;

    std::vector<std::string> binders;
    for (std::size_t i = 0; i < n; ++i) binders.push_back(tag + "b" + std::to_string(i + 1));

    std::string cons = tag + "G";
    std::string opname = tag + "Op";
    TermPtr body;
    if (!g.measurement) {
        p.superops.emplace(opname, SuperOperator::unitary(g.matrix));
        body = ProcessTerm::q_input(
            in_chan, binders,
            ProcessTerm::super_op(opname, binders,
                                  ProcessTerm::q_output(out_chan, binders,
                                                        ProcessTerm::constant(cons, {}))));
    } else {
        if (outcome_chan.empty()) throw QccsError("measurement gate needs an outcome channel");
        Observable obs = Observable::spectral_decompose(g.matrix);
        std::vector<Rational> domain;
        for (const auto& line : obs.spectrum()) {
            auto r = Rational::from_double(line.eigenvalue, kSpecTol, 1000000);
            if (!r) throw QccsError("gate observable outcome is not rational within tolerance");
            if (std::find(domain.begin(), domain.end(), *r) == domain.end()) domain.push_back(*r);
        }
        std::sort(domain.begin(), domain.end());
        p.observables.emplace(opname, std::move(obs));
        p.classical_channels[outcome_chan] = std::move(domain);
        body = ProcessTerm::q_input(
            in_chan, binders,
            ProcessTerm::measurement(
                opname, binders, "x",
                ProcessTerm::c_output(outcome_chan, Expr::variable("x"),
                                      ProcessTerm::q_output(out_chan, binders,
                                                            ProcessTerm::constant(cons, {})))));
    }
    p.constants[cons] = {{}, body};
    return {std::move(p), cons, n, in_chan, out_chan};
}

GateModel compose_seq(const GateModel& g1, const GateModel& g2, const std::string& tag,
                      const std::string& in_chan, const std::string& out_chan) {
    if (g1.arity != g2.arity) throw QccsError("sequential composition requires equal gate arities");
    const std::size_t n = g1.arity;
    Program p = g1.program;
    merge_program(p, g2.program);

    std::string hs = tag + "hs", e = tag + "e", f = tag + "f", gch = tag + "g";
    p.classical_channels[hs] = {Rational(0)};
    p.quantum_channels[in_chan] = n;
    p.quantum_channels[out_chan] = n;
    p.quantum_channels[e] = n;
    p.quantum_channels[f] = n;
    p.quantum_channels[gch] = n;

    std::vector<std::string> binders;
    for (std::size_t i = 0; i < n; ++i) binders.push_back(tag + "t" + std::to_string(i + 1));

    std::string ls = tag + "Ls", rs = tag + "Rs", cons = tag + "G";
    p.constants[ls] = {{},
                       ProcessTerm::q_input(
                           in_chan, binders,
                           ProcessTerm::q_output(
                               e, binders,
                               ProcessTerm::c_input(hs, "z", ProcessTerm::constant(ls, {}))))};
    p.constants[rs] = {{},
                       ProcessTerm::q_input(
                           gch, binders,
                           ProcessTerm::q_output(
                               out_chan, binders,
                               ProcessTerm::c_output(hs, lit(0), ProcessTerm::constant(rs, {}))))};

    TermPtr inner1 = ProcessTerm::relabeled(ProcessTerm::constant(g1.constant, {}),
                                            Relabeling{{{g1.in_chan, e}, {g1.out_chan, f}}});
    TermPtr inner2 = ProcessTerm::relabeled(ProcessTerm::constant(g2.constant, {}),
                                            Relabeling{{{g2.in_chan, f}, {g2.out_chan, gch}}});
    TermPtr net = ProcessTerm::parallel(
        ProcessTerm::parallel(ProcessTerm::parallel(ProcessTerm::constant(ls, {}), inner1), inner2),
        ProcessTerm::constant(rs, {}));
    p.constants[cons] = {{}, ProcessTerm::restricted(net, {hs, e, f, gch})};
    return {std::move(p), cons, n, in_chan, out_chan};
}

GateModel compose_par(const GateModel& g1, const GateModel& g2, const std::string& tag,
                      const std::string& in_chan, const std::string& out_chan) {
    const std::size_t m = g1.arity, n = g2.arity;
    Program p = g1.program;
    merge_program(p, g2.program);

    std::string hs = tag + "hs", e1 = tag + "e1", f1 = tag + "f1", e2 = tag + "e2", f2 = tag + "f2";
    p.classical_channels[hs] = {Rational(0)};
    p.quantum_channels[in_chan] = m + n;
    p.quantum_channels[out_chan] = m + n;
    p.quantum_channels[e1] = m;
    p.quantum_channels[f1] = m;
    p.quantum_channels[e2] = n;
    p.quantum_channels[f2] = n;

    std::vector<std::string> all, firsts, seconds;
    for (std::size_t i = 0; i < m + n; ++i) {
        std::string b = tag + "t" + std::to_string(i + 1);
        all.push_back(b);
        (i < m ? firsts : seconds).push_back(b);
    }

    std::string lp = tag + "Lp", rp = tag + "Rp", cons = tag + "G";
    p.constants[lp] = {{},
                       ProcessTerm::q_input(
                           in_chan, all,
                           ProcessTerm::q_output(
                               e1, firsts,
                               ProcessTerm::q_output(
                                   e2, seconds,
                                   ProcessTerm::c_input(hs, "z", ProcessTerm::constant(lp, {})))))};

    std::vector<std::string> r1, r2, rall;
    for (std::size_t i = 0; i < m; ++i) r1.push_back(tag + "u" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) r2.push_back(tag + "v" + std::to_string(i + 1));
    rall = r1;
    rall.insert(rall.end(), r2.begin(), r2.end());
    p.constants[rp] = {{},
                       ProcessTerm::q_input(
                           f1, r1,
                           ProcessTerm::q_input(
                               f2, r2,
                               ProcessTerm::q_output(
                                   out_chan, rall,
                                   ProcessTerm::c_output(hs, lit(0),
                                                         ProcessTerm::constant(rp, {})))))};

    TermPtr inner1 = ProcessTerm::relabeled(ProcessTerm::constant(g1.constant, {}),
                                            Relabeling{{{g1.in_chan, e1}, {g1.out_chan, f1}}});
    TermPtr inner2 = ProcessTerm::relabeled(ProcessTerm::constant(g2.constant, {}),
                                            Relabeling{{{g2.in_chan, e2}, {g2.out_chan, f2}}});
    TermPtr net = ProcessTerm::parallel(
        ProcessTerm::parallel(ProcessTerm::parallel(ProcessTerm::constant(lp, {}), inner1), inner2),
        ProcessTerm::constant(rp, {}));
    p.constants[cons] = {{}, ProcessTerm::restricted(net, {hs, e1, f1, e2, f2})};
    return {std::move(p), cons, m + n, in_chan, out_chan};
}

ProtocolModel gate_equiv_model(const std::string& name, const GateModel& impl,
                               const GateModel& spec) {
    if (impl.arity != spec.arity) throw QccsError("gate models have different arities");
    ProtocolModel model;
    model.name = name;
    model.program = impl.program;
    merge_program(model.program, spec.program);

    std::set<std::string> wires;
    for (std::size_t i = 0; i < impl.arity + 1; ++i) wires.insert("w" + std::to_string(i + 1));
    model.program.universe = QubitRegister::canonical(wires);

    model.impl_constant = impl.constant;
    model.spec_constant = spec.constant;
    model.default_state = zeros_state(model.program.universe);
    return model;
}

ProtocolModel law_seq_unitaries(const ComplexMatrix& u, const ComplexMatrix& v) {
    GateModel g1 = build_gate(unitary_gate(u), "g1", "g1i", "g1o");
    GateModel g2 = build_gate(unitary_gate(v), "g2", "g2i", "g2o");
    GateModel impl = compose_seq(g1, g2, "cs", "cin", "cout");
    GateModel spec = build_gate(unitary_gate(v * u), "sp", "cin", "cout");
    return gate_equiv_model("seq_unitaries", impl, spec);
}

ProtocolModel law_seq_measurement(const ComplexMatrix& u, const ComplexMatrix& m) {
    GateModel lu = build_gate(unitary_gate(u), "g1", "g1i", "g1o");
    GateModel lm = build_gate(measurement_gate(m), "g2", "g2i", "g2o", "om");
    GateModel impl = compose_seq(lu, lm, "ls", "cin", "cout");

    ComplexMatrix conj = u.adjoint() * m * u;
    GateModel rm = build_gate(measurement_gate(conj), "h1", "h1i", "h1o", "om");
    GateModel ru = build_gate(unitary_gate(u), "h2", "h2i", "h2o");
    GateModel spec = compose_seq(rm, ru, "rs", "cin", "cout");
    return gate_equiv_model("seq_measurement", impl, spec);
}

ProtocolModel law_par_unitaries(const ComplexMatrix& u, const ComplexMatrix& v) {
    GateModel g1 = build_gate(unitary_gate(u), "g1", "g1i", "g1o");
    GateModel g2 = build_gate(unitary_gate(v), "g2", "g2i", "g2o");
    GateModel impl = compose_par(g1, g2, "cp", "cin", "cout");
    GateModel spec = build_gate(unitary_gate(tensor(u, v)), "sp", "cin", "cout");
    return gate_equiv_model("par_unitaries", impl, spec);
}

} // namespace qccs
