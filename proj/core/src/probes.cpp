// SPDX-License-Identifier: Apache-2.0
#include "qccs/probes.hpp"

#include <cmath>

namespace qccs {

namespace {

SuperOperator identity_probe() {
    ComplexMatrix one(1, 1);
    one.at(0, 0) = 1.0;
    return SuperOperator::from_kraus({one});
}

SuperOperator preparation(Complex a0, Complex a1) {
    // sends any single-qubit state to |psi><psi| with psi = (a0, a1)
    ComplexMatrix k0{{a0, 0.0}, {a1, 0.0}};
    ComplexMatrix k1{{0.0, a0}, {0.0, a1}};
    return SuperOperator::from_kraus({k0, k1});
}

SuperOperator depolarizing() {
    // full depolarization to the maximally mixed state; idempotent
    std::vector<ComplexMatrix> kraus = {
        mat_identity2().scaled(0.5),
        mat_pauli_x().scaled(0.5),
        mat_pauli_y().scaled(0.5),
        mat_pauli_z().scaled(0.5),
    };
    return SuperOperator::from_kraus(std::move(kraus));
}

} // namespace

ProbeSet ProbeSet::basic() {
    const double s = 1.0 / std::sqrt(2.0);
    ProbeSet ps;
    ps.preset_ = "basic";
    ps.singles_ = {
        {"pauli_x", SuperOperator::unitary(mat_pauli_x())},
        {"pauli_y", SuperOperator::unitary(mat_pauli_y())},
        {"pauli_z", SuperOperator::unitary(mat_pauli_z())},
        {"set0", preparation(1.0, 0.0)},
        {"set1", preparation(0.0, 1.0)},
        {"set_plus", preparation(s, s)},
        {"set_plus_i", preparation(s, Complex(0.0, s))},
        {"depolarize", depolarizing()},
    };
    ps.pairs_ = {
        {"cnot", SuperOperator::unitary(mat_cnot())},
    };
    return ps;
}

ProbeSet ProbeSet::extended() {
    ProbeSet ps = basic();
    ps.preset_ = "extended";
    ps.singles_.push_back({"hadamard", SuperOperator::unitary(mat_hadamard())});
    ComplexMatrix phase{{1.0, 0.0}, {0.0, Complex(0.0, 1.0)}};
    ps.singles_.push_back({"phase", SuperOperator::unitary(phase)});
    ps.pairs_.push_back({"swap", SuperOperator::unitary(mat_swap())});
    return ps;
}

ProbeSet ProbeSet::by_name(const std::string& name) {
    if (name == "extended") return extended();
    if (name == "basic") return basic();
    throw QccsError("unknown probe preset: " + name);
}

std::vector<ProbeInstance> ProbeSet::instantiate(const QubitRegister& universe,
                                                 const std::set<std::string>& protected_wires) const {
    std::vector<std::string> free_wires;
    for (const auto& w : universe.wires())
        if (!protected_wires.count(w)) free_wires.push_back(w);

    std::vector<ProbeInstance> out;
    out.push_back({"identity", identity_probe(), {}});
    for (const auto& shape : singles_)
        for (const auto& w : free_wires) out.push_back({shape.name + "@" + w, shape.op, {w}});
    for (const auto& shape : pairs_) {
        for (const auto& a : free_wires) {
            for (const auto& b : free_wires) {
                if (a == b) continue;
                out.push_back({shape.name + "@(" + a + "," + b + ")", shape.op, {a, b}});
            }
        }
    }
    return out;
}

} // namespace qccs
