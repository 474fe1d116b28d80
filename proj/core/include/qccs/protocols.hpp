// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/bisim.hpp"
#include "qccs/parser.hpp"

#include <functional>

namespace qccs {

/// A worked protocol: its program, the distinguished implementation and
/// specification constants, a default initial state, and (where the source
/// material lists one) a generator for the candidate bisimulation relation,
/// instantiated on the concrete states reachable under a probe family.
struct ProtocolModel {
    std::string name;
    Program program;
    std::string impl_constant, spec_constant;
    std::vector<std::string> impl_args, spec_args;
    DensityOperator default_state;
    std::function<ConfigRelation(const ProbeSet&, const DensityOperator&)> relation_generator;

    TermPtr impl_term() const { return ProcessTerm::constant(impl_constant, impl_args); }
    TermPtr spec_term() const { return ProcessTerm::constant(spec_constant, spec_args); }
    Configuration impl_config(const DensityOperator& rho) const { return {impl_term(), rho}; }
    Configuration spec_config(const DensityOperator& rho) const { return {spec_term(), rho}; }
    Configuration impl_config() const { return impl_config(default_state); }
    Configuration spec_config() const { return spec_config(default_state); }
};

/// Superdense coding: sender/receiver pair, the wired protocol Sdc and its
/// specification Sdc_spec, over universe {q1, q2, r}.
ProtocolModel build_sdc();

/// Teleportation: TelPrime (with entanglement re-preparation) against
/// TelSpec, over universe {q1, q2, r, s}; also defines the plain Tel constant
/// for functional runs.
ProtocolModel build_teleport();

/// The recursive reset-vs-measure pair A/B over a single-wire universe,
/// plus the deliberately broken BMut variant.
ProtocolModel build_set_vs_measure();

// -- quantum gate encodings --------------------------------------------------

struct GateDef {
    bool measurement = false;
    ComplexMatrix matrix; // unitary, or Hermitian observable for measurements
    std::size_t arity() const;
};
GateDef unitary_gate(const ComplexMatrix& u);
GateDef measurement_gate(const ComplexMatrix& m);

/// A gate or gate network: a program fragment plus its public channel names
/// and entry constant. Declarations are namespaced by the tag so models can
/// be merged.
struct GateModel {
    Program program;
    std::string constant;
    std::size_t arity = 0;
    std::string in_chan, out_chan;
};

/// A single gate cycling on in?/apply/out! (announcing outcomes on
/// `outcome_chan` for measurement gates).
GateModel build_gate(const GateDef& g, const std::string& tag, const std::string& in_chan,
                     const std::string& out_chan, const std::string& outcome_chan = "");

/// Sequential composition: forwarders pipe the register through g1 then g2,
/// with a restricted classical handshake.
GateModel compose_seq(const GateModel& g1, const GateModel& g2, const std::string& tag,
                      const std::string& in_chan, const std::string& out_chan);

/// Parallel composition: the register is split, routed through both gates and
/// reassembled.
GateModel compose_par(const GateModel& g1, const GateModel& g2, const std::string& tag,
                      const std::string& in_chan, const std::string& out_chan);

/// Merge two gate networks sharing their public channels into a checkable
/// model (impl vs spec).
ProtocolModel gate_equiv_model(const std::string& name, const GateModel& impl,
                               const GateModel& spec);

// gate-law instances (impl and spec share public channels)
ProtocolModel law_seq_unitaries(const ComplexMatrix& u, const ComplexMatrix& v);
ProtocolModel law_seq_measurement(const ComplexMatrix& u, const ComplexMatrix& m);
ProtocolModel law_par_unitaries(const ComplexMatrix& u, const ComplexMatrix& v);

// -- initial-state helpers ----------------------------------------------------

/// |Psi> = (|00>+|11>)/sqrt(2) on wires (a, b), |0> elsewhere.
DensityOperator bell_pair_state(const QubitRegister& reg, const std::string& a,
                                const std::string& b);
DensityOperator zeros_state(const QubitRegister& reg);

/// Preparation channel that replaces the target register content with `rho`
/// (trace-preserving; built from rho's eigendecomposition).
SuperOperator prep_superop(const ComplexMatrix& rho);

/// Product state: each factor places a density matrix on the listed wires (in
/// that order); unlisted wires are |0>.
DensityOperator assemble_state(
    const QubitRegister& reg,
    const std::vector<std::pair<std::vector<std::string>, ComplexMatrix>>& factors);

/// rho on `wire` (single qubit), |0> elsewhere.
DensityOperator wire_state(const QubitRegister& reg, const std::string& wire,
                           const ComplexMatrix& rho1q);

} // namespace qccs
