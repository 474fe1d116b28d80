// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/diagnostics.hpp"
#include "qccs/expr.hpp"
#include "qccs/linalg.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace qccs {

enum class TermKind {
    Nil,
    Constant,
    Tau,
    ClassicalInput,
    ClassicalOutput,
    QuantumInput,
    QuantumOutput,
    SuperOp,
    Measure,
    Sum,
    Parallel,
    Relabel,
    Restrict,
    If,
};

class ProcessTerm;
using TermPtr = std::shared_ptr<const ProcessTerm>;

/// Injective channel renaming, identity outside its table. Classical channels
/// must map to classical ones and quantum to quantum (checked against the
/// program by well_formed).
struct Relabeling {
    std::vector<std::pair<std::string, std::string>> table; // (old, new)

    std::string apply(const std::string& chan) const;
    bool is_injective() const;
    std::string str() const; // rendered as new/old items
};

/// Immutable process term with cached free quantum (`qv`) and classical (`fv`)
/// variables. Construction never rejects ill-formed combinations; those are
/// reported by well_formed so that violating terms can be diagnosed.
class ProcessTerm {
public:
    TermKind kind = TermKind::Nil;

    std::string name;                // constant / channel / operator name
    std::vector<std::string> wires;  // actuals, bound input vars, output wires, op targets
    std::string cvar;                // bound classical variable
    ExprPtr expr;                    // output payload or guard
    TermPtr cont;                    // continuation / unary child
    TermPtr left, right;             // binary children
    Relabeling relabel;
    std::set<std::string> restriction;

    std::set<std::string> qv; // free quantum variables
    std::set<std::string> fv; // free classical variables

    static TermPtr nil();
    static TermPtr constant(std::string name, std::vector<std::string> actuals);
    static TermPtr tau(TermPtr cont);
    static TermPtr c_input(std::string chan, std::string var, TermPtr cont);
    static TermPtr c_output(std::string chan, ExprPtr value, TermPtr cont);
    static TermPtr q_input(std::string chan, std::vector<std::string> vars, TermPtr cont);
    static TermPtr q_output(std::string chan, std::vector<std::string> vars, TermPtr cont);
    static TermPtr super_op(std::string op, std::vector<std::string> targets, TermPtr cont);
    static TermPtr measurement(std::string obs, std::vector<std::string> targets, std::string var,
                               TermPtr cont);
    static TermPtr sum(TermPtr l, TermPtr r);
    static TermPtr parallel(TermPtr l, TermPtr r);
    static TermPtr relabeled(TermPtr cont, Relabeling f);
    static TermPtr restricted(TermPtr cont, std::set<std::string> chans);
    static TermPtr guarded(ExprPtr cond, TermPtr cont);
};

/// Capture-avoiding substitution of a classical value for a free variable;
/// input and measurement binders shadow.
TermPtr substitute_classical(const TermPtr& t, const std::string& var, const Rational& v);

/// Simultaneous renaming of free quantum variables; quantum-input binders are
/// alpha-renamed on capture.
TermPtr substitute_quantum(const TermPtr& t, const std::map<std::string, std::string>& renames);
TermPtr substitute_quantum(const TermPtr& t, const std::string& from, const std::string& to);

/// Canonical form with bound variables renamed in traversal order; two terms
/// are alpha-equivalent iff their canonical renderings coincide.
TermPtr alpha_canonical(const TermPtr& t);
bool alpha_equal(const TermPtr& a, const TermPtr& b);

/// Deterministic concrete-syntax rendering (re-parses to an alpha-equivalent
/// term). Also serves as the canonical key for configuration bookkeeping.
std::string render_term(const TermPtr& t);

struct ConstantDef {
    std::vector<std::string> params; // formal quantum parameters
    TermPtr body;                    // qv(body) must be contained in params
};

/// A parsed or programmatically built program: the finite qubit universe,
/// channel declarations, operator definitions and constant defining equations.
struct Program {
    QubitRegister universe;
    std::map<std::string, std::vector<Rational>> classical_channels; // finite value domains
    std::map<std::string, std::size_t> quantum_channels;             // capacities
    std::map<std::string, SuperOperator> superops;                   // includes wrapped unitaries
    std::map<std::string, Observable> observables;
    std::map<std::string, ConstantDef> constants;

    bool is_classical_channel(const std::string& c) const { return classical_channels.count(c) > 0; }
    bool is_quantum_channel(const std::string& c) const { return quantum_channels.count(c) > 0; }
    std::size_t capacity(const std::string& qchan) const;
    const std::vector<Rational>& domain(const std::string& cchan) const;
};

/// Checks every structural invariant (formation rules, declaration and arity
/// consistency, relabeling well-formedness, defining-equation containment).
/// Returns diagnostics instead of failing.
std::vector<Diagnostic> well_formed(const Program& program);

/// Free channel names syntactically used by a term (through relabelings,
/// restrictions and constant definitions).
std::set<std::string> free_channels(const TermPtr& t, const Program& program);

} // namespace qccs
