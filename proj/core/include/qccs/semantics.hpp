// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/process.hpp"

#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>

namespace qccs {

/// Transition label: silent, classical send/receive of a rational value, or
/// quantum send/receive of a wire tuple.
struct Action {
    enum class Kind { Tau, ClassicalIn, ClassicalOut, QuantumIn, QuantumOut };
    Kind kind = Kind::Tau;
    std::string channel;
    Rational value;
    std::vector<std::string> wires;

    static Action tau() { return {}; }
    static Action c_in(std::string chan, Rational v);
    static Action c_out(std::string chan, Rational v);
    static Action q_in(std::string chan, std::vector<std::string> ws);
    static Action q_out(std::string chan, std::vector<std::string> ws);

    bool is_tau() const { return kind == Kind::Tau; }
    bool is_quantum_input() const { return kind == Kind::QuantumIn; }
    /// bound wires: the received tuple for a quantum input, empty otherwise
    std::set<std::string> bound_wires() const;
    /// channel name used, empty for tau
    std::string channel_name() const { return is_tau() ? std::string() : channel; }

    std::string str() const;
    bool operator==(const Action& o) const;
    bool operator<(const Action& o) const;
};

/// A closed process paired with the global quantum state.
struct Configuration {
    TermPtr process;
    DensityOperator state;
    std::string term_key; // canonical rendering of the alpha-canonical term

    Configuration() = default;
    Configuration(TermPtr p, DensityOperator s);
};

/// Canonical configuration equality: alpha-equivalent terms and states within
/// trace distance tol.
bool configs_equal(const Configuration& a, const Configuration& b, double tol = -1.0);

/// Coarse state hash (entries quantized well above kEps) used to disperse
/// hash buckets. Equal-within-tolerance states almost always agree on it;
/// stray misses only cost duplicate work, never wrong answers.
std::uint64_t state_fingerprint(const DensityOperator& rho);

/// Finite-support probability distribution over configurations, with support
/// entries merged under canonical configuration equality and kept sorted by
/// canonical key for deterministic iteration.
class Distribution {
public:
    struct Entry {
        Configuration config;
        double prob;
    };

    Distribution() = default;
    static Distribution point(Configuration c);

    void add(Configuration c, double p, double tol = -1.0);
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double total_probability() const;
    /// Sum of prob * tr(state) over the support.
    double trace() const;
    /// Union of support-term free quantum variables.
    std::set<std::string> qv() const;

    Distribution map_terms(const std::function<TermPtr(const TermPtr&)>& f) const;
    Distribution apply_superop(const SuperOperator& e, const std::vector<std::string>& wires) const;

    std::string key() const; // ordering key (not an equality witness)

private:
    std::vector<Entry> entries_;
};

bool distributions_equal(const Distribution& a, const Distribution& b, double tol = -1.0);

/// Pointwise weighted sum of distributions; weights must be nonnegative and
/// sum to 1 within kEps (throws QccsError otherwise).
Distribution combine(const std::vector<std::pair<double, Distribution>>& parts);

struct Transition {
    Action action;
    Distribution target;
};

/// All derivable single-step transitions of a configuration, one entry per
/// distinct (action, distribution) pair, deterministically ordered. Quantum
/// inputs are instantiated over (declared universe minus qv of the term).
/// Throws QccsError on unbound constants, non-closed processes, measurement
/// of a zero-trace state, or unguarded recursive unfolding.
std::vector<Transition> step(const Program& prog, const Configuration& c);

class WeakCache; // reusable step/closure memo, see below

struct WeakOptions {
    int budget = 64;               // max nested tau expansions per branch
    std::size_t max_results = 8192; // cap on enumerated distributions
    WeakCache* cache = nullptr;    // optional cross-call memo
};

struct WeakStats {
    bool budget_hit = false; // some branch was cut by the tau budget
    bool cap_hit = false;    // some enumeration was cut by max_results
};

struct WeakResult {
    Distribution dist;
    int depth = 0; // tau steps used (max over branches)
};

/// All weak tau-closures of mu (including mu itself), shortest-first.
std::vector<WeakResult> weak_closure(const Program& prog, const Distribution& mu,
                                     const WeakOptions& opts, WeakStats* stats = nullptr);

/// closure then exactly one alpha-step (no trailing closure) — the matching
/// shape required for quantum-input clauses.
std::vector<WeakResult> weak_then_step(const Program& prog, const Distribution& mu,
                                       const Action& alpha, const WeakOptions& opts,
                                       WeakStats* stats = nullptr);

/// Matching for non-quantum-input actions: tau is absorbed (closure only);
/// otherwise closure, one alpha-step, closure.
std::vector<WeakResult> weak_hat_transition(const Program& prog, const Distribution& mu,
                                            const Action& alpha, const WeakOptions& opts,
                                            WeakStats* stats = nullptr);

/// Rooted matching: closure, one alpha-step, closure — for alpha = tau this
/// demands at least one tau move.
std::vector<WeakResult> weak_strict_transition(const Program& prog, const Distribution& mu,
                                               const Action& alpha, const WeakOptions& opts,
                                               WeakStats* stats = nullptr);

/// Weak s-transition for a visible action sequence (throws if s contains tau).
std::vector<WeakResult> weak_s_transition(const Program& prog, const Distribution& mu,
                                          const std::vector<Action>& s, const WeakOptions& opts,
                                          WeakStats* stats = nullptr);

/// Lifted single step: every support point must move by alpha; enumerates all
/// scheduler choices. Empty result if some support point has no alpha-move.
std::vector<Distribution> lift_step(const Program& prog, const Distribution& mu,
                                    const Action& alpha, const WeakOptions& opts = {},
                                    WeakStats* stats = nullptr);

/// Unfold a constant one level (substituting actuals for formals).
TermPtr unfold_constant(const Program& prog, const TermPtr& t);

/// Memo for single steps and per-configuration tau-closures, keyed by
/// canonical configuration. Closure entries are recorded only when their
/// computation finished without budget or cycle truncation, so cached results
/// are context-free; reuse under a smaller budget filters by depth. Bound to
/// one program; the owner must not mix programs within one cache.
class WeakCache {
public:
    const std::vector<Transition>* find_steps(const Configuration& c) const;
    void store_steps(const Configuration& c, std::vector<Transition> ts);

    const std::vector<WeakResult>* find_closure(const Configuration& c) const;
    void store_closure(const Configuration& c, std::vector<WeakResult> rs);

private:
    struct StepEntry {
        DensityOperator state;
        std::vector<Transition> transitions;
    };
    struct ClosureEntry {
        DensityOperator state;
        std::vector<WeakResult> results;
    };
    std::unordered_multimap<std::string, StepEntry> steps_;
    std::unordered_multimap<std::string, ClosureEntry> closures_;
};

} // namespace qccs
