// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/probes.hpp"
#include "qccs/semantics.hpp"
#include "qccs/weight.hpp"

#include <optional>

namespace qccs {

/// Finite candidate relation over configurations, membership decided under
/// canonical configuration equality (optionally closed under symmetry).
struct ConfigRelation {
    std::vector<std::pair<Configuration, Configuration>> pairs;
    bool symmetric = false;

    void add(Configuration a, Configuration b);
    bool contains(const Configuration& a, const Configuration& b) const;
    std::size_t size() const { return pairs.size(); }
};

struct WitnessStep {
    std::string left_term;
    std::string right_term;
    std::string action; // challenged action, or the failed structural clause
    std::string side;   // which side issued the challenge
    std::string reason;
    std::string probe;  // probe id when the quantum-input clause failed
};

struct Verdict {
    enum class Kind { Passed, Refuted, CapExceeded };
    Kind kind = Kind::Passed;
    bool budget_limited = false;
    std::size_t probe_count = 0;
    int budget = 0;
    long pairs_explored = 0;
    std::string note;
    bool rooted_mode = false; // produced by the rooted (equality) checker
    std::vector<WitnessStep> witness;
    // configurations along the witness, for deterministic replay
    std::vector<std::pair<Configuration, Configuration>> witness_configs;

    bool passed() const { return kind == Kind::Passed; }
    bool refuted() const { return kind == Kind::Refuted; }
    std::string kind_str() const;
    std::string to_json(int indent = -1) const;
};

struct CheckOptions {
    int budget = 64;          // tau budget inside weak transitions
    int rounds = 64;          // visible-action depth after which pairs are assumed
    long node_cap = 100000;   // explored-pair cap
    ProbeSet probes = ProbeSet::basic();
    std::size_t max_results = 4096; // enumeration cap inside weak transitions
};

/// Verifies that a given finite relation is a bisimulation on its own pairs:
/// every pair must satisfy the structural clauses and every challenge must be
/// answered inside the relation. No new pairs are discovered.
Verdict check_relation(const Program& prog, const ConfigRelation& rel, const CheckOptions& opts);

/// On-the-fly bisimilarity check growing a candidate relation from the given
/// pair. Refuted verdicts are sound; Passed verdicts hold up to the probe
/// family and the budget.
Verdict bisimilar(const Program& prog, const Configuration& c1, const Configuration& c2,
                  const CheckOptions& opts);

/// Rooted equality: as bisimilar, except a root tau challenge must be matched
/// by a weak transition containing at least one tau.
Verdict check_equality(const Program& prog, const Configuration& c1, const Configuration& c2,
                       const CheckOptions& opts);

/// Re-executes the failing clause at the end of a Refuted witness and reports
/// whether the same failure reproduces.
bool replay_witness(const Program& prog, const Verdict& v, const CheckOptions& opts);

struct StateSampleSpec {
    bool basis_states = true;  // computational basis over the wires of interest
    bool bell_pairs = true;    // maximally entangled pairs spanning qv and ancillas
    int random_states = 2;     // Haar-ish random pure states
    unsigned seed = 12345;
    int ancillas = 2;          // extra universe wires beyond qv(p) and qv(q)
    std::vector<DensityOperator> explicit_states; // used in addition, if given
};

/// Process-level equivalence, realized by sampling: closes the processes under
/// every valuation of their free classical variables (over the union of the
/// declared channel domains) and checks each sampled initial state. Uses
/// rooted equality when `equality` is set, plain bisimilarity otherwise.
Verdict process_equiv(const Program& prog, const TermPtr& p, const TermPtr& q,
                      const StateSampleSpec& samples, const CheckOptions& opts, bool equality);

/// Initial states described by the sample spec (exposed for tests).
std::vector<DensityOperator> sample_states(const Program& prog, const TermPtr& p, const TermPtr& q,
                                           const StateSampleSpec& spec);

} // namespace qccs
