// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/semantics.hpp"

#include <string>

namespace qccs {

/// Bounded-depth reachable transition system rooted at a configuration. Node
/// ids are deterministic hashes of the canonical configuration form.
struct LtsNode {
    std::string id;
    Configuration config;
};

struct LtsBranch {
    std::string node;
    double prob;
};

struct LtsEdge {
    std::string from;
    Action action;
    std::vector<LtsBranch> to;
};

struct Lts {
    std::vector<LtsNode> nodes;
    std::vector<LtsEdge> edges;
    bool truncated = false; // depth bound reached with unexplored successors
};

Lts explore_lts(const Program& prog, const Configuration& root, int depth,
                std::size_t node_cap = 100000);

std::string lts_to_json(const Lts& lts, int indent = -1);
std::string lts_to_dot(const Lts& lts);

/// Deterministic id of a configuration's canonical form.
std::string config_node_id(const Configuration& c);

} // namespace qccs
