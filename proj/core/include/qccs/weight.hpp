// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/semantics.hpp"

#include <functional>
#include <optional>

namespace qccs {

/// Transportation table between two distribution supports: entry (i, j, w)
/// moves mass w from mu's i-th support point to nu's j-th. Row sums equal
/// mu's probabilities and column sums nu's, and positive entries appear only
/// on related pairs.
struct WeightFunction {
    struct Entry {
        std::size_t mu_index;
        std::size_t nu_index;
        double weight;
    };
    std::vector<Entry> entries;
};

using RelatedFn = std::function<bool(const Configuration&, const Configuration&)>;

/// Decides whether a weight function for (mu, nu) exists over the related
/// support pairs, via max-flow on the bipartite transportation network
/// (feasible iff the max flow reaches the full unit mass within kFlowEps).
std::optional<WeightFunction> weight_function(const Distribution& mu, const Distribution& nu,
                                              const RelatedFn& related);

struct DecomposedPair {
    double p;
    Configuration left;
    Configuration right;
};

/// Flattens a weight function into matched decompositions mu = sum p_i C_i,
/// nu = sum p_i D_i with C_i related to D_i.
std::optional<std::vector<DecomposedPair>> decompose(const Distribution& mu, const Distribution& nu,
                                                     const RelatedFn& related);

} // namespace qccs
