// SPDX-License-Identifier: Apache-2.0
#include "qccs/weight.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace qccs {

namespace {

// Edmonds-Karp on the small dense transportation network:
// node 0 = source, 1..m = mu support, m+1..m+k = nu support, m+k+1 = sink.
struct FlowNet {
    std::size_t n;
    std::vector<double> cap; // residual capacities, n x n

    explicit FlowNet(std::size_t nodes) : n(nodes), cap(nodes * nodes, 0.0) {}
    double& at(std::size_t u, std::size_t v) { return cap[u * n + v]; }

    double max_flow(std::size_t s, std::size_t t) {
        const double eps = 1e-12;
        double total = 0.0;
        for (;;) {
            std::vector<long> parent(n, -1);
            parent[s] = static_cast<long>(s);
            std::deque<std::size_t> queue{s};
            while (!queue.empty() && parent[t] < 0) {
                std::size_t u = queue.front();
                queue.pop_front();
                for (std::size_t v = 0; v < n; ++v) {
                    if (parent[v] < 0 && at(u, v) > eps) {
                        parent[v] = static_cast<long>(u);
                        queue.push_back(v);
                    }
                }
            }
            if (parent[t] < 0) return total;
            double bottleneck = std::numeric_limits<double>::infinity();
            for (std::size_t v = t; v != s; v = static_cast<std::size_t>(parent[v]))
                bottleneck = std::min(bottleneck, at(static_cast<std::size_t>(parent[v]), v));
            for (std::size_t v = t; v != s; v = static_cast<std::size_t>(parent[v])) {
                std::size_t u = static_cast<std::size_t>(parent[v]);
                at(u, v) -= bottleneck;
                at(v, u) += bottleneck;
            }
            total += bottleneck;
        }
    }
};

} // namespace

std::optional<WeightFunction> weight_function(const Distribution& mu, const Distribution& nu,
                                              const RelatedFn& related) {
    const std::size_t m = mu.size(), k = nu.size();
    if (m == 0 || k == 0) return std::nullopt;
    const std::size_t source = 0, sink = m + k + 1;
    FlowNet net(m + k + 2);

    double mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        net.at(source, 1 + i) = mu.entries()[i].prob;
        mass += mu.entries()[i].prob;
    }
    for (std::size_t j = 0; j < k; ++j) net.at(1 + m + j, sink) = nu.entries()[j].prob;

    bool any_arc = false;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (related(mu.entries()[i].config, nu.entries()[j].config)) {
                net.at(1 + i, 1 + m + j) = 2.0; // effectively unbounded
                any_arc = true;
            }
        }
    }
    if (!any_arc) return std::nullopt;

    double flow = net.max_flow(source, sink);
    if (flow + kFlowEps < mass) return std::nullopt;

    WeightFunction wf;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            // residual on the reverse arc holds the shipped amount
            double shipped = net.at(1 + m + j, 1 + i);
            if (shipped > kFlowEps) wf.entries.push_back({i, j, shipped});
        }
    }
    return wf;
}

std::optional<std::vector<DecomposedPair>> decompose(const Distribution& mu, const Distribution& nu,
                                                     const RelatedFn& related) {
    auto wf = weight_function(mu, nu, related);
    if (!wf) return std::nullopt;
    std::vector<DecomposedPair> out;
    out.reserve(wf->entries.size());
    for (const auto& e : wf->entries)
        out.push_back({e.weight, mu.entries()[e.mu_index].config, nu.entries()[e.nu_index].config});
    return out;
}

} // namespace qccs
