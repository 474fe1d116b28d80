// SPDX-License-Identifier: Apache-2.0
#include "qccs/export.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <deque>

namespace qccs {

namespace {

// FNV-1a over the canonical term rendering and the state entries quantized to
// a 1e-10 grid, so equal-within-tolerance states map to equal ids
std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string quantize(double v) {
    double q = std::round(v * 1e10);
    if (q == 0.0) q = 0.0; // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", q);
    return buf;
}

} // namespace

std::string config_node_id(const Configuration& c) {
    std::uint64_t h = fnv1a(c.term_key);
    for (const auto& v : c.state.matrix().entries()) {
        h = fnv1a(quantize(v.real()), h);
        h = fnv1a(quantize(v.imag()), h);
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "n%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Lts explore_lts(const Program& prog, const Configuration& root, int depth, std::size_t node_cap) {
    Lts lts;
    std::vector<Configuration> known;
    auto intern = [&](const Configuration& c) -> std::string {
        for (std::size_t i = 0; i < known.size(); ++i)
            if (configs_equal(known[i], c)) return lts.nodes[i].id;
        known.push_back(c);
        lts.nodes.push_back({config_node_id(c), c});
        return lts.nodes.back().id;
    };

    struct Item {
        std::size_t index;
        int depth;
    };
    std::deque<Item> queue;
    intern(root);
    queue.push_back({0, 0});
    std::vector<bool> expanded;

    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [index, d] = queue[head];
        const Configuration c = known[index];
        if (d >= depth) {
            if (!step(prog, c).empty()) lts.truncated = true;
            continue;
        }
        for (const auto& tr : step(prog, c)) {
            LtsEdge edge;
            edge.from = lts.nodes[index].id;
            edge.action = tr.action;
            for (const auto& e : tr.target.entries()) {
                std::size_t before = known.size();
                std::string id = intern(e.config);
                edge.to.push_back({id, e.prob});
                if (known.size() > before) {
                    if (known.size() >= node_cap) {
                        lts.truncated = true;
                        lts.edges.push_back(std::move(edge));
                        return lts;
                    }
                    queue.push_back({known.size() - 1, d + 1});
                }
            }
            lts.edges.push_back(std::move(edge));
        }
    }
    return lts;
}

std::string lts_to_json(const Lts& lts, int indent) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : lts.nodes) {
        nlohmann::json node;
        node["id"] = n.id;
        node["term"] = render_term(n.config.process);
        nlohmann::json state = nlohmann::json::array();
        for (const auto& v : n.config.state.matrix().entries())
            state.push_back(nlohmann::json::array({v.real(), v.imag()}));
        node["state"] = std::move(state);
        j["nodes"].push_back(std::move(node));
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : lts.edges) {
        nlohmann::json edge;
        edge["from"] = e.from;
        edge["action"] = e.action.str();
        nlohmann::json to = nlohmann::json::array();
        for (const auto& b : e.to) to.push_back({{"node", b.node}, {"prob", b.prob}});
        edge["to"] = std::move(to);
        j["edges"].push_back(std::move(edge));
    }
    if (lts.truncated) j["truncated"] = true;
    return indent < 0 ? j.dump() : j.dump(indent);
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string lts_to_dot(const Lts& lts) {
    std::string out = "digraph lts {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n";
    for (const auto& n : lts.nodes) {
        out += "  " + n.id + " [label=\"" + dot_escape(render_term(n.config.process)) + "\"];\n";
    }
    for (const auto& e : lts.edges) {
        for (const auto& b : e.to) {
            char prob[32];
            std::snprintf(prob, sizeof(prob), "%.6g", b.prob);
            std::string label = dot_escape(e.action.str());
            if (e.to.size() > 1 || b.prob < 1.0 - 1e-12)
                label += std::string(" [") + prob + "]";
            out += "  " + e.from + " -> " + b.node + " [label=\"" + label + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace qccs
