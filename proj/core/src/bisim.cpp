// SPDX-License-Identifier: Apache-2.0
#include "qccs/bisim.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <unordered_map>

namespace qccs {

void ConfigRelation::add(Configuration a, Configuration b) {
    if (!contains(a, b)) pairs.emplace_back(std::move(a), std::move(b));
}

bool ConfigRelation::contains(const Configuration& a, const Configuration& b) const {
    for (const auto& [x, y] : pairs) {
        if (configs_equal(x, a) && configs_equal(y, b)) return true;
        if (symmetric && configs_equal(x, b) && configs_equal(y, a)) return true;
    }
    return false;
}

std::string Verdict::kind_str() const {
    switch (kind) {
    case Kind::Passed: return "PassedUpToProbes";
    case Kind::Refuted: return "Refuted";
    case Kind::CapExceeded: return "CapExceeded";
    }
    return "?";
}

std::string Verdict::to_json(int indent) const {
    nlohmann::json j;
    j["result"] = kind_str();
    j["probes_used"] = probe_count;
    j["pairs_explored"] = pairs_explored;
    j["budget"] = budget;
    j["budget_limited"] = budget_limited;
    if (!note.empty()) j["caveat"] = note;
    if (!witness.empty()) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& s : witness) {
            nlohmann::json step;
            step["pair"] = {{"left", s.left_term}, {"right", s.right_term}};
            step["action"] = s.action;
            step["side"] = s.side;
            step["reason"] = s.reason;
            if (!s.probe.empty()) step["probe"] = s.probe;
            w.push_back(std::move(step));
        }
        j["witness"] = std::move(w);
    }
    return indent < 0 ? j.dump() : j.dump(indent);
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kCaveat =
    "passed verdicts are relative to the finite probe family and the tau/pair budget";

struct PairRec {
    Configuration left, right;
    int depth = 0;
    enum class St { Pending, Verified, Assumed, Refuted } st = St::Pending;
    long parent = -1;
    std::string via_action, via_side, via_probe;

    std::string fail_action, fail_side, fail_reason, fail_probe;
    std::vector<std::size_t> fail_deps; // refuted pairs the failure relied on
    long refute_seq = -1;

    bool cached = false;
    std::vector<Transition> ltrans, rtrans;
};

class Checker {
public:
    Checker(const Program& prog, const CheckOptions& opts, bool rooted)
        : prog_(prog), opts_(opts), rooted_(rooted) {}

    Verdict run(const Configuration& c1, const Configuration& c2) {
        add_pair(c1, c2, 0, -1, "", "", "");
        fixpoint();
        return verdict();
    }

    Verdict run_relation(const ConfigRelation& rel) {
        fixed_rel_ = &rel;
        for (const auto& [a, b] : rel.pairs) add_pair(a, b, 0, -1, "", "", "");
        fixpoint();
        return verdict();
    }

    std::optional<WitnessStep> local_failure(const Configuration& a, const Configuration& b) {
        // single-pair check with a fully optimistic relation
        add_pair(a, b, 0, -1, "", "", "");
        if (verify(0)) return std::nullopt;
        WitnessStep step;
        step.left_term = render_term(pairs_[0].left.process);
        step.right_term = render_term(pairs_[0].right.process);
        step.action = pairs_[0].fail_action;
        step.side = pairs_[0].fail_side;
        step.reason = pairs_[0].fail_reason;
        step.probe = pairs_[0].fail_probe;
        return step;
    }

private:
    const Program& prog_;
    CheckOptions opts_;
    bool rooted_;
    const ConfigRelation* fixed_rel_ = nullptr;

    std::deque<PairRec> pairs_;
    WeakCache wcache_;
    std::unordered_multimap<std::string, std::size_t> index_;
    std::unordered_multimap<std::string, std::pair<DensityOperator, DensityOperator>> env_cache_;
    WeakStats wstats_;
    bool overflow_ = false;
    std::size_t probe_count_ = 0;
    long refute_counter_ = 0;
    std::vector<std::size_t>* dep_sink_ = nullptr; // collects refuted pairs consulted by a match

    WeakOptions weak_opts() { return WeakOptions{opts_.budget, opts_.max_results, &wcache_}; }

    const std::vector<Transition>& cached_step(const Configuration& c) {
        if (const auto* hit = wcache_.find_steps(c)) return *hit;
        wcache_.store_steps(c, step(prog_, c));
        return *wcache_.find_steps(c);
    }

    static std::string pair_key(const Configuration& a, const Configuration& b) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "\x1f%016llx%016llx",
                      static_cast<unsigned long long>(state_fingerprint(a.state)),
                      static_cast<unsigned long long>(state_fingerprint(b.state)));
        return a.term_key + "\x1f" + b.term_key + buf;
    }

    static std::string env_key(const Configuration& c) {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "\x1e%016llx",
                      static_cast<unsigned long long>(state_fingerprint(c.state)));
        return c.term_key + buf;
    }

    long find_pair(const Configuration& a, const Configuration& b) {
        auto range = index_.equal_range(pair_key(a, b));
        for (auto it = range.first; it != range.second; ++it) {
            const PairRec& r = pairs_[it->second];
            if (configs_equal(r.left, a) && configs_equal(r.right, b))
                return static_cast<long>(it->second);
        }
        return -1;
    }

    long add_pair(const Configuration& a, const Configuration& b, int depth, long parent,
                  const std::string& act, const std::string& side, const std::string& probe) {
        long existing = find_pair(a, b);
        if (existing >= 0) {
            PairRec& r = pairs_[existing];
            if (depth < r.depth) {
                r.depth = depth;
                if (r.st == PairRec::St::Assumed && depth <= opts_.rounds) r.st = PairRec::St::Pending;
            }
            return existing;
        }
        if (static_cast<long>(pairs_.size()) >= opts_.node_cap) {
            overflow_ = true;
            return -1;
        }
        PairRec rec;
        rec.left = a;
        rec.right = b;
        rec.depth = depth;
        rec.parent = parent;
        rec.via_action = act;
        rec.via_side = side;
        rec.via_probe = probe;
        pairs_.push_back(std::move(rec));
        index_.emplace(pair_key(a, b), pairs_.size() - 1);
        return static_cast<long>(pairs_.size()) - 1;
    }

    const DensityOperator& env_reduced(const Configuration& c) {
        std::string key = env_key(c);
        auto range = env_cache_.equal_range(key);
        for (auto it = range.first; it != range.second; ++it)
            if (states_equal(it->second.first, c.state)) return it->second.second;
        DensityOperator red = partial_trace(c.state, c.process->qv);
        auto it = env_cache_.emplace(std::move(key), std::make_pair(c.state, std::move(red)));
        return it->second.second;
    }

    bool compatible(const Configuration& a, const Configuration& b) {
        if (a.process->qv != b.process->qv) return false;
        return states_equal(env_reduced(a), env_reduced(b));
    }

    bool related(const Configuration& a, const Configuration& b) {
        if (fixed_rel_) return fixed_rel_->contains(a, b);
        if (configs_equal(a, b)) return true;
        if (!compatible(a, b)) return false;
        long id = find_pair(a, b);
        if (id >= 0 && pairs_[id].st == PairRec::St::Refuted) {
            if (dep_sink_) dep_sink_->push_back(static_cast<std::size_t>(id));
            return false;
        }
        return true;
    }

    void register_obligations(const Distribution& mu, const Distribution& nu,
                              const WeightFunction& wf, std::size_t parent, const Action& act,
                              const std::string& side, const std::string& probe) {
        if (fixed_rel_) return; // fixed relations are not grown
        // depth counts visible rounds: internal moves stay within the round
        int depth = pairs_[parent].depth + (act.is_tau() ? 0 : 1);
        for (const auto& e : wf.entries) {
            const Configuration& l = mu.entries()[e.mu_index].config;
            const Configuration& r = nu.entries()[e.nu_index].config;
            if (configs_equal(l, r)) continue; // identity needs no obligation
            add_pair(l, r, depth, static_cast<long>(parent), act.str(), side, probe);
            if (overflow_) return;
        }
    }

    // Matching for a non-quantum-input challenge. `challenge_from_left` fixes
    // the orientation of the weight function (left distribution first).
    bool match_plain(std::size_t id, bool challenge_from_left, const Transition& tr,
                     const std::vector<Distribution>& cands, std::string& reason,
                     std::vector<std::size_t>& deps) {
        auto rel = [&](const Configuration& a, const Configuration& b) { return related(a, b); };
        dep_sink_ = &deps;
        for (const auto& cand : cands) {
            auto wf = challenge_from_left ? weight_function(tr.target, cand, rel)
                                          : weight_function(cand, tr.target, rel);
            if (wf) {
                dep_sink_ = nullptr;
                if (challenge_from_left)
                    register_obligations(tr.target, cand, *wf, id, tr.action, "left", "");
                else
                    register_obligations(cand, tr.target, *wf, id, tr.action, "right", "");
                return true;
            }
        }
        dep_sink_ = nullptr;
        reason = cands.empty() ? "no weak transition matches the action"
                               : "no candidate is related by a weight function";
        return false;
    }

    bool match_quantum_input(std::size_t id, bool challenge_from_left, const Transition& tr,
                             const std::vector<Distribution>& cands, std::string& reason,
                             std::string& failed_probe, std::vector<std::size_t>& deps) {
        std::set<std::string> protected_wires = tr.target.qv();
        for (const auto& w : tr.action.bound_wires()) protected_wires.erase(w);
        auto probes = opts_.probes.instantiate(prog_.universe, protected_wires);
        probe_count_ = std::max(probe_count_, probes.size());

        auto rel = [&](const Configuration& a, const Configuration& b) { return related(a, b); };
        std::string first_failure;
        dep_sink_ = &deps;
        for (const auto& cand : cands) {
            struct Accepted {
                Distribution emu, enu;
                WeightFunction wf;
                std::string probe;
            };
            std::vector<Accepted> accepted;
            std::string failing;
            for (const auto& probe : probes) {
                Distribution emu = tr.target.apply_superop(probe.op, probe.wires);
                Distribution enu = cand.apply_superop(probe.op, probe.wires);
                auto wf = challenge_from_left ? weight_function(emu, enu, rel)
                                              : weight_function(enu, emu, rel);
                if (!wf) {
                    failing = probe.id;
                    break;
                }
                if (challenge_from_left)
                    accepted.push_back({std::move(emu), std::move(enu), std::move(*wf), probe.id});
                else
                    accepted.push_back({std::move(enu), std::move(emu), std::move(*wf), probe.id});
            }
            if (failing.empty()) {
                dep_sink_ = nullptr;
                for (const auto& acc : accepted)
                    register_obligations(acc.emu, acc.enu, acc.wf, id, tr.action,
                                         challenge_from_left ? "left" : "right", acc.probe);
                return true;
            }
            if (first_failure.empty()) first_failure = failing;
        }
        dep_sink_ = nullptr;
        reason = cands.empty() ? "no weak transition matches the quantum input"
                               : "no candidate matches under every probe";
        failed_probe = first_failure;
        return false;
    }

    void ensure_cached(PairRec& rec) {
        if (rec.cached) return;
        rec.ltrans = cached_step(rec.left);
        rec.rtrans = cached_step(rec.right);
        rec.cached = true;
    }

    // matching candidates for one challenge; recomputed per verification pass
    // (the weak cache makes this cheap) so pairs do not pin large result sets
    std::vector<Distribution> candidates(const Configuration& responder, const Action& a,
                                         bool strict_tau) {
        WeakOptions wo = weak_opts();
        Distribution from = Distribution::point(responder);
        std::vector<WeakResult> weak;
        if (a.is_quantum_input())
            weak = weak_then_step(prog_, from, a, wo, &wstats_);
        else if (a.is_tau() && strict_tau)
            weak = weak_strict_transition(prog_, from, a, wo, &wstats_);
        else
            weak = weak_hat_transition(prog_, from, a, wo, &wstats_);
        std::vector<Distribution> out;
        out.reserve(weak.size());
        for (auto& w : weak) out.push_back(std::move(w.dist));
        return out;
    }

    void refute(std::size_t id, const std::string& action, const std::string& side,
                const std::string& reason, const std::string& probe,
                std::vector<std::size_t> deps) {
        PairRec& rec = pairs_[id];
        rec.st = PairRec::St::Refuted;
        rec.fail_action = action;
        rec.fail_side = side;
        rec.fail_reason = reason;
        rec.fail_probe = probe;
        std::sort(deps.begin(), deps.end());
        deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
        rec.fail_deps = std::move(deps);
        rec.refute_seq = refute_counter_++;
    }

    // returns false iff the pair was refuted
    bool verify(std::size_t id) {
        PairRec& rec = pairs_[id];
        if (rec.st == PairRec::St::Refuted) return false;

        if (configs_equal(rec.left, rec.right)) {
            rec.st = PairRec::St::Verified;
            return true;
        }
        if (rec.left.process->qv != rec.right.process->qv) {
            refute(id, "structure", "both", "free quantum variable sets differ", "", {});
            return false;
        }
        if (!states_equal(env_reduced(rec.left), env_reduced(rec.right))) {
            refute(id, "structure", "both", "environment-reduced states differ", "", {});
            return false;
        }
        if (!fixed_rel_ && rec.depth > opts_.rounds) {
            rec.st = PairRec::St::Assumed;
            return true;
        }

        ensure_cached(rec);
        bool strict = rooted_ && id == 0;

        for (int side = 0; side < 2; ++side) {
            bool from_left = side == 0;
            auto& trans = from_left ? rec.ltrans : rec.rtrans;
            const Configuration& responder = from_left ? rec.right : rec.left;
            for (std::size_t i = 0; i < trans.size(); ++i) {
                std::string reason, probe;
                std::vector<std::size_t> deps;
                std::vector<Distribution> cands =
                    candidates(responder, trans[i].action, strict);
                bool ok = trans[i].action.is_quantum_input()
                              ? match_quantum_input(id, from_left, trans[i], cands, reason,
                                                    probe, deps)
                              : match_plain(id, from_left, trans[i], cands, reason, deps);
                if (overflow_) return true; // reported as CapExceeded by the caller
                if (!ok) {
                    refute(id, trans[i].action.str(), from_left ? "left" : "right", reason, probe,
                           std::move(deps));
                    return false;
                }
            }
        }
        rec.st = PairRec::St::Verified;
        return true;
    }

    void fixpoint() {
        bool changed = true;
        while (changed && !overflow_) {
            changed = false;
            for (std::size_t id = 0; id < pairs_.size() && !overflow_; ++id) {
                PairRec::St before = pairs_[id].st;
                if (before == PairRec::St::Refuted || before == PairRec::St::Assumed) continue;
                verify(id);
                if (pairs_[id].st != before) changed = true;
            }
        }
    }

    Verdict verdict() {
        Verdict v;
        v.budget = opts_.budget;
        v.probe_count = probe_count_;
        v.pairs_explored = static_cast<long>(pairs_.size());
        v.note = kCaveat;
        if (overflow_) {
            v.kind = Verdict::Kind::CapExceeded;
            v.note = "explored-pair cap exceeded (node cap " + std::to_string(opts_.node_cap) + ")";
            return v;
        }

        // a relation check fails if any of its pairs failed; an on-the-fly
        // check fails only if the root pair failed
        long failed_root = -1;
        if (fixed_rel_) {
            for (std::size_t id = 0; id < pairs_.size(); ++id)
                if (pairs_[id].st == PairRec::St::Refuted && pairs_[id].parent < 0) {
                    failed_root = static_cast<long>(id);
                    break;
                }
        } else if (!pairs_.empty() && pairs_[0].st == PairRec::St::Refuted) {
            failed_root = 0;
        }

        if (failed_root < 0) {
            v.kind = Verdict::Kind::Passed;
            for (const auto& r : pairs_)
                if (r.st == PairRec::St::Assumed) v.budget_limited = true;
            return v;
        }

        v.kind = Verdict::Kind::Refuted;
        if (wstats_.budget_hit || wstats_.cap_hit) {
            v.budget_limited = true;
            v.note = "refutation computed under truncated weak-transition enumeration";
        }
        // witness: walk from the failed pair through refuted dependencies to a
        // locally failing leaf
        long cur = failed_root;
        std::set<long> seen;
        while (cur >= 0 && !seen.count(cur)) {
            seen.insert(cur);
            const PairRec& r = pairs_[static_cast<std::size_t>(cur)];
            WitnessStep step;
            step.left_term = render_term(r.left.process);
            step.right_term = render_term(r.right.process);
            step.action = r.fail_action;
            step.side = r.fail_side;
            step.reason = r.fail_reason;
            step.probe = r.fail_probe;
            v.witness.push_back(std::move(step));
            v.witness_configs.emplace_back(r.left, r.right);
            long next = -1;
            for (std::size_t dep : r.fail_deps) {
                if (pairs_[dep].st == PairRec::St::Refuted && pairs_[dep].refute_seq < r.refute_seq) {
                    next = static_cast<long>(dep);
                    break;
                }
            }
            cur = next;
        }
        return v;
    }
};

} // namespace

Verdict check_relation(const Program& prog, const ConfigRelation& rel, const CheckOptions& opts) {
    Checker c(prog, opts, false);
    return c.run_relation(rel);
}

Verdict bisimilar(const Program& prog, const Configuration& c1, const Configuration& c2,
                  const CheckOptions& opts) {
    Checker c(prog, opts, false);
    return c.run(c1, c2);
}

Verdict check_equality(const Program& prog, const Configuration& c1, const Configuration& c2,
                       const CheckOptions& opts) {
    Checker c(prog, opts, true);
    Verdict v = c.run(c1, c2);
    v.rooted_mode = true;
    return v;
}

bool replay_witness(const Program& prog, const Verdict& v, const CheckOptions& opts) {
    if (v.kind != Verdict::Kind::Refuted || v.witness.empty() || v.witness_configs.empty())
        return false;
    const auto& leaf = v.witness.back();
    const auto& [left, right] = v.witness_configs.back();
    bool leaf_is_root = v.witness.size() == 1;
    Checker c(prog, opts, v.rooted_mode && leaf_is_root);
    auto failure = c.local_failure(left, right);
    if (!failure) return false;
    return failure->action == leaf.action && failure->side == leaf.side &&
           failure->reason == leaf.reason;
}

// ---------------------------------------------------------------------------
// Process-level equivalence by sampling.

std::vector<DensityOperator> sample_states(const Program& prog, const TermPtr& p, const TermPtr& q,
                                           const StateSampleSpec& spec) {
    const QubitRegister& reg = prog.universe;
    std::set<std::string> interest = p->qv;
    interest.insert(q->qv.begin(), q->qv.end());
    std::vector<std::string> ancillas;
    for (const auto& w : reg.wires()) {
        if (interest.count(w)) continue;
        if (static_cast<int>(ancillas.size()) >= spec.ancillas) break;
        ancillas.push_back(w);
    }
    std::vector<std::string> focus(interest.begin(), interest.end());
    focus.insert(focus.end(), ancillas.begin(), ancillas.end());

    std::vector<std::size_t> focus_pos;
    for (const auto& w : focus) focus_pos.push_back(reg.index_of(w));
    const std::size_t n = reg.size();
    const std::size_t fdim = std::size_t(1) << focus.size();

    std::vector<DensityOperator> out;
    auto amp_index = [&](std::size_t focus_bits) {
        std::size_t g = 0;
        for (std::size_t x = 0; x < focus_pos.size(); ++x) {
            std::size_t bit = (focus_bits >> (focus_pos.size() - 1 - x)) & 1u;
            g |= bit << (n - 1 - focus_pos[x]);
        }
        return g;
    };

    if (spec.basis_states && focus.size() <= 4) {
        for (std::size_t b = 0; b < fdim; ++b) {
            std::vector<Complex> amps(reg.dim(), 0.0);
            amps[amp_index(b)] = 1.0;
            out.push_back(DensityOperator::pure(reg, amps));
        }
    } else if (spec.basis_states) {
        std::vector<Complex> amps(reg.dim(), 0.0);
        amps[0] = 1.0;
        out.push_back(DensityOperator::pure(reg, amps));
    }

    if (spec.bell_pairs) {
        const double s = 1.0 / std::sqrt(2.0);
        for (std::size_t a = 0; a < focus.size(); ++a) {
            for (std::size_t b = a + 1; b < focus.size(); ++b) {
                std::vector<Complex> amps(reg.dim(), 0.0);
                std::size_t hi = (std::size_t(1) << (focus.size() - 1 - a)) |
                                 (std::size_t(1) << (focus.size() - 1 - b));
                amps[amp_index(0)] = s;
                amps[amp_index(hi)] = s;
                out.push_back(DensityOperator::pure(reg, amps));
            }
        }
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < spec.random_states; ++k) {
        std::vector<Complex> focus_amps(fdim);
        double norm = 0.0;
        for (auto& a : focus_amps) {
            a = Complex(gauss(rng), gauss(rng));
            norm += std::norm(a);
        }
        norm = std::sqrt(norm);
        std::vector<Complex> amps(reg.dim(), 0.0);
        for (std::size_t b = 0; b < fdim; ++b) amps[amp_index(b)] = focus_amps[b] / norm;
        out.push_back(DensityOperator::pure(reg, amps));
    }

    for (const auto& s : spec.explicit_states) out.push_back(s);
    return out;
}

Verdict process_equiv(const Program& prog, const TermPtr& p, const TermPtr& q,
                      const StateSampleSpec& samples, const CheckOptions& opts, bool equality) {
    if (p->fv != q->fv)
        throw QccsError("process equivalence requires identical free classical variables");
    for (const auto& w : p->qv)
        if (!prog.universe.contains(w)) throw QccsError("free quantum variable outside universe: " + w);
    for (const auto& w : q->qv)
        if (!prog.universe.contains(w)) throw QccsError("free quantum variable outside universe: " + w);

    // valuations of the shared free classical variables over the declared domains
    std::vector<Rational> pool;
    for (const auto& [name, domain] : prog.classical_channels)
        for (const auto& v : domain)
            if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
    if (pool.empty()) pool.push_back(Rational(0));

    std::vector<std::string> vars(p->fv.begin(), p->fv.end());
    std::vector<std::pair<TermPtr, TermPtr>> closed;
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
        TermPtr cp = p, cq = q;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            cp = substitute_classical(cp, vars[i], pool[idx[i]]);
            cq = substitute_classical(cq, vars[i], pool[idx[i]]);
        }
        closed.emplace_back(std::move(cp), std::move(cq));
        if (vars.empty() || closed.size() > 512) break;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pool.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }

    auto states = sample_states(prog, p, q, samples);

    Verdict agg;
    agg.kind = Verdict::Kind::Passed;
    agg.budget = opts.budget;
    agg.note = kCaveat;
    for (const auto& [cp, cq] : closed) {
        for (const auto& rho : states) {
            Configuration c1(cp, rho), c2(cq, rho);
            Verdict v = equality ? check_equality(prog, c1, c2, opts) : bisimilar(prog, c1, c2, opts);
            agg.pairs_explored += v.pairs_explored;
            agg.probe_count = std::max(agg.probe_count, v.probe_count);
            agg.budget_limited = agg.budget_limited || v.budget_limited;
            if (!v.passed()) {
                v.pairs_explored = agg.pairs_explored;
                v.note += "; failing sample recorded in witness";
                return v;
            }
        }
    }
    return agg;
}

} // namespace qccs
