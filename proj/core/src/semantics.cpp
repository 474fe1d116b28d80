// SPDX-License-Identifier: Apache-2.0
#include "qccs/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qccs {

Action Action::c_in(std::string chan, Rational v) {
    Action a;
    a.kind = Kind::ClassicalIn;
    a.channel = std::move(chan);
    a.value = v;
    return a;
}

Action Action::c_out(std::string chan, Rational v) {
    Action a;
    a.kind = Kind::ClassicalOut;
    a.channel = std::move(chan);
    a.value = v;
    return a;
}

Action Action::q_in(std::string chan, std::vector<std::string> ws) {
    Action a;
    a.kind = Kind::QuantumIn;
    a.channel = std::move(chan);
    a.wires = std::move(ws);
    return a;
}

Action Action::q_out(std::string chan, std::vector<std::string> ws) {
    Action a;
    a.kind = Kind::QuantumOut;
    a.channel = std::move(chan);
    a.wires = std::move(ws);
    return a;
}

std::set<std::string> Action::bound_wires() const {
    if (kind == Kind::QuantumIn) return std::set<std::string>(wires.begin(), wires.end());
    return {};
}

std::string Action::str() const {
    switch (kind) {
    case Kind::Tau: return "tau";
    case Kind::ClassicalIn: return channel + "?" + value.str();
    case Kind::ClassicalOut: return channel + "!" + value.str();
    case Kind::QuantumIn:
    case Kind::QuantumOut: {
        std::string payload;
        if (wires.size() == 1) {
            payload = wires[0];
        } else {
            payload = "(";
            for (std::size_t i = 0; i < wires.size(); ++i) payload += (i ? "," : "") + wires[i];
            payload += ")";
        }
        return channel + (kind == Kind::QuantumIn ? "?" : "!") + payload;
    }
    }
    return "?";
}

bool Action::operator==(const Action& o) const {
    return kind == o.kind && channel == o.channel && value == o.value && wires == o.wires;
}

bool Action::operator<(const Action& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    if (channel != o.channel) return channel < o.channel;
    if (!(value == o.value)) return value < o.value;
    return wires < o.wires;
}

Configuration::Configuration(TermPtr p, DensityOperator s)
    : process(std::move(p)), state(std::move(s)), term_key(render_term(alpha_canonical(process))) {}

bool configs_equal(const Configuration& a, const Configuration& b, double tol) {
    return a.term_key == b.term_key && states_equal(a.state, b.state, tol);
}

std::uint64_t state_fingerprint(const DensityOperator& rho) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](long long v) {
        if (v == 0) v = 0; // normalize -0
        for (int i = 0; i < 8; ++i) {
            h ^= static_cast<std::uint64_t>(v >> (i * 8)) & 0xffu;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& e : rho.matrix().entries()) {
        mix(std::llround(e.real() * 1e6));
        mix(std::llround(e.imag() * 1e6));
    }
    return h;
}

Distribution Distribution::point(Configuration c) {
    Distribution d;
    d.entries_.push_back({std::move(c), 1.0});
    return d;
}

void Distribution::add(Configuration c, double p, double tol) {
    if (p <= 0.0) return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), c.term_key,
                               [](const Entry& e, const std::string& k) { return e.config.term_key < k; });
    for (auto scan = it; scan != entries_.end() && scan->config.term_key == c.term_key; ++scan) {
        if (states_equal(scan->config.state, c.state, tol)) {
            scan->prob += p;
            return;
        }
    }
    entries_.insert(it, {std::move(c), p});
}

double Distribution::total_probability() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.prob;
    return s;
}

double Distribution::trace() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.prob * e.config.state.trace();
    return s;
}

std::set<std::string> Distribution::qv() const {
    std::set<std::string> out;
    for (const auto& e : entries_) out.insert(e.config.process->qv.begin(), e.config.process->qv.end());
    return out;
}

Distribution Distribution::map_terms(const std::function<TermPtr(const TermPtr&)>& f) const {
    Distribution out;
    for (const auto& e : entries_) out.add(Configuration(f(e.config.process), e.config.state), e.prob);
    return out;
}

Distribution Distribution::apply_superop(const SuperOperator& e, const std::vector<std::string>& wires) const {
    Distribution out;
    for (const auto& en : entries_)
        out.add(Configuration(en.config.process, apply_super(e, wires, en.config.state)), en.prob);
    return out;
}

std::string Distribution::key() const {
    std::ostringstream os;
    for (const auto& e : entries_) {
        os << e.config.term_key << "@" << std::llround(e.prob * 1e12) << "|";
    }
    return os.str();
}

bool distributions_equal(const Distribution& a, const Distribution& b, double tol) {
    if (tol < 0.0) tol = comparison_tolerance();
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& ea : a.entries()) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const auto& eb = b.entries()[j];
            if (eb.config.term_key != ea.config.term_key) continue;
            if (std::abs(eb.prob - ea.prob) > tol) continue;
            if (!states_equal(eb.config.state, ea.config.state, tol)) continue;
            used[j] = true;
            matched = true;
            break;
        }
        if (!matched) return false;
    }
    return true;
}

Distribution combine(const std::vector<std::pair<double, Distribution>>& parts) {
    double total = 0.0;
    for (const auto& [w, d] : parts) {
        if (w < -kEps) throw QccsError("negative weight in combined distribution");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-6) throw QccsError("combined distribution weights do not sum to 1");
    Distribution out;
    for (const auto& [w, d] : parts)
        for (const auto& e : d.entries()) out.add(e.config, w * e.prob);
    return out;
}

// ---------------------------------------------------------------------------
// Single-step transition derivation.

namespace {

constexpr int kMaxUnfoldDepth = 64;

bool wires_disjoint(const std::vector<std::string>& ws, const std::set<std::string>& s) {
    return std::none_of(ws.begin(), ws.end(), [&](const std::string& w) { return s.count(w) > 0; });
}

void ordered_tuples(const std::vector<std::string>& pool, std::size_t len,
                    std::vector<std::string>& cur, std::vector<std::vector<std::string>>& out) {
    if (cur.size() == len) {
        out.push_back(cur);
        return;
    }
    for (const auto& w : pool) {
        if (std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
        cur.push_back(w);
        ordered_tuples(pool, len, cur, out);
        cur.pop_back();
    }
}

Rational snap_outcome(double eigenvalue) {
    auto r = Rational::from_double(eigenvalue, kSpecTol, 1000000);
    if (!r) throw QccsError("measurement outcome has no rational representation within tolerance");
    return *r;
}

std::vector<Transition> step_term(const Program& prog, const TermPtr& t, const DensityOperator& rho,
                                  int unfold_depth);

std::vector<Transition> step_parallel(const Program& prog, const TermPtr& t,
                                      const DensityOperator& rho, int unfold_depth) {
    std::vector<Transition> out;
    auto ls = step_term(prog, t->left, rho, unfold_depth);
    auto rs = step_term(prog, t->right, rho, unfold_depth);

    auto interleave = [&](const std::vector<Transition>& side, const TermPtr& other, bool left_side) {
        for (const auto& tr : side) {
            if (tr.action.is_quantum_input() && !wires_disjoint(tr.action.wires, other->qv))
                continue; // received wires must stay fresh for the passive component
            Distribution lifted = tr.target.map_terms([&](const TermPtr& p) {
                return left_side ? ProcessTerm::parallel(p, other) : ProcessTerm::parallel(other, p);
            });
            out.push_back({tr.action, std::move(lifted)});
        }
    };
    interleave(ls, t->right, true);
    interleave(rs, t->left, false);

    auto communicate = [&](const Transition& in, const Transition& outp, bool in_left) {
        const TermPtr& pi = in.target.entries().front().config.process;
        const TermPtr& po = outp.target.entries().front().config.process;
        TermPtr merged = in_left ? ProcessTerm::parallel(pi, po) : ProcessTerm::parallel(po, pi);
        out.push_back({Action::tau(), Distribution::point(Configuration(merged, rho))});
    };
    for (const auto& l : ls) {
        for (const auto& r : rs) {
            using K = Action::Kind;
            if (l.action.channel != r.action.channel) continue;
            bool cmatch = l.action.value == r.action.value;
            bool qmatch = l.action.wires == r.action.wires;
            if (l.action.kind == K::ClassicalIn && r.action.kind == K::ClassicalOut && cmatch)
                communicate(l, r, true);
            else if (l.action.kind == K::ClassicalOut && r.action.kind == K::ClassicalIn && cmatch)
                communicate(r, l, false);
            else if (l.action.kind == K::QuantumIn && r.action.kind == K::QuantumOut && qmatch)
                communicate(l, r, true);
            else if (l.action.kind == K::QuantumOut && r.action.kind == K::QuantumIn && qmatch)
                communicate(r, l, false);
        }
    }
    return out;
}

std::vector<Transition> step_term(const Program& prog, const TermPtr& t, const DensityOperator& rho,
                                  int unfold_depth) {
    std::vector<Transition> out;
    switch (t->kind) {
    case TermKind::Nil: return out;

    case TermKind::Constant: {
        if (unfold_depth > kMaxUnfoldDepth)
            throw QccsError("constant '" + t->name + "' unfolds without reaching an action prefix");
        return step_term(prog, unfold_constant(prog, t), rho, unfold_depth + 1);
    }

    case TermKind::Tau:
        out.push_back({Action::tau(), Distribution::point(Configuration(t->cont, rho))});
        return out;

    case TermKind::ClassicalInput: {
        for (const auto& v : prog.domain(t->name)) {
            TermPtr next = substitute_classical(t->cont, t->cvar, v);
            out.push_back({Action::c_in(t->name, v), Distribution::point(Configuration(next, rho))});
        }
        return out;
    }

    case TermKind::ClassicalOutput: {
        Value v = eval_expr(t->expr);
        if (v.is_bool) throw QccsError("classical output payload evaluated to a boolean");
        out.push_back({Action::c_out(t->name, v.r), Distribution::point(Configuration(t->cont, rho))});
        return out;
    }

    case TermKind::QuantumInput: {
        std::vector<std::string> pool;
        for (const auto& w : prog.universe.wires())
            if (!t->qv.count(w)) pool.push_back(w);
        std::vector<std::vector<std::string>> tuples;
        std::vector<std::string> cur;
        ordered_tuples(pool, t->wires.size(), cur, tuples);
        for (const auto& tuple : tuples) {
            std::map<std::string, std::string> renames;
            for (std::size_t i = 0; i < tuple.size(); ++i) renames[t->wires[i]] = tuple[i];
            TermPtr next = substitute_quantum(t->cont, renames);
            out.push_back(
                {Action::q_in(t->name, tuple), Distribution::point(Configuration(next, rho))});
        }
        return out;
    }

    case TermKind::QuantumOutput:
        out.push_back(
            {Action::q_out(t->name, t->wires), Distribution::point(Configuration(t->cont, rho))});
        return out;

    case TermKind::SuperOp: {
        auto it = prog.superops.find(t->name);
        if (it == prog.superops.end()) throw QccsError("unknown super-operator: " + t->name);
        DensityOperator next = apply_super(it->second, t->wires, rho);
        out.push_back({Action::tau(), Distribution::point(Configuration(t->cont, std::move(next)))});
        return out;
    }

    case TermKind::Measure: {
        auto it = prog.observables.find(t->name);
        if (it == prog.observables.end()) throw QccsError("unknown observable: " + t->name);
        auto branches = measure(it->second, t->wires, rho);
        Distribution dist;
        for (auto& br : branches) {
            TermPtr next = substitute_classical(t->cont, t->cvar, snap_outcome(br.outcome));
            dist.add(Configuration(next, std::move(br.post)), br.probability);
        }
        out.push_back({Action::tau(), std::move(dist)});
        return out;
    }

    case TermKind::Sum: {
        out = step_term(prog, t->left, rho, unfold_depth);
        auto rs = step_term(prog, t->right, rho, unfold_depth);
        out.insert(out.end(), std::make_move_iterator(rs.begin()), std::make_move_iterator(rs.end()));
        return out;
    }

    case TermKind::Parallel: return step_parallel(prog, t, rho, unfold_depth);

    case TermKind::Relabel: {
        for (auto& tr : step_term(prog, t->cont, rho, unfold_depth)) {
            Action a = tr.action;
            if (!a.is_tau()) a.channel = t->relabel.apply(a.channel);
            Distribution lifted = tr.target.map_terms(
                [&](const TermPtr& p) { return ProcessTerm::relabeled(p, t->relabel); });
            out.push_back({std::move(a), std::move(lifted)});
        }
        return out;
    }

    case TermKind::Restrict: {
        for (auto& tr : step_term(prog, t->cont, rho, unfold_depth)) {
            if (!tr.action.is_tau() && t->restriction.count(tr.action.channel)) continue;
            Distribution lifted = tr.target.map_terms(
                [&](const TermPtr& p) { return ProcessTerm::restricted(p, t->restriction); });
            out.push_back({tr.action, std::move(lifted)});
        }
        return out;
    }

    case TermKind::If: {
        Value v = eval_expr(t->expr);
        if (!v.is_bool) throw QccsError("guard evaluated to a non-boolean");
        if (!v.b) return out;
        return step_term(prog, t->cont, rho, unfold_depth);
    }
    }
    throw QccsError("unreachable term kind");
}

} // namespace

TermPtr unfold_constant(const Program& prog, const TermPtr& t) {
    auto it = prog.constants.find(t->name);
    if (it == prog.constants.end()) throw QccsError("unbound process constant: " + t->name);
    const ConstantDef& def = it->second;
    if (def.params.size() != t->wires.size())
        throw QccsError("constant arity mismatch for '" + t->name + "'");
    std::map<std::string, std::string> renames;
    for (std::size_t i = 0; i < def.params.size(); ++i) renames[def.params[i]] = t->wires[i];
    return substitute_quantum(def.body, renames);
}

std::vector<Transition> step(const Program& prog, const Configuration& c) {
    if (!c.process->fv.empty())
        throw QccsError("configuration process is not closed (free variable '" +
                        *c.process->fv.begin() + "')");
    auto raw = step_term(prog, c.process, c.state, 0);

    std::vector<Transition> out;
    for (auto& tr : raw) {
        // instantiation set for visible quantum inputs: universe minus qv(term)
        if (tr.action.is_quantum_input() && !wires_disjoint(tr.action.wires, c.process->qv)) continue;
        bool dup = false;
        for (const auto& have : out) {
            if (have.action == tr.action && distributions_equal(have.target, tr.target)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(tr));
    }
    std::stable_sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) {
        if (!(a.action == b.action)) return a.action < b.action;
        return a.target.key() < b.target.key();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Weak transitions.

namespace {

std::string fingerprinted_key(const Configuration& c) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "\x1e%016llx",
                  static_cast<unsigned long long>(state_fingerprint(c.state)));
    return c.term_key + buf;
}

} // namespace

const std::vector<Transition>* WeakCache::find_steps(const Configuration& c) const {
    auto range = steps_.equal_range(fingerprinted_key(c));
    for (auto it = range.first; it != range.second; ++it)
        if (states_equal(it->second.state, c.state)) return &it->second.transitions;
    return nullptr;
}

void WeakCache::store_steps(const Configuration& c, std::vector<Transition> ts) {
    steps_.emplace(fingerprinted_key(c), StepEntry{c.state, std::move(ts)});
}

const std::vector<WeakResult>* WeakCache::find_closure(const Configuration& c) const {
    auto range = closures_.equal_range(fingerprinted_key(c));
    for (auto it = range.first; it != range.second; ++it)
        if (states_equal(it->second.state, c.state)) return &it->second.results;
    return nullptr;
}

void WeakCache::store_closure(const Configuration& c, std::vector<WeakResult> rs) {
    closures_.emplace(fingerprinted_key(c), ClosureEntry{c.state, std::move(rs)});
}

namespace {

struct WeakCtx {
    const Program& prog;
    const WeakOptions& opts;
    WeakStats* stats;

    void budget_hit() {
        if (stats) stats->budget_hit = true;
    }
    void cap_hit() {
        if (stats) stats->cap_hit = true;
    }

    const std::vector<Transition>& steps(const Configuration& c, std::vector<Transition>& scratch) {
        if (opts.cache) {
            if (const auto* hit = opts.cache->find_steps(c)) return *hit;
            opts.cache->store_steps(c, step(prog, c));
            return *opts.cache->find_steps(c);
        }
        scratch = step(prog, c);
        return scratch;
    }
};

void dedup_weak(std::vector<WeakResult>& items) {
    std::vector<WeakResult> out;
    for (auto& it : items) {
        bool found = false;
        for (auto& have : out) {
            if (distributions_equal(have.dist, it.dist)) {
                have.depth = std::min(have.depth, it.depth);
                found = true;
                break;
            }
        }
        if (!found) out.push_back(std::move(it));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const WeakResult& a, const WeakResult& b) { return a.depth < b.depth; });
    items = std::move(out);
}

// `complete` reports whether the enumeration finished without any budget,
// cycle, or cap truncation; only complete closures are context-free and may be
// memoized.
std::vector<WeakResult> closure_config(WeakCtx& cx, const Configuration& c, int budget,
                                       std::vector<const Configuration*>& path, bool& complete) {
    if (cx.opts.cache) {
        if (const auto* hit = cx.opts.cache->find_closure(c)) {
            std::vector<WeakResult> out;
            bool cut = false;
            for (const auto& r : *hit) {
                if (r.depth <= budget)
                    out.push_back(r);
                else
                    cut = true;
            }
            if (cut) {
                cx.budget_hit();
                complete = false;
            }
            return out;
        }
    }

    std::vector<WeakResult> out;
    out.push_back({Distribution::point(c), 0});
    for (const auto* anc : path) {
        if (configs_equal(*anc, c)) { // tau cycle: do not re-expand
            complete = false;
            return out;
        }
    }

    std::vector<Transition> scratch;
    const auto& ts = cx.steps(c, scratch);
    std::vector<const Distribution*> taus;
    for (const auto& tr : ts)
        if (tr.action.is_tau()) taus.push_back(&tr.target);
    if (taus.empty()) {
        if (cx.opts.cache) cx.opts.cache->store_closure(c, out);
        return out;
    }
    if (budget <= 0) {
        cx.budget_hit();
        complete = false;
        return out;
    }

    bool subtree_complete = true;
    path.push_back(&c);
    for (const Distribution* mup : taus) {
        const Distribution& mu = *mup;
        std::vector<std::vector<WeakResult>> branches;
        branches.reserve(mu.size());
        for (const auto& e : mu.entries()) {
            bool child_complete = true;
            branches.push_back(closure_config(cx, e.config, budget - 1, path, child_complete));
            subtree_complete = subtree_complete && child_complete;
        }

        std::vector<std::size_t> idx(branches.size(), 0);
        for (;;) {
            std::vector<std::pair<double, Distribution>> parts;
            int depth = 0;
            for (std::size_t i = 0; i < branches.size(); ++i) {
                parts.emplace_back(mu.entries()[i].prob, branches[i][idx[i]].dist);
                depth = std::max(depth, branches[i][idx[i]].depth);
            }
            out.push_back({combine(parts), depth + 1});
            if (out.size() > cx.opts.max_results) {
                cx.cap_hit();
                subtree_complete = false;
                break;
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == branches[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
        if (out.size() > cx.opts.max_results) break;
    }
    path.pop_back();
    dedup_weak(out);
    if (subtree_complete) {
        if (cx.opts.cache) cx.opts.cache->store_closure(c, out);
    } else {
        complete = false;
    }
    return out;
}

std::vector<WeakResult> closure_dist(WeakCtx& cx, const Distribution& mu) {
    std::vector<std::vector<WeakResult>> pointwise;
    pointwise.reserve(mu.size());
    std::vector<const Configuration*> path;
    for (const auto& e : mu.entries()) {
        bool complete = true;
        pointwise.push_back(closure_config(cx, e.config, cx.opts.budget, path, complete));
    }

    std::vector<WeakResult> out;
    std::vector<std::size_t> idx(pointwise.size(), 0);
    if (pointwise.empty()) return out;
    for (;;) {
        std::vector<std::pair<double, Distribution>> parts;
        int depth = 0;
        for (std::size_t i = 0; i < pointwise.size(); ++i) {
            parts.emplace_back(mu.entries()[i].prob, pointwise[i][idx[i]].dist);
            depth = std::max(depth, pointwise[i][idx[i]].depth);
        }
        out.push_back({combine(parts), depth});
        if (out.size() > cx.opts.max_results) {
            cx.cap_hit();
            break;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pointwise[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    dedup_weak(out);
    return out;
}

} // namespace

std::vector<WeakResult> weak_closure(const Program& prog, const Distribution& mu,
                                     const WeakOptions& opts, WeakStats* stats) {
    WeakCtx cx{prog, opts, stats};
    return closure_dist(cx, mu);
}

std::vector<Distribution> lift_step(const Program& prog, const Distribution& mu, const Action& alpha,
                                    const WeakOptions& opts, WeakStats* stats) {
    WeakCtx cx{prog, opts, stats};
    std::vector<std::vector<Distribution>> pointwise;
    pointwise.reserve(mu.size());
    for (const auto& e : mu.entries()) {
        std::vector<Distribution> succs;
        std::vector<Transition> scratch;
        for (const auto& tr : cx.steps(e.config, scratch))
            if (tr.action == alpha) succs.push_back(tr.target);
        if (succs.empty()) return {}; // lifting requires every support point to move
        pointwise.push_back(std::move(succs));
    }

    std::vector<Distribution> out;
    std::vector<std::size_t> idx(pointwise.size(), 0);
    if (pointwise.empty()) return out;
    for (;;) {
        std::vector<std::pair<double, Distribution>> parts;
        for (std::size_t i = 0; i < pointwise.size(); ++i)
            parts.emplace_back(mu.entries()[i].prob, pointwise[i][idx[i]]);
        Distribution combined = combine(parts);
        bool dup = false;
        for (const auto& have : out)
            if (distributions_equal(have, combined)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(combined));
        if (out.size() > opts.max_results) {
            if (stats) stats->cap_hit = true;
            break;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pointwise[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

std::vector<WeakResult> weak_then_step(const Program& prog, const Distribution& mu,
                                       const Action& alpha, const WeakOptions& opts,
                                       WeakStats* stats) {
    std::vector<WeakResult> out;
    for (const auto& w : weak_closure(prog, mu, opts, stats)) {
        for (auto& nu : lift_step(prog, w.dist, alpha, opts, stats))
            out.push_back({std::move(nu), w.depth});
    }
    dedup_weak(out);
    return out;
}

std::vector<WeakResult> weak_strict_transition(const Program& prog, const Distribution& mu,
                                               const Action& alpha, const WeakOptions& opts,
                                               WeakStats* stats) {
    std::vector<WeakResult> out;
    for (const auto& w1 : weak_then_step(prog, mu, alpha, opts, stats)) {
        for (const auto& w2 : weak_closure(prog, w1.dist, opts, stats))
            out.push_back({w2.dist, w1.depth + w2.depth + 1});
    }
    dedup_weak(out);
    return out;
}

std::vector<WeakResult> weak_hat_transition(const Program& prog, const Distribution& mu,
                                            const Action& alpha, const WeakOptions& opts,
                                            WeakStats* stats) {
    if (alpha.is_tau()) return weak_closure(prog, mu, opts, stats);
    return weak_strict_transition(prog, mu, alpha, opts, stats);
}

std::vector<WeakResult> weak_s_transition(const Program& prog, const Distribution& mu,
                                          const std::vector<Action>& s, const WeakOptions& opts,
                                          WeakStats* stats) {
    for (const auto& a : s)
        if (a.is_tau()) throw QccsError("weak s-transition sequences must not contain tau");
    std::vector<WeakResult> frontier = weak_closure(prog, mu, opts, stats);
    for (const auto& alpha : s) {
        std::vector<WeakResult> next;
        for (const auto& w : frontier) {
            for (auto& stepped : lift_step(prog, w.dist, alpha, opts, stats)) {
                for (const auto& closed : weak_closure(prog, stepped, opts, stats))
                    next.push_back({closed.dist, w.depth + closed.depth});
            }
        }
        dedup_weak(next);
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return frontier;
}

} // namespace qccs
