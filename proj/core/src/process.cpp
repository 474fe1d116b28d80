// SPDX-License-Identifier: Apache-2.0
#include "qccs/process.hpp"

#include <algorithm>
#include <sstream>

namespace qccs {

std::string Diagnostic::str(const std::string& file) const {
    std::ostringstream os;
    if (!file.empty()) os << file << ":";
    if (line > 0) os << line << ":" << col << ":";
    os << (severity == Severity::Error ? " error: " : " warning: ") << message;
    if (!rule.empty()) os << " [" << rule << "]";
    if (!path.empty()) os << " (at " << path << ")";
    return os.str();
}

bool has_errors(const std::vector<Diagnostic>& ds) {
    return std::any_of(ds.begin(), ds.end(),
                       [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

std::string Relabeling::apply(const std::string& chan) const {
    for (const auto& [from, to] : table)
        if (from == chan) return to;
    return chan;
}

bool Relabeling::is_injective() const {
    std::set<std::string> domain, image;
    for (const auto& [from, to] : table) {
        if (!domain.insert(from).second) return false;
        if (!image.insert(to).second) return false;
    }
    return true;
}

std::string Relabeling::str() const {
    std::string out;
    for (const auto& [from, to] : table) {
        if (!out.empty()) out += ",";
        out += to + "/" + from;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Construction with cached qv / fv.

namespace {

std::shared_ptr<ProcessTerm> make(TermKind k) {
    auto t = std::make_shared<ProcessTerm>();
    t->kind = k;
    return t;
}

std::set<std::string> set_union(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> r = a;
    r.insert(b.begin(), b.end());
    return r;
}

} // namespace

TermPtr ProcessTerm::nil() {
    static const TermPtr n = make(TermKind::Nil);
    return n;
}

TermPtr ProcessTerm::constant(std::string name, std::vector<std::string> actuals) {
    auto t = make(TermKind::Constant);
    t->name = std::move(name);
    t->wires = std::move(actuals);
    t->qv.insert(t->wires.begin(), t->wires.end());
    return t;
}

TermPtr ProcessTerm::tau(TermPtr cont) {
    auto t = make(TermKind::Tau);
    t->qv = cont->qv;
    t->fv = cont->fv;
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::c_input(std::string chan, std::string var, TermPtr cont) {
    auto t = make(TermKind::ClassicalInput);
    t->name = std::move(chan);
    t->cvar = std::move(var);
    t->qv = cont->qv;
    t->fv = cont->fv;
    t->fv.erase(t->cvar);
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::c_output(std::string chan, ExprPtr value, TermPtr cont) {
    auto t = make(TermKind::ClassicalOutput);
    t->name = std::move(chan);
    t->expr = std::move(value);
    t->qv = cont->qv;
    t->fv = set_union(cont->fv, expr_free_vars(t->expr));
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::q_input(std::string chan, std::vector<std::string> vars, TermPtr cont) {
    auto t = make(TermKind::QuantumInput);
    t->name = std::move(chan);
    t->wires = std::move(vars);
    t->qv = cont->qv;
    for (const auto& w : t->wires) t->qv.erase(w);
    t->fv = cont->fv;
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::q_output(std::string chan, std::vector<std::string> vars, TermPtr cont) {
    auto t = make(TermKind::QuantumOutput);
    t->name = std::move(chan);
    t->wires = std::move(vars);
    t->qv = cont->qv;
    t->qv.insert(t->wires.begin(), t->wires.end());
    t->fv = cont->fv;
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::super_op(std::string op, std::vector<std::string> targets, TermPtr cont) {
    auto t = make(TermKind::SuperOp);
    t->name = std::move(op);
    t->wires = std::move(targets);
    t->qv = cont->qv;
    t->qv.insert(t->wires.begin(), t->wires.end());
    t->fv = cont->fv;
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::measurement(std::string obs, std::vector<std::string> targets, std::string var,
                                 TermPtr cont) {
    auto t = make(TermKind::Measure);
    t->name = std::move(obs);
    t->wires = std::move(targets);
    t->cvar = std::move(var);
    t->qv = cont->qv;
    t->qv.insert(t->wires.begin(), t->wires.end());
    t->fv = cont->fv;
    t->fv.erase(t->cvar);
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::sum(TermPtr l, TermPtr r) {
    auto t = make(TermKind::Sum);
    t->qv = set_union(l->qv, r->qv);
    t->fv = set_union(l->fv, r->fv);
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

TermPtr ProcessTerm::parallel(TermPtr l, TermPtr r) {
    auto t = make(TermKind::Parallel);
    t->qv = set_union(l->qv, r->qv);
    t->fv = set_union(l->fv, r->fv);
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

TermPtr ProcessTerm::relabeled(TermPtr cont, Relabeling f) {
    auto t = make(TermKind::Relabel);
    // normalized table: identity entries dropped, sorted for stable rendering
    f.table.erase(std::remove_if(f.table.begin(), f.table.end(),
                                 [](const auto& p) { return p.first == p.second; }),
                  f.table.end());
    std::sort(f.table.begin(), f.table.end());
    t->relabel = std::move(f);
    t->qv = cont->qv;
    t->fv = cont->fv;
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::restricted(TermPtr cont, std::set<std::string> chans) {
    auto t = make(TermKind::Restrict);
    t->restriction = std::move(chans);
    t->qv = cont->qv;
    t->fv = cont->fv;
    t->cont = std::move(cont);
    return t;
}

TermPtr ProcessTerm::guarded(ExprPtr cond, TermPtr cont) {
    auto t = make(TermKind::If);
    t->expr = std::move(cond);
    t->qv = cont->qv;
    t->fv = set_union(cont->fv, expr_free_vars(t->expr));
    t->cont = std::move(cont);
    return t;
}

// ---------------------------------------------------------------------------
// Substitution.

TermPtr substitute_classical(const TermPtr& t, const std::string& var, const Rational& v) {
    switch (t->kind) {
    case TermKind::Nil:
    case TermKind::Constant: return t;
    case TermKind::Tau: {
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::tau(c);
    }
    case TermKind::ClassicalInput: {
        if (t->cvar == var) return t; // shadowed
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::c_input(t->name, t->cvar, c);
    }
    case TermKind::ClassicalOutput: {
        auto e = subst_expr(t->expr, var, v);
        auto c = substitute_classical(t->cont, var, v);
        return (e == t->expr && c == t->cont) ? t : ProcessTerm::c_output(t->name, e, c);
    }
    case TermKind::QuantumInput: {
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::q_input(t->name, t->wires, c);
    }
    case TermKind::QuantumOutput: {
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::q_output(t->name, t->wires, c);
    }
    case TermKind::SuperOp: {
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::super_op(t->name, t->wires, c);
    }
    case TermKind::Measure: {
        if (t->cvar == var) return t; // shadowed
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::measurement(t->name, t->wires, t->cvar, c);
    }
    case TermKind::Sum: {
        auto l = substitute_classical(t->left, var, v);
        auto r = substitute_classical(t->right, var, v);
        return (l == t->left && r == t->right) ? t : ProcessTerm::sum(l, r);
    }
    case TermKind::Parallel: {
        auto l = substitute_classical(t->left, var, v);
        auto r = substitute_classical(t->right, var, v);
        return (l == t->left && r == t->right) ? t : ProcessTerm::parallel(l, r);
    }
    case TermKind::Relabel: {
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::relabeled(c, t->relabel);
    }
    case TermKind::Restrict: {
        auto c = substitute_classical(t->cont, var, v);
        return c == t->cont ? t : ProcessTerm::restricted(c, t->restriction);
    }
    case TermKind::If: {
        auto e = subst_expr(t->expr, var, v);
        auto c = substitute_classical(t->cont, var, v);
        return (e == t->expr && c == t->cont) ? t : ProcessTerm::guarded(e, c);
    }
    }
    throw QccsError("unreachable term kind");
}

namespace {

void collect_names(const TermPtr& t, std::set<std::string>& names) {
    for (const auto& w : t->wires) names.insert(w);
    if (t->cont) collect_names(t->cont, names);
    if (t->left) collect_names(t->left, names);
    if (t->right) collect_names(t->right, names);
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
    for (int i = 1;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (used.insert(cand).second) return cand;
    }
}

using Renames = std::map<std::string, std::string>;

std::string rename_of(const Renames& rn, const std::string& w) {
    auto it = rn.find(w);
    return it == rn.end() ? w : it->second;
}

std::vector<std::string> rename_all(const Renames& rn, const std::vector<std::string>& ws) {
    std::vector<std::string> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back(rename_of(rn, w));
    return out;
}

TermPtr subst_q(const TermPtr& t, const Renames& rn, std::set<std::string>& used) {
    if (rn.empty()) return t;
    // a name without free occurrences cannot be renamed anywhere below
    bool relevant = false;
    for (const auto& [from, to] : rn) {
        if (t->qv.count(from)) {
            relevant = true;
            break;
        }
    }
    if (!relevant) return t;
    switch (t->kind) {
    case TermKind::Nil: return t;
    case TermKind::Constant: return ProcessTerm::constant(t->name, rename_all(rn, t->wires));
    case TermKind::Tau: return ProcessTerm::tau(subst_q(t->cont, rn, used));
    case TermKind::ClassicalInput:
        return ProcessTerm::c_input(t->name, t->cvar, subst_q(t->cont, rn, used));
    case TermKind::ClassicalOutput:
        return ProcessTerm::c_output(t->name, t->expr, subst_q(t->cont, rn, used));
    case TermKind::QuantumInput: {
        // drop entries shadowed by the binder
        Renames inner;
        for (const auto& [from, to] : rn) {
            if (std::find(t->wires.begin(), t->wires.end(), from) == t->wires.end())
                inner.emplace(from, to);
        }
        // alpha-rename binder components that would capture a substituted name
        std::vector<std::string> binders = t->wires;
        TermPtr body = t->cont;
        bool needs_alpha = false;
        for (const auto& b : binders) {
            for (const auto& [from, to] : inner) {
                if (to == b && body->qv.count(from)) {
                    needs_alpha = true;
                    break;
                }
            }
        }
        if (needs_alpha) {
            Renames alpha;
            for (auto& b : binders) {
                bool captured = false;
                for (const auto& [from, to] : inner)
                    if (to == b && body->qv.count(from)) captured = true;
                if (captured) {
                    std::string nb = fresh_name(b, used);
                    alpha.emplace(b, nb);
                    b = nb;
                }
            }
            body = subst_q(body, alpha, used);
        }
        return ProcessTerm::q_input(t->name, binders, inner.empty() ? body : subst_q(body, inner, used));
    }
    case TermKind::QuantumOutput:
        return ProcessTerm::q_output(t->name, rename_all(rn, t->wires), subst_q(t->cont, rn, used));
    case TermKind::SuperOp:
        return ProcessTerm::super_op(t->name, rename_all(rn, t->wires), subst_q(t->cont, rn, used));
    case TermKind::Measure:
        return ProcessTerm::measurement(t->name, rename_all(rn, t->wires), t->cvar,
                                        subst_q(t->cont, rn, used));
    case TermKind::Sum:
        return ProcessTerm::sum(subst_q(t->left, rn, used), subst_q(t->right, rn, used));
    case TermKind::Parallel:
        return ProcessTerm::parallel(subst_q(t->left, rn, used), subst_q(t->right, rn, used));
    case TermKind::Relabel: return ProcessTerm::relabeled(subst_q(t->cont, rn, used), t->relabel);
    case TermKind::Restrict:
        return ProcessTerm::restricted(subst_q(t->cont, rn, used), t->restriction);
    case TermKind::If: return ProcessTerm::guarded(t->expr, subst_q(t->cont, rn, used));
    }
    throw QccsError("unreachable term kind");
}

} // namespace

TermPtr substitute_quantum(const TermPtr& t, const std::map<std::string, std::string>& renames) {
    std::set<std::string> used;
    collect_names(t, used);
    for (const auto& [from, to] : renames) {
        used.insert(from);
        used.insert(to);
    }
    return subst_q(t, renames, used);
}

TermPtr substitute_quantum(const TermPtr& t, const std::string& from, const std::string& to) {
    return substitute_quantum(t, std::map<std::string, std::string>{{from, to}});
}

// ---------------------------------------------------------------------------
// Alpha-canonical renaming: bound quantum variables become "q?k" and bound
// classical variables "x?k" in traversal order. '?' cannot occur in source
// identifiers, so canonical names never collide with free names.

namespace {

struct CanonState {
    int qcount = 0;
    int xcount = 0;
};

TermPtr canon(const TermPtr& t, CanonState& st, const Renames& qenv,
              const std::map<std::string, std::string>& xenv);

ExprPtr canon_expr(const ExprPtr& e, const std::map<std::string, std::string>& xenv) {
    if (!e) return e;
    switch (e->kind) {
    case ExprKind::Lit:
    case ExprKind::BoolLit: return e;
    case ExprKind::Var: {
        auto it = xenv.find(e->var);
        return it == xenv.end() ? e : Expr::variable(it->second);
    }
    case ExprKind::Not: return Expr::negation(canon_expr(e->lhs, xenv));
    default: return Expr::binary(e->kind, canon_expr(e->lhs, xenv), canon_expr(e->rhs, xenv));
    }
}

TermPtr canon(const TermPtr& t, CanonState& st, const Renames& qenv,
              const std::map<std::string, std::string>& xenv) {
    auto q = [&](const std::string& w) { return rename_of(qenv, w); };
    auto qs = [&](const std::vector<std::string>& ws) {
        std::vector<std::string> out;
        out.reserve(ws.size());
        for (const auto& w : ws) out.push_back(q(w));
        return out;
    };
    switch (t->kind) {
    case TermKind::Nil: return t;
    case TermKind::Constant: return ProcessTerm::constant(t->name, qs(t->wires));
    case TermKind::Tau: return ProcessTerm::tau(canon(t->cont, st, qenv, xenv));
    case TermKind::ClassicalInput: {
        std::string nv = "x?" + std::to_string(st.xcount++);
        auto xe = xenv;
        xe[t->cvar] = nv;
        return ProcessTerm::c_input(t->name, nv, canon(t->cont, st, qenv, xe));
    }
    case TermKind::ClassicalOutput:
        return ProcessTerm::c_output(t->name, canon_expr(t->expr, xenv), canon(t->cont, st, qenv, xenv));
    case TermKind::QuantumInput: {
        auto qe = qenv;
        std::vector<std::string> binders;
        for (const auto& b : t->wires) {
            std::string nb = "q?" + std::to_string(st.qcount++);
            qe[b] = nb;
            binders.push_back(nb);
        }
        return ProcessTerm::q_input(t->name, binders, canon(t->cont, st, qe, xenv));
    }
    case TermKind::QuantumOutput:
        return ProcessTerm::q_output(t->name, qs(t->wires), canon(t->cont, st, qenv, xenv));
    case TermKind::SuperOp:
        return ProcessTerm::super_op(t->name, qs(t->wires), canon(t->cont, st, qenv, xenv));
    case TermKind::Measure: {
        std::string nv = "x?" + std::to_string(st.xcount++);
        auto xe = xenv;
        xe[t->cvar] = nv;
        return ProcessTerm::measurement(t->name, qs(t->wires), nv, canon(t->cont, st, qenv, xe));
    }
    case TermKind::Sum:
        return ProcessTerm::sum(canon(t->left, st, qenv, xenv), canon(t->right, st, qenv, xenv));
    case TermKind::Parallel:
        return ProcessTerm::parallel(canon(t->left, st, qenv, xenv), canon(t->right, st, qenv, xenv));
    case TermKind::Relabel: return ProcessTerm::relabeled(canon(t->cont, st, qenv, xenv), t->relabel);
    case TermKind::Restrict:
        return ProcessTerm::restricted(canon(t->cont, st, qenv, xenv), t->restriction);
    case TermKind::If:
        return ProcessTerm::guarded(canon_expr(t->expr, xenv), canon(t->cont, st, qenv, xenv));
    }
    throw QccsError("unreachable term kind");
}

} // namespace

TermPtr alpha_canonical(const TermPtr& t) {
    CanonState st;
    return canon(t, st, {}, {});
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
    return render_term(alpha_canonical(a)) == render_term(alpha_canonical(b));
}

// ---------------------------------------------------------------------------
// Rendering. Levels: sum 0 < parallel 1 < postfix 2 < prefix 3 < atom 4.

namespace {

int term_level(const TermPtr& t) {
    switch (t->kind) {
    case TermKind::Sum: return 0;
    case TermKind::Parallel: return 1;
    case TermKind::Relabel:
    case TermKind::Restrict: return 2;
    case TermKind::Nil:
    case TermKind::Constant: return 4;
    default: return 3;
    }
}

std::string join_wires(const std::vector<std::string>& ws) {
    std::string out;
    for (const auto& w : ws) {
        if (!out.empty()) out += ",";
        out += w;
    }
    return out;
}

std::string render_payload(const ExprPtr& e) {
    if (e->kind == ExprKind::Lit && e->lit >= Rational(0)) return render_expr(e);
    if (e->kind == ExprKind::Var) return render_expr(e);
    return "(" + render_expr(e) + ")";
}

std::string render_at(const TermPtr& t, int min_level) {
    std::string body;
    switch (t->kind) {
    case TermKind::Nil: body = "nil"; break;
    case TermKind::Constant:
        body = t->wires.empty() ? t->name : t->name + "(" + join_wires(t->wires) + ")";
        break;
    case TermKind::Tau: body = "tau." + render_at(t->cont, 3); break;
    case TermKind::ClassicalInput:
        body = t->name + "?" + t->cvar + "." + render_at(t->cont, 3);
        break;
    case TermKind::ClassicalOutput:
        body = t->name + "!" + render_payload(t->expr) + "." + render_at(t->cont, 3);
        break;
    case TermKind::QuantumInput:
        body = t->name + "?" +
               (t->wires.size() == 1 ? t->wires[0] : "(" + join_wires(t->wires) + ")") + "." +
               render_at(t->cont, 3);
        break;
    case TermKind::QuantumOutput:
        body = t->name + "!" +
               (t->wires.size() == 1 ? t->wires[0] : "(" + join_wires(t->wires) + ")") + "." +
               render_at(t->cont, 3);
        break;
    case TermKind::SuperOp:
        body = t->name + "[" + join_wires(t->wires) + "]." + render_at(t->cont, 3);
        break;
    case TermKind::Measure:
        body = t->name + "[" + join_wires(t->wires) + ";" + t->cvar + "]." + render_at(t->cont, 3);
        break;
    case TermKind::Sum: body = render_at(t->left, 0) + " + " + render_at(t->right, 1); break;
    case TermKind::Parallel: body = render_at(t->left, 1) + " || " + render_at(t->right, 2); break;
    case TermKind::Relabel: body = render_at(t->cont, 2) + "[" + t->relabel.str() + "]"; break;
    case TermKind::Restrict: {
        std::string chans;
        for (const auto& c : t->restriction) {
            if (!chans.empty()) chans += ",";
            chans += c;
        }
        body = render_at(t->cont, 2) + "\\{" + chans + "}";
        break;
    }
    case TermKind::If:
        body = "if " + render_expr(t->expr) + " then " + render_at(t->cont, 3);
        break;
    }
    return term_level(t) < min_level ? "(" + body + ")" : body;
}

} // namespace

std::string render_term(const TermPtr& t) { return render_at(t, 0); }

// ---------------------------------------------------------------------------
// Program helpers and well-formedness.

std::size_t Program::capacity(const std::string& qchan) const {
    auto it = quantum_channels.find(qchan);
    if (it == quantum_channels.end()) throw QccsError("unknown quantum channel: " + qchan);
    return it->second;
}

const std::vector<Rational>& Program::domain(const std::string& cchan) const {
    auto it = classical_channels.find(cchan);
    if (it == classical_channels.end()) throw QccsError("unknown classical channel: " + cchan);
    return it->second;
}

namespace {

struct WfContext {
    const Program& prog;
    std::vector<Diagnostic>& out;

    void report(const std::string& path, const std::string& msg, const std::string& rule = "") {
        Diagnostic d;
        d.message = msg;
        d.rule = rule;
        d.path = path;
        out.push_back(std::move(d));
    }
};

bool distinct(const std::vector<std::string>& ws) {
    std::set<std::string> seen(ws.begin(), ws.end());
    return seen.size() == ws.size();
}

void check_term(WfContext& cx, const TermPtr& t, const std::string& path) {
    const Program& prog = cx.prog;
    switch (t->kind) {
    case TermKind::Nil: return;
    case TermKind::Constant: {
        auto it = prog.constants.find(t->name);
        if (it == prog.constants.end()) {
            cx.report(path, "unknown process constant '" + t->name + "'", "declaration");
        } else if (it->second.params.size() != t->wires.size()) {
            cx.report(path,
                      "constant '" + t->name + "' expects " +
                          std::to_string(it->second.params.size()) + " quantum arguments, got " +
                          std::to_string(t->wires.size()),
                      "arity");
        }
        if (!distinct(t->wires))
            cx.report(path, "duplicate quantum arguments to '" + t->name + "'", "formation rule 2");
        return;
    }
    case TermKind::Tau: check_term(cx, t->cont, path + "/tau"); return;
    case TermKind::ClassicalInput:
        if (!prog.is_classical_channel(t->name))
            cx.report(path, "'" + t->name + "' is not a declared classical channel", "declaration");
        check_term(cx, t->cont, path + "/" + t->name + "?");
        return;
    case TermKind::ClassicalOutput:
        if (!prog.is_classical_channel(t->name))
            cx.report(path, "'" + t->name + "' is not a declared classical channel", "declaration");
        check_term(cx, t->cont, path + "/" + t->name + "!");
        return;
    case TermKind::QuantumInput: {
        if (!prog.is_quantum_channel(t->name)) {
            cx.report(path, "'" + t->name + "' is not a declared quantum channel", "declaration");
        } else if (prog.capacity(t->name) != t->wires.size()) {
            cx.report(path,
                      "channel '" + t->name + "' carries " + std::to_string(prog.capacity(t->name)) +
                          " qubit(s), input binds " + std::to_string(t->wires.size()),
                      "arity");
        }
        if (!distinct(t->wires))
            cx.report(path, "duplicate bound wires in quantum input", "formation rule 6");
        check_term(cx, t->cont, path + "/" + t->name + "?");
        return;
    }
    case TermKind::QuantumOutput: {
        if (!prog.is_quantum_channel(t->name)) {
            cx.report(path, "'" + t->name + "' is not a declared quantum channel", "declaration");
        } else if (prog.capacity(t->name) != t->wires.size()) {
            cx.report(path,
                      "channel '" + t->name + "' carries " + std::to_string(prog.capacity(t->name)) +
                          " qubit(s), output sends " + std::to_string(t->wires.size()),
                      "arity");
        }
        if (!distinct(t->wires))
            cx.report(path, "duplicate wires in quantum output", "formation rule 7");
        for (const auto& w : t->wires) {
            if (t->cont->qv.count(w))
                cx.report(path, "output wire '" + w + "' still free in the continuation",
                          "formation rule 7");
        }
        check_term(cx, t->cont, path + "/" + t->name + "!");
        return;
    }
    case TermKind::SuperOp: {
        auto it = prog.superops.find(t->name);
        if (it == prog.superops.end()) {
            cx.report(path, "unknown super-operator '" + t->name + "'", "declaration");
        } else {
            if (it->second.arity() != t->wires.size())
                cx.report(path, "super-operator '" + t->name + "' has arity " +
                                    std::to_string(it->second.arity()) + ", applied to " +
                                    std::to_string(t->wires.size()) + " wire(s)",
                          "arity");
            if (!it->second.trace_preserving())
                cx.report(path, "super-operator '" + t->name + "' used as a prefix must be trace-preserving",
                          "formation rule 8");
        }
        if (!distinct(t->wires)) cx.report(path, "duplicate target wires", "formation rule 8");
        check_term(cx, t->cont, path + "/" + t->name + "[]");
        return;
    }
    case TermKind::Measure: {
        auto it = prog.observables.find(t->name);
        if (it == prog.observables.end()) {
            cx.report(path, "unknown observable '" + t->name + "'", "declaration");
        } else if (it->second.arity() != t->wires.size()) {
            cx.report(path, "observable '" + t->name + "' has arity " +
                                std::to_string(it->second.arity()) + ", applied to " +
                                std::to_string(t->wires.size()) + " wire(s)",
                      "arity");
        }
        if (!distinct(t->wires)) cx.report(path, "duplicate target wires", "formation rule 9");
        check_term(cx, t->cont, path + "/" + t->name + "[;]");
        return;
    }
    case TermKind::Sum:
        check_term(cx, t->left, path + "/sum.L");
        check_term(cx, t->right, path + "/sum.R");
        return;
    case TermKind::Parallel: {
        std::vector<std::string> shared;
        std::set_intersection(t->left->qv.begin(), t->left->qv.end(), t->right->qv.begin(),
                              t->right->qv.end(), std::back_inserter(shared));
        if (!shared.empty())
            cx.report(path, "parallel components share quantum variable '" + shared.front() + "'",
                      "formation rule 11");
        check_term(cx, t->left, path + "/par.L");
        check_term(cx, t->right, path + "/par.R");
        return;
    }
    case TermKind::Relabel: {
        if (!t->relabel.is_injective())
            cx.report(path, "relabeling function is not injective", "formation rule 12");
        // an image must not merge with a channel the component actually uses
        // and the table leaves fixed
        std::set<std::string> domain;
        for (const auto& [from, to] : t->relabel.table) domain.insert(from);
        std::set<std::string> used = free_channels(t->cont, prog);
        for (const auto& [from, to] : t->relabel.table) {
            if (used.count(to) && !domain.count(to))
                cx.report(path,
                          "relabeling merges '" + from + "' with channel '" + to +
                              "' used by the component",
                          "formation rule 12");
        }
        for (const auto& [from, to] : t->relabel.table) {
            bool fc = prog.is_classical_channel(from), fq = prog.is_quantum_channel(from);
            bool tc = prog.is_classical_channel(to), tq = prog.is_quantum_channel(to);
            if (!fc && !fq)
                cx.report(path, "relabeling of undeclared channel '" + from + "'", "declaration");
            else if (!tc && !tq)
                cx.report(path, "relabeling onto undeclared channel '" + to + "'", "declaration");
            else if (fc != tc)
                cx.report(path, "relabeling must map classical channels to classical and quantum to quantum",
                          "formation rule 12");
            else if (fq && prog.capacity(from) != prog.capacity(to))
                cx.report(path, "relabeling changes quantum channel capacity ('" + from + "' -> '" +
                                    to + "')",
                          "formation rule 12");
        }
        check_term(cx, t->cont, path + "/relabel");
        return;
    }
    case TermKind::Restrict: {
        for (const auto& c : t->restriction)
            if (!prog.is_classical_channel(c) && !prog.is_quantum_channel(c))
                cx.report(path, "restriction of undeclared channel '" + c + "'", "declaration");
        check_term(cx, t->cont, path + "/restrict");
        return;
    }
    case TermKind::If: check_term(cx, t->cont, path + "/if"); return;
    }
}

} // namespace

std::vector<Diagnostic> well_formed(const Program& program) {
    std::vector<Diagnostic> out;
    WfContext cx{program, out};

    for (const auto& [name, domain] : program.classical_channels) {
        if (domain.empty()) cx.report("channel " + name, "empty classical channel domain", "declaration");
    }
    for (const auto& [name, cap] : program.quantum_channels) {
        if (cap == 0) cx.report("qchannel " + name, "quantum channel capacity must be positive", "declaration");
    }
    for (const auto& [name, def] : program.constants) {
        if (!distinct(def.params))
            cx.report("proc " + name, "duplicate formal parameters", "declaration");
        std::set<std::string> params(def.params.begin(), def.params.end());
        for (const auto& w : def.body->qv) {
            if (!params.count(w))
                cx.report("proc " + name,
                          "free quantum variable '" + w + "' of the body is not a formal parameter",
                          "defining equation");
        }
        check_term(cx, def.body, "proc " + name);
    }
    return out;
}

namespace {

void free_channels_rec(const TermPtr& t, const Program& prog, std::set<std::string>& in_progress,
                       std::set<std::string>& out) {
    switch (t->kind) {
    case TermKind::Nil: return;
    case TermKind::Constant: {
        if (in_progress.count(t->name)) return;
        auto it = prog.constants.find(t->name);
        if (it == prog.constants.end()) return;
        in_progress.insert(t->name);
        free_channels_rec(it->second.body, prog, in_progress, out);
        in_progress.erase(t->name);
        return;
    }
    case TermKind::ClassicalInput:
    case TermKind::ClassicalOutput:
    case TermKind::QuantumInput:
    case TermKind::QuantumOutput: {
        out.insert(t->name);
        free_channels_rec(t->cont, prog, in_progress, out);
        return;
    }
    case TermKind::Relabel: {
        std::set<std::string> inner;
        free_channels_rec(t->cont, prog, in_progress, inner);
        for (const auto& c : inner) out.insert(t->relabel.apply(c));
        return;
    }
    case TermKind::Restrict: {
        std::set<std::string> inner;
        free_channels_rec(t->cont, prog, in_progress, inner);
        for (const auto& c : inner)
            if (!t->restriction.count(c)) out.insert(c);
        return;
    }
    case TermKind::Sum:
    case TermKind::Parallel:
        free_channels_rec(t->left, prog, in_progress, out);
        free_channels_rec(t->right, prog, in_progress, out);
        return;
    default:
        if (t->cont) free_channels_rec(t->cont, prog, in_progress, out);
        return;
    }
}

} // namespace

std::set<std::string> free_channels(const TermPtr& t, const Program& program) {
    std::set<std::string> out, in_progress;
    free_channels_rec(t, program, in_progress, out);
    return out;
}

} // namespace qccs
