// SPDX-License-Identifier: Apache-2.0
#include "qccs/expr.hpp"

namespace qccs {

ExprPtr Expr::literal(Rational v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Lit;
    e->lit = v;
    return e;
}

ExprPtr Expr::boolean(bool v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::BoolLit;
    e->blit = v;
    return e;
}

ExprPtr Expr::variable(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->var = std::move(name);
    return e;
}

ExprPtr Expr::binary(ExprKind k, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr Expr::negation(ExprPtr inner) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Not;
    e->lhs = std::move(inner);
    return e;
}

std::string Value::str() const {
    if (is_bool) return b ? "true" : "false";
    return r.str();
}

namespace {

Rational eval_rat(const ExprPtr& e) {
    Value v = eval_expr(e);
    if (v.is_bool) throw QccsError("expected rational, got boolean expression");
    return v.r;
}

bool eval_bool(const ExprPtr& e) {
    Value v = eval_expr(e);
    if (!v.is_bool) throw QccsError("expected boolean, got rational expression");
    return v.b;
}

} // namespace

Value eval_expr(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::Lit: return Value::of(e->lit);
    case ExprKind::BoolLit: return Value::of_bool(e->blit);
    case ExprKind::Var: throw QccsError("free classical variable in evaluation: " + e->var);
    case ExprKind::Add: return Value::of(eval_rat(e->lhs) + eval_rat(e->rhs));
    case ExprKind::Sub: return Value::of(eval_rat(e->lhs) - eval_rat(e->rhs));
    case ExprKind::Mul: return Value::of(eval_rat(e->lhs) * eval_rat(e->rhs));
    case ExprKind::Eq: return Value::of_bool(eval_rat(e->lhs) == eval_rat(e->rhs));
    case ExprKind::Lt: return Value::of_bool(eval_rat(e->lhs) < eval_rat(e->rhs));
    case ExprKind::And: return Value::of_bool(eval_bool(e->lhs) && eval_bool(e->rhs));
    case ExprKind::Or: return Value::of_bool(eval_bool(e->lhs) || eval_bool(e->rhs));
    case ExprKind::Not: return Value::of_bool(!eval_bool(e->lhs));
    }
    throw QccsError("unreachable expression kind");
}

ExprPtr subst_expr(const ExprPtr& e, const std::string& var, const Rational& v) {
    switch (e->kind) {
    case ExprKind::Lit:
    case ExprKind::BoolLit: return e;
    case ExprKind::Var: return e->var == var ? Expr::literal(v) : e;
    case ExprKind::Not: {
        auto l = subst_expr(e->lhs, var, v);
        return l == e->lhs ? e : Expr::negation(l);
    }
    default: {
        auto l = subst_expr(e->lhs, var, v);
        auto r = subst_expr(e->rhs, var, v);
        return (l == e->lhs && r == e->rhs) ? e : Expr::binary(e->kind, l, r);
    }
    }
}

std::set<std::string> expr_free_vars(const ExprPtr& e) {
    std::set<std::string> fv;
    if (!e) return fv;
    if (e->kind == ExprKind::Var) {
        fv.insert(e->var);
        return fv;
    }
    if (e->lhs)
        for (auto& v : expr_free_vars(e->lhs)) fv.insert(v);
    if (e->rhs)
        for (auto& v : expr_free_vars(e->rhs)) fv.insert(v);
    return fv;
}

namespace {

int precedence(ExprKind k) {
    switch (k) {
    case ExprKind::Or: return 1;
    case ExprKind::And: return 2;
    case ExprKind::Eq:
    case ExprKind::Lt: return 3;
    case ExprKind::Add:
    case ExprKind::Sub: return 4;
    case ExprKind::Mul: return 5;
    default: return 6;
    }
}

std::string render_prec(const ExprPtr& e, int parent) {
    auto wrap = [&](const std::string& s, int prec) {
        return prec < parent ? "(" + s + ")" : s;
    };
    switch (e->kind) {
    case ExprKind::Lit: {
        std::string s = e->lit.str();
        if (!s.empty() && s[0] == '-') return "(" + s + ")";
        return s;
    }
    case ExprKind::BoolLit: return e->blit ? "true" : "false";
    case ExprKind::Var: return e->var;
    case ExprKind::Not: return "!" + render_prec(e->lhs, 6);
    default: {
        const char* op = "?";
        switch (e->kind) {
        case ExprKind::Add: op = " + "; break;
        case ExprKind::Sub: op = " - "; break;
        case ExprKind::Mul: op = " * "; break;
        case ExprKind::Eq: op = " = "; break;
        case ExprKind::Lt: op = " < "; break;
        case ExprKind::And: op = " && "; break;
        case ExprKind::Or: op = " || "; break;
        default: break;
        }
        int p = precedence(e->kind);
        return wrap(render_prec(e->lhs, p) + op + render_prec(e->rhs, p + 1), p);
    }
    }
}

} // namespace

std::string render_expr(const ExprPtr& e) { return render_prec(e, 0); }

} // namespace qccs
