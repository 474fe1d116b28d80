// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/matrix.hpp"
#include "qccs/rational.hpp"

#include <memory>
#include <set>
#include <string>

namespace qccs {

enum class ExprKind { Lit, BoolLit, Var, Add, Sub, Mul, Eq, Lt, And, Or, Not };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Arithmetic over rationals and classical variables, with a boolean layer for
/// guards. Immutable, shared.
struct Expr {
    ExprKind kind;
    Rational lit;
    bool blit = false;
    std::string var;
    ExprPtr lhs, rhs;

    static ExprPtr literal(Rational v);
    static ExprPtr boolean(bool v);
    static ExprPtr variable(std::string name);
    static ExprPtr binary(ExprKind k, ExprPtr l, ExprPtr r);
    static ExprPtr negation(ExprPtr e);
};

/// Value of a closed expression: a rational or a boolean.
struct Value {
    bool is_bool = false;
    bool b = false;
    Rational r;

    static Value of(Rational v) { return Value{false, false, v}; }
    static Value of_bool(bool v) { return Value{true, v, Rational()}; }
    bool operator==(const Value& o) const {
        return is_bool == o.is_bool && (is_bool ? b == o.b : r == o.r);
    }
    std::string str() const;
};

/// Evaluate a closed expression; throws QccsError on free variables or a
/// boolean/rational kind error.
Value eval_expr(const ExprPtr& e);

ExprPtr subst_expr(const ExprPtr& e, const std::string& var, const Rational& v);
std::set<std::string> expr_free_vars(const ExprPtr& e);
std::string render_expr(const ExprPtr& e);

} // namespace qccs
