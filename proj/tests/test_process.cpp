// SPDX-License-Identifier: Apache-2.0
#include "helpers.hpp"

#include <doctest.h>

using namespace qccs;
using namespace qccs::testing;

namespace {

// slow reference recomputation of the free quantum variables, used as the
// oracle against the cached values
std::set<std::string> qv_oracle(const TermPtr& t) {
    std::set<std::string> out;
    switch (t->kind) {
    case TermKind::Nil: return {};
    case TermKind::Constant: return {t->wires.begin(), t->wires.end()};
    case TermKind::QuantumInput: {
        out = qv_oracle(t->cont);
        for (const auto& w : t->wires) out.erase(w);
        return out;
    }
    case TermKind::QuantumOutput:
    case TermKind::SuperOp:
    case TermKind::Measure: {
        out = qv_oracle(t->cont);
        out.insert(t->wires.begin(), t->wires.end());
        return out;
    }
    case TermKind::Sum:
    case TermKind::Parallel: {
        out = qv_oracle(t->left);
        auto r = qv_oracle(t->right);
        out.insert(r.begin(), r.end());
        return out;
    }
    default: return qv_oracle(t->cont);
    }
}

} // namespace

TEST_CASE("free quantum variables follow the formation rules") {
    auto nil = ProcessTerm::nil();
    CHECK(nil->qv.empty());

    auto out = ProcessTerm::q_output("qa", {"q"}, nil);
    CHECK(out->qv == std::set<std::string>{"q"});

    // input binds: qa?q . H[q] . nil has no free quantum variables
    auto inner = ProcessTerm::super_op("H", {"q"}, nil);
    auto inp = ProcessTerm::q_input("qa", {"q"}, inner);
    CHECK(inp->qv.empty());

    auto meas = ProcessTerm::measurement("MZ", {"w"}, "x", nil);
    CHECK(meas->qv == std::set<std::string>{"w"});
}

TEST_CASE("free classical variables: binders and payloads") {
    auto nil = ProcessTerm::nil();
    auto send = ProcessTerm::c_output("c1", Expr::variable("x"), nil);
    CHECK(send->fv == std::set<std::string>{"x"});

    auto recv_send = ProcessTerm::c_input("c1", "x", send);
    CHECK(recv_send->fv.empty());

    auto meas_send = ProcessTerm::measurement("MZ", {"w"}, "x",
                                              ProcessTerm::c_output("c2", Expr::variable("x"), nil));
    CHECK(meas_send->fv.empty());
}

TEST_CASE("classical substitution distributes and respects shadowing") {
    auto nil = ProcessTerm::nil();
    auto send = ProcessTerm::c_output("c1", Expr::variable("x"), nil);
    CHECK(render_term(substitute_classical(send, "x", Rational(3))) == "c1!3.nil");

    auto shadowed = ProcessTerm::c_input("c1", "x", send);
    CHECK(substitute_classical(shadowed, "x", Rational(3)) == shadowed);

    auto guarded = ProcessTerm::guarded(
        Expr::binary(ExprKind::Eq, Expr::variable("x"), Expr::literal(Rational(1))), send);
    auto after = substitute_classical(guarded, "x", Rational(1));
    CHECK(render_term(after) == "if 1 = 1 then c1!1.nil");
}

TEST_CASE("quantum substitution renames free wires and avoids capture") {
    auto nil = ProcessTerm::nil();
    auto body = ProcessTerm::super_op("H", {"q"}, nil);
    CHECK(render_term(substitute_quantum(body, "q", "r")) == "H[r].nil");

    auto bound = ProcessTerm::q_input("qa", {"q"}, body);
    CHECK(substitute_quantum(bound, "q", "r") == bound);

    // (qa?r . CN[r,q] . nil){r/q}: the binder r collides and must be renamed
    auto collide =
        ProcessTerm::q_input("qa", {"r"}, ProcessTerm::super_op("CN", {"r", "q"}, nil));
    auto renamed = substitute_quantum(collide, "q", "r");
    auto expect =
        ProcessTerm::q_input("qa", {"z"}, ProcessTerm::super_op("CN", {"z", "r"}, nil));
    CHECK(alpha_equal(renamed, expect));
    CHECK_FALSE(alpha_equal(renamed, collide));
}

TEST_CASE("cached qv matches the oracle under random substitution") {
    Program prog = fixture_program();
    TermGen gen(prog, 99);
    for (int iter = 0; iter < 300; ++iter) {
        TermPtr t = gen.term(6);
        CHECK(t->qv == qv_oracle(t));
        TermPtr renamed = substitute_quantum(t, "wa", "wc");
        CHECK(renamed->qv == qv_oracle(renamed));
        TermPtr sub = substitute_classical(t, "x1", Rational(2));
        CHECK(sub->qv == qv_oracle(sub));
    }
}

TEST_CASE("quantum substitution with a fresh name is invertible up to alpha") {
    Program prog = fixture_program();
    TermGen gen(prog, 123);
    for (int iter = 0; iter < 200; ++iter) {
        TermPtr t = gen.term(5);
        if (t->qv.count("wd")) continue; // need wd fresh in t
        TermPtr there = substitute_quantum(t, "wa", "wd");
        TermPtr back = substitute_quantum(there, "wd", "wa");
        CHECK(alpha_equal(back, t));
    }
}

TEST_CASE("well-formedness rejects an output whose wire stays free") {
    Program prog = fixture_program();
    auto bad = ProcessTerm::q_output("qa", {"wa"},
                                     ProcessTerm::super_op("H", {"wa"}, ProcessTerm::nil()));
    prog.constants["Bad"] = {{"wa"}, bad};
    auto diags = well_formed(prog);
    REQUIRE(has_errors(diags));
    bool cited = false;
    for (const auto& d : diags)
        if (d.rule == "formation rule 7") cited = true;
    CHECK(cited);
}

TEST_CASE("well-formedness rejects parallel components sharing a wire") {
    Program prog = fixture_program();
    auto l = ProcessTerm::q_output("qa", {"wa"}, ProcessTerm::nil());
    auto r = ProcessTerm::super_op("H", {"wa"}, ProcessTerm::nil());
    prog.constants["Bad"] = {{"wa"}, ProcessTerm::parallel(l, r)};
    auto diags = well_formed(prog);
    REQUIRE(has_errors(diags));
    bool cited = false;
    for (const auto& d : diags)
        if (d.rule == "formation rule 11") cited = true;
    CHECK(cited);
}

TEST_CASE("well-formedness flags defining equations with stray wires") {
    Program prog = fixture_program();
    prog.constants["Bad"] = {{}, ProcessTerm::super_op("H", {"wa"}, ProcessTerm::nil())};
    auto diags = well_formed(prog);
    REQUIRE(has_errors(diags));
    CHECK(diags.front().rule == "defining equation");
}

TEST_CASE("the superdense-coding program is well-formed") {
    auto model = build_sdc();
    CHECK(well_formed(model.program).empty());
}

TEST_CASE("alpha canonicalization identifies renamed binders") {
    auto nil = ProcessTerm::nil();
    auto t1 = ProcessTerm::q_input("qa", {"p"}, ProcessTerm::super_op("H", {"p"}, nil));
    auto t2 = ProcessTerm::q_input("qa", {"zz"}, ProcessTerm::super_op("H", {"zz"}, nil));
    CHECK(alpha_equal(t1, t2));

    auto c1 = ProcessTerm::c_input("c1", "x",
                                   ProcessTerm::c_output("c1", Expr::variable("x"), nil));
    auto c2 = ProcessTerm::c_input("c1", "y",
                                   ProcessTerm::c_output("c1", Expr::variable("y"), nil));
    CHECK(alpha_equal(c1, c2));

    auto free1 = ProcessTerm::super_op("H", {"wa"}, nil);
    auto free2 = ProcessTerm::super_op("H", {"wb"}, nil);
    CHECK_FALSE(alpha_equal(free1, free2));
}

TEST_CASE("free channel names account for relabeling and restriction") {
    Program prog = fixture_program();
    auto nil = ProcessTerm::nil();
    auto t = ProcessTerm::c_output("c1", Expr::literal(Rational(0)), nil);
    CHECK(free_channels(t, prog) == std::set<std::string>{"c1"});

    Relabeling f;
    f.table = {{"c1", "c2"}};
    CHECK(free_channels(ProcessTerm::relabeled(t, f), prog) == std::set<std::string>{"c2"});
    CHECK(free_channels(ProcessTerm::restricted(t, {"c1"}), prog).empty());
}
