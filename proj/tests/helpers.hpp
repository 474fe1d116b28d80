// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/bisim.hpp"
#include "qccs/parser.hpp"
#include "qccs/protocols.hpp"

#include <random>

namespace qccs::testing {

// ---------------------------------------------------------------------------
// Shared fixture program for randomized syntax/semantics tests: four qubits,
// two classical and two quantum channels, a couple of operators.

inline Program fixture_program() {
    Program p = empty_program_with_builtins();
    p.universe = QubitRegister::canonical({"wa", "wb", "wc", "wd"});
    p.classical_channels["c1"] = {Rational(0), Rational(1)};
    p.classical_channels["c2"] = {Rational(0), Rational(1), Rational(2)};
    p.quantum_channels["qa"] = 1;
    p.quantum_channels["qb"] = 1;
    ComplexMatrix mz(2, 2);
    mz.at(1, 1) = 1.0;
    p.observables.emplace("MZ", Observable::spectral_decompose(mz));
    p.superops.emplace("Set0", prep_superop(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));
    return p;
}

// ---------------------------------------------------------------------------
// Random well-formed process terms. The wire pool carries the quantum
// variables the term may use freely; parallel splits it, outputs reserve
// their wires away from the continuation.

class TermGen {
public:
    TermGen(const Program& prog, std::uint64_t seed) : prog_(prog), rng_(seed) {}

    TermPtr term(int depth) {
        std::vector<std::string> pool = prog_.universe.wires();
        return gen(depth, pool, {});
    }

    std::mt19937_64& rng() { return rng_; }

private:
    const Program& prog_;
    std::mt19937_64 rng_;
    int fresh_ = 0;

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin(double p = 0.5) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

    std::string fresh(const char* base) { return std::string(base) + std::to_string(++fresh_); }

    ExprPtr rand_value_expr(const std::vector<std::string>& scope) {
        if (!scope.empty() && coin(0.5)) return Expr::variable(scope[pick(scope.size())]);
        return Expr::literal(Rational(static_cast<std::int64_t>(pick(3))));
    }

    ExprPtr rand_guard(const std::vector<std::string>& scope) {
        if (!scope.empty() && coin(0.7)) {
            return Expr::binary(ExprKind::Eq, Expr::variable(scope[pick(scope.size())]),
                                Expr::literal(Rational(static_cast<std::int64_t>(pick(3)))));
        }
        return coin(0.8) ? Expr::boolean(true) : Expr::boolean(false);
    }

    std::string rand_cchan() {
        auto it = prog_.classical_channels.begin();
        std::advance(it, pick(prog_.classical_channels.size()));
        return it->first;
    }
    std::string rand_qchan() {
        auto it = prog_.quantum_channels.begin();
        std::advance(it, pick(prog_.quantum_channels.size()));
        return it->first;
    }

    TermPtr gen(int depth, std::vector<std::string> pool, std::vector<std::string> scope) {
        if (depth <= 0) return ProcessTerm::nil();
        switch (pick(11)) {
        case 0: return ProcessTerm::nil();
        case 1: return ProcessTerm::tau(gen(depth - 1, pool, scope));
        case 2: {
            std::string x = fresh("x");
            auto sc = scope;
            sc.push_back(x);
            return ProcessTerm::c_input(rand_cchan(), x, gen(depth - 1, pool, sc));
        }
        case 3:
            return ProcessTerm::c_output(rand_cchan(), rand_value_expr(scope),
                                         gen(depth - 1, pool, scope));
        case 4: {
            std::string b = fresh("qv");
            auto inner = pool;
            inner.push_back(b);
            return ProcessTerm::q_input(rand_qchan(), {b}, gen(depth - 1, inner, scope));
        }
        case 5: {
            if (pool.empty()) return ProcessTerm::nil();
            std::size_t i = pick(pool.size());
            std::string w = pool[i];
            auto rest = pool;
            rest.erase(rest.begin() + static_cast<long>(i));
            return ProcessTerm::q_output(rand_qchan(), {w}, gen(depth - 1, rest, scope));
        }
        case 6: {
            if (pool.empty()) return ProcessTerm::nil();
            std::string w = pool[pick(pool.size())];
            const char* ops[3] = {"H", "X", "Set0"};
            return ProcessTerm::super_op(ops[pick(3)], {w}, gen(depth - 1, pool, scope));
        }
        case 7: {
            if (pool.empty()) return ProcessTerm::nil();
            std::string w = pool[pick(pool.size())];
            std::string x = fresh("x");
            auto sc = scope;
            sc.push_back(x);
            return ProcessTerm::measurement("MZ", {w}, x, gen(depth - 1, pool, sc));
        }
        case 8:
            return ProcessTerm::sum(gen(depth - 1, pool, scope), gen(depth - 1, pool, scope));
        case 9: {
            std::vector<std::string> left, right;
            for (const auto& w : pool) (coin() ? left : right).push_back(w);
            return ProcessTerm::parallel(gen(depth - 1, left, scope), gen(depth - 1, right, scope));
        }
        default: {
            TermPtr inner = gen(depth - 1, pool, scope);
            switch (pick(3)) {
            case 0: {
                Relabeling f;
                if (coin()) f.table = {{"c1", "c2"}, {"c2", "c1"}};
                if (coin()) {
                    f.table.emplace_back("qa", "qb");
                    f.table.emplace_back("qb", "qa");
                }
                return ProcessTerm::relabeled(inner, f);
            }
            case 1: {
                std::set<std::string> l;
                if (coin()) l.insert(rand_cchan());
                if (coin()) l.insert(rand_qchan());
                if (l.empty()) l.insert("c1");
                return ProcessTerm::restricted(inner, l);
            }
            default: return ProcessTerm::guarded(rand_guard(scope), inner);
            }
        }
        }
    }
};

// ---------------------------------------------------------------------------
// Random states and channels.

inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a.at(i, j) = Complex(gauss(rng), gauss(rng));
    // Gram-Schmidt on columns
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < dim; ++i) dot += std::conj(a.at(i, k)) * a.at(i, j);
            for (std::size_t i = 0; i < dim; ++i) a.at(i, j) -= dot * a.at(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) norm += std::norm(a.at(i, j));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < dim; ++i) a.at(i, j) /= norm;
    }
    return a;
}

inline std::vector<Complex> random_pure_amplitudes(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> v(dim);
    double norm = 0.0;
    for (auto& x : v) {
        x = Complex(gauss(rng), gauss(rng));
        norm += std::norm(x);
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
}

/// Random trace-preserving channel: mixture of two random unitaries.
inline SuperOperator random_tp_channel(std::size_t arity, std::mt19937_64& rng) {
    std::size_t dim = std::size_t(1) << arity;
    double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    ComplexMatrix k1 = random_unitary(dim, rng).scaled(std::sqrt(p));
    ComplexMatrix k2 = random_unitary(dim, rng).scaled(std::sqrt(1.0 - p));
    return SuperOperator::from_kraus({k1, k2});
}

// ---------------------------------------------------------------------------
// Exact-rational transportation feasibility (independent oracle for the
// max-flow decision): feasible iff every supplier subset's mass is covered by
// its related receivers (with equal total masses on both sides).

struct RationalFlowInstance {
    std::vector<Rational> mu, nu;
    std::vector<std::vector<bool>> related; // mu.size() x nu.size()
};

inline bool rational_feasible(const RationalFlowInstance& inst) {
    const std::size_t m = inst.mu.size(), k = inst.nu.size();
    Rational total_mu(0), total_nu(0);
    for (const auto& x : inst.mu) total_mu = total_mu + x;
    for (const auto& x : inst.nu) total_nu = total_nu + x;
    if (!(total_mu == total_nu)) return false;
    for (std::size_t s = 0; s < (std::size_t(1) << m); ++s) {
        Rational supply(0);
        std::vector<bool> reach(k, false);
        for (std::size_t i = 0; i < m; ++i) {
            if (!((s >> i) & 1)) continue;
            supply = supply + inst.mu[i];
            for (std::size_t j = 0; j < k; ++j)
                if (inst.related[i][j]) reach[j] = true;
        }
        Rational cover(0);
        for (std::size_t j = 0; j < k; ++j)
            if (reach[j]) cover = cover + inst.nu[j];
        if (cover < supply) return false;
    }
    return true;
}

/// Random rational distribution with the given support size (sums to 1).
inline std::vector<Rational> random_rational_dist(std::size_t support, std::mt19937_64& rng) {
    std::vector<std::int64_t> parts(support);
    std::int64_t total = 0;
    for (auto& x : parts) {
        x = static_cast<std::int64_t>(std::uniform_int_distribution<int>(1, 6)(rng));
        total += x;
    }
    std::vector<Rational> out;
    out.reserve(support);
    for (auto x : parts) out.emplace_back(x, total);
    return out;
}

/// Tiny program whose configurations serve as interchangeable tokens for
/// weight-function tests.
inline Program token_program() {
    Program p = empty_program_with_builtins();
    p.universe = QubitRegister::canonical({"t"});
    p.classical_channels["tok"] = {Rational(0), Rational(1), Rational(2),
                                   Rational(3), Rational(4), Rational(5)};
    return p;
}

inline Configuration token_config(const Program& p, int k) {
    TermPtr t = ProcessTerm::c_output("tok", Expr::literal(Rational(k)), ProcessTerm::nil());
    return Configuration(t, zeros_state(p.universe));
}

} // namespace qccs::testing
