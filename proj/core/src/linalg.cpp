// SPDX-License-Identifier: Apache-2.0
#include "qccs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qccs {

QubitRegister::QubitRegister(std::vector<std::string> wires) : wires_(std::move(wires)) {
    std::set<std::string> seen;
    for (const auto& w : wires_) {
        if (!seen.insert(w).second) throw QccsError("duplicate wire in register: " + w);
    }
}

QubitRegister QubitRegister::canonical(const std::set<std::string>& wires) {
    return QubitRegister(std::vector<std::string>(wires.begin(), wires.end()));
}

bool QubitRegister::contains(const std::string& w) const {
    return std::find(wires_.begin(), wires_.end(), w) != wires_.end();
}

std::size_t QubitRegister::index_of(const std::string& w) const {
    auto it = std::find(wires_.begin(), wires_.end(), w);
    if (it == wires_.end()) throw QccsError("unknown wire: " + w);
    return static_cast<std::size_t>(it - wires_.begin());
}

QubitRegister QubitRegister::without(const std::set<std::string>& removed) const {
    std::vector<std::string> kept;
    for (const auto& w : wires_)
        if (!removed.count(w)) kept.push_back(w);
    return QubitRegister(std::move(kept));
}

DensityOperator::DensityOperator(QubitRegister reg, ComplexMatrix mat)
    : reg_(std::move(reg)), mat_(std::move(mat)) {
    if (mat_.rows() != reg_.dim() || mat_.cols() != reg_.dim())
        throw QccsError("density operator dimension does not match register");
}

DensityOperator DensityOperator::pure(const QubitRegister& reg, const std::vector<Complex>& amps) {
    if (amps.size() != reg.dim()) throw QccsError("amplitude vector dimension mismatch");
    return DensityOperator(reg, ComplexMatrix::outer(amps));
}

DensityOperator DensityOperator::basis(const QubitRegister& reg, const std::vector<int>& bits) {
    if (bits.size() != reg.size()) throw QccsError("basis bit string length mismatch");
    std::size_t g = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        g = (g << 1) | static_cast<std::size_t>(bits[i] ? 1 : 0);
    }
    ComplexMatrix m(reg.dim(), reg.dim());
    m.at(g, g) = 1.0;
    return DensityOperator(reg, std::move(m));
}

double DensityOperator::trace() const { return mat_.trace().real(); }

bool DensityOperator::is_valid(double tol) const {
    if (!mat_.is_hermitian(tol)) return false;
    double tr = trace();
    if (tr < -tol || tr > 1.0 + tol) return false;
    std::vector<double> evs;
    ComplexMatrix vecs;
    jacobi_hermitian(mat_, evs, vecs);
    for (double ev : evs)
        if (ev < -tol) return false;
    return true;
}

SuperOperator SuperOperator::from_kraus(std::vector<ComplexMatrix> kraus) {
    if (kraus.empty()) throw QccsError("empty Kraus list");
    std::size_t dim = kraus.front().rows();
    if (dim == 0 || (dim & (dim - 1)) != 0) throw QccsError("Kraus dimension is not a power of two");
    for (const auto& k : kraus)
        if (k.rows() != dim || k.cols() != dim) throw QccsError("inconsistent Kraus dimensions");

    SuperOperator e;
    e.kraus_ = std::move(kraus);
    e.arity_ = 0;
    while ((std::size_t(1) << e.arity_) < dim) ++e.arity_;

    ComplexMatrix sum(dim, dim);
    for (const auto& k : e.kraus_) sum = sum + k.adjoint() * k;
    if (sum.approx_equal(ComplexMatrix::identity(dim), kEps)) {
        e.flavor_ = SuperOpFlavor::TracePreserving;
    } else {
        std::vector<double> evs;
        ComplexMatrix vecs;
        jacobi_hermitian(sum, evs, vecs);
        for (double ev : evs)
            if (ev > 1.0 + kEps) throw QccsError("Kraus completeness sum exceeds identity");
        e.flavor_ = SuperOpFlavor::TraceNonincreasing;
    }
    return e;
}

SuperOperator SuperOperator::unitary(const ComplexMatrix& u) {
    std::size_t dim = u.rows();
    if (!(u * u.adjoint()).approx_equal(ComplexMatrix::identity(dim), 1e-8))
        throw QccsError("matrix is not unitary");
    return from_kraus({u});
}

ComplexMatrix SuperOperator::apply_direct(const ComplexMatrix& m) const {
    ComplexMatrix r(m.rows(), m.cols());
    for (const auto& k : kraus_) r = r + k * m * k.adjoint();
    return r;
}

// ---------------------------------------------------------------------------
// Jacobi eigendecomposition for complex Hermitian matrices.

void jacobi_hermitian(const ComplexMatrix& m, std::vector<double>& eigenvalues,
                      ComplexMatrix& eigenvectors) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw QccsError("jacobi on non-square matrix");
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const int max_sweeps = 100;
    const double convergence = 1e-14 * std::max(1.0, m.max_abs());
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a.at(p, q));
        if (std::sqrt(off) <= convergence) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex w = a.at(p, q);
                double aw = std::abs(w);
                if (aw <= 1e-300) continue;
                Complex phase = w / aw;
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                double tau = (aqq - app) / (2.0 * aw);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                Complex sp = s * phase;        // U(p,q) = s*e^{i phi}
                Complex sm = s * std::conj(phase); // -U(q,p)

                // columns: A <- A U
                for (std::size_t i = 0; i < n; ++i) {
                    Complex aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - sm * aiq;
                    a.at(i, q) = sp * aip + c * aiq;
                }
                // rows: A <- U^dag A
                for (std::size_t j = 0; j < n; ++j) {
                    Complex apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj - sp * aqj;
                    a.at(q, j) = sm * apj + c * aqj;
                }
                // accumulate V <- V U
                for (std::size_t i = 0; i < n; ++i) {
                    Complex vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip - sm * viq;
                    v.at(i, q) = sp * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a.at(x, x).real() < a.at(y, y).real(); });

    eigenvalues.resize(n);
    eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        eigenvalues[j] = a.at(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) eigenvectors.at(i, j) = v.at(i, order[j]);
    }
}

Observable Observable::spectral_decompose(const ComplexMatrix& m) {
    if (!m.is_hermitian(kEps)) throw QccsError("spectral decomposition of non-Hermitian matrix");
    std::size_t dim = m.rows();
    if (dim == 0 || (dim & (dim - 1)) != 0) throw QccsError("observable dimension is not a power of two");

    std::vector<double> evs;
    ComplexMatrix vecs;
    jacobi_hermitian(m, evs, vecs);

    Observable obs;
    obs.mat_ = m;
    obs.arity_ = 0;
    while ((std::size_t(1) << obs.arity_) < dim) ++obs.arity_;

    std::size_t i = 0;
    while (i < dim) {
        std::size_t j = i + 1;
        double acc = evs[i];
        while (j < dim && evs[j] - evs[j - 1] <= kSpecTol) {
            acc += evs[j];
            ++j;
        }
        ComplexMatrix proj(dim, dim);
        for (std::size_t col = i; col < j; ++col) {
            std::vector<Complex> column(dim);
            for (std::size_t r = 0; r < dim; ++r) column[r] = vecs.at(r, col);
            proj = proj + ComplexMatrix::outer(column);
        }
        obs.spectrum_.push_back({acc / static_cast<double>(j - i), std::move(proj)});
        i = j;
    }
    return obs;
}

// ---------------------------------------------------------------------------

namespace {

// bit of wire position `pos` inside global index `g` (wire 0 is the most
// significant factor)
inline std::size_t bit_at(std::size_t g, std::size_t pos, std::size_t n) {
    return (g >> (n - 1 - pos)) & 1u;
}

} // namespace

ComplexMatrix embed(const ComplexMatrix& op, const std::vector<std::string>& targets,
                    const QubitRegister& reg) {
    const std::size_t n = reg.size();
    const std::size_t k = targets.size();
    if (op.rows() != (std::size_t(1) << k) || op.cols() != op.rows())
        throw QccsError("operator arity does not match target count");
    std::vector<std::size_t> tpos;
    std::set<std::string> seen;
    for (const auto& t : targets) {
        if (!seen.insert(t).second) throw QccsError("duplicate target wire: " + t);
        tpos.push_back(reg.index_of(t));
    }
    std::vector<bool> is_target(n, false);
    for (auto p : tpos) is_target[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < n; ++p)
        if (!is_target[p]) rest.push_back(p);

    const std::size_t dim = reg.dim();
    const std::size_t tdim = std::size_t(1) << k;
    const std::size_t rdim = std::size_t(1) << rest.size();
    ComplexMatrix out(dim, dim);

    for (std::size_t r = 0; r < rdim; ++r) {
        std::size_t base = 0;
        for (std::size_t x = 0; x < rest.size(); ++x)
            base |= bit_at(r, x, rest.size()) << (n - 1 - rest[x]);
        for (std::size_t s = 0; s < tdim; ++s) {
            std::size_t row = base;
            for (std::size_t x = 0; x < k; ++x) row |= bit_at(s, x, k) << (n - 1 - tpos[x]);
            for (std::size_t t = 0; t < tdim; ++t) {
                Complex val = op.at(s, t);
                if (val == Complex(0.0, 0.0)) continue;
                std::size_t col = base;
                for (std::size_t x = 0; x < k; ++x) col |= bit_at(t, x, k) << (n - 1 - tpos[x]);
                out.at(row, col) = val;
            }
        }
    }
    return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::set<std::string>& discard) {
    const QubitRegister& reg = rho.reg();
    for (const auto& w : discard)
        if (!reg.contains(w)) throw QccsError("unknown wire in partial trace: " + w);
    if (discard.empty()) return rho;

    QubitRegister kept = reg.without(discard);
    const std::size_t n = reg.size();
    std::vector<std::size_t> kpos, dpos;
    for (std::size_t p = 0; p < n; ++p) {
        if (discard.count(reg.wires()[p]))
            dpos.push_back(p);
        else
            kpos.push_back(p);
    }
    const std::size_t kdim = std::size_t(1) << kpos.size();
    const std::size_t ddim = std::size_t(1) << dpos.size();
    ComplexMatrix out(kdim, kdim);

    auto compose = [&](std::size_t kbits, std::size_t dbits) {
        std::size_t g = 0;
        for (std::size_t x = 0; x < kpos.size(); ++x)
            g |= bit_at(kbits, x, kpos.size()) << (n - 1 - kpos[x]);
        for (std::size_t x = 0; x < dpos.size(); ++x)
            g |= bit_at(dbits, x, dpos.size()) << (n - 1 - dpos[x]);
        return g;
    };

    for (std::size_t i = 0; i < kdim; ++i)
        for (std::size_t j = 0; j < kdim; ++j) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < ddim; ++t) acc += rho.matrix().at(compose(i, t), compose(j, t));
            out.at(i, j) = acc;
        }
    return DensityOperator(std::move(kept), std::move(out));
}

DensityOperator apply_super(const SuperOperator& e, const std::vector<std::string>& targets,
                            const DensityOperator& rho) {
    if (targets.size() != e.arity()) throw QccsError("super-operator arity mismatch");
    ComplexMatrix acc(rho.reg().dim(), rho.reg().dim());
    for (const auto& k : e.kraus()) {
        ComplexMatrix ke = embed(k, targets, rho.reg());
        acc = acc + ke * rho.matrix() * ke.adjoint();
    }
    return DensityOperator(rho.reg(), std::move(acc));
}

std::vector<MeasurementBranch> measure(const Observable& m, const std::vector<std::string>& targets,
                                       const DensityOperator& rho) {
    if (targets.size() != m.arity()) throw QccsError("observable arity mismatch");
    double tr = rho.trace();
    if (tr <= kEps) throw QccsError("measurement on (near) zero-trace state");

    std::vector<MeasurementBranch> out;
    for (const auto& line : m.spectrum()) {
        ComplexMatrix proj = embed(line.projector, targets, rho.reg());
        double p = (proj * rho.matrix()).trace().real() / tr;
        if (p <= kEps) continue;
        ComplexMatrix post = (proj * rho.matrix() * proj).scaled(Complex(1.0 / p, 0.0));
        out.push_back({line.eigenvalue, p, DensityOperator(rho.reg(), std::move(post))});
    }
    return out;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (!(a.reg() == b.reg())) throw QccsError("trace distance register mismatch");
    ComplexMatrix diff = a.matrix() - b.matrix();
    std::vector<double> evs;
    ComplexMatrix vecs;
    jacobi_hermitian(diff, evs, vecs);
    double sum = 0.0;
    for (double ev : evs) sum += std::abs(ev);
    return 0.5 * sum;
}

bool states_equal(const DensityOperator& a, const DensityOperator& b, double tol) {
    if (tol < 0.0) tol = comparison_tolerance();
    if (!(a.reg() == b.reg())) return false;
    // trace norm bounds: ||D||_F <= tr|D| <= sqrt(dim)*||D||_F; the squared
    // Frobenius norm is accumulated entrywise with an early reject so the hot
    // path never allocates
    const auto& x = a.matrix().entries();
    const auto& y = b.matrix().entries();
    const double reject = 4.0 * tol * tol; // fro/2 > tol
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::norm(x[i] - y[i]);
        if (sum > reject) return false;
    }
    double dim = static_cast<double>(a.reg().dim());
    if (0.25 * dim * sum <= tol * tol) return true;
    return trace_distance(a, b) <= tol;
}

} // namespace qccs
