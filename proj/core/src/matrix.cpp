// SPDX-License-Identifier: Apache-2.0
#include "qccs/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qccs {

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw QccsError("ragged matrix literal");
        for (const auto& v : row) a_.push_back(v);
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw QccsError("matrix shape mismatch in +");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw QccsError("matrix shape mismatch in -");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw QccsError("matrix shape mismatch in *");
    ComplexMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            Complex aik = a_[i * cols_ + k];
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                r.a_[i * o.cols_ + j] += aik * o.a_[k * o.cols_ + j];
            }
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::scaled(Complex s) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

Complex ComplexMatrix::trace() const {
    if (rows_ != cols_) throw QccsError("trace of non-square matrix");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& o, double tol) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (std::abs(a_[i] - o.a_[i]) > tol) return false;
    return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

ComplexMatrix ComplexMatrix::outer(const std::vector<Complex>& v) {
    ComplexMatrix r(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r.at(i, j) = v[i] * std::conj(v[j]);
    return r;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Complex aij = a.at(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
        }
    return r;
}

ComplexMatrix apply_to_vector_outer(const ComplexMatrix& u, const std::vector<Complex>& v) {
    if (u.cols() != v.size()) throw QccsError("shape mismatch in apply_to_vector_outer");
    std::vector<Complex> w(u.rows(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) w[i] += u.at(i, j) * v[j];
    return ComplexMatrix::outer(w);
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
double g_comparison_tolerance = kEps;
} // namespace

double comparison_tolerance() { return g_comparison_tolerance; }

void set_comparison_tolerance(double tol) {
    if (tol <= 0.0) throw QccsError("comparison tolerance must be positive");
    g_comparison_tolerance = tol;
}

const ComplexMatrix& mat_identity2() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

const ComplexMatrix& mat_hadamard() {
    static const ComplexMatrix m{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
    return m;
}

const ComplexMatrix& mat_pauli_x() {
    static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}

const ComplexMatrix& mat_pauli_y() {
    static const ComplexMatrix m{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
    return m;
}

const ComplexMatrix& mat_pauli_z() {
    static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}

const ComplexMatrix& mat_cnot() {
    static const ComplexMatrix m{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    return m;
}

const ComplexMatrix& mat_swap() {
    static const ComplexMatrix m{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    return m;
}

} // namespace qccs
