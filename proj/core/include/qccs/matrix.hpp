// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace qccs {

using Complex = std::complex<double>;

/// Tolerance for approximate matrix/state equality (max-entry difference).
inline constexpr double kEps = 1e-9;
/// Eigenvalue clustering tolerance for spectral decompositions.
inline constexpr double kSpecTol = 1e-7;
/// Feasibility tolerance for the transportation max-flow decision.
inline constexpr double kFlowEps = 1e-7;

/// Runtime override for the state-equality tolerance (defaults to kEps);
/// exposed for the command-line --tol flag.
double comparison_tolerance();
void set_comparison_tolerance(double tol);

class QccsError : public std::runtime_error {
public:
    explicit QccsError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense complex matrix, row-major. Sized for multi-qubit registers of a few
/// wires; everything is value-semantic and immutable by convention once built.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Complex(0.0, 0.0)) {}
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    Complex& operator()(std::size_t r, std::size_t c) { return at(r, c); }
    const Complex& operator()(std::size_t r, std::size_t c) const { return at(r, c); }

    const std::vector<Complex>& entries() const { return a_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix scaled(Complex s) const;
    ComplexMatrix adjoint() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    bool approx_equal(const ComplexMatrix& o, double tol = kEps) const;
    bool is_hermitian(double tol = kEps) const;

    /// Column vector |v⟩ to the rank-one projector |v⟩⟨v|.
    static ComplexMatrix outer(const std::vector<Complex>& v);

private:
    std::size_t rows_, cols_;
    std::vector<Complex> a_;
};

/// Kronecker product; the left factor's index varies slower.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix apply_to_vector_outer(const ComplexMatrix& u, const std::vector<Complex>& v);

// Standard gate matrices. pauli_z is diag(1,-1); pauli_y is [[0,-i],[i,0]].
const ComplexMatrix& mat_identity2();
const ComplexMatrix& mat_hadamard();
const ComplexMatrix& mat_pauli_x();
const ComplexMatrix& mat_pauli_y();
const ComplexMatrix& mat_pauli_z();
const ComplexMatrix& mat_cnot();
const ComplexMatrix& mat_swap();

} // namespace qccs
