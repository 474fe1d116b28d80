// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qccs/matrix.hpp"

#include <set>
#include <string>
#include <vector>

namespace qccs {

/// Ordered list of distinct quantum-variable names. Register order fixes the
/// tensor-factor order; the global register always uses lexicographic order so
/// that states built along different execution paths stay comparable.
class QubitRegister {
public:
    QubitRegister() = default;
    explicit QubitRegister(std::vector<std::string> wires);

    /// Lexicographically sorted register over the given names.
    static QubitRegister canonical(const std::set<std::string>& wires);

    std::size_t size() const { return wires_.size(); }
    std::size_t dim() const { return std::size_t(1) << wires_.size(); }
    const std::vector<std::string>& wires() const { return wires_; }

    bool contains(const std::string& w) const;
    std::size_t index_of(const std::string& w) const; // throws on unknown wire
    QubitRegister without(const std::set<std::string>& removed) const;

    bool operator==(const QubitRegister& o) const { return wires_ == o.wires_; }

private:
    std::vector<std::string> wires_;
};

/// Positive matrix with trace at most 1 over a register; sub-normalized states
/// carry reach probability in their trace.
class DensityOperator {
public:
    DensityOperator() = default;
    DensityOperator(QubitRegister reg, ComplexMatrix mat);

    static DensityOperator pure(const QubitRegister& reg, const std::vector<Complex>& amplitudes);
    /// |bits⟩⟨bits| where bits[i] belongs to reg.wires()[i].
    static DensityOperator basis(const QubitRegister& reg, const std::vector<int>& bits);

    const QubitRegister& reg() const { return reg_; }
    const ComplexMatrix& matrix() const { return mat_; }
    double trace() const;

    /// Hermiticity / positivity / trace bound within kEps.
    bool is_valid(double tol = kEps) const;

private:
    QubitRegister reg_;
    ComplexMatrix mat_;
};

enum class SuperOpFlavor { TracePreserving, TraceNonincreasing };

/// Completely positive map in Kraus form over `arity` wires.
class SuperOperator {
public:
    SuperOperator() = default;
    /// Flavor is inferred from the Kraus completeness sum. Throws if the sum
    /// exceeds the identity beyond kEps.
    static SuperOperator from_kraus(std::vector<ComplexMatrix> kraus);
    static SuperOperator unitary(const ComplexMatrix& u);

    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    std::size_t arity() const { return arity_; }
    SuperOpFlavor flavor() const { return flavor_; }
    bool trace_preserving() const { return flavor_ == SuperOpFlavor::TracePreserving; }

    /// Apply on a same-dimension matrix (no embedding).
    ComplexMatrix apply_direct(const ComplexMatrix& m) const;

private:
    std::vector<ComplexMatrix> kraus_;
    std::size_t arity_ = 0;
    SuperOpFlavor flavor_ = SuperOpFlavor::TracePreserving;
};

struct SpectralLine {
    double eigenvalue;
    ComplexMatrix projector;
};

/// Hermitian observable with its clustered spectral decomposition.
class Observable {
public:
    Observable() = default;
    /// Throws QccsError on non-Hermitian input (beyond kEps).
    static Observable spectral_decompose(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const { return mat_; }
    std::size_t arity() const { return arity_; }
    const std::vector<SpectralLine>& spectrum() const { return spectrum_; }

private:
    ComplexMatrix mat_;
    std::size_t arity_ = 0;
    std::vector<SpectralLine> spectrum_;
};

/// Operator acting as `op` on `targets` (in the given order) and as identity
/// elsewhere, with any wire permutation between target order and register
/// order handled explicitly.
ComplexMatrix embed(const ComplexMatrix& op, const std::vector<std::string>& targets,
                    const QubitRegister& reg);

/// Trace out `discard`, returning the reduced state on the remaining wires.
DensityOperator partial_trace(const DensityOperator& rho, const std::set<std::string>& discard);

DensityOperator apply_super(const SuperOperator& e, const std::vector<std::string>& targets,
                            const DensityOperator& rho);

struct MeasurementBranch {
    double outcome;
    double probability;
    DensityOperator post; // carries trace tr(rho), not probability-scaled
};

/// Projective measurement of an observable on the given wires. Branches with
/// probability below kEps are dropped; throws on (near) zero-trace input.
std::vector<MeasurementBranch> measure(const Observable& m, const std::vector<std::string>& targets,
                                       const DensityOperator& rho);

/// Half the trace norm of the difference. Throws on register mismatch.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// Fast equality decision (trace_distance <= tol) that avoids the full
/// eigendecomposition when Frobenius bounds already settle the answer. A
/// negative tol means the current comparison_tolerance().
bool states_equal(const DensityOperator& a, const DensityOperator& b, double tol = -1.0);

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Returns ascending
/// eigenvalues and the matching orthonormal eigenvectors as matrix columns.
void jacobi_hermitian(const ComplexMatrix& m, std::vector<double>& eigenvalues,
                      ComplexMatrix& eigenvectors);

} // namespace qccs
