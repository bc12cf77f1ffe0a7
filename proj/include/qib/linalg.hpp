#pragma once

#include <vector>

#include "qib/types.hpp"

namespace qib {

// Trace out subsystem B (dims dim_a x dim_b, B is the fast index).
ComplexMatrix partial_trace_b(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b);
// Trace out subsystem A.
ComplexMatrix partial_trace_a(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// (I + r . sigma)/2; |r| <= 1 required.
DensityMatrix qubit_state(double rx, double ry, double rz);

// Orthonormal Hermitian basis of the d x d Hermitian matrices under the
// Hilbert-Schmidt inner product (d^2 elements: diagonal units, then
// symmetric and antisymmetric off-diagonal pairs).
std::vector<HermitianOp> hermitian_basis(std::size_t d);

// Traceless subset of hermitian_basis (d^2 - 1 elements).
std::vector<HermitianOp> traceless_hermitian_basis(std::size_t d);

}  // namespace qib
