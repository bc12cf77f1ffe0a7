#pragma once

#include <functional>
#include <vector>

#include "qib/types.hpp"

namespace qib {

// Eigendecomposition of a Hermitian matrix: H = V diag(values) V^dagger,
// values ascending, columns of vectors orthonormal.
struct Spectrum {
    std::vector<double> values;
    ComplexMatrix vectors;
};

Spectrum eig_hermitian(const ComplexMatrix& h);
Spectrum eig_hermitian(const HermitianOp& h);

// V diag(f(lambda)) V^dagger
HermitianOp apply_spectral(const Spectrum& s,
                           const std::function<double(double)>& f);
HermitianOp matrix_function(const HermitianOp& h,
                            const std::function<double(double)>& f);

// f(lambda) = sqrt(max(lambda, 0))
HermitianOp matrix_sqrt(const HermitianOp& h);
// Sum of singular values = sum |lambda_i| for Hermitian input.
double trace_norm(const HermitianOp& h);
// |H| = sqrt(H^2) spectrally.
HermitianOp matrix_abs(const HermitianOp& h);

double min_eigenvalue(const HermitianOp& h);
double max_eigenvalue(const HermitianOp& h);
// Operator (spectral) norm of a Hermitian matrix.
double operator_norm(const HermitianOp& h);

// Moore-Penrose style inverse: eigenvalues <= threshold are dropped.
HermitianOp pseudo_inverse(const HermitianOp& h, double threshold = kEpsPsd);

// Solve the linear system given by a positive semi-definite Gram matrix,
// dropping directions with eigenvalue <= threshold (minimal-norm solution).
std::vector<double> psd_solve(const std::vector<double>& gram_row_major,
                              std::size_t n, const std::vector<double>& rhs,
                              double threshold);

}  // namespace qib
