#include "qib/linalg.hpp"

#include <cmath>

namespace qib {

ComplexMatrix partial_trace_b(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b) {
    if (m.rows() != dim_a * dim_b || !m.square())
        throw DimensionError("partial trace shape mismatch");
    ComplexMatrix r(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t j = 0; j < dim_a; ++j) {
            cplx t = 0.0;
            for (std::size_t k = 0; k < dim_b; ++k)
                t += m(i * dim_b + k, j * dim_b + k);
            r(i, j) = t;
        }
    return r;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m, std::size_t dim_a,
                              std::size_t dim_b) {
    if (m.rows() != dim_a * dim_b || !m.square())
        throw DimensionError("partial trace shape mismatch");
    ComplexMatrix r(dim_b, dim_b);
    for (std::size_t k = 0; k < dim_b; ++k)
        for (std::size_t l = 0; l < dim_b; ++l) {
            cplx t = 0.0;
            for (std::size_t i = 0; i < dim_a; ++i)
                t += m(i * dim_b + k, i * dim_b + l);
            r(k, l) = t;
        }
    return r;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

DensityMatrix qubit_state(double rx, double ry, double rz) {
    const double r2 = rx * rx + ry * ry + rz * rz;
    if (r2 > 1.0 + 1e-12)
        throw NumericalError("Bloch vector length exceeds 1");
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + rz);
    m(1, 1) = 0.5 * (1.0 - rz);
    m(0, 1) = 0.5 * cplx(rx, -ry);
    m(1, 0) = 0.5 * cplx(rx, ry);
    return DensityMatrix(m);
}

std::vector<HermitianOp> hermitian_basis(std::size_t d) {
    std::vector<HermitianOp> basis;
    basis.reserve(d * d);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < d; ++i) {
        ComplexMatrix m(d, d);
        m(i, i) = 1.0;
        basis.emplace_back(std::move(m));
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            ComplexMatrix s(d, d);
            s(i, j) = inv_sqrt2;
            s(j, i) = inv_sqrt2;
            basis.emplace_back(std::move(s));
            ComplexMatrix a(d, d);
            a(i, j) = cplx(0.0, -inv_sqrt2);
            a(j, i) = cplx(0.0, inv_sqrt2);
            basis.emplace_back(std::move(a));
        }
    return basis;
}

std::vector<HermitianOp> traceless_hermitian_basis(std::size_t d) {
    // Diagonal part: d-1 Gell-Mann style diagonal matrices; then the same
    // off-diagonal pairs as hermitian_basis.
    std::vector<HermitianOp> basis;
    basis.reserve(d * d - 1);
    for (std::size_t k = 1; k < d; ++k) {
        ComplexMatrix m(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
        for (std::size_t i = 0; i < k; ++i) m(i, i) = norm;
        m(k, k) = -norm * static_cast<double>(k);
        basis.emplace_back(std::move(m));
    }
    std::vector<HermitianOp> full = hermitian_basis(d);
    for (std::size_t idx = d; idx < full.size(); ++idx)
        basis.push_back(std::move(full[idx]));
    return basis;
}

}  // namespace qib
