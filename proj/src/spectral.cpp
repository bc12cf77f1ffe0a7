#include "qib/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qib {

using EigenCM =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                  Eigen::RowMajor>;

Spectrum eig_hermitian(const ComplexMatrix& h) {
    if (!h.square()) throw DimensionError("eigendecomposition of non-square matrix");
    const auto d = static_cast<Eigen::Index>(h.rows());
    Eigen::Map<const EigenCM> map(h.data(), d, d);
    Eigen::SelfAdjointEigenSolver<EigenCM> solver(map);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver failed to converge");
    Spectrum s;
    s.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + d);
    ComplexMatrix vecs(h.rows(), h.rows());
    const EigenCM evec = solver.eigenvectors();
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            vecs(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                evec(i, j);
    s.vectors = std::move(vecs);
    return s;
}

Spectrum eig_hermitian(const HermitianOp& h) {
    return eig_hermitian(h.matrix());
}

HermitianOp apply_spectral(const Spectrum& s,
                           const std::function<double(double)>& f) {
    const std::size_t d = s.values.size();
    ComplexMatrix r(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const double fk = f(s.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i) {
            const cplx vik = s.vectors(i, k) * fk;
            for (std::size_t j = 0; j < d; ++j)
                r(i, j) += vik * std::conj(s.vectors(j, k));
        }
    }
    return HermitianOp(std::move(r));
}

HermitianOp matrix_function(const HermitianOp& h,
                            const std::function<double(double)>& f) {
    return apply_spectral(eig_hermitian(h), f);
}

HermitianOp matrix_sqrt(const HermitianOp& h) {
    return matrix_function(
        h, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

double trace_norm(const HermitianOp& h) {
    Spectrum s = eig_hermitian(h);
    double t = 0.0;
    for (double v : s.values) t += std::abs(v);
    return t;
}

HermitianOp matrix_abs(const HermitianOp& h) {
    return matrix_function(h, [](double x) { return std::abs(x); });
}

double min_eigenvalue(const HermitianOp& h) {
    return eig_hermitian(h).values.front();
}

double max_eigenvalue(const HermitianOp& h) {
    return eig_hermitian(h).values.back();
}

double operator_norm(const HermitianOp& h) {
    Spectrum s = eig_hermitian(h);
    return std::max(std::abs(s.values.front()), std::abs(s.values.back()));
}

HermitianOp pseudo_inverse(const HermitianOp& h, double threshold) {
    return matrix_function(
        h, [threshold](double x) { return x > threshold ? 1.0 / x : 0.0; });
}

std::vector<double> psd_solve(const std::vector<double>& gram_row_major,
                              std::size_t n, const std::vector<double>& rhs,
                              double threshold) {
    if (gram_row_major.size() != n * n || rhs.size() != n)
        throw DimensionError("psd_solve shape mismatch");
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = gram_row_major[i * n + j];
    HermitianOp ginv = pseudo_inverse(HermitianOp(std::move(g)), threshold);
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            x[i] += ginv(i, j).real() * rhs[j];
    return x;
}

}  // namespace qib
