#include "qib/entropy.hpp"

#include <cmath>
#include <limits>

#include "qib/linalg.hpp"
#include "qib/spectral.hpp"

namespace qib {

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double p : rho.eigenvalues())
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

double quantum_relative_entropy(const DensityMatrix& rho,
                                const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("relative entropy dimension mismatch");
    const std::size_t d = rho.dim();

    // Check supp(rho) subset of supp(sigma): project rho onto the kernel of
    // sigma and see whether anything survives.
    double outside = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        if (sigma.eigenvalues()[k] > kEpsPsd) continue;
        // <v_k| rho |v_k>
        cplx q = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cplx row = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                row += rho(i, j) * sigma.eigenvectors()(j, k);
            q += std::conj(sigma.eigenvectors()(i, k)) * row;
        }
        outside += q.real();
    }
    if (outside > kEpsPsd) return std::numeric_limits<double>::infinity();

    // Tr rho log rho - Tr rho log sigma on the support of sigma.
    double term1 = -von_neumann_entropy(rho);
    HermitianOp log_sigma = matrix_function(
        HermitianOp(sigma.matrix()),
        [](double x) { return x > kEpsPsd ? std::log(x) : 0.0; });
    const double term2 =
        trace_prod_real(HermitianOp(rho.matrix()), log_sigma);
    return term1 - term2;
}

double quantum_mutual_information(const DensityMatrix& rho_ab,
                                  std::size_t dim_a, std::size_t dim_b) {
    DensityMatrix rho_a(partial_trace_b(rho_ab.matrix(), dim_a, dim_b));
    DensityMatrix rho_b(partial_trace_a(rho_ab.matrix(), dim_a, dim_b));
    DensityMatrix prod(tensor(rho_a.matrix(), rho_b.matrix()));
    return quantum_relative_entropy(rho_ab, prod);
}

double classical_entropy(const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) {
        if (v < -kProbTol) throw NumericalError("negative probability");
        if (v > 0.0) s -= v * std::log(v);
    }
    return s;
}

double classical_relative_entropy(const std::vector<double>& p,
                                  const std::vector<double>& q) {
    if (p.size() != q.size())
        throw DimensionError("relative entropy length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
        s += p[i] * std::log(p[i] / q[i]);
    }
    return s;
}

double classical_mutual_information(const std::vector<double>& joint,
                                    std::size_t nx, std::size_t ny) {
    if (joint.size() != nx * ny)
        throw DimensionError("joint distribution shape mismatch");
    std::vector<double> px(nx, 0.0), py(ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            px[x] += joint[x * ny + y];
            py[y] += joint[x * ny + y];
        }
    double mi = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y) {
            const double pxy = joint[x * ny + y];
            if (pxy <= 0.0) continue;
            mi += pxy * std::log(pxy / (px[x] * py[y]));
        }
    return mi;
}

}  // namespace qib
