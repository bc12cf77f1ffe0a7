#include "qib/rng.hpp"

#include <cmath>
#include <numbers>

#include "qib/spectral.hpp"

namespace qib {

double Rng::uniform() {
    // 53-bit mantissa from the top bits of the 64-bit word.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection sampling for an unbiased draw.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return cplx(re, im) / std::sqrt(2.0);
}

std::vector<double> Rng::random_prior(std::size_t n) {
    std::vector<double> p(n);
    double tot = 0.0;
    for (double& v : p) {
        v = -std::log(1.0 - uniform());
        tot += v;
    }
    for (double& v : p) v /= tot;
    return p;
}

DensityMatrix Rng::random_density(std::size_t dim) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_normal();
    ComplexMatrix gg = g * g.adjoint();
    const double tr = gg.trace().real();
    gg *= cplx(1.0 / tr, 0.0);
    return DensityMatrix(gg);
}

DensityMatrix Rng::random_pure(std::size_t dim) {
    std::vector<cplx> amp(dim);
    for (cplx& a : amp) a = complex_normal();
    return DensityMatrix::pure(amp);
}

std::vector<HermitianOp> Rng::random_povm(std::size_t dim, std::size_t m) {
    std::vector<HermitianOp> raw;
    raw.reserve(m);
    HermitianOp sum = HermitianOp::zero(dim);
    for (std::size_t k = 0; k < m; ++k) {
        ComplexMatrix g(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_normal();
        HermitianOp a(g * g.adjoint());
        sum = sum + a;
        raw.push_back(std::move(a));
    }
    HermitianOp s_inv_half = matrix_function(sum, [](double x) {
        return x > kEpsPsd ? 1.0 / std::sqrt(x) : 0.0;
    });
    std::vector<HermitianOp> povm;
    povm.reserve(m);
    for (const HermitianOp& a : raw)
        povm.emplace_back(s_inv_half.matrix() * a.matrix() *
                          s_inv_half.matrix());
    return povm;
}

HermitianOp Rng::random_hermitian(std::size_t dim) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_normal();
    return HermitianOp(g);
}

}  // namespace qib
