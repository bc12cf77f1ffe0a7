#include <cmath>

#include "doctest.h"
#include "qib/linalg.hpp"
#include "qib/rng.hpp"
#include "qib/spectral.hpp"
#include "qib/types.hpp"

using namespace qib;

TEST_CASE("partial traces invert the tensor product") {
    Rng rng(21);
    const DensityMatrix a = rng.random_density(2);
    const DensityMatrix b = rng.random_density(3);
    const ComplexMatrix ab = tensor(a.matrix(), b.matrix());
    CHECK((partial_trace_b(ab, 2, 3) - a.matrix()).max_abs() < 1e-14);
    CHECK((partial_trace_a(ab, 2, 3) - b.matrix()).max_abs() < 1e-14);
    // Tracing the full product leaves the trace itself.
    CHECK(std::abs(partial_trace_b(ab, 2, 3).trace() - cplx(1, 0)) < 1e-14);
}

TEST_CASE("pauli algebra") {
    const ComplexMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
    CHECK((x * x - ComplexMatrix::identity(2)).max_abs() == 0.0);
    CHECK((y * y - ComplexMatrix::identity(2)).max_abs() == 0.0);
    ComplexMatrix iz = z;
    iz *= cplx(0, 1);
    CHECK((x * y - iz).max_abs() == 0.0);
}

TEST_CASE("bloch vector states") {
    const DensityMatrix rho = qubit_state(0.3, -0.4, 0.5);
    CHECK(trace_prod(pauli_x(), rho.matrix()).real() ==
          doctest::Approx(0.3).epsilon(1e-12));
    CHECK(trace_prod(pauli_y(), rho.matrix()).real() ==
          doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(trace_prod(pauli_z(), rho.matrix()).real() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS(qubit_state(1.0, 1.0, 0.0));  // outside the ball
}

TEST_CASE("hermitian bases are orthonormal") {
    for (std::size_t d : {2u, 3u, 4u}) {
        const auto basis = hermitian_basis(d);
        REQUIRE(basis.size() == d * d);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double want = i == j ? 1.0 : 0.0;
                CHECK(std::abs(hs_inner(basis[i].matrix(), basis[j].matrix()) -
                               cplx(want, 0)) < 1e-14);
            }
        const auto traceless = traceless_hermitian_basis(d);
        REQUIRE(traceless.size() == d * d - 1);
        for (const auto& t : traceless)
            CHECK(std::abs(t.trace_real()) < 1e-14);
    }
}

TEST_CASE("spectral helpers") {
    Rng rng(33);
    const HermitianOp h = rng.random_hermitian(4);
    const Spectrum s = eig_hermitian(h);
    // Reconstruction.
    const ComplexMatrix back =
        apply_spectral(s, [](double v) { return v; }).matrix();
    CHECK((back - h.matrix()).max_abs() < 1e-12);
    // Square root squares back for the PSD part.
    const ComplexMatrix g = h.matrix() * h.matrix();
    const ComplexMatrix root = matrix_sqrt(HermitianOp(g)).matrix();
    CHECK((root * root - g).max_abs() < 1e-10);
    // Trace norm is the sum of absolute eigenvalues.
    double want = 0.0;
    for (double v : s.values) want += std::abs(v);
    CHECK(trace_norm(h) == doctest::Approx(want).epsilon(1e-12));
    // Pseudo-inverse on a singular operator.
    ComplexMatrix proj(2, 2);
    proj(0, 0) = 2.0;
    const HermitianOp pinv = pseudo_inverse(HermitianOp(proj));
    CHECK(pinv(0, 0) == cplx(0.5, 0));
    CHECK(pinv(1, 1) == cplx(0, 0));
}
