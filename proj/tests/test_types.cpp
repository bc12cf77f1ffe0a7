#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "qib/errors.hpp"
#include "qib/linalg.hpp"
#include "qib/rng.hpp"
#include "qib/types.hpp"

using namespace qib;

TEST_CASE("matrix product against a worked 2x2 example") {
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = cplx(1, 2);
    a(0, 1) = cplx(0, -1);
    a(1, 0) = cplx(3, 0);
    a(1, 1) = cplx(-1, 1);
    b(0, 0) = cplx(2, 0);
    b(0, 1) = cplx(0, 1);
    b(1, 0) = cplx(1, 1);
    b(1, 1) = cplx(4, 0);
    const ComplexMatrix c = a * b;
    CHECK(std::abs(c(0, 0) - cplx(3, 3)) < 1e-15);   // (1+2i)2 + (-i)(1+i)
    CHECK(std::abs(c(0, 1) - cplx(-2, -3)) < 1e-15); // (1+2i)i + (-i)4
    CHECK(std::abs(c(1, 0) - cplx(4, 0)) < 1e-15);
    CHECK(std::abs(c(1, 1) - cplx(-4, 7)) < 1e-15);
}

TEST_CASE("adjoint, trace, and Hilbert-Schmidt inner product") {
    Rng rng(5);
    const HermitianOp h = rng.random_hermitian(4);
    const ComplexMatrix m = h.matrix();
    CHECK((m.adjoint() - m).max_abs() == 0.0);
    CHECK(std::abs(m.trace().imag()) < 1e-15);
    // <A, A> equals the squared Frobenius norm.
    const cplx self = hs_inner(m, m);
    CHECK(self.real() == doctest::Approx(m.frobenius_norm() *
                                         m.frobenius_norm()).epsilon(1e-12));
    CHECK(std::abs(self.imag()) < 1e-12);
    // Tr(AB) via the direct accumulator agrees with the product trace.
    const HermitianOp g = rng.random_hermitian(4);
    CHECK(std::abs(trace_prod(m, g.matrix()) - (m * g.matrix()).trace()) <
          1e-12);
}

TEST_CASE("tensor product structure") {
    const ComplexMatrix x = pauli_x();
    const ComplexMatrix z = pauli_z();
    const ComplexMatrix t = tensor(x, z);
    REQUIRE(t.rows() == 4);
    // (X (x) Z)_{(i a),(j b)} = X_ij Z_ab
    CHECK(t(0, 2) == cplx(1, 0));
    CHECK(t(1, 3) == cplx(-1, 0));
    CHECK(t(2, 0) == cplx(1, 0));
    CHECK(t(0, 0) == cplx(0, 0));
    CHECK(std::abs(t.trace()) == 0.0);
}

TEST_CASE("hermitian wrapper symmetrizes its input") {
    ComplexMatrix m(2, 2);
    m(0, 1) = cplx(1, 1);
    const HermitianOp h(m);
    CHECK(h(0, 1) == cplx(0.5, 0.5));
    CHECK(h(1, 0) == cplx(0.5, -0.5));
}

TEST_CASE("density matrix validation") {
    // Trace off by more than the tolerance.
    ComplexMatrix bad_trace = ComplexMatrix::identity(2);
    CHECK_THROWS_AS(DensityMatrix{bad_trace}, NumericalError);

    // Visibly non-Hermitian input.
    ComplexMatrix skew(2, 2);
    skew(0, 0) = 0.5;
    skew(1, 1) = 0.5;
    skew(0, 1) = cplx(0.2, 0.0);
    skew(1, 0) = cplx(-0.2, 0.0);
    CHECK_THROWS_AS(DensityMatrix{skew}, NumericalError);

    // A genuinely negative eigenvalue.
    ComplexMatrix neg(2, 2);
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    CHECK_THROWS_AS(DensityMatrix{neg}, NumericalError);

    // Non-square.
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix(2, 3)}, DimensionError);
}

TEST_CASE("density matrix spectra are ascending and clipped") {
    Rng rng(9);
    const DensityMatrix rho = rng.random_density(5);
    const auto& ev = rho.eigenvalues();
    double sum = 0.0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        CHECK(ev[i] >= 0.0);
        if (i) CHECK(ev[i] >= ev[i - 1]);
        sum += ev[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rho.full_rank());
    CHECK(std::abs(rho.matrix().trace() - cplx(1, 0)) < 1e-13);

    const DensityMatrix pure = DensityMatrix::pure({cplx(3, 0), cplx(0, 4)});
    CHECK(pure.rank() == 1);
    CHECK(pure.matrix()(0, 0).real() == doctest::Approx(9.0 / 25.0));
}

TEST_CASE("dimension cap is enforced") {
    // Default QIB_MAX_DIM is 64.
    CHECK_THROWS_AS(ComplexMatrix(65, 65), DimensionError);
    CHECK_NOTHROW(ComplexMatrix(64, 64));
}

TEST_CASE("povm validation and outcome probabilities") {
    Rng rng(13);
    const auto elems = rng.random_povm(3, 5);
    REQUIRE(elems.size() == 5);
    const Povm pov(elems);
    const DensityMatrix rho = rng.random_density(3);
    const auto p = pov.outcome_probabilities(rho);
    double sum = 0.0;
    for (double v : p) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // An incomplete element list must be rejected.
    auto broken = elems;
    broken.pop_back();
    CHECK_THROWS_AS(Povm{broken}, NumericalError);
}
