#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "qib/entropy.hpp"
#include "qib/linalg.hpp"
#include "qib/rng.hpp"
#include "qib/types.hpp"

using namespace qib;

TEST_CASE("von Neumann entropy on known spectra") {
    CHECK(von_neumann_entropy(DensityMatrix::pure({1.0, 0.0})) == 0.0);
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-14));

    // diag(p, 1-p) carries the binary entropy.
    const double p = 0.3;
    ComplexMatrix m(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    const double want = -p * std::log(p) - (1 - p) * std::log(1 - p);
    CHECK(von_neumann_entropy(DensityMatrix(m)) ==
          doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("relative entropy reduces to KL on commuting states") {
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = 0.3;
    a(1, 1) = 0.7;
    b(0, 0) = 0.6;
    b(1, 1) = 0.4;
    const double kl =
        0.3 * std::log(0.3 / 0.6) + 0.7 * std::log(0.7 / 0.4);
    CHECK(quantum_relative_entropy(DensityMatrix(a), DensityMatrix(b)) ==
          doctest::Approx(kl).epsilon(1e-12));
}

TEST_CASE("relative entropy support conditions") {
    Rng rng(3);
    const DensityMatrix rho = rng.random_density(3);
    CHECK(quantum_relative_entropy(rho, rho) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // Support of rho outside the support of sigma: +infinity.
    const DensityMatrix pure0 = DensityMatrix::pure({1.0, 0.0});
    const DensityMatrix pure1 = DensityMatrix::pure({0.0, 1.0});
    CHECK(quantum_relative_entropy(pure0, pure1) ==
          std::numeric_limits<double>::infinity());
    // Same support: finite and nonnegative.
    const double d = quantum_relative_entropy(rng.random_density(3), rho);
    CHECK(std::isfinite(d));
    CHECK(d >= 0.0);
}

TEST_CASE("quantum mutual information of product and correlated states") {
    Rng rng(7);
    const DensityMatrix a = rng.random_density(2);
    const DensityMatrix b = rng.random_density(2);
    const DensityMatrix prod{tensor(a.matrix(), b.matrix())};
    CHECK(quantum_mutual_information(prod, 2, 2) ==
          doctest::Approx(0.0).epsilon(1e-10));

    // Perfectly correlated classical bits on a two-qubit space.
    ComplexMatrix c(4, 4);
    c(0, 0) = 0.5;
    c(3, 3) = 0.5;
    CHECK(quantum_mutual_information(DensityMatrix(c), 2, 2) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("classical helpers") {
    // Joint distribution of two fair bits copied onto each other.
    const std::vector<double> joint = {0.5, 0.0, 0.0, 0.5};
    CHECK(classical_mutual_information(joint, 2, 2) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(nats_to_bits(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(classical_entropy({0.25, 0.25, 0.25, 0.25}) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(classical_relative_entropy({0.5, 0.5}, {0.5, 0.5}) ==
          doctest::Approx(0.0));
}
