#include <cmath>
#include <vector>

#include "doctest.h"
#include "qib/channel.hpp"
#include "qib/errors.hpp"
#include "qib/estimation.hpp"
#include "qib/examples.hpp"
#include "qib/oracles.hpp"
#include "qib/rng.hpp"
#include "qib/spectral.hpp"
#include "qib/types.hpp"

using namespace qib;

TEST_CASE("classical iteration matches closed forms") {
    // Binary symmetric channel.
    const double h01 = -0.9 * std::log(0.9) - 0.1 * std::log(0.1);
    CHECK(oracle::classical_ba_capacity({{0.9, 0.1}, {0.1, 0.9}}, 1e-10) ==
          doctest::Approx(std::log(2.0) - h01).epsilon(1e-9));
    // Noiseless ternary channel.
    CHECK(oracle::classical_ba_capacity(
              {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1e-10) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-9));
    // Rows must be distributions.
    CHECK_THROWS_AS(oracle::classical_ba_capacity({{0.9, 0.2}}, 1e-10),
                    NumericalError);
}

TEST_CASE("oracle configuration is explicit") {
    CHECK_THROWS_AS(oracle::OracleConfig(10, 0), NumericalError);
    const oracle::OracleConfig cfg(1000, 7);
    CHECK(cfg.resolution == 1000);
    CHECK(cfg.seed == 7);
}

TEST_CASE("grid search agrees with the certified iteration") {
    const oracle::OracleConfig cfg(4000, 5);
    const CqChannel bsc = examples::binary_symmetric(0.1);
    const CqChannel pair = examples::pure_pair(M_PI / 4.0);
    for (const CqChannel* w : {&bsc, &pair}) {
        std::vector<DensityMatrix> outs;
        for (std::size_t x = 0; x < w->alphabet_size(); ++x)
            outs.push_back(w->output(x));
        const oracle::GridCapacityResult grid = oracle::grid_capacity(outs, cfg);
        const CapacityResult cr = capacity(*w, 1e-9);
        CHECK(std::abs(grid.value - cr.value) <= 1e-6);
        double sum = 0.0;
        for (double p : grid.prior) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }

    // Three-letter case sweeps a triangular grid.
    Rng rng(31);
    std::vector<DensityMatrix> outs = {rng.random_density(2),
                                       rng.random_density(2),
                                       rng.random_density(2)};
    const CqChannel w(outs);
    const oracle::GridCapacityResult grid =
        oracle::grid_capacity(outs, oracle::OracleConfig(1000, 5));
    const CapacityResult cr = capacity(w, 1e-9);
    // Grid spacing limits the match here, not the iteration.
    CHECK(std::abs(grid.value - cr.value) <= 1e-4);
    CHECK(grid.value <= cr.value + 1e-12);
}

TEST_CASE("generated estimators are locally unbiased by construction") {
    const StateFamily fam = examples::full_qubit(0.5);
    const oracle::OracleConfig cfg(1000, 12);
    const auto estimators = oracle::random_unbiased_estimators(fam, 8, cfg);
    REQUIRE(estimators.size() == 8);
    for (const Povm& est : estimators) {
        REQUIRE(est.has_estimates());
        const UnbiasednessReport rep = locally_unbiased_check(fam, est);
        CHECK(rep.mean_residual <= 1e-8);
        CHECK(rep.deriv_residual <= 1e-8);
    }
}

TEST_CASE("feasible sampler stays feasible") {
    Rng rng(66);
    const oracle::OracleConfig cfg(1000, 9);
    for (int trial = 0; trial < 10; ++trial) {
        const HermitianOp r = rng.random_hermitian(3);
        for (const HermitianOp& v : oracle::feasible_v_sampler(r, 30, cfg)) {
            CHECK(min_eigenvalue(v - r) >= -1e-12);
            CHECK(min_eigenvalue(v + r) >= -1e-12);
        }
    }
}
