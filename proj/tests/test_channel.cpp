#include <cmath>
#include <vector>

#include "doctest.h"
#include "qib/channel.hpp"
#include "qib/entropy.hpp"
#include "qib/errors.hpp"
#include "qib/examples.hpp"
#include "qib/linalg.hpp"
#include "qib/rng.hpp"
#include "qib/types.hpp"

using namespace qib;

namespace {
double binary_entropy(double p) {
    return -p * std::log(p) - (1 - p) * std::log(1 - p);
}
}  // namespace

TEST_CASE("holevo quantity of orthogonal pure states is log 2") {
    const CqChannel w({DensityMatrix::pure({1.0, 0.0}),
                       DensityMatrix::pure({0.0, 1.0})});
    CHECK(holevo_quantity(Prior::uniform(2), w) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("prior validation") {
    CHECK_THROWS_AS(Prior({0.5, 0.6}), NumericalError);
    CHECK_THROWS_AS(Prior({0.5, 0.5, -0.1, 0.1}), NumericalError);
    const Prior u = Prior::uniform(4);
    CHECK(u[2] == doctest::Approx(0.25));
}

TEST_CASE("binary symmetric channel capacity matches the closed form") {
    const CapacityResult cr = capacity(examples::binary_symmetric(0.1), 1e-9);
    const double want = std::log(2.0) - binary_entropy(0.1);
    CHECK(cr.value == doctest::Approx(want).epsilon(1e-8));
    CHECK(cr.gap <= 1e-9);
    CHECK(cr.prior[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("pure state pair capacity matches the entropy of the mixture") {
    // Optimal prior is uniform by symmetry; the mixture eigenvalues are
    // (1 +- overlap)/2.
    const double overlap = std::cos(M_PI / 4.0);
    const CapacityResult cr = capacity(examples::pure_pair(M_PI / 4.0), 1e-9);
    CHECK(cr.value ==
          doctest::Approx(binary_entropy((1.0 + overlap) / 2.0)).epsilon(1e-8));
    CHECK(cr.gap <= 1e-9);
}

TEST_CASE("measured information never exceeds the holevo quantity") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 2 + rng.below(3);
        const std::size_t letters = 2 + rng.below(3);
        std::vector<DensityMatrix> outs;
        for (std::size_t x = 0; x < letters; ++x)
            outs.push_back(rng.random_density(dim));
        const CqChannel w(outs);
        const Prior p(rng.random_prior(letters));
        const Povm pov(rng.random_povm(dim, 1 + rng.below(6)));
        CHECK(measured_mutual_information(p, w, pov) <=
              holevo_quantity(p, w) + 1e-9);
    }
}

TEST_CASE("induced joint distribution is a distribution") {
    Rng rng(55);
    const CqChannel w({rng.random_density(3), rng.random_density(3)});
    const Prior p(rng.random_prior(2));
    const Povm pov(rng.random_povm(3, 4));
    const auto joint = induced_joint(p, w, pov);
    REQUIRE(joint.size() == 8);
    double sum = 0.0;
    for (double v : joint) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("product channel structure and entropic additivity") {
    const CqChannel w = examples::pure_pair(M_PI / 3.0);
    const CqChannel w2 = product_channel(w, 2);
    REQUIRE(w2.alphabet_size() == 4);
    REQUIRE(w2.dim() == 4);
    CHECK(w2.label(1) == "a,b");
    // Uniform-prior holevo quantity doubles exactly for product inputs.
    CHECK(holevo_quantity(Prior::uniform(4), w2) ==
          doctest::Approx(2.0 * holevo_quantity(Prior::uniform(2), w))
              .epsilon(1e-11));
    // The dimension cap applies to the product space.
    CHECK_THROWS_AS(product_channel(w2, 4), DimensionError);
}

TEST_CASE("decoding error of an orthogonal code is zero") {
    const CqChannel w({DensityMatrix::pure({1.0, 0.0}),
                       DensityMatrix::pure({0.0, 1.0})});
    ComplexMatrix p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const Code code{1, {{0}, {1}}, Povm({HermitianOp(p0), HermitianOp(p1)})};
    CHECK(code_error(w, code) == doctest::Approx(0.0).epsilon(1e-14));

    // Random decoders sit strictly inside [0, 1].
    Rng rng(77);
    const Code sloppy{1, {{0}, {1}}, Povm(rng.random_povm(2, 2))};
    const double e = code_error(w, sloppy);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
}
