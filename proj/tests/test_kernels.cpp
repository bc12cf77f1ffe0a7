#include <cmath>
#include <vector>

#include "doctest.h"
#include "qib/kernels.hpp"
#include "qib/rng.hpp"

using namespace qib;

namespace {

std::vector<cplx> random_block(Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (cplx& z : v) z = rng.complex_normal();
    return v;
}

double max_dev(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("every kernel variant matches the scalar reference") {
    Rng rng(71);
    const kernels::Ops& ref = kernels::scalar();
    // Odd shapes on purpose: tails exercise the masked remainder paths.
    const std::size_t shapes[][3] = {{1, 1, 1}, {2, 3, 2}, {3, 3, 3},
                                     {4, 4, 4}, {5, 7, 3}, {8, 8, 8},
                                     {9, 2, 9}, {13, 11, 7}};
    for (std::size_t s = 0; s < kernels::available_count(); ++s) {
        const kernels::Ops& ops = kernels::available(s);
        CAPTURE(ops.name);
        for (const auto& sh : shapes) {
            const std::size_t m = sh[0], k = sh[1], n = sh[2];
            const auto a = random_block(rng, m * k);
            const auto b = random_block(rng, k * n);
            std::vector<cplx> want(m * n), got(m * n);
            ref.matmul(a.data(), b.data(), want.data(), m, k, n);
            ops.matmul(a.data(), b.data(), got.data(), m, k, n);
            CHECK(max_dev(want, got) <= 1e-12);
        }
        for (std::size_t len : {1u, 2u, 3u, 4u, 7u, 8u, 15u, 64u, 129u}) {
            const auto a = random_block(rng, len);
            const auto b = random_block(rng, len);
            CHECK(std::abs(ref.hs_dot(a.data(), b.data(), len) -
                           ops.hs_dot(a.data(), b.data(), len)) <= 1e-12);

            auto y1 = random_block(rng, len);
            auto y2 = y1;
            const cplx alpha = rng.complex_normal();
            ref.axpy(alpha, a.data(), y1.data(), len);
            ops.axpy(alpha, a.data(), y2.data(), len);
            CHECK(max_dev(y1, y2) <= 1e-12);

            std::vector<cplx> z1(len), z2(len);
            ref.scale(alpha, a.data(), z1.data(), len);
            ops.scale(alpha, a.data(), z2.data(), len);
            CHECK(max_dev(z1, z2) <= 1e-12);
        }
    }
}

TEST_CASE("kernel selection can be forced and restored") {
    const std::string original = kernels::active().name;
    for (std::size_t s = 0; s < kernels::available_count(); ++s) {
        const std::string name = kernels::available(s).name;
        CHECK(kernels::force(name));
        CHECK(std::string(kernels::active().name) == name);
    }
    CHECK_FALSE(kernels::force("no-such-kernel"));
    CHECK(kernels::force(original));
    CHECK(std::string(kernels::active().name) == original);
}
