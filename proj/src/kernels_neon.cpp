// NEON kernel variants.  On aarch64 NEON is baseline, so no runtime feature
// probe is needed; the file is empty elsewhere.

#include "qib/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace qib::kernels {

namespace {

// One float64x2_t holds a single complex double as (re, im).
inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
    // (ar*br - ai*bi, ar*bi + ai*br)
    const float64x2_t ar = vdupq_laneq_f64(a, 0);
    const float64x2_t ai = vdupq_laneq_f64(a, 1);
    const float64x2_t bs = vextq_f64(b, b, 1);  // (bi, br)
    const float64x2_t t = vmulq_f64(ai, bs);    // (ai*bi, ai*br)
    const float64x2_t sign = {-1.0, 1.0};
    return vfmaq_f64(vmulq_f64(t, sign), ar, b);
}

void matmul_neon(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                 std::size_t k, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        double* crow = cd + 2 * i * n;
        for (std::size_t l = 0; l < k; ++l) {
            if (arow[l] == cplx(0.0, 0.0)) continue;
            const float64x2_t va = vld1q_f64(
                reinterpret_cast<const double*>(arow + l));
            const double* brow = bd + 2 * l * n;
            for (std::size_t j = 0; j < n; ++j) {
                const float64x2_t vb = vld1q_f64(brow + 2 * j);
                const float64x2_t vc = vld1q_f64(crow + 2 * j);
                vst1q_f64(crow + 2 * j, vaddq_f64(vc, cmul(va, vb)));
            }
        }
    }
}

cplx hs_dot_neon(const cplx* a, const cplx* b, std::size_t n) {
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    const float64x2_t sign = {1.0, -1.0};
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t va = vld1q_f64(ad + 2 * i);
        const float64x2_t vb = vld1q_f64(bd + 2 * i);
        acc_re = vfmaq_f64(acc_re, va, vb);  // (ar*br, ai*bi)
        const float64x2_t vbs = vextq_f64(vb, vb, 1);
        acc_im = vfmaq_f64(acc_im, va, vmulq_f64(vbs, sign));
    }
    return {vaddvq_f64(acc_re), vaddvq_f64(acc_im)};
}

void axpy_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const float64x2_t va = vld1q_f64(reinterpret_cast<const double*>(&alpha));
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t vx = vld1q_f64(xd + 2 * i);
        const float64x2_t vy = vld1q_f64(yd + 2 * i);
        vst1q_f64(yd + 2 * i, vaddq_f64(vy, cmul(va, vx)));
    }
}

void scale_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const float64x2_t va = vld1q_f64(reinterpret_cast<const double*>(&alpha));
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t vx = vld1q_f64(xd + 2 * i);
        vst1q_f64(yd + 2 * i, cmul(va, vx));
    }
}

}  // namespace

const Ops* neon_ops_if_supported() {
    static const Ops ops{matmul_neon, hs_dot_neon, axpy_neon, scale_neon,
                         "neon"};
    return &ops;
}

}  // namespace qib::kernels

#else

namespace qib::kernels {
const Ops* neon_ops_if_supported() { return nullptr; }
}  // namespace qib::kernels

#endif
