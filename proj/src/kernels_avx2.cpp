// AVX2+FMA kernel variants.  Compiled on x86-64 only; every function carries
// a target attribute so the rest of the binary stays baseline-ISA, and the
// dispatcher never hands these out unless the CPU reports avx2 and fma.

#include "qib/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace qib::kernels {

namespace {

#define QIB_AVX2 __attribute__((target("avx2,fma")))

// (re,im) interleaved; one __m256d holds two complex doubles.
// swap_halves turns (r0,i0,r1,i1) into (i0,r0,i1,r1).
QIB_AVX2 inline __m256d swap_halves(__m256d v) {
    return _mm256_permute_pd(v, 0b0101);
}

// Complex multiply-accumulate of a broadcast scalar (ar,ai) with a vector
// of two complex values: acc + (ar+i*ai)*v.
QIB_AVX2 inline __m256d cmul_acc(__m256d var, __m256d vai, __m256d v,
                                 __m256d acc) {
    const __m256d t = _mm256_mul_pd(vai, swap_halves(v));
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(var, v, t));
}

QIB_AVX2 void matmul_avx2(const cplx* a, const cplx* b, cplx* c,
                          std::size_t m, std::size_t k, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
    const std::size_t n2 = (n / 2) * 2;
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        double* crow = cd + 2 * i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double ar = arow[l].real(), ai = arow[l].imag();
            if (ar == 0.0 && ai == 0.0) continue;
            const __m256d var = _mm256_set1_pd(ar);
            const __m256d vai = _mm256_set1_pd(ai);
            const double* brow = bd + 2 * l * n;
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                const __m256d vb = _mm256_loadu_pd(brow + 2 * j);
                const __m256d vc = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, cmul_acc(var, vai, vb, vc));
            }
            for (; j < n; ++j) {
                const double br = brow[2 * j], bi = brow[2 * j + 1];
                crow[2 * j] += ar * br - ai * bi;
                crow[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

QIB_AVX2 cplx hs_dot_avx2(const cplx* a, const cplx* b, std::size_t n) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    // Flips the sign of the odd (imaginary-slot) lanes.
    const __m256d odd_neg = _mm256_castsi256_pd(
        _mm256_set_epi64x(0x8000000000000000LL, 0, 0x8000000000000000LL, 0));
    const std::size_t n2 = (n / 2) * 2;
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const __m256d va = _mm256_loadu_pd(ad + 2 * i);
        const __m256d vb = _mm256_loadu_pd(bd + 2 * i);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        const __m256d vbs = _mm256_xor_pd(swap_halves(vb), odd_neg);
        acc_im = _mm256_fmadd_pd(va, vbs, acc_im);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc_re);
    double re = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    _mm256_store_pd(lanes, acc_im);
    double im = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        const double ar = ad[2 * i], ai = ad[2 * i + 1];
        const double br = bd[2 * i], bi = bd[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

QIB_AVX2 void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d var = _mm256_set1_pd(alpha.real());
    const __m256d vai = _mm256_set1_pd(alpha.imag());
    const std::size_t n2 = (n / 2) * 2;
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul_acc(var, vai, vx, vy));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

QIB_AVX2 void scale_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d var = _mm256_set1_pd(alpha.real());
    const __m256d vai = _mm256_set1_pd(alpha.imag());
    const std::size_t n2 = (n / 2) * 2;
    std::size_t i = 0;
    for (; i < n2; i += 2) {
        const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        const __m256d t = _mm256_mul_pd(vai, swap_halves(vx));
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmaddsub_pd(var, vx, t));
    }
    for (; i < n; ++i) y[i] = alpha * x[i];
}

#undef QIB_AVX2

}  // namespace

const Ops* avx2_ops_if_supported() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
        return nullptr;
    static const Ops ops{matmul_avx2, hs_dot_avx2, axpy_avx2, scale_avx2,
                         "avx2"};
    return &ops;
}

}  // namespace qib::kernels

#else

namespace qib::kernels {
const Ops* avx2_ops_if_supported() { return nullptr; }
}  // namespace qib::kernels

#endif
