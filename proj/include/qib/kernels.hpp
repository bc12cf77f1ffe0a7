#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qib::kernels {

using cplx = std::complex<double>;

// Dense complex double-precision primitives behind the matrix layer.
// All arrays are contiguous; matrices are row-major.  Every entry point has
// a scalar reference implementation; wider implementations must agree with
// it to floating-point roundoff (FMA contraction is the only permitted
// difference), which the kernel equivalence tests enforce.
struct Ops {
    // c = a * b, with a m-by-k, b k-by-n, c m-by-n.  c must not alias a or b.
    void (*matmul)(const cplx* a, const cplx* b, cplx* c, std::size_t m,
                   std::size_t k, std::size_t n);
    // Hilbert-Schmidt dot: sum_i conj(a[i]) * b[i].
    cplx (*hs_dot)(const cplx* a, const cplx* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // y = alpha * x
    void (*scale)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

    const char* name;
};

// Kernel set selected once at startup from CPU features; QIB_KERNELS=scalar
// (or avx2/neon) overrides the choice when the hardware allows it.
const Ops& active();

const Ops& scalar();

// Instruction-set variants compiled into this binary, scalar first.
// available()[i] is safe to call on the running CPU.
std::size_t available_count();
const Ops& available(std::size_t i);

// Test hook: force a specific set by name; returns false if unknown or
// unsupported on this CPU.
bool force(std::string_view name);

}  // namespace qib::kernels
