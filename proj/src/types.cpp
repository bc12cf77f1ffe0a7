#include "qib/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "qib/kernels.hpp"
#include "qib/spectral.hpp"

namespace qib {

std::size_t max_dim() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("QIB_MAX_DIM")) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(64);
    }();
    return cap;
}

static void check_dim_cap(std::size_t rows, std::size_t cols) {
    if (rows > max_dim() || cols > max_dim())
        throw DimensionError("matrix dimension " + std::to_string(std::max(rows, cols)) +
                             " exceeds cap " + std::to_string(max_dim()));
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {
    check_dim_cap(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_dim_cap(rows, cols);
    if (data_.size() != rows * cols)
        throw DimensionError("entry count does not match matrix shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = std::conj(data_[i]);
    return r;
}

cplx ComplexMatrix::trace() const {
    if (!square()) throw DimensionError("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::finite() const {
    for (const cplx& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionError("matrix addition shape mismatch");
    kernels::active().axpy(cplx(1.0, 0.0), o.data(), data(), data_.size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionError("matrix subtraction shape mismatch");
    kernels::active().axpy(cplx(-1.0, 0.0), o.data(), data(), data_.size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    kernels::active().scale(s, data(), data(), data_.size());
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matrix product shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    kernels::active().matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(),
                             b.cols());
    return c;
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("inner product shape mismatch");
    return kernels::active().hs_dot(a.data(), b.data(), a.size());
}

cplx trace_prod(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionError("trace product shape mismatch");
    // Tr(ab) = sum_ij a_ij b_ji = <a^dagger transposed...>; do it directly.
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

HermitianOp::HermitianOp(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("Hermitian operator must be square");
    ComplexMatrix s = m.adjoint();
    s += m;
    s *= cplx(0.5, 0.0);
    m_ = std::move(s);
}

HermitianOp::HermitianOp(ComplexMatrix&& m) : HermitianOp(m) {}

HermitianOp HermitianOp::identity(std::size_t dim) {
    return HermitianOp(ComplexMatrix::identity(dim));
}

HermitianOp HermitianOp::zero(std::size_t dim) {
    return HermitianOp(ComplexMatrix::zero(dim, dim));
}

HermitianOp jordan(const HermitianOp& a, const HermitianOp& b) {
    ComplexMatrix p = a.matrix() * b.matrix();
    p += b.matrix() * a.matrix();
    p *= cplx(0.5, 0.0);
    return HermitianOp(std::move(p));
}

HermitianOp commutator_i(const HermitianOp& a, const HermitianOp& b) {
    ComplexMatrix p = a.matrix() * b.matrix();
    p -= b.matrix() * a.matrix();
    p *= cplx(0.0, 1.0);
    return HermitianOp(std::move(p));
}

double trace_prod_real(const HermitianOp& a, const HermitianOp& b) {
    // For Hermitian a, b: Tr(ab) = <a, b>_HS is real.
    return hs_inner(a.matrix(), b.matrix()).real();
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("density matrix must be square");
    if (!m.finite()) throw NumericalError("density matrix has non-finite entries");
    HermitianOp h(m);
    double herm_drift = (m - h.matrix()).max_abs();
    if (herm_drift > 1e-9)
        throw NumericalError("density matrix is not Hermitian (drift " +
                             std::to_string(herm_drift) + ")");
    Spectrum s = eig_hermitian(h);
    double tr = 0.0;
    for (double& v : s.values) {
        if (v < -kEpsPsd)
            throw NumericalError("density matrix has negative eigenvalue " +
                                 std::to_string(v));
        if (v < 0.0) v = 0.0;
        tr += v;
    }
    if (std::abs(tr - 1.0) > 1e-10)
        throw NumericalError("density matrix trace " + std::to_string(tr) +
                             " deviates from 1 beyond tolerance");
    for (double& v : s.values) v /= tr;

    const std::size_t d = h.dim();
    ComplexMatrix rebuilt(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        if (s.values[k] == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i) {
            const cplx vik = s.vectors(i, k) * s.values[k];
            for (std::size_t j = 0; j < d; ++j)
                rebuilt(i, j) += vik * std::conj(s.vectors(j, k));
        }
    }
    m_ = HermitianOp(std::move(rebuilt)).matrix();
    eigenvalues_ = std::move(s.values);
    eigenvectors_ = std::move(s.vectors);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= cplx(1.0 / static_cast<double>(dim), 0.0);
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const std::vector<cplx>& amplitudes) {
    const std::size_t d = amplitudes.size();
    double n2 = 0.0;
    for (const cplx& a : amplitudes) n2 += std::norm(a);
    if (n2 <= 0.0) throw NumericalError("pure state amplitudes are all zero");
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / n2;
    return DensityMatrix(m);
}

std::size_t DensityMatrix::rank() const {
    std::size_t r = 0;
    for (double v : eigenvalues_)
        if (v > kEpsPsd) ++r;
    return r;
}

bool DensityMatrix::full_rank() const { return rank() == dim(); }

static std::vector<PovmOutcome> generic_outcomes(std::size_t n) {
    std::vector<PovmOutcome> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].name = std::to_string(i);
    return out;
}

Povm::Povm(std::vector<HermitianOp> elements)
    : Povm(std::move(elements), {}) {}

Povm::Povm(std::vector<HermitianOp> elements, std::vector<PovmOutcome> outcomes)
    : elements_(std::move(elements)), outcomes_(std::move(outcomes)) {
    if (elements_.empty()) throw DimensionError("POVM needs at least one element");
    if (outcomes_.empty()) outcomes_ = generic_outcomes(elements_.size());
    if (outcomes_.size() != elements_.size())
        throw DimensionError("POVM outcome count does not match element count");
    const std::size_t d = elements_.front().dim();
    HermitianOp sum = HermitianOp::zero(d);
    for (std::size_t m = 0; m < elements_.size(); ++m) {
        if (elements_[m].dim() != d)
            throw DimensionError("POVM elements have mixed dimensions");
        const double lo = min_eigenvalue(elements_[m]);
        if (lo < -kEpsPsd)
            throw NumericalError("POVM element " + std::to_string(m) +
                                 " has eigenvalue " + std::to_string(lo));
        sum = sum + elements_[m];
    }
    const double dev = operator_norm(sum - HermitianOp::identity(d));
    if (dev > kPovmSumTol)
        throw NumericalError("POVM completeness deviation " + std::to_string(dev));
    std::size_t est_dim = 0;
    for (const PovmOutcome& o : outcomes_) {
        if (o.estimate.empty()) continue;
        if (est_dim == 0) est_dim = o.estimate.size();
        if (o.estimate.size() != est_dim)
            throw DimensionError("POVM estimates have mixed dimensions");
    }
}

bool Povm::has_estimates() const {
    for (const PovmOutcome& o : outcomes_)
        if (o.estimate.empty()) return false;
    return true;
}

std::vector<double> Povm::outcome_probabilities(const DensityMatrix& rho) const {
    if (rho.dim() != dim())
        throw DimensionError("state dimension does not match POVM");
    std::vector<double> p(size());
    double tot = 0.0;
    for (std::size_t m = 0; m < size(); ++m) {
        double v = trace_prod_real(elements_[m], HermitianOp(rho.matrix()));
        if (v < 0.0) v = 0.0;
        p[m] = v;
        tot += v;
    }
    if (tot <= 0.0) throw NumericalError("all POVM outcome probabilities vanish");
    for (double& v : p) v /= tot;
    return p;
}

}  // namespace qib
