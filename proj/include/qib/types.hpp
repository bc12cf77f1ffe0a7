#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qib/errors.hpp"

namespace qib {

using cplx = std::complex<double>;

// Eigenvalue support threshold used uniformly: spectrum entries below it are
// treated as zero, PSD checks allow dips down to -kEpsPsd.
inline constexpr double kEpsPsd = 1e-10;
// Full-rank threshold for quantities that need rho^{-1}.
inline constexpr double kEpsRld = 1e-8;
// POVM completeness tolerance (operator norm of sum - I).
inline constexpr double kPovmSumTol = 1e-9;
// Probability-vector normalization tolerance.
inline constexpr double kProbTol = 1e-12;

// Hard cap on matrix dimensions, overridable via QIB_MAX_DIM.
std::size_t max_dim();

// Dense row-major complex matrix.  Entries must stay finite; immutable by
// convention once handed to a domain type.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols,
                  std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    // Dense product through the active kernel set.
    friend ComplexMatrix operator*(const ComplexMatrix& a,
                                   const ComplexMatrix& b);

  private:
    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

// sum_ij conj(a_ij) b_ij  (= Tr a^dagger b)
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
// Tr(a b) without forming the product.
cplx trace_prod(const ComplexMatrix& a, const ComplexMatrix& b);
// Kronecker product.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Self-adjoint operator; the constructor symmetrizes H <- (H + H^dagger)/2,
// absorbing floating-point drift from products.
class HermitianOp {
  public:
    HermitianOp() = default;
    explicit HermitianOp(const ComplexMatrix& m);
    explicit HermitianOp(ComplexMatrix&& m);

    static HermitianOp identity(std::size_t dim);
    static HermitianOp zero(std::size_t dim);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    double trace_real() const { return m_.trace().real(); }

    friend HermitianOp operator+(const HermitianOp& a, const HermitianOp& b) {
        return HermitianOp(a.m_ + b.m_);
    }
    friend HermitianOp operator-(const HermitianOp& a, const HermitianOp& b) {
        return HermitianOp(a.m_ - b.m_);
    }
    friend HermitianOp operator*(double s, const HermitianOp& a) {
        return HermitianOp(cplx(s, 0.0) * a.m_);
    }

  private:
    ComplexMatrix m_;
};

// (AB + BA)/2
HermitianOp jordan(const HermitianOp& a, const HermitianOp& b);
// i[A, B] = i(AB - BA), Hermitian for Hermitian A, B.
HermitianOp commutator_i(const HermitianOp& a, const HermitianOp& b);
// Tr(a b), real for Hermitian inputs.
double trace_prod_real(const HermitianOp& a, const HermitianOp& b);

struct Spectrum;  // spectral.hpp

// Unit-trace positive semi-definite Hermitian matrix.  Construction
// symmetrizes, rejects eigenvalues below -kEpsPsd, clips the rest to zero,
// and renormalizes the trace exactly.  The spectral decomposition is
// computed once and kept.
class DensityMatrix {
  public:
    explicit DensityMatrix(const ComplexMatrix& m);

    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix pure(const std::vector<cplx>& amplitudes);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    // Column k of eigenvectors() is the eigenvector of eigenvalues()[k].
    const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
    // Number of eigenvalues above kEpsPsd.
    std::size_t rank() const;
    bool full_rank() const;

  private:
    ComplexMatrix m_;
    std::vector<double> eigenvalues_;
    ComplexMatrix eigenvectors_;
};

// Outcome label: a display name plus, for estimator POVMs, a point estimate
// in R^d.
struct PovmOutcome {
    std::string name;
    std::vector<double> estimate;  // empty for generic outcomes
};

// Finite resolution of the identity.  Elements must be PSD within kEpsPsd
// and sum to the identity within kPovmSumTol in operator norm.
class Povm {
  public:
    Povm(std::vector<HermitianOp> elements, std::vector<PovmOutcome> outcomes);
    // Generic labels "0", "1", ...
    explicit Povm(std::vector<HermitianOp> elements);

    std::size_t size() const { return elements_.size(); }
    std::size_t dim() const { return elements_.front().dim(); }
    const HermitianOp& element(std::size_t m) const { return elements_[m]; }
    const std::vector<HermitianOp>& elements() const { return elements_; }
    const PovmOutcome& outcome(std::size_t m) const { return outcomes_[m]; }
    bool has_estimates() const;

    // Outcome distribution under rho (clipped at 0, renormalized).
    std::vector<double> outcome_probabilities(const DensityMatrix& rho) const;

  private:
    std::vector<HermitianOp> elements_;
    std::vector<PovmOutcome> outcomes_;
};

}  // namespace qib
