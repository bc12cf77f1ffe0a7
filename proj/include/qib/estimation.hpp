#pragma once

#include <functional>
#include <vector>

#include "qib/types.hpp"

namespace qib {

// Local parametric model at a point: the state, the parameter value, and the
// partial derivatives of the state.  Derivatives must be Hermitian and
// traceless within 1e-9.
class StateFamily {
  public:
    StateFamily(std::vector<double> theta, DensityMatrix rho,
                std::vector<HermitianOp> derivs);

    std::size_t params() const { return derivs_.size(); }
    std::size_t dim() const { return rho_.dim(); }
    const std::vector<double>& theta() const { return theta_; }
    const DensityMatrix& rho() const { return rho_; }
    const HermitianOp& deriv(std::size_t k) const { return derivs_[k]; }
    const std::vector<HermitianOp>& derivs() const { return derivs_; }

  private:
    std::vector<double> theta_;
    DensityMatrix rho_;
    std::vector<HermitianOp> derivs_;
};

// Evaluate a parametric map and its derivatives at theta by five-point
// central differences (Richardson-extrapolated), step 1e-5.
StateFamily differentiate(
    const std::function<DensityMatrix(const std::vector<double>&)>& map,
    const std::vector<double>& theta, double step = 1e-5);

struct SldResult {
    std::vector<HermitianOp> operators;  // minimal-norm on the support
    ComplexMatrix fisher;                // J_kl = Re Tr L_k L_l rho
    double max_residual;                 // max_k ||L_k o rho - d_k rho||_F
};

// Symmetric logarithmic derivatives: solve L o rho = d rho in the eigenbasis
// of rho, zero on the kernel.  Residual above 1e-8 is an error.
SldResult sld(const StateFamily& fam);
ComplexMatrix sld_fisher(const StateFamily& fam);

// Right logarithmic derivative Fisher matrix
// J^R_kl = Tr rho^{-1} (d_k rho)(d_l rho); needs eigenvalues above 1e-8.
ComplexMatrix rld_fisher(const StateFamily& fam);

// Super-operator D defined by rho o D(X) = i [X, rho]; in the eigenbasis
// D(X)_ij = 2i X_ij (p_j - p_i)/(p_i + p_j), zero where p_i + p_j vanishes.
HermitianOp d_operator(const HermitianOp& x, const DensityMatrix& rho);

struct DInvarianceResult {
    ComplexMatrix d;                 // D_kl = Tr D(L_k)(L_l o rho), real antisym
    double antisymmetry_drift;       // max |D + D^T| entry
    std::vector<double> residuals;   // per-parameter projection residuals
    bool d_invariant;                // all residuals <= 1e-7
};

// D matrix and the check whether span{L_k} is invariant under the D
// super-operator (projection in the <A,B> = Tr A(B o rho) inner product).
DInvarianceResult d_matrix_and_invariance(const StateFamily& fam);

// Tr G J^{-1}.  Errors if det J <= 1e-12.
double sld_bound(const StateFamily& fam, const ComplexMatrix& g);

// Tr G Re(J^R)^{-1} + Tr |sqrt(G) Im(J^R)^{-1} sqrt(G)|.
double rld_bound(const StateFamily& fam, const ComplexMatrix& g);

struct LemmaLLResult {
    double value;           // Tr |sqrt(G) R sqrt(G)|
    HermitianOp minimizer;  // sqrt(G)^{-1} |sqrt(G) R sqrt(G)| sqrt(G)^{-1}
    bool regularized;       // true when G was singular and 1e-10 I was added
};

// min { Tr G V : V >= R, V >= -R } for Hermitian R and real symmetric
// PSD weight G.
LemmaLLResult lemma_ll_min(const ComplexMatrix& g, const HermitianOp& r);

// Tr G J^{-1} + (1/2) Tr |sqrt(G) J^{-1} D J^{-1} sqrt(G)|.  Errors when the
// model is not D-invariant (use hn_bound then).
double d_invariant_bound(const StateFamily& fam, const ComplexMatrix& g);

// Z(X)_kl = Tr X^k X^l rho (Hermitian in kl).
ComplexMatrix z_matrix(const std::vector<HermitianOp>& x,
                       const DensityMatrix& rho);

// Tr G Re Z + Tr |sqrt(G) Im Z sqrt(G)|.
double c_theta(const ComplexMatrix& g, const ComplexMatrix& z);

struct HnResult {
    double value;
    std::vector<HermitianOp> x;  // argmin, satisfies the direction constraints
    double constraint_residual;  // max deviation from Tr X^k d_l rho = delta_kl
    std::size_t iterations;
};

// inf_X c_theta(G, Z(X)) over Hermitian X^k with Tr X^k rho = 0 and
// Tr X^k (d_l rho) = delta_kl.
HnResult hn_bound(const StateFamily& fam, const ComplexMatrix& g,
                  double tol = 1e-7);

// Covariance of the estimates under the outcome distribution at theta:
// V_kl = sum_m (est_m - theta)_k (est_m - theta)_l Tr rho Pi_m.
ComplexMatrix mse_matrix(const StateFamily& fam, const Povm& estimator);

struct UnbiasednessReport {
    double mean_residual;   // max_k |E[est_k] - theta_k|
    double deriv_residual;  // max_kl |sum_m est_{m,k} Tr d_l rho Pi_m - delta_kl|
    bool locally_unbiased;  // both residuals <= 1e-8
};

UnbiasednessReport locally_unbiased_check(const StateFamily& fam,
                                          const Povm& estimator);

// X^k(Pi) = sum_m (est_{m,k} - theta_k) Pi_m.
std::vector<HermitianOp> x_of_estimator(const StateFamily& fam,
                                        const Povm& estimator);

}  // namespace qib
