#include "qib/estimation.hpp"

#include <algorithm>
#include <cmath>

#include "qib/linalg.hpp"
#include "qib/rng.hpp"
#include "qib/spectral.hpp"

namespace qib {

StateFamily::StateFamily(std::vector<double> theta, DensityMatrix rho,
                         std::vector<HermitianOp> derivs)
    : theta_(std::move(theta)), rho_(std::move(rho)), derivs_(std::move(derivs)) {
    if (theta_.size() != derivs_.size())
        throw DimensionError("parameter count does not match derivative count");
    if (derivs_.empty()) throw DimensionError("family needs at least one parameter");
    for (std::size_t k = 0; k < derivs_.size(); ++k) {
        if (derivs_[k].dim() != rho_.dim())
            throw DimensionError("derivative dimension does not match state");
        const double tr = std::abs(derivs_[k].trace_real());
        if (tr > 1e-9)
            throw NumericalError("derivative " + std::to_string(k) +
                                 " has trace " + std::to_string(tr));
    }
}

StateFamily differentiate(
    const std::function<DensityMatrix(const std::vector<double>&)>& map,
    const std::vector<double>& theta, double step) {
    DensityMatrix rho = map(theta);
    std::vector<HermitianOp> derivs;
    derivs.reserve(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        auto shifted = [&](double h) {
            std::vector<double> t = theta;
            t[k] += h;
            return map(t).matrix();
        };
        // Five-point stencil: Richardson extrapolation of the central
        // difference, error O(step^4).
        ComplexMatrix d = shifted(step) - shifted(-step);
        d *= cplx(8.0, 0.0);
        d -= shifted(2.0 * step) - shifted(-2.0 * step);
        d *= cplx(1.0 / (12.0 * step), 0.0);
        derivs.emplace_back(std::move(d));
    }
    return StateFamily(theta, std::move(rho), std::move(derivs));
}

// ---- SLD ----

SldResult sld(const StateFamily& fam) {
    const DensityMatrix& rho = fam.rho();
    const std::size_t dim = rho.dim();
    const std::size_t d = fam.params();
    const ComplexMatrix& v = rho.eigenvectors();
    const std::vector<double>& p = rho.eigenvalues();

    SldResult res;
    res.operators.reserve(d);
    res.max_residual = 0.0;
    const HermitianOp rho_h(rho.matrix());
    for (std::size_t k = 0; k < d; ++k) {
        // Work in the eigenbasis: L_ij = 2 (drho)_ij / (p_i + p_j), minimal
        // norm extension zero where the denominator vanishes.
        const ComplexMatrix dk_eig =
            v.adjoint() * fam.deriv(k).matrix() * v;
        ComplexMatrix l_eig(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const double den = p[i] + p[j];
                l_eig(i, j) = den > kEpsPsd ? 2.0 * dk_eig(i, j) / den
                                            : cplx(0.0, 0.0);
            }
        HermitianOp l(v * l_eig * v.adjoint());
        const double residual =
            (jordan(l, rho_h).matrix() - fam.deriv(k).matrix())
                .frobenius_norm();
        if (residual > 1e-8)
            throw NumericalError(
                "SLD residual " + std::to_string(residual) +
                " for parameter " + std::to_string(k) +
                " (derivative leaves the support of the state)");
        res.max_residual = std::max(res.max_residual, residual);
        res.operators.push_back(std::move(l));
    }

    res.fisher = ComplexMatrix(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
            res.fisher(k, l) =
                trace_prod_real(res.operators[k],
                                jordan(res.operators[l], rho_h));
    return res;
}

ComplexMatrix sld_fisher(const StateFamily& fam) { return sld(fam).fisher; }

ComplexMatrix rld_fisher(const StateFamily& fam) {
    const DensityMatrix& rho = fam.rho();
    for (double p : rho.eigenvalues())
        if (p <= kEpsRld)
            throw NumericalError(
                "RLD Fisher information needs a full-rank state "
                "(smallest eigenvalue " + std::to_string(p) + ")");
    const HermitianOp rho_inv = matrix_function(
        HermitianOp(rho.matrix()), [](double x) { return 1.0 / x; });
    const std::size_t d = fam.params();
    ComplexMatrix j(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const ComplexMatrix left = rho_inv.matrix() * fam.deriv(k).matrix();
        for (std::size_t l = 0; l < d; ++l)
            j(k, l) = trace_prod(left, fam.deriv(l).matrix());
    }
    return j;
}

// ---- D super-operator ----

HermitianOp d_operator(const HermitianOp& x, const DensityMatrix& rho) {
    if (x.dim() != rho.dim())
        throw DimensionError("operator dimension does not match state");
    const std::size_t dim = rho.dim();
    const ComplexMatrix& v = rho.eigenvectors();
    const std::vector<double>& p = rho.eigenvalues();
    const ComplexMatrix x_eig = v.adjoint() * x.matrix() * v;
    ComplexMatrix d_eig(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double den = p[i] + p[j];
            d_eig(i, j) = den > kEpsPsd
                              ? cplx(0.0, 2.0) * x_eig(i, j) * (p[j] - p[i]) / den
                              : cplx(0.0, 0.0);
        }
    return HermitianOp(v * d_eig * v.adjoint());
}

DInvarianceResult d_matrix_and_invariance(const StateFamily& fam) {
    const SldResult slds = sld(fam);
    const std::size_t d = fam.params();
    const HermitianOp rho_h(fam.rho().matrix());

    std::vector<HermitianOp> dl;
    dl.reserve(d);
    for (std::size_t k = 0; k < d; ++k)
        dl.push_back(d_operator(slds.operators[k], fam.rho()));

    DInvarianceResult res;
    res.d = ComplexMatrix(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
            res.d(k, l) = trace_prod_real(dl[k], jordan(slds.operators[l], rho_h));

    res.antisymmetry_drift = 0.0;
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
            res.antisymmetry_drift = std::max(
                res.antisymmetry_drift,
                std::abs((res.d(k, l) + res.d(l, k)).real()));
    if (res.antisymmetry_drift > 1e-9)
        throw NumericalError("D matrix antisymmetry drift " +
                             std::to_string(res.antisymmetry_drift));

    // Projection of D(L_k) onto span{L_j} in the <A,B> = Tr A (B o rho)
    // inner product, whose Gram matrix is the SLD Fisher matrix.
    std::vector<double> gram(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            gram[i * d + j] = slds.fisher(i, j).real();
    res.residuals.resize(d);
    res.d_invariant = true;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<double> rhs(d);
        for (std::size_t l = 0; l < d; ++l) rhs[l] = res.d(k, l).real();
        const std::vector<double> coeff = psd_solve(gram, d, rhs, 1e-12);
        double norm2 = trace_prod_real(dl[k], jordan(dl[k], rho_h));
        for (std::size_t l = 0; l < d; ++l) norm2 -= rhs[l] * coeff[l];
        res.residuals[k] = std::sqrt(std::max(norm2, 0.0));
        if (res.residuals[k] > 1e-7) res.d_invariant = false;
    }
    return res;
}

// ---- weight-matrix helpers ----

static HermitianOp validate_weight(const ComplexMatrix& g) {
    if (!g.square()) throw DimensionError("weight matrix must be square");
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (std::abs(g(i, j).imag()) > 1e-12)
                throw NumericalError("weight matrix must be real");
    HermitianOp h(g);
    if (min_eigenvalue(h) < -kEpsPsd)
        throw NumericalError("weight matrix is not positive semi-definite");
    return h;
}

static ComplexMatrix hermitian_inverse(const ComplexMatrix& m,
                                       const char* what) {
    HermitianOp h(m);
    const Spectrum s = eig_hermitian(h);
    double det = 1.0;
    for (double v : s.values) det *= v;
    if (std::abs(det) <= 1e-12)
        throw NumericalError(std::string(what) +
                             " is singular (determinant " +
                             std::to_string(det) + ")");
    return apply_spectral(s, [](double x) { return 1.0 / x; }).matrix();
}

double sld_bound(const StateFamily& fam, const ComplexMatrix& g) {
    const HermitianOp gh = validate_weight(g);
    const ComplexMatrix j_inv =
        hermitian_inverse(sld_fisher(fam), "SLD Fisher matrix");
    return trace_prod(gh.matrix(), j_inv).real();
}

// Tr G Re K + Tr |sqrt(G) Im K sqrt(G)| for Hermitian K and weight G.
static double real_plus_absolute_imag(const HermitianOp& gh,
                                      const ComplexMatrix& k) {
    const std::size_t d = k.rows();
    ComplexMatrix re_k(d, d), i_im_k(d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            re_k(a, b) = k(a, b).real();
            i_im_k(a, b) = cplx(0.0, 1.0) * k(a, b).imag();
        }
    const double term1 = trace_prod(gh.matrix(), re_k).real();
    const ComplexMatrix sg = matrix_sqrt(gh).matrix();
    const HermitianOp m(sg * i_im_k * sg);
    return term1 + trace_norm(m);
}

double rld_bound(const StateFamily& fam, const ComplexMatrix& g) {
    const HermitianOp gh = validate_weight(g);
    const ComplexMatrix k =
        hermitian_inverse(rld_fisher(fam), "RLD Fisher matrix");
    return real_plus_absolute_imag(gh, k);
}

LemmaLLResult lemma_ll_min(const ComplexMatrix& g, const HermitianOp& r) {
    HermitianOp gh = validate_weight(g);
    if (gh.dim() != r.dim())
        throw DimensionError("weight and operator dimensions differ");
    LemmaLLResult res;
    res.regularized = false;
    if (min_eigenvalue(gh) <= kEpsPsd) {
        gh = gh + 1e-10 * HermitianOp::identity(gh.dim());
        res.regularized = true;
    }
    const Spectrum gs = eig_hermitian(gh);
    const ComplexMatrix sg =
        apply_spectral(gs, [](double x) { return std::sqrt(x); }).matrix();
    const ComplexMatrix sg_inv =
        apply_spectral(gs, [](double x) { return 1.0 / std::sqrt(x); }).matrix();
    const HermitianOp mid(sg * r.matrix() * sg);
    res.value = trace_norm(mid);
    res.minimizer = HermitianOp(sg_inv * matrix_abs(mid).matrix() * sg_inv);
    return res;
}

double d_invariant_bound(const StateFamily& fam, const ComplexMatrix& g) {
    const HermitianOp gh = validate_weight(g);
    const DInvarianceResult din = d_matrix_and_invariance(fam);
    if (!din.d_invariant) {
        double worst = 0.0;
        for (double r : din.residuals) worst = std::max(worst, r);
        throw NumericalError(
            "model is not D-invariant at this point (projection residual " +
            std::to_string(worst) + "); use hn_bound instead");
    }
    const ComplexMatrix j_inv =
        hermitian_inverse(sld_fisher(fam), "SLD Fisher matrix");
    // Tr G J^{-1} + (1/2) Tr |sqrt(G) J^{-1} D J^{-1} sqrt(G)|
    const ComplexMatrix k = j_inv * din.d * j_inv;
    const ComplexMatrix sg = matrix_sqrt(gh).matrix();
    const HermitianOp mid(sg * (cplx(0.0, 1.0) * k) * sg);
    return trace_prod(gh.matrix(), j_inv).real() + 0.5 * trace_norm(mid);
}

ComplexMatrix z_matrix(const std::vector<HermitianOp>& x,
                       const DensityMatrix& rho) {
    const std::size_t d = x.size();
    ComplexMatrix z(d, d);
    for (std::size_t l = 0; l < d; ++l) {
        const ComplexMatrix xl_rho = x[l].matrix() * rho.matrix();
        for (std::size_t k = 0; k < d; ++k)
            z(k, l) = trace_prod(x[k].matrix(), xl_rho);
    }
    return z;
}

double c_theta(const ComplexMatrix& g, const ComplexMatrix& z) {
    if (g.rows() != z.rows())
        throw DimensionError("weight and Z matrix dimensions differ");
    const HermitianOp gh = validate_weight(g);
    return real_plus_absolute_imag(gh, z);
}

// ---- Holevo-Nagaoka optimization ----

namespace {

// Feasible affine parameterization of the collections {X^k}: a shared
// particular solution plus a basis of the common constraint null space.
struct HnProblem {
    std::vector<HermitianOp> x_part;     // one per parameter
    std::vector<HermitianOp> null_ops;   // orthonormal free directions
    std::size_t d;                       // parameter count
};

HnProblem build_hn_problem(const StateFamily& fam) {
    const std::size_t dim = fam.dim();
    const std::size_t d = fam.params();
    const std::vector<HermitianOp> basis = hermitian_basis(dim);
    const std::size_t nb = basis.size();
    const HermitianOp rho_h(fam.rho().matrix());

    // Constraint rows: Tr X rho = 0 and Tr X d_l rho = delta_kl.
    const std::size_t nc = d + 1;
    std::vector<double> a(nc * nb);
    for (std::size_t b = 0; b < nb; ++b) {
        a[0 * nb + b] = trace_prod_real(basis[b], rho_h);
        for (std::size_t l = 0; l < d; ++l)
            a[(1 + l) * nb + b] = trace_prod_real(basis[b], fam.deriv(l));
    }

    // Gram of the rows for the least-squares particular solutions.
    std::vector<double> aat(nc * nc, 0.0);
    for (std::size_t r = 0; r < nc; ++r)
        for (std::size_t s = 0; s < nc; ++s)
            for (std::size_t b = 0; b < nb; ++b)
                aat[r * nc + s] += a[r * nb + b] * a[s * nb + b];

    HnProblem prob;
    prob.d = d;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<double> rhs(nc, 0.0);
        rhs[1 + k] = 1.0;
        const std::vector<double> lam = psd_solve(aat, nc, rhs, 1e-14);
        std::vector<double> coeff(nb, 0.0);
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t r = 0; r < nc; ++r)
                coeff[b] += a[r * nb + b] * lam[r];
        // Verify feasibility of the least-squares solution.
        double worst = 0.0;
        for (std::size_t r = 0; r < nc; ++r) {
            double got = 0.0;
            for (std::size_t b = 0; b < nb; ++b) got += a[r * nb + b] * coeff[b];
            worst = std::max(worst, std::abs(got - rhs[r]));
        }
        if (worst > 1e-8)
            throw NumericalError(
                "direction constraints are infeasible (residual " +
                std::to_string(worst) + "); derivatives may be dependent");
        ComplexMatrix x(dim, dim);
        for (std::size_t b = 0; b < nb; ++b) {
            if (coeff[b] == 0.0) continue;
            ComplexMatrix t = basis[b].matrix();
            t *= cplx(coeff[b], 0.0);
            x += t;
        }
        prob.x_part.emplace_back(std::move(x));
    }

    // Null space of the constraints from the spectral decomposition of A^T A.
    ComplexMatrix ata(nb, nb);
    for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t c = 0; c < nb; ++c) {
            double v = 0.0;
            for (std::size_t r = 0; r < nc; ++r)
                v += a[r * nb + b] * a[r * nb + c];
            ata(b, c) = v;
        }
    const Spectrum s = eig_hermitian(HermitianOp(std::move(ata)));
    for (std::size_t idx = 0; idx < nb; ++idx) {
        if (s.values[idx] > 1e-12) continue;
        ComplexMatrix n(dim, dim);
        for (std::size_t b = 0; b < nb; ++b) {
            const cplx w = s.vectors(b, idx);
            if (std::abs(w) < 1e-15) continue;
            ComplexMatrix t = basis[b].matrix();
            t *= w.real();  // eigenvectors of a real symmetric matrix
            n += t;
        }
        prob.null_ops.emplace_back(std::move(n));
    }
    return prob;
}

struct HnObjective {
    const HnProblem& prob;
    const DensityMatrix& rho;
    const HermitianOp& gh;
    ComplexMatrix sg;  // sqrt of the weight

    std::vector<HermitianOp> assemble(const std::vector<double>& y) const {
        const std::size_t nn = prob.null_ops.size();
        std::vector<HermitianOp> x;
        x.reserve(prob.d);
        for (std::size_t k = 0; k < prob.d; ++k) {
            ComplexMatrix m = prob.x_part[k].matrix();
            for (std::size_t i = 0; i < nn; ++i) {
                ComplexMatrix t = prob.null_ops[i].matrix();
                t *= cplx(y[k * nn + i], 0.0);
                m += t;
            }
            x.emplace_back(std::move(m));
        }
        return x;
    }

    // Smoothed objective Tr G Re Z + sum_i sqrt(lambda_i^2 + mu^2) and its
    // gradient in the free coordinates.
    double eval(const std::vector<double>& y, double mu,
                std::vector<double>* grad) const {
        const std::vector<HermitianOp> x = assemble(y);
        const std::size_t d = prob.d;
        const HermitianOp rho_h(rho.matrix());

        std::vector<HermitianOp> jx;  // X^l o rho
        std::vector<HermitianOp> cx;  // i [X^l, rho]
        jx.reserve(d);
        cx.reserve(d);
        for (std::size_t l = 0; l < d; ++l) {
            jx.push_back(jordan(x[l], rho_h));
            cx.push_back(commutator_i(x[l], rho_h));
        }

        ComplexMatrix z(d, d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                z(k, l) = trace_prod_real(x[k], jx[l]) -
                          cplx(0.0, 0.5) * trace_prod_real(x[k], cx[l]);
        // Im Tr X^k X^l rho = -(1/2) Tr X^k (i[X^l, rho]):
        //   2i Im Z_kl = Tr X^k (X^l rho - rho X^l).

        double term1 = 0.0;
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                term1 += gh(k, l).real() * z(l, k).real();

        ComplexMatrix i_im_z(d, d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                i_im_z(k, l) = cplx(0.0, 1.0) * z(k, l).imag();
        const HermitianOp h(sg * i_im_z * sg);
        const Spectrum hs = eig_hermitian(h);
        double term2 = 0.0;
        for (double lam : hs.values)
            term2 += std::sqrt(lam * lam + mu * mu);

        if (grad) {
            const HermitianOp phi_prime = apply_spectral(hs, [mu](double lam) {
                return lam / std::sqrt(lam * lam + mu * mu);
            });
            const ComplexMatrix w = sg * phi_prime.matrix() * sg;
            const std::size_t nn = prob.null_ops.size();
            grad->assign(d * nn, 0.0);
            for (std::size_t m = 0; m < d; ++m) {
                ComplexMatrix gm(rho.dim(), rho.dim());
                for (std::size_t l = 0; l < d; ++l) {
                    ComplexMatrix t = jx[l].matrix();
                    t *= cplx(2.0 * gh(m, l).real(), 0.0);
                    gm += t;
                    ComplexMatrix c = cx[l].matrix();
                    c *= cplx(-w(m, l).imag(), 0.0);
                    gm += c;
                }
                for (std::size_t i = 0; i < nn; ++i)
                    (*grad)[m * nn + i] =
                        hs_inner(prob.null_ops[i].matrix(), gm).real();
            }
        }
        return term1 + term2;
    }
};

}  // namespace

HnResult hn_bound(const StateFamily& fam, const ComplexMatrix& g, double tol) {
    if (g.rows() != fam.params())
        throw DimensionError("weight dimension does not match parameter count");
    const HermitianOp gh = validate_weight(g);
    const HnProblem prob = build_hn_problem(fam);
    const std::size_t nn = prob.null_ops.size();
    const std::size_t nv = prob.d * nn;

    HnObjective obj{prob, fam.rho(), gh, matrix_sqrt(gh).matrix()};

    auto exact_value = [&](const std::vector<double>& y) {
        return c_theta(g, z_matrix(obj.assemble(y), fam.rho()));
    };

    HnResult res;
    res.iterations = 0;

    std::vector<double> best_y(nv, 0.0);
    double best_val = exact_value(best_y);

    if (nv > 0) {
        const double grad_tol = std::max(tol * 1e-2, 1e-12);
        Rng rng(20240811);
        for (std::size_t restart = 0; restart < 4; ++restart) {
            std::vector<double> y(nv, 0.0);
            if (restart > 0)
                for (double& v : y) v = 0.1 * rng.normal();

            for (double mu = 1e-2; mu >= 0.9e-8; mu *= 0.1) {
                std::vector<double> grad, grad_prev, y_prev;
                double f = obj.eval(y, mu, &grad);
                double alpha = 1e-3;
                for (std::size_t it = 0; it < 2000; ++it) {
                    ++res.iterations;
                    double gnorm = 0.0;
                    for (double v : grad) gnorm += v * v;
                    gnorm = std::sqrt(gnorm);
                    if (gnorm <= std::max(grad_tol, mu * 1e-4)) break;

                    if (!y_prev.empty()) {
                        // Barzilai-Borwein step from the last displacement.
                        double ss = 0.0, sq = 0.0;
                        for (std::size_t i = 0; i < nv; ++i) {
                            const double si = y[i] - y_prev[i];
                            ss += si * si;
                            sq += si * (grad[i] - grad_prev[i]);
                        }
                        if (sq > 1e-18)
                            alpha = std::clamp(ss / sq, 1e-12, 1e6);
                    }
                    y_prev = y;
                    grad_prev = grad;
                    // Backtracking keeps the convex descent monotone.
                    double step = alpha;
                    for (int bt = 0; bt < 60; ++bt) {
                        std::vector<double> trial = y_prev;
                        for (std::size_t i = 0; i < nv; ++i)
                            trial[i] -= step * grad_prev[i];
                        const double ft = obj.eval(trial, mu, &grad);
                        if (ft <= f - 0.25 * step * gnorm * gnorm ||
                            step < 1e-16) {
                            y = std::move(trial);
                            f = ft;
                            break;
                        }
                        step *= 0.5;
                    }
                }
            }
            const double val = exact_value(y);
            if (val < best_val) {
                best_val = val;
                best_y = y;
            }
        }
    }

    res.x = obj.assemble(best_y);
    res.value = best_val;

    res.constraint_residual = 0.0;
    for (std::size_t k = 0; k < prob.d; ++k) {
        res.constraint_residual =
            std::max(res.constraint_residual,
                     std::abs(trace_prod_real(
                         res.x[k], HermitianOp(fam.rho().matrix()))));
        for (std::size_t l = 0; l < prob.d; ++l) {
            const double want = k == l ? 1.0 : 0.0;
            res.constraint_residual = std::max(
                res.constraint_residual,
                std::abs(trace_prod_real(res.x[k], fam.deriv(l)) - want));
        }
    }
    if (res.constraint_residual > 1e-8)
        throw NumericalError("optimizer left the constraint set (residual " +
                             std::to_string(res.constraint_residual) + ")");
    return res;
}

// ---- estimator diagnostics ----

static void require_estimates(const StateFamily& fam, const Povm& estimator) {
    if (estimator.dim() != fam.dim())
        throw DimensionError("estimator dimension does not match state");
    if (!estimator.has_estimates())
        throw DimensionError("POVM outcomes carry no point estimates");
    for (std::size_t m = 0; m < estimator.size(); ++m)
        if (estimator.outcome(m).estimate.size() != fam.params())
            throw DimensionError("estimate dimension does not match parameters");
}

ComplexMatrix mse_matrix(const StateFamily& fam, const Povm& estimator) {
    require_estimates(fam, estimator);
    const std::size_t d = fam.params();
    const HermitianOp rho_h(fam.rho().matrix());
    ComplexMatrix v(d, d);
    for (std::size_t m = 0; m < estimator.size(); ++m) {
        const double pm = trace_prod_real(estimator.element(m), rho_h);
        const std::vector<double>& est = estimator.outcome(m).estimate;
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                v(k, l) += pm * (est[k] - fam.theta()[k]) *
                           (est[l] - fam.theta()[l]);
    }
    return v;
}

UnbiasednessReport locally_unbiased_check(const StateFamily& fam,
                                          const Povm& estimator) {
    require_estimates(fam, estimator);
    const std::size_t d = fam.params();
    const HermitianOp rho_h(fam.rho().matrix());
    UnbiasednessReport rep{0.0, 0.0, false};
    for (std::size_t k = 0; k < d; ++k) {
        double mean = 0.0;
        for (std::size_t m = 0; m < estimator.size(); ++m)
            mean += estimator.outcome(m).estimate[k] *
                    trace_prod_real(estimator.element(m), rho_h);
        rep.mean_residual =
            std::max(rep.mean_residual, std::abs(mean - fam.theta()[k]));
        for (std::size_t l = 0; l < d; ++l) {
            double slope = 0.0;
            for (std::size_t m = 0; m < estimator.size(); ++m)
                slope += estimator.outcome(m).estimate[k] *
                         trace_prod_real(estimator.element(m), fam.deriv(l));
            const double want = k == l ? 1.0 : 0.0;
            rep.deriv_residual =
                std::max(rep.deriv_residual, std::abs(slope - want));
        }
    }
    rep.locally_unbiased =
        rep.mean_residual <= 1e-8 && rep.deriv_residual <= 1e-8;
    return rep;
}

std::vector<HermitianOp> x_of_estimator(const StateFamily& fam,
                                        const Povm& estimator) {
    require_estimates(fam, estimator);
    const std::size_t d = fam.params();
    std::vector<HermitianOp> x;
    x.reserve(d);
    for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix m(fam.dim(), fam.dim());
        for (std::size_t o = 0; o < estimator.size(); ++o) {
            ComplexMatrix t = estimator.element(o).matrix();
            t *= cplx(estimator.outcome(o).estimate[k] - fam.theta()[k], 0.0);
            m += t;
        }
        x.emplace_back(std::move(m));
    }
    return x;
}

}  // namespace qib
