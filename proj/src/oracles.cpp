#include "qib/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "qib/spectral.hpp"

namespace qib::oracle {

OracleConfig::OracleConfig(std::size_t resolution_, std::uint64_t seed_)
    : resolution(resolution_), seed(seed_) {
    if (resolution < 1000)
        throw NumericalError("oracle resolution must be at least 1000");
}

double classical_ba_capacity(const std::vector<std::vector<double>>& channel,
                             double tol, std::size_t max_iter) {
    const std::size_t nx = channel.size();
    if (nx == 0) throw DimensionError("empty channel");
    const std::size_t ny = channel.front().size();
    for (const auto& row : channel) {
        if (row.size() != ny) throw DimensionError("ragged transition matrix");
        double s = 0.0;
        for (double v : row) {
            if (v < -kProbTol) throw NumericalError("negative transition probability");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-9)
            throw NumericalError("transition row sums to " + std::to_string(s));
    }

    std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
    std::vector<double> r(ny), dkl(nx);
    for (std::size_t it = 0; it < max_iter; ++it) {
        std::fill(r.begin(), r.end(), 0.0);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y) r[y] += p[x] * channel[x][y];
        double value = 0.0, cert = -1e300;
        for (std::size_t x = 0; x < nx; ++x) {
            double d = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                const double w = channel[x][y];
                if (w > 0.0) d += w * std::log(w / r[y]);
            }
            dkl[x] = d;
            value += p[x] * d;
            cert = std::max(cert, d);
        }
        if (cert - value <= tol) return value;
        double tot = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            p[x] *= std::exp(dkl[x] - cert);
            tot += p[x];
        }
        for (double& v : p) v /= tot;
    }
    throw ConvergenceError("classical capacity iteration did not certify");
}

namespace {

double entropy_of(const ComplexMatrix& m) {
    const Spectrum s = eig_hermitian(HermitianOp(m));
    double h = 0.0;
    for (double v : s.values)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double mixture_functional(const std::vector<DensityMatrix>& outputs,
                          const std::vector<double>& letter_entropy,
                          const std::vector<double>& p) {
    const std::size_t dim = outputs.front().dim();
    ComplexMatrix mix(dim, dim);
    double avg = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (p[x] == 0.0) continue;
        ComplexMatrix t = outputs[x].matrix();
        t *= cplx(p[x], 0.0);
        mix += t;
        avg += p[x] * letter_entropy[x];
    }
    return entropy_of(mix) - avg;
}

}  // namespace

GridCapacityResult grid_capacity(const std::vector<DensityMatrix>& outputs,
                                 const OracleConfig& config) {
    const std::size_t nx = outputs.size();
    if (nx == 0 || nx > 3)
        throw DimensionError("grid capacity supports alphabets of size 1 to 3");
    std::vector<double> letter_entropy(nx);
    for (std::size_t x = 0; x < nx; ++x)
        letter_entropy[x] = entropy_of(outputs[x].matrix());

    GridCapacityResult best{-1.0, std::vector<double>(nx, 0.0)};
    const std::size_t res = config.resolution;
    const double inv = 1.0 / static_cast<double>(res);
    if (nx == 1) {
        best.value = 0.0;
        best.prior = {1.0};
        return best;
    }
    if (nx == 2) {
        for (std::size_t i = 0; i <= res; ++i) {
            const std::vector<double> p{i * inv, 1.0 - i * inv};
            const double v = mixture_functional(outputs, letter_entropy, p);
            if (v > best.value) {
                best.value = v;
                best.prior = p;
            }
        }
        return best;
    }
    for (std::size_t i = 0; i <= res; ++i)
        for (std::size_t j = 0; i + j <= res; ++j) {
            const std::vector<double> p{i * inv, j * inv, 1.0 - (i + j) * inv};
            const double v = mixture_functional(outputs, letter_entropy, p);
            if (v > best.value) {
                best.value = v;
                best.prior = p;
            }
        }
    return best;
}

namespace {

// Jordan-equation solve by vectorization: (rho (x) I + I (x) rho^T)/2
// vec(L) = vec(drho), pseudo-inverted on its support.
HermitianOp jordan_solve(const DensityMatrix& rho, const HermitianOp& drho) {
    const std::size_t d = rho.dim();
    ComplexMatrix big =
        tensor(rho.matrix(), ComplexMatrix::identity(d)) +
        tensor(ComplexMatrix::identity(d), rho.matrix().transpose());
    big *= cplx(0.5, 0.0);
    // big is Hermitian and PSD; pseudo-invert and apply to vec(drho).
    const Spectrum s = eig_hermitian(HermitianOp(std::move(big)));
    std::vector<cplx> vec(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) vec[i * d + j] = drho(i, j);
    // Project onto eigenvectors, scale, project back.
    std::vector<cplx> out(d * d, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < d * d; ++k) {
        if (s.values[k] <= kEpsPsd) continue;
        cplx coeff = 0.0;
        for (std::size_t a = 0; a < d * d; ++a)
            coeff += std::conj(s.vectors(a, k)) * vec[a];
        coeff /= s.values[k];
        for (std::size_t a = 0; a < d * d; ++a)
            out[a] += coeff * s.vectors(a, k);
    }
    ComplexMatrix l(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) l(i, j) = out[i * d + j];
    return HermitianOp(std::move(l));
}

}  // namespace

std::vector<Povm> random_unbiased_estimators(const StateFamily& fam,
                                             std::size_t count,
                                             const OracleConfig& config) {
    const std::size_t d = fam.params();
    const std::size_t dim = fam.dim();
    std::vector<Povm> result;
    result.reserve(count);
    if (count == 0) return result;

    // Logarithmic derivatives and their information matrix, recomputed
    // through the vectorized solver.
    std::vector<HermitianOp> l;
    l.reserve(d);
    for (std::size_t k = 0; k < d; ++k)
        l.push_back(jordan_solve(fam.rho(), fam.deriv(k)));
    std::vector<double> fisher(d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t m = 0; m < d; ++m)
            fisher[k * d + m] = trace_prod_real(l[k], fam.deriv(m));
    // Columns of the inverse information matrix.
    std::vector<std::vector<double>> jinv_col(d);
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<double> rhs(d, 0.0);
        rhs[k] = 1.0;
        jinv_col[k] = psd_solve(fisher, d, rhs, 1e-14);
    }

    // Spectral estimator: measure one logarithmic derivative chosen
    // uniformly at random, rescale its eigenvalue into an estimate shift.
    {
        std::vector<HermitianOp> elements;
        std::vector<PovmOutcome> outcomes;
        for (std::size_t k = 0; k < d; ++k) {
            const Spectrum s = eig_hermitian(l[k]);
            for (std::size_t i = 0; i < dim; ++i) {
                ComplexMatrix proj(dim, dim);
                for (std::size_t a = 0; a < dim; ++a)
                    for (std::size_t b = 0; b < dim; ++b)
                        proj(a, b) = s.vectors(a, i) * std::conj(s.vectors(b, i));
                proj *= cplx(1.0 / static_cast<double>(d), 0.0);
                elements.emplace_back(std::move(proj));
                std::vector<double> est = fam.theta();
                for (std::size_t a = 0; a < d; ++a)
                    est[a] += static_cast<double>(d) * jinv_col[k][a] *
                              s.values[i];
                outcomes.push_back(
                    {"L" + std::to_string(k) + ":" + std::to_string(i),
                     std::move(est)});
            }
        }
        result.emplace_back(std::move(elements), std::move(outcomes));
    }

    Rng rng(config.seed);
    const HermitianOp rho_h(fam.rho().matrix());
    while (result.size() < count) {
        const std::size_t n_out = dim + d + 1 + rng.below(3);
        const std::vector<HermitianOp> elements = rng.random_povm(dim, n_out);

        // Rows: outcome probabilities, then the derivative responses.
        const std::size_t nc = d + 1;
        std::vector<double> rows(nc * n_out);
        for (std::size_t m = 0; m < n_out; ++m) {
            rows[0 * n_out + m] = trace_prod_real(elements[m], rho_h);
            for (std::size_t lq = 0; lq < d; ++lq)
                rows[(1 + lq) * n_out + m] =
                    trace_prod_real(elements[m], fam.deriv(lq));
        }
        std::vector<double> gram(nc * nc, 0.0);
        for (std::size_t r = 0; r < nc; ++r)
            for (std::size_t s = 0; s < nc; ++s)
                for (std::size_t m = 0; m < n_out; ++m)
                    gram[r * nc + s] +=
                        rows[r * n_out + m] * rows[s * n_out + m];

        // Minimal-norm estimates meeting the unbiasedness equations,
        // solved per parameter.
        std::vector<std::vector<double>> est(n_out,
                                             std::vector<double>(d, 0.0));
        double worst = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<double> rhs(nc, 0.0);
            rhs[0] = fam.theta()[k];
            rhs[1 + k] = 1.0;
            const std::vector<double> lam = psd_solve(gram, nc, rhs, 1e-13);
            std::vector<double> t(n_out, 0.0);
            for (std::size_t m = 0; m < n_out; ++m)
                for (std::size_t r = 0; r < nc; ++r)
                    t[m] += rows[r * n_out + m] * lam[r];
            for (std::size_t r = 0; r < nc; ++r) {
                double got = 0.0;
                for (std::size_t m = 0; m < n_out; ++m)
                    got += rows[r * n_out + m] * t[m];
                worst = std::max(worst, std::abs(got - rhs[r]));
            }
            for (std::size_t m = 0; m < n_out; ++m) est[m][k] = t[m];
        }
        if (worst > 1e-10) continue;  // degenerate draw, resample

        std::vector<PovmOutcome> outcomes(n_out);
        for (std::size_t m = 0; m < n_out; ++m)
            outcomes[m] = {std::to_string(m), est[m]};
        result.emplace_back(elements, std::move(outcomes));
    }
    return result;
}

std::vector<HermitianOp> feasible_v_sampler(const HermitianOp& r,
                                            std::size_t count,
                                            const OracleConfig& config) {
    std::vector<HermitianOp> out;
    out.reserve(count);
    if (count == 0) return out;
    const HermitianOp base = matrix_abs(r);
    out.push_back(base);
    Rng rng(config.seed);
    const double scale = trace_norm(r) + 1.0;
    while (out.size() < count) {
        const HermitianOp h = rng.random_hermitian(r.dim());
        HermitianOp psd(h.matrix() * h.matrix());
        const double s =
            rng.uniform() < 0.25
                ? 0.0
                : scale * std::exp(rng.uniform(-9.0, 1.0)) /
                      static_cast<double>(r.dim());
        out.push_back(base + s * psd);
    }
    return out;
}

}  // namespace qib::oracle
