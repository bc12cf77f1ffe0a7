#include "qib/covariant.hpp"

#include <algorithm>
#include <cmath>

#include "qib/linalg.hpp"
#include "qib/spectral.hpp"

namespace qib {

GroupRep::GroupRep(std::vector<std::size_t> mult_table,
                   std::vector<ComplexMatrix> unitaries)
    : table_(std::move(mult_table)), unitaries_(std::move(unitaries)) {
    order_ = unitaries_.size();
    if (order_ == 0) throw DimensionError("group needs at least one element");
    if (order_ > 64)
        throw DimensionError("group order " + std::to_string(order_) +
                             " exceeds the supported cap of 64");
    if (table_.size() != order_ * order_)
        throw DimensionError("multiplication table size mismatch");
    for (std::size_t v : table_)
        if (v >= order_)
            throw NumericalError("multiplication table entry out of range");

    // Identity element.
    identity_ = order_;
    for (std::size_t e = 0; e < order_; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < order_ && ok; ++g)
            ok = mul(e, g) == g && mul(g, e) == g;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ == order_)
        throw NumericalError("multiplication table has no identity element");

    // Associativity, exhaustively.
    for (std::size_t g = 0; g < order_; ++g)
        for (std::size_t h = 0; h < order_; ++h)
            for (std::size_t k = 0; k < order_; ++k)
                if (mul(mul(g, h), k) != mul(g, mul(h, k)))
                    throw NumericalError(
                        "multiplication table is not associative");

    // Inverses.
    inverse_.assign(order_, order_);
    for (std::size_t g = 0; g < order_; ++g) {
        for (std::size_t h = 0; h < order_; ++h)
            if (mul(g, h) == identity_ && mul(h, g) == identity_) {
                inverse_[g] = h;
                break;
            }
        if (inverse_[g] == order_)
            throw NumericalError("group element " + std::to_string(g) +
                                 " has no inverse");
    }

    // Unitarity and the (projective) homomorphism property.
    const std::size_t d = unitaries_.front().rows();
    const ComplexMatrix eye = ComplexMatrix::identity(d);
    for (std::size_t g = 0; g < order_; ++g) {
        if (unitaries_[g].rows() != d || !unitaries_[g].square())
            throw DimensionError("representation matrices have mixed shapes");
        const double defect =
            (unitaries_[g].adjoint() * unitaries_[g] - eye).max_abs();
        if (defect > 1e-9)
            throw NumericalError("matrix of element " + std::to_string(g) +
                                 " is not unitary (defect " +
                                 std::to_string(defect) + ")");
    }
    for (std::size_t g = 0; g < order_; ++g)
        for (std::size_t h = 0; h < order_; ++h) {
            const ComplexMatrix m = unitaries_[g] * unitaries_[h] *
                                    unitaries_[mul(g, h)].adjoint();
            const cplx phase = m.trace() / static_cast<double>(d);
            if (std::abs(std::abs(phase) - 1.0) > 1e-8)
                throw NumericalError("representation fails the product law");
            ComplexMatrix dev = m;
            dev -= phase * eye;
            if (dev.max_abs() > 1e-8)
                throw NumericalError(
                    "representation fails the product law up to a phase "
                    "(defect " + std::to_string(dev.max_abs()) + ")");
        }
}

bool GroupRep::commutative() const {
    for (std::size_t g = 0; g < order_; ++g)
        for (std::size_t h = 0; h < g; ++h)
            if (mul(g, h) != mul(h, g)) return false;
    return true;
}

bool GroupRep::irreducible() const {
    // Rank of the group twirl: 1 exactly when the commutant is trivial.
    const std::size_t d = dim();
    const std::vector<HermitianOp> basis = hermitian_basis(d);
    std::vector<ComplexMatrix> twirled;
    twirled.reserve(basis.size());
    for (const HermitianOp& b : basis) {
        ComplexMatrix t(d, d);
        for (std::size_t g = 0; g < order_; ++g)
            t += unitaries_[g] * b.matrix() * unitaries_[g].adjoint();
        t *= cplx(1.0 / static_cast<double>(order_), 0.0);
        twirled.push_back(std::move(t));
    }
    const std::size_t nb = basis.size();
    ComplexMatrix gram(nb, nb);
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            gram(a, b) = hs_inner(twirled[a], twirled[b]);
    const Spectrum s = eig_hermitian(HermitianOp(std::move(gram)));
    std::size_t rank = 0;
    for (double v : s.values)
        if (v > 1e-9) ++rank;
    return rank == 1;
}

double check_covariance(const GroupRep& rep,
                        const std::vector<std::size_t>& action,
                        const std::vector<DensityMatrix>& states) {
    const std::size_t m = states.size();
    if (action.size() != rep.order() * m)
        throw DimensionError("action table size mismatch");
    double defect = 0.0;
    for (std::size_t g = 0; g < rep.order(); ++g)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t gj = action[g * m + j];
            if (gj >= m) throw NumericalError("action table entry out of range");
            const ComplexMatrix moved = rep.unitary(g) * states[j].matrix() *
                                        rep.unitary(g).adjoint();
            defect = std::max(defect,
                              (moved - states[gj].matrix()).frobenius_norm());
        }
    return defect;
}

CovariantModel::CovariantModel(GroupRep rep, std::vector<std::size_t> action,
                               std::vector<DensityMatrix> states,
                               std::vector<double> error, std::size_t theta0,
                               std::vector<std::vector<double>> orbit_params)
    : rep_(std::move(rep)),
      action_(std::move(action)),
      states_(std::move(states)),
      error_(std::move(error)),
      theta0_(theta0),
      orbit_params_(std::move(orbit_params)) {
    const std::size_t n = rep_.order();
    const std::size_t m = states_.size();
    if (m == 0) throw DimensionError("orbit is empty");
    if (theta0_ >= m) throw DimensionError("reference point index out of range");
    if (action_.size() != n * m)
        throw DimensionError("action table size mismatch");
    if (error_.size() != m * m)
        throw DimensionError("error table size mismatch");
    for (const DensityMatrix& s : states_)
        if (s.dim() != rep_.dim())
            throw DimensionError("state dimension does not match representation");

    for (std::size_t v : action_)
        if (v >= m) throw NumericalError("action table entry out of range");
    // Action laws, exhaustively and exactly.
    for (std::size_t j = 0; j < m; ++j)
        if (act(rep_.identity(), j) != j)
            throw NumericalError("identity does not act trivially");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t j = 0; j < m; ++j)
                if (act(g, act(h, j)) != act(rep_.mul(g, h), j))
                    throw NumericalError("action is not compatible with the "
                                         "group multiplication");

    // Transitivity from the reference point; smallest transporter per point.
    transporter_.assign(m, n);
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t j = act(g, theta0_);
        if (transporter_[j] == n) transporter_[j] = g;
    }
    for (std::size_t j = 0; j < m; ++j)
        if (transporter_[j] == n)
            throw NumericalError("orbit point " + std::to_string(j) +
                                 " is not reachable from the reference point");

    for (std::size_t g = 0; g < n; ++g)
        if (act(g, theta0_) == theta0_) stabilizer_.push_back(g);

    // Invariance of the error function, exactly.
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (error_[act(g, i) * m + act(g, j)] != error_[i * m + j])
                    throw NumericalError("error function is not invariant");

    covariance_defect_ = check_covariance(rep_, action_, states_);
    if (covariance_defect_ > 1e-8)
        throw NumericalError("family is not covariant (defect " +
                             std::to_string(covariance_defect_) + ")");

    if (orbit_params_.empty()) {
        orbit_params_.resize(m);
        for (std::size_t j = 0; j < m; ++j)
            orbit_params_[j] = {static_cast<double>(j)};
    }
    if (orbit_params_.size() != m)
        throw DimensionError("orbit parameter count mismatch");
}

// ---- covariant POVMs ----

static HermitianOp stabilizer_average(const CovariantModel& model,
                                      const HermitianOp& t) {
    const GroupRep& rep = model.rep();
    ComplexMatrix avg(rep.dim(), rep.dim());
    for (std::size_t s : model.stabilizer())
        avg += rep.unitary(s) * t.matrix() * rep.unitary(s).adjoint();
    avg *= cplx(1.0 / static_cast<double>(model.stabilizer().size()), 0.0);
    return HermitianOp(std::move(avg));
}

Povm povm_from_seed(const CovariantModel& model, const HermitianOp& seed) {
    const GroupRep& rep = model.rep();
    if (seed.dim() != rep.dim())
        throw DimensionError("seed dimension does not match representation");
    const std::size_t m = model.orbit_size();
    HermitianOp t = stabilizer_average(model, seed);
    const double lo = min_eigenvalue(t);
    if (lo < -kEpsPsd)
        throw NumericalError("seed is not positive semi-definite (eigenvalue " +
                             std::to_string(lo) + ")");

    auto orbit_average = [&](const HermitianOp& op) {
        ComplexMatrix sum(rep.dim(), rep.dim());
        for (std::size_t j = 0; j < m; ++j) {
            const ComplexMatrix& u = rep.unitary(model.transporter(j));
            sum += u * op.matrix() * u.adjoint();
        }
        sum *= cplx(1.0 / static_cast<double>(m), 0.0);
        return HermitianOp(std::move(sum));
    };

    const HermitianOp s = orbit_average(t);
    const double defect = operator_norm(s - HermitianOp::identity(rep.dim()));
    if (defect > 1e-8)
        throw NumericalError(
            "seed does not resolve the identity over the orbit (defect " +
            std::to_string(defect) + ")");
    // Exact correction: S commutes with the representation, so conjugating
    // the seed by S^{-1/2} preserves covariance and makes the sum exactly I.
    const HermitianOp s_inv_half = matrix_function(
        s, [](double x) { return 1.0 / std::sqrt(x); });
    t = HermitianOp(s_inv_half.matrix() * t.matrix() * s_inv_half.matrix());

    std::vector<HermitianOp> elements;
    std::vector<PovmOutcome> outcomes;
    elements.reserve(m);
    outcomes.reserve(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        const ComplexMatrix& u = rep.unitary(model.transporter(j));
        ComplexMatrix e = u * t.matrix() * u.adjoint();
        e *= cplx(inv_m, 0.0);
        elements.emplace_back(std::move(e));
        outcomes.push_back({std::to_string(j), model.orbit_param(j)});
    }
    return Povm(std::move(elements), std::move(outcomes));
}

double risk_point(const CovariantModel& model, const Povm& pov, std::size_t i) {
    if (pov.size() != model.orbit_size())
        throw DimensionError("POVM outcomes do not index the orbit");
    const HermitianOp rho(model.state(i).matrix());
    double r = 0.0;
    for (std::size_t j = 0; j < model.orbit_size(); ++j)
        r += model.error(i, j) * trace_prod_real(rho, pov.element(j));
    return r;
}

double risk_bayes(const CovariantModel& model, const Povm& pov) {
    double r = 0.0;
    for (std::size_t i = 0; i < model.orbit_size(); ++i)
        r += risk_point(model, pov, i);
    return r / static_cast<double>(model.orbit_size());
}

double risk_minimax(const CovariantModel& model, const Povm& pov) {
    double r = 0.0;
    for (std::size_t i = 0; i < model.orbit_size(); ++i)
        r = std::max(r, risk_point(model, pov, i));
    return r;
}

// ---- optimal covariant POVM ----

namespace {

// Cost operator: risk at the reference point as a function of the seed,
// risk = Tr(T A) with A = (1/m) sum_j R(theta0, j) U_j^+ rho_0 U_j.
HermitianOp seed_cost_operator(const CovariantModel& model) {
    const GroupRep& rep = model.rep();
    const std::size_t m = model.orbit_size();
    ComplexMatrix a(rep.dim(), rep.dim());
    for (std::size_t j = 0; j < m; ++j) {
        const ComplexMatrix& u = rep.unitary(model.transporter(j));
        ComplexMatrix t =
            u.adjoint() * model.state(model.theta0()).matrix() * u;
        t *= cplx(model.error(model.theta0(), j) / static_cast<double>(m), 0.0);
        a += t;
    }
    return HermitianOp(std::move(a));
}

// (1/m) sum_j U_j^+ Y U_j, the adjoint of the seed-to-identity map.
HermitianOp orbit_coaverage(const CovariantModel& model, const HermitianOp& y) {
    const GroupRep& rep = model.rep();
    const std::size_t m = model.orbit_size();
    ComplexMatrix sum(rep.dim(), rep.dim());
    for (std::size_t j = 0; j < m; ++j) {
        const ComplexMatrix& u = rep.unitary(model.transporter(j));
        sum += u.adjoint() * y.matrix() * u;
    }
    sum *= cplx(1.0 / static_cast<double>(m), 0.0);
    return HermitianOp(std::move(sum));
}

// Certified lower bound on Tr(T A) over feasible seeds: least-squares dual
// candidate shifted into feasibility.
double dual_lower_bound(const CovariantModel& model, const HermitianOp& a,
                        const HermitianOp& target) {
    const std::size_t d = model.rep().dim();
    const std::vector<HermitianOp> basis = hermitian_basis(d);
    const std::size_t nb = basis.size();
    std::vector<HermitianOp> mapped;
    mapped.reserve(nb);
    for (const HermitianOp& b : basis)
        mapped.push_back(orbit_coaverage(model, b));
    std::vector<double> gram(nb * nb);
    std::vector<double> rhs(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        rhs[i] = hs_inner(mapped[i].matrix(), target.matrix()).real();
        for (std::size_t j = 0; j < nb; ++j)
            gram[i * nb + j] =
                hs_inner(mapped[i].matrix(), mapped[j].matrix()).real();
    }
    const std::vector<double> coeff = psd_solve(gram, nb, rhs, 1e-12);
    ComplexMatrix y(d, d);
    for (std::size_t i = 0; i < nb; ++i) {
        if (coeff[i] == 0.0) continue;
        ComplexMatrix t = basis[i].matrix();
        t *= cplx(coeff[i], 0.0);
        y += t;
    }
    const HermitianOp yh(std::move(y));
    const HermitianOp slack = a - orbit_coaverage(model, yh);
    const double shift = std::max(0.0, -min_eigenvalue(slack));
    return yh.trace_real() - shift * static_cast<double>(d);
}

}  // namespace

CovariantOptimum optimal_covariant(const CovariantModel& model, double tol) {
    const GroupRep& rep = model.rep();
    const std::size_t d = rep.dim();
    const HermitianOp a = seed_cost_operator(model);

    if (rep.irreducible()) {
        // Feasibility reduces to Tr T = d, so the optimum is d times the
        // smallest eigenvalue of the cost operator.
        const Spectrum s = eig_hermitian(a);
        const double lam = s.values.front();
        ComplexMatrix proj(d, d);
        std::size_t r = 0;
        for (std::size_t k = 0; k < d; ++k) {
            if (s.values[k] > lam + 1e-12) continue;
            ++r;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    proj(i, j) += s.vectors(i, k) * std::conj(s.vectors(j, k));
        }
        proj *= cplx(static_cast<double>(d) / static_cast<double>(r), 0.0);
        const HermitianOp seed = stabilizer_average(model, HermitianOp(proj));
        Povm pov = povm_from_seed(model, seed);
        const double value = risk_point(model, pov, model.theta0());
        return CovariantOptimum{value,
                                std::move(pov),
                                seed,
                                std::abs(value - lam * static_cast<double>(d)),
                                0,
                                true};
    }

    // Reducible case: barrier method over stabilizer-invariant seeds with
    // the resolution-of-identity constraint.
    std::vector<HermitianOp> inv_basis;
    {
        // Stabilizer-average the Hermitian basis, then orthonormalize.
        for (const HermitianOp& b : hermitian_basis(d)) {
            HermitianOp cand = stabilizer_average(model, b);
            ComplexMatrix v = cand.matrix();
            for (const HermitianOp& e : inv_basis) {
                const cplx c = hs_inner(e.matrix(), v);
                ComplexMatrix t = e.matrix();
                t *= c;
                v -= t;
            }
            const double norm = v.frobenius_norm();
            if (norm > 1e-10) {
                v *= cplx(1.0 / norm, 0.0);
                inv_basis.emplace_back(std::move(v));
            }
        }
    }
    const std::size_t q = inv_basis.size();

    // Null directions of the identity-resolution constraint within the
    // invariant subspace.
    std::vector<HermitianOp> mapped;
    mapped.reserve(q);
    for (const HermitianOp& e : inv_basis) {
        // Forward map (1/m) sum_j U_j E U_j^+ expressed via its adjoint on
        // the same basis would do; build it directly.
        ComplexMatrix sum(d, d);
        for (std::size_t j = 0; j < model.orbit_size(); ++j) {
            const ComplexMatrix& u = rep.unitary(model.transporter(j));
            sum += u * e.matrix() * u.adjoint();
        }
        sum *= cplx(1.0 / static_cast<double>(model.orbit_size()), 0.0);
        mapped.emplace_back(std::move(sum));
    }
    ComplexMatrix gram(q, q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            gram(i, j) = hs_inner(mapped[i].matrix(), mapped[j].matrix());
    const Spectrum gs = eig_hermitian(HermitianOp(std::move(gram)));
    std::vector<HermitianOp> null_ops;
    for (std::size_t k = 0; k < q; ++k) {
        if (gs.values[k] > 1e-12) continue;
        ComplexMatrix n(d, d);
        for (std::size_t i = 0; i < q; ++i) {
            const double w = gs.vectors(i, k).real();
            if (std::abs(w) < 1e-15) continue;
            ComplexMatrix t = inv_basis[i].matrix();
            t *= cplx(w, 0.0);
            n += t;
        }
        null_ops.emplace_back(std::move(n));
    }
    const std::size_t nn = null_ops.size();

    // T(y) = I + sum y_i N_i, strictly feasible at y = 0.
    std::vector<double> y(nn, 0.0);
    HermitianOp t_cur = HermitianOp::identity(d);
    auto assemble = [&](const std::vector<double>& yy) {
        ComplexMatrix t = ComplexMatrix::identity(d);
        for (std::size_t i = 0; i < nn; ++i) {
            ComplexMatrix s = null_ops[i].matrix();
            s *= cplx(yy[i], 0.0);
            t += s;
        }
        return HermitianOp(std::move(t));
    };

    std::size_t newton_steps = 0;
    double primal = trace_prod_real(a, t_cur);
    double lb = -1e300;
    for (double t_bar = 1.0; t_bar < 1e14; t_bar *= 8.0) {
        // Newton iterations for t_bar * Tr(T A) - logdet T.
        for (std::size_t it = 0; it < 80; ++it) {
            ++newton_steps;
            const Spectrum ts = eig_hermitian(t_cur);
            if (ts.values.front() <= 0.0)
                throw NumericalError("barrier iterate left the cone");
            const HermitianOp t_inv =
                apply_spectral(ts, [](double x) { return 1.0 / x; });
            std::vector<double> grad(nn), step(nn);
            std::vector<double> hess(nn * nn);
            std::vector<ComplexMatrix> tin;
            tin.reserve(nn);
            for (std::size_t i = 0; i < nn; ++i)
                tin.push_back(t_inv.matrix() * null_ops[i].matrix());
            for (std::size_t i = 0; i < nn; ++i) {
                grad[i] = t_bar * trace_prod_real(a, null_ops[i]) -
                          tin[i].trace().real();
                for (std::size_t j = 0; j < nn; ++j)
                    hess[i * nn + j] = trace_prod(tin[i], tin[j]).real();
            }
            step = psd_solve(hess, nn, grad, 1e-14);
            double decrement2 = 0.0;
            for (std::size_t i = 0; i < nn; ++i) decrement2 += step[i] * grad[i];
            if (decrement2 <= 1e-14) break;

            double alpha = 1.0;
            for (int bt = 0; bt < 60; ++bt) {
                std::vector<double> trial = y;
                for (std::size_t i = 0; i < nn; ++i)
                    trial[i] -= alpha * step[i];
                const HermitianOp t_trial = assemble(trial);
                if (min_eigenvalue(t_trial) > 0.0) {
                    y = std::move(trial);
                    t_cur = t_trial;
                    break;
                }
                alpha *= 0.5;
            }
        }
        primal = trace_prod_real(a, t_cur);
        if (nn == 0) {
            lb = dual_lower_bound(model, a, a);
            break;
        }
        const HermitianOp t_inv = matrix_function(
            t_cur, [](double x) { return 1.0 / x; });
        const HermitianOp target = a - (1.0 / t_bar) * t_inv;
        lb = std::max(lb, dual_lower_bound(model, a, target));
        if (primal - lb <= tol * 0.5) break;
    }
    if (primal - lb > tol)
        throw ConvergenceError("covariant optimization stalled with gap " +
                               std::to_string(primal - lb));

    Povm pov = povm_from_seed(model, t_cur);
    const double value = risk_point(model, pov, model.theta0());
    return CovariantOptimum{value,          std::move(pov), t_cur,
                            std::max(0.0, value - lb), newton_steps,  false};
}

// ---- unrestricted optimum ----

UnrestrictedOptimum optimal_unrestricted(const CovariantModel& model,
                                         double tol) {
    const std::size_t m = model.orbit_size();
    const std::size_t d = model.rep().dim();

    // Uniform-prior cost operators per decision.
    std::vector<HermitianOp> cost;
    cost.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        ComplexMatrix a(d, d);
        for (std::size_t i = 0; i < m; ++i) {
            ComplexMatrix t = model.state(i).matrix();
            t *= cplx(model.error(i, j) / static_cast<double>(m), 0.0);
            a += t;
        }
        cost.emplace_back(std::move(a));
    }

    // Shift to reward operators B_j = c I - A_j > 0.
    double top = -1e300, bottom = 1e300;
    for (const HermitianOp& a : cost) {
        top = std::max(top, max_eigenvalue(a));
        bottom = std::min(bottom, min_eigenvalue(a));
    }
    const double c = top + 0.05 * std::max(top - bottom, 1e-9);
    std::vector<HermitianOp> reward;
    reward.reserve(m);
    for (const HermitianOp& a : cost)
        reward.push_back(c * HermitianOp::identity(d) - a);

    std::vector<HermitianOp> povm(
        m, (1.0 / static_cast<double>(m)) * HermitianOp::identity(d));

    double primal = 0.0, gap = 1e300;
    std::size_t it = 0;
    const std::size_t max_iter = 100000;
    for (it = 1; it <= max_iter; ++it) {
        // Damped Lagrange fixed-point step.
        ComplexMatrix s(d, d);
        std::vector<ComplexMatrix> bmb;
        bmb.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            ComplexMatrix t =
                reward[j].matrix() * povm[j].matrix() * reward[j].matrix();
            s += t;
            bmb.push_back(std::move(t));
        }
        const Spectrum ss = eig_hermitian(HermitianOp(s));
        const HermitianOp s_inv_half = apply_spectral(ss, [](double x) {
            return x > kEpsPsd ? 1.0 / std::sqrt(x) : 0.0;
        });
        const HermitianOp kernel_proj = apply_spectral(ss, [](double x) {
            return x > kEpsPsd ? 0.0 : 1.0;
        });
        for (std::size_t j = 0; j < m; ++j) {
            ComplexMatrix fresh =
                s_inv_half.matrix() * bmb[j] * s_inv_half.matrix();
            ComplexMatrix k = kernel_proj.matrix();
            k *= cplx(1.0 / static_cast<double>(m), 0.0);
            fresh += k;
            ComplexMatrix mixed = povm[j].matrix();
            mixed *= cplx(0.5, 0.0);
            fresh *= cplx(0.5, 0.0);
            mixed += fresh;
            povm[j] = HermitianOp(std::move(mixed));
        }

        // Primal value and certified dual bound.
        primal = 0.0;
        ComplexMatrix y(d, d);
        for (std::size_t j = 0; j < m; ++j) {
            primal += trace_prod_real(cost[j], povm[j]);
            y += cost[j].matrix() * povm[j].matrix();
        }
        HermitianOp yh{y};  // symmetrizes the dual candidate
        double delta = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            delta = std::max(delta, max_eigenvalue(yh - cost[j]));
        const double lb = yh.trace_real() - delta * static_cast<double>(d);
        gap = primal - lb;
        if (gap <= tol) break;
    }
    if (gap > tol)
        throw ConvergenceError("unrestricted optimization stalled with gap " +
                               std::to_string(gap));

    // Exact renormalization before constructing the POVM.
    ComplexMatrix total(d, d);
    for (const HermitianOp& e : povm) total += e.matrix();
    const HermitianOp fix = matrix_function(
        HermitianOp(total), [](double x) { return 1.0 / std::sqrt(x); });
    std::vector<HermitianOp> elements;
    std::vector<PovmOutcome> outcomes;
    elements.reserve(m);
    outcomes.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        elements.emplace_back(fix.matrix() * povm[j].matrix() * fix.matrix());
        outcomes.push_back({std::to_string(j), model.orbit_param(j)});
    }
    return UnrestrictedOptimum{primal,
                               Povm(std::move(elements), std::move(outcomes)),
                               std::max(gap, 0.0), it};
}

HuntSteinReport hunt_stein_verify(const CovariantModel& model, double tol) {
    const CovariantOptimum cov = optimal_covariant(model, tol * 1e-2);
    const UnrestrictedOptimum un = optimal_unrestricted(model, tol * 1e-1);
    HuntSteinReport rep;
    rep.covariant_value = cov.value;
    rep.covariant_max = risk_minimax(model, cov.povm);
    rep.unrestricted_value = un.value;
    const double hi = std::max({rep.covariant_value, rep.covariant_max,
                                rep.unrestricted_value});
    const double lo = std::min({rep.covariant_value, rep.covariant_max,
                                rep.unrestricted_value});
    rep.spread = hi - lo;
    rep.equal = rep.spread <= tol;
    return rep;
}

}  // namespace qib
