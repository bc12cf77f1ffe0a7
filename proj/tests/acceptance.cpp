// Acceptance gate: every criterion prints one line and the process exits
// nonzero if any of them fail.  argv[1] is the CLI binary, argv[2] the
// directory with the shipped model files.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qib/channel.hpp"
#include "qib/covariant.hpp"
#include "qib/entropy.hpp"
#include "qib/errors.hpp"
#include "qib/estimation.hpp"
#include "qib/examples.hpp"
#include "qib/linalg.hpp"
#include "qib/model_io.hpp"
#include "qib/oracles.hpp"
#include "qib/rng.hpp"
#include "qib/spectral.hpp"
#include "qib/types.hpp"

using namespace qib;

namespace {

std::string cli_path;
std::string models_dir;

struct Outcome {
    bool pass;
    std::string detail;
};

double binary_entropy(double p) {
    return -p * std::log(p) - (1 - p) * std::log(1 - p);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1. Measured mutual information never exceeds the Holevo quantity.
Outcome criterion_monotonicity() {
    constexpr double tol = 1e-9;
    Rng rng(20240815);
    double worst = -1.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t dim = 2 + rng.below(3);
        const std::size_t letters = 2 + rng.below(3);
        std::vector<DensityMatrix> outs;
        for (std::size_t x = 0; x < letters; ++x)
            outs.push_back(rng.random_density(dim));
        const CqChannel w(outs);
        const Prior p(rng.random_prior(letters));
        const Povm pov(rng.random_povm(dim, 1 + rng.below(6)));
        worst = std::max(worst, measured_mutual_information(p, w, pov) -
                                    holevo_quantity(p, w));
        if (worst > tol) break;
    }
    return {worst <= tol,
            "worst excess " + fmt(worst) + " over 1000 instances, tol 1e-9"};
}

// 2. Capacity against the classical and grid oracles.
Outcome criterion_capacity_oracles() {
    constexpr double tol = 1e-6;
    const CapacityResult bsc = capacity(examples::binary_symmetric(0.1), 1e-9);
    const double classical =
        oracle::classical_ba_capacity({{0.9, 0.1}, {0.1, 0.9}}, 1e-9);
    const double closed = std::log(2.0) - binary_entropy(0.1);
    const double dev_bsc = std::max(std::abs(bsc.value - classical),
                                    std::abs(nats_to_bits(bsc.value) -
                                             nats_to_bits(closed)));

    const CqChannel pair = examples::pure_pair(M_PI / 4.0);
    const CapacityResult pq = capacity(pair, 1e-9);
    const oracle::GridCapacityResult grid = oracle::grid_capacity(
        {pair.output(0), pair.output(1)}, oracle::OracleConfig(10000, 1));
    const double dev_pair = std::abs(pq.value - grid.value);

    const double worst = std::max(dev_bsc, dev_pair);
    return {worst <= tol, "BSC dev " + fmt(dev_bsc) + ", pure-pair dev " +
                              fmt(dev_pair) + ", tol 1e-6"};
}

// 3. Additivity of the capacity at n = 2.
Outcome criterion_additivity() {
    constexpr double tol = 2e-5;
    const auto start = std::chrono::steady_clock::now();
    Rng rng(314159);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const CqChannel w({rng.random_density(2), rng.random_density(2)});
        const CapacityResult one = capacity(w, 4e-6, 500000);
        const CapacityResult two =
            capacity(product_channel(w, 2), 8e-6, 500000);
        worst = std::max(worst, std::abs(two.value - 2.0 * one.value));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return {worst <= tol && seconds <= 300.0,
            "worst |C(WxW) - 2 C(W)| = " + fmt(worst) + " over 20 channels in " +
                fmt(seconds) + " s, tol 2e-5"};
}

// 4. Fisher information closed forms and the inverse-information identity.
Outcome criterion_fisher() {
    double worst_j = 0.0, worst_rld = 0.0;
    for (double t : {0.0, 0.5, -0.5}) {
        const StateFamily fam = examples::diagonal_qubit(t);
        const ComplexMatrix j = sld_fisher(fam);
        worst_j = std::max(worst_j,
                           std::abs(j(0, 0).real() - 1.0 / (1.0 - t * t)));
        const ComplexMatrix jr = rld_fisher(fam);
        worst_rld = std::max(worst_rld, std::abs(jr(0, 0) - j(0, 0)));
    }

    const StateFamily full = examples::full_qubit(0.5);
    const ComplexMatrix j = sld_fisher(full);
    const ComplexMatrix jr = rld_fisher(full);
    const DInvarianceResult din = d_matrix_and_invariance(full);
    const auto inv = [](const ComplexMatrix& m) {
        return matrix_function(HermitianOp(m),
                               [](double v) { return 1.0 / v; })
            .matrix();
    };
    ComplexMatrix rhs = inv(j) * din.d * inv(j);
    rhs *= cplx(0, 0.5);
    rhs += inv(j);
    const double cxi = (inv(jr) - rhs).max_abs();

    const bool pass = worst_j <= 1e-8 && worst_rld <= 1e-8 && cxi <= 1e-7;
    return {pass, "J dev " + fmt(worst_j) + ", RLD dev " + fmt(worst_rld) +
                      " (tol 1e-8), identity residual " + fmt(cxi) +
                      " (tol 1e-7)"};
}

// 5. Trace-norm minimization: feasibility, optimality, and sampling.
Outcome criterion_lemma_ll() {
    Rng rng(271828);
    double worst_infeas = 0.0, worst_beat = 0.0, worst_opt = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 2 + rng.below(3);
        const HermitianOp h = rng.random_hermitian(d);
        const ComplexMatrix gc = h.matrix() * h.matrix();
        ComplexMatrix g(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                g(i, j) = gc(i, j).real() + (i == j ? 1e-6 : 0.0);
        const HermitianOp r = rng.random_hermitian(d);
        const LemmaLLResult res = lemma_ll_min(g, r);

        worst_infeas = std::max(
            worst_infeas, -std::min(min_eigenvalue(res.minimizer - r),
                                    min_eigenvalue(res.minimizer + r)));
        double attained = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                attained += g(i, j).real() * res.minimizer(j, i).real();
        worst_opt = std::max(worst_opt, std::abs(attained - res.value));

        const oracle::OracleConfig cfg(1000, 1000 + trial);
        for (const HermitianOp& v : oracle::feasible_v_sampler(r, 10, cfg)) {
            double tgv = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    tgv += g(i, j).real() * v(j, i).real();
            worst_beat = std::max(worst_beat, res.value - tgv);
        }
    }
    const bool pass =
        worst_infeas <= 1e-9 && worst_beat <= 1e-9 && worst_opt <= 1e-8;
    return {pass, "infeasibility " + fmt(worst_infeas) + ", sampler beat " +
                      fmt(worst_beat) +
                      " (tol 1e-9, 1000 pairs, 10000 samples), attainment dev " +
                      fmt(worst_opt)};
}

// 6. Hierarchy and collapses of the estimation bounds.
Outcome criterion_bound_hierarchy() {
    std::string detail;
    bool pass = true;

    // Shipped families.
    for (const char* name : {"qubit_full.fam", "qubit_diag.fam"}) {
        const RawModel raw = parse_model_file(models_dir + "/" + name);
        const StateFamily fam = build_family(raw);
        const ComplexMatrix g =
            raw.weight ? *raw.weight : ComplexMatrix::identity(fam.params());
        const double hn = hn_bound(fam, g, 1e-9).value;
        const double floor =
            std::max(sld_bound(fam, g), rld_bound(fam, g)) - 1e-6;
        if (hn < floor) {
            pass = false;
            detail += std::string(name) + " violates the hierarchy; ";
        }
        const DInvarianceResult din = d_matrix_and_invariance(fam);
        if (din.d_invariant &&
            std::abs(hn - d_invariant_bound(fam, g)) > 1e-5) {
            pass = false;
            detail += std::string(name) + " misses the d-invariant form; ";
        }
    }

    // Commuting two-parameter qutrit family: hn collapses to Tr G J^{-1}.
    {
        ComplexMatrix rho(3, 3), d1(3, 3), d2(3, 3);
        rho(0, 0) = 0.3;
        rho(1, 1) = 0.45;
        rho(2, 2) = 0.25;
        d1(0, 0) = 1.0;
        d1(2, 2) = -1.0;
        d2(1, 1) = 1.0;
        d2(2, 2) = -1.0;
        const StateFamily fam({0.3, 0.45}, DensityMatrix(rho),
                              {HermitianOp(d1), HermitianOp(d2)});
        const ComplexMatrix g = ComplexMatrix::identity(2);
        const double hn = hn_bound(fam, g, 1e-9).value;
        const double dev = std::abs(hn - sld_bound(fam, g));
        if (dev > 1e-6) {
            pass = false;
            detail += "commuting collapse dev " + fmt(dev) + "; ";
        }
    }

    // One-parameter collapse to 1/J, scanned over the parameter.
    double worst_one = 0.0;
    for (double t : {0.0, 0.5, -0.5}) {
        const StateFamily fam = examples::diagonal_qubit(t);
        const double hn =
            hn_bound(fam, ComplexMatrix::identity(1), 1e-10).value;
        worst_one = std::max(worst_one, std::abs(hn - (1.0 - t * t)));
    }
    if (worst_one > 1e-8) {
        pass = false;
        detail += "one-parameter dev " + fmt(worst_one) + "; ";
    }

    if (detail.empty())
        detail = "shipped families, commuting collapse, 1/J collapse "
                 "(tols 1e-6 / 1e-5 / 1e-6 / 1e-8)";
    return {pass, detail};
}

// 7. Attainability-side inequalities for generated unbiased estimators.
Outcome criterion_estimators() {
    double worst_cr = 0.0, worst_z = 0.0, worst_scalar = 0.0;
    const std::vector<StateFamily> fams = {
        examples::diagonal_qubit(0.5),
        [] {
            ComplexMatrix dx = pauli_x(), dy = pauli_y();
            dx *= cplx(0.5, 0.0);
            dy *= cplx(0.5, 0.0);
            return StateFamily({0.0, 0.0}, qubit_state(0.0, 0.0, 0.5),
                               {HermitianOp(std::move(dx)),
                                HermitianOp(std::move(dy))});
        }()};
    for (std::size_t f = 0; f < fams.size(); ++f) {
        const StateFamily& fam = fams[f];
        const std::size_t d = fam.params();
        const ComplexMatrix g = ComplexMatrix::identity(d);
        const double hn = hn_bound(fam, g, 1e-9).value;
        const ComplexMatrix j_inv =
            matrix_function(HermitianOp(sld_fisher(fam)),
                            [](double v) { return 1.0 / v; })
                .matrix();
        const oracle::OracleConfig cfg(1000, 8000 + f);
        for (const Povm& est :
             oracle::random_unbiased_estimators(fam, 500, cfg)) {
            const ComplexMatrix v = mse_matrix(fam, est);
            worst_cr = std::max(
                worst_cr, -min_eigenvalue(HermitianOp(v - j_inv)));
            const auto x = x_of_estimator(fam, est);
            worst_z = std::max(
                worst_z,
                -min_eigenvalue(HermitianOp(v - z_matrix(x, fam.rho()))));
            double tgv = 0.0;
            for (std::size_t i = 0; i < d; ++i) tgv += v(i, i).real();
            worst_scalar = std::max(worst_scalar, hn - tgv);
        }
    }
    const bool pass =
        worst_cr <= 1e-8 && worst_z <= 1e-8 && worst_scalar <= 1e-6;
    return {pass, "V-J^{-1} deficit " + fmt(worst_cr) + ", V-Z deficit " +
                      fmt(worst_z) + " (tol 1e-8), scalar deficit " +
                      fmt(worst_scalar) + " (tol 1e-6), 1000 estimators"};
}

// 8. Hunt-Stein equalities and the discrimination closed form.
Outcome criterion_hunt_stein() {
    double worst_spread = 0.0;
    for (std::size_t n : {4u, 8u}) {
        const HuntSteinReport hs =
            hunt_stein_verify(examples::phase_orbit(n), 1e-5);
        worst_spread = std::max(worst_spread, hs.spread);
    }
    double worst_disc = 0.0;
    for (double c : {0.0, 0.5, M_SQRT1_2}) {
        const CovariantOptimum opt =
            optimal_covariant(examples::two_state_discrimination(c), 1e-10);
        worst_disc = std::max(
            worst_disc,
            std::abs(opt.value - 0.5 * (1.0 - std::sqrt(1.0 - c * c))));
    }
    const bool pass = worst_spread <= 1e-5 && worst_disc <= 1e-8;
    return {pass, "phase-orbit spread " + fmt(worst_spread) +
                      " (tol 1e-5), discrimination dev " + fmt(worst_disc) +
                      " (tol 1e-8)"};
}

// 9. Byte-identical deterministic verification through the CLI.
Outcome criterion_determinism() {
    if (cli_path.empty()) return {false, "no CLI path supplied"};
    auto capture = [&](const std::string& cmd, int& status) {
        std::string out;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) {
            status = -1;
            return out;
        }
        char buf[4096];
        std::size_t got;
        while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
            out.append(buf, got);
        status = pclose(pipe);
        return out;
    };
    const std::string cmd = "'" + cli_path + "' verify --seed 0 2>&1";
    int s1 = 0, s2 = 0;
    const std::string first = capture(cmd, s1);
    const std::string second = capture(cmd, s2);
    const bool pass =
        s1 == 0 && s2 == 0 && !first.empty() && first == second;
    return {pass, pass ? "two runs byte-identical (" +
                             std::to_string(first.size()) + " bytes)"
                       : "outputs differ or nonzero exit"};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) cli_path = argv[1];
    models_dir = argc > 2 ? argv[2] : "models";

    const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
        {"measured information below the holevo quantity",
         criterion_monotonicity},
        {"capacity against classical and grid oracles",
         criterion_capacity_oracles},
        {"capacity additivity for two copies", criterion_additivity},
        {"fisher information closed forms", criterion_fisher},
        {"trace-norm minimization certificates", criterion_lemma_ll},
        {"estimation bound hierarchy and collapses",
         criterion_bound_hierarchy},
        {"estimator-side inequalities", criterion_estimators},
        {"hunt-stein equalities and discrimination", criterion_hunt_stein},
        {"deterministic cli verification", criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Outcome out{false, ""};
        try {
            out = all[i].second();
        } catch (const Error& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (!out.pass) ++failures;
        std::printf("criterion %zu %s  %s: %s\n", i + 1,
                    out.pass ? "PASS" : "FAIL", all[i].first.c_str(),
                    out.detail.c_str());
        std::fflush(stdout);
    }
    if (failures)
        std::printf("acceptance: %d of %zu criteria failed\n", failures,
                    all.size());
    else
        std::printf("acceptance: all %zu criteria passed\n", all.size());
    return failures == 0 ? 0 : 1;
}
