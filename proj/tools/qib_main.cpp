#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qib/channel.hpp"
#include "qib/covariant.hpp"
#include "qib/entropy.hpp"
#include "qib/errors.hpp"
#include "qib/estimation.hpp"
#include "qib/examples.hpp"
#include "qib/kernels.hpp"
#include "qib/linalg.hpp"
#include "qib/model_io.hpp"
#include "qib/oracles.hpp"
#include "qib/report.hpp"
#include "qib/rng.hpp"
#include "qib/spectral.hpp"

namespace {

using namespace qib;

struct Options {
    std::string model;
    std::string units = "nats";
    double tol = 1e-7;
    std::uint64_t seed = 0;
    bool oracle = false;
    bool json = false;
};

RawModel load_model(const Options& opt) {
    if (opt.model.empty()) throw ParseError(0, "--model is required");
    return parse_model_file(opt.model);
}

ComplexMatrix weight_or_identity(const RawModel& raw, std::size_t d) {
    if (!raw.weight) return ComplexMatrix::identity(d);
    if (raw.weight->rows() != d)
        throw ParseError(0, "weight matrix size does not match the parameter count");
    return *raw.weight;
}

// Square-root measurement: sigma^{-1/2} P(x) W_x sigma^{-1/2}, with the
// kernel of the average state folded into the first element.
Povm square_root_measurement(const Prior& prior, const CqChannel& w) {
    const DensityMatrix sigma = average_output(prior, w);
    const Spectrum s = eig_hermitian(sigma.matrix());
    const ComplexMatrix root_inv =
        apply_spectral(s, [](double v) {
            return v > kEpsPsd ? 1.0 / std::sqrt(v) : 0.0;
        }).matrix();
    std::vector<HermitianOp> elems;
    ComplexMatrix total(w.dim(), w.dim());
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) {
        ComplexMatrix e = root_inv * w.output(x).matrix() * root_inv;
        e *= cplx(prior[x], 0.0);
        total += e;
        elems.emplace_back(std::move(e));
    }
    ComplexMatrix gap_to_identity = ComplexMatrix::identity(w.dim());
    gap_to_identity -= total;
    elems.front() = HermitianOp(elems.front().matrix() + gap_to_identity);
    return Povm(std::move(elems));
}

double capacity_oracle(const CqChannel& w, const Options& opt) {
    if (w.alphabet_size() <= 3) {
        const oracle::OracleConfig cfg(10000, opt.seed);
        std::vector<DensityMatrix> outputs;
        for (std::size_t x = 0; x < w.alphabet_size(); ++x)
            outputs.push_back(w.output(x));
        return oracle::grid_capacity(outputs, cfg).value;
    }
    // Larger alphabets: only commuting channels have an oracle, through
    // simultaneous diagonalization and the classical iteration.
    for (std::size_t x = 0; x < w.alphabet_size(); ++x)
        for (std::size_t y = 0; y < x; ++y) {
            const ComplexMatrix a = w.output(x).matrix();
            const ComplexMatrix b = w.output(y).matrix();
            if ((a * b - b * a).max_abs() > 1e-10)
                throw NumericalError(
                    "no oracle covers non-commuting channels with more than "
                    "3 letters");
        }
    Rng rng(opt.seed);
    ComplexMatrix probe(w.dim(), w.dim());
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) {
        ComplexMatrix t = w.output(x).matrix();
        t *= cplx(0.25 + rng.uniform(), 0.0);
        probe += t;
    }
    const Spectrum s = eig_hermitian(HermitianOp(std::move(probe)));
    std::vector<std::vector<double>> rows(w.alphabet_size(),
                                          std::vector<double>(w.dim()));
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) {
        const ComplexMatrix d =
            s.vectors.adjoint() * w.output(x).matrix() * s.vectors;
        for (std::size_t i = 0; i < w.dim(); ++i)
            for (std::size_t j = 0; j < w.dim(); ++j)
                if (i != j && std::abs(d(i, j)) > 1e-8)
                    throw NumericalError(
                        "simultaneous diagonalization failed");
        for (std::size_t i = 0; i < w.dim(); ++i)
            rows[x][i] = std::max(d(i, i).real(), 0.0);
    }
    return oracle::classical_ba_capacity(rows, 1e-9);
}

std::vector<Report> run_capacity(const Options& opt) {
    const CqChannel w = build_channel(load_model(opt));
    const CapacityResult cr = capacity(w, opt.tol);
    Report r{"capacity", cr.value, "nats", cr.gap, std::nullopt, {}};
    r.extra.emplace_back("iterations", static_cast<double>(cr.iterations));
    if (opt.oracle) r.oracle_value = capacity_oracle(w, opt);
    convert_units(r, opt.units);
    return {r};
}

std::vector<Report> run_holevo(const Options& opt) {
    const CqChannel w = build_channel(load_model(opt));
    const Prior prior = Prior::uniform(w.alphabet_size());
    const double chi = holevo_quantity(prior, w);
    // Distance to capacity from the divergence-radius certificate.
    const DensityMatrix sigma = average_output(prior, w);
    double dmax = 0.0;
    for (std::size_t x = 0; x < w.alphabet_size(); ++x)
        dmax = std::max(dmax, quantum_relative_entropy(w.output(x), sigma));
    Report r{"holevo_uniform", chi, "nats", dmax - chi, std::nullopt, {}};
    convert_units(r, opt.units);
    return {r};
}

std::vector<Report> run_measured_mi(const Options& opt) {
    const CqChannel w = build_channel(load_model(opt));
    const Prior prior = Prior::uniform(w.alphabet_size());
    const Povm pov = square_root_measurement(prior, w);
    const double mi = measured_mutual_information(prior, w, pov);
    const double chi = holevo_quantity(prior, w);
    Report r{"measured_mi_uniform", mi, "nats", chi - mi, std::nullopt, {}};
    if (opt.oracle) r.oracle_value = chi;
    convert_units(r, opt.units);
    r.extra.emplace_back("holevo_uniform",
                         r.units == "bits" ? chi / std::log(2.0) : chi);
    return {r};
}

std::vector<Report> run_bounds(const Options& opt) {
    const RawModel raw = load_model(opt);
    const StateFamily fam = build_family(raw);
    const ComplexMatrix g = weight_or_identity(raw, fam.params());

    std::vector<Report> out;
    Report sldr{"sld_bound", sld_bound(fam, g), "", 0.0, std::nullopt, {}};
    const bool full_rank = fam.rho().full_rank() &&
                           fam.rho().eigenvalues().front() > kEpsRld;
    sldr.extra.emplace_back("state_full_rank", full_rank ? 1.0 : 0.0);
    out.push_back(std::move(sldr));
    if (full_rank)
        out.push_back(Report{"rld_bound", rld_bound(fam, g), "", 0.0,
                             std::nullopt, {}});
    const DInvarianceResult din = d_matrix_and_invariance(fam);
    double worst = 0.0;
    for (double v : din.residuals) worst = std::max(worst, v);
    if (din.d_invariant) {
        Report dr{"d_invariant_bound", d_invariant_bound(fam, g), "", 0.0,
                  std::nullopt, {}};
        dr.extra.emplace_back("invariance_residual", worst);
        out.push_back(std::move(dr));
    } else {
        out.front().extra.emplace_back("d_invariance_residual", worst);
    }
    return out;
}

std::vector<Report> run_hn_bound(const Options& opt) {
    const RawModel raw = load_model(opt);
    const StateFamily fam = build_family(raw);
    const ComplexMatrix g = weight_or_identity(raw, fam.params());
    const HnResult hn = hn_bound(fam, g, opt.tol);
    double lower = sld_bound(fam, g);
    if (fam.rho().full_rank() && fam.rho().eigenvalues().front() > kEpsRld)
        lower = std::max(lower, rld_bound(fam, g));
    Report r{"hn_bound", hn.value, "", std::max(0.0, hn.value - lower),
             std::nullopt, {}};
    r.extra.emplace_back("constraint_residual", hn.constraint_residual);
    r.extra.emplace_back("iterations", static_cast<double>(hn.iterations));
    if (opt.oracle) r.oracle_value = lower;
    return {r};
}

std::vector<Report> run_covariant(const Options& opt) {
    const CovariantModel model = build_covariant(load_model(opt));
    const CovariantOptimum co = optimal_covariant(model, opt.tol);
    Report r{"covariant_risk", co.value, "", co.dual_gap, std::nullopt, {}};
    r.extra.emplace_back("newton_steps", static_cast<double>(co.newton_steps));
    r.extra.emplace_back("irreducible_fast_path",
                         co.irreducible_fast_path ? 1.0 : 0.0);
    r.extra.emplace_back("worst_case_risk", risk_minimax(model, co.povm));
    return {r};
}

std::vector<Report> run_hunt_stein(const Options& opt) {
    const CovariantModel model = build_covariant(load_model(opt));
    const HuntSteinReport hs =
        hunt_stein_verify(model, std::max(opt.tol, 1e-5));
    Report r{"hunt_stein_risk", hs.covariant_value, "", hs.spread,
             std::nullopt, {}};
    r.extra.emplace_back("covariant_worst_case", hs.covariant_max);
    r.extra.emplace_back("unrestricted_bayes", hs.unrestricted_value);
    r.extra.emplace_back("equal", hs.equal ? 1.0 : 0.0);
    return {r};
}

// ---- verify ----

struct Check {
    std::string name;
    double value;
    double bound;
    bool passed;
};

void run_check(std::vector<Check>& checks, const std::string& name,
               double value, double bound) {
    checks.push_back({name, value, bound, std::abs(value) <= bound});
}

std::vector<Check> builtin_verify(const Options& opt) {
    std::vector<Check> checks;
    Rng rng(opt.seed * 1000003 + 17);

    // Kernel variants agree with the scalar reference.
    {
        double worst = 0.0;
        const std::size_t m = 6, k = 5, n = 7;
        std::vector<cplx> a(m * k), b(k * n);
        for (cplx& z : a) z = rng.complex_normal();
        for (cplx& z : b) z = rng.complex_normal();
        std::vector<cplx> ref(m * n), got(m * n);
        kernels::scalar().matmul(a.data(), b.data(), ref.data(), m, k, n);
        for (std::size_t i = 0; i < kernels::available_count(); ++i) {
            const kernels::Ops& ops = kernels::available(i);
            ops.matmul(a.data(), b.data(), got.data(), m, k, n);
            for (std::size_t j = 0; j < m * n; ++j)
                worst = std::max(worst, std::abs(ref[j] - got[j]));
            const cplx d1 = kernels::scalar().hs_dot(a.data(), a.data(), m * k);
            const cplx d2 = ops.hs_dot(a.data(), a.data(), m * k);
            worst = std::max(worst, std::abs(d1 - d2));
        }
        run_check(checks, "kernel_agreement", worst, 1e-10);
    }
    // Entropy identities.
    {
        const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
        double worst =
            std::abs(von_neumann_entropy(mixed) - std::log(4.0));
        const DensityMatrix r = Rng(opt.seed + 1).random_density(3);
        worst = std::max(worst, std::abs(quantum_relative_entropy(r, r)));
        run_check(checks, "entropy_identities", worst, 1e-12);
    }
    // Binary symmetric channel capacity against the closed form.
    {
        const CapacityResult cr = capacity(examples::binary_symmetric(0.1), 1e-9);
        const double expect =
            std::log(2.0) + 0.9 * std::log(0.9) + 0.1 * std::log(0.1);
        run_check(checks, "bsc_capacity", cr.value - expect, 1e-6);
    }
    // Full qubit model: Fisher matrix and the inverse-information identity.
    {
        const StateFamily fam = examples::full_qubit(0.5);
        const ComplexMatrix j = sld_fisher(fam);
        double worst = 0.0;
        const double expect[3] = {1.0, 1.0, 1.0 / (1.0 - 0.25)};
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                worst = std::max(worst, std::abs(j(a, b) -
                                                 cplx(a == b ? expect[a] : 0.0,
                                                      0.0)));
        run_check(checks, "qubit_fisher", worst, 1e-8);

        const ComplexMatrix jr = rld_fisher(fam);
        const ComplexMatrix jr_inv = [&] {
            const Spectrum s = eig_hermitian(HermitianOp(jr));
            return apply_spectral(s, [](double x) { return 1.0 / x; }).matrix();
        }();
        const DInvarianceResult din = d_matrix_and_invariance(fam);
        const ComplexMatrix j_inv = [&] {
            const Spectrum s = eig_hermitian(HermitianOp(j));
            return apply_spectral(s, [](double x) { return 1.0 / x; }).matrix();
        }();
        ComplexMatrix cxi = j_inv * din.d * j_inv;
        cxi *= cplx(0.0, 0.5);
        cxi += j_inv;
        run_check(checks, "cxi_residual", (jr_inv - cxi).max_abs(), 1e-7);
    }
    // Trace-norm minimization: optimality and feasibility.
    {
        Rng lrng(opt.seed + 2);
        ComplexMatrix g(3, 3);
        const HermitianOp gh = lrng.random_hermitian(3);
        const ComplexMatrix gm = gh.matrix() * gh.matrix();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) g(i, j) = gm(i, j).real();
        const HermitianOp r = lrng.random_hermitian(3);
        const LemmaLLResult res = lemma_ll_min(g, r);
        double worst = std::max(0.0, -min_eigenvalue(res.minimizer - r));
        worst = std::max(worst, -min_eigenvalue(res.minimizer + r));
        const oracle::OracleConfig cfg(1000, opt.seed + 3);
        for (const HermitianOp& v : oracle::feasible_v_sampler(r, 20, cfg)) {
            const double tgv = trace_prod(g, v.matrix()).real();
            worst = std::max(worst, res.value - tgv);
        }
        run_check(checks, "lemma_ll", worst, 1e-9);
    }
    // Hunt-Stein equality on the 4-element phase orbit.
    {
        const HuntSteinReport hs = hunt_stein_verify(examples::phase_orbit(4));
        run_check(checks, "hunt_stein_z4", hs.spread, 1e-5);
    }
    // Serialization round trip.
    {
        RawModel m;
        m.theta = {0.0, 0.0, 0.5};
        const StateFamily fam = examples::full_qubit(0.5);
        m.family_rho = fam.rho().matrix();
        for (std::size_t k = 0; k < 3; ++k)
            m.family_derivs.push_back(fam.deriv(k).matrix());
        const std::string once = serialize_model(m);
        std::istringstream in(once);
        const std::string twice = serialize_model(parse_model(in));
        run_check(checks, "model_roundtrip", once == twice ? 0.0 : 1.0, 0.5);
    }
    return checks;
}

void model_verify(const Options& opt, const RawModel& raw,
                  std::vector<Check>& checks) {
    if (raw.has_channel()) {
        const CqChannel w = build_channel(raw);
        const Prior prior = Prior::uniform(w.alphabet_size());
        const double chi = holevo_quantity(prior, w);
        Rng rng(opt.seed + 11);
        double worst = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const Povm pov(rng.random_povm(w.dim(), w.dim() + 1));
            worst = std::max(
                worst, measured_mutual_information(prior, w, pov) - chi);
        }
        run_check(checks, "model_channel_data_processing", worst, 1e-9);
    }
    if (raw.has_family()) {
        const StateFamily fam = build_family(raw);
        const SldResult s = sld(fam);
        run_check(checks, "model_family_sld_residual", s.max_residual, 1e-8);
        const DInvarianceResult din = d_matrix_and_invariance(fam);
        run_check(checks, "model_family_d_antisymmetry",
                  din.antisymmetry_drift, 1e-9);
    }
    if (raw.has_group()) {
        const CovariantModel model = build_covariant(raw);
        run_check(checks, "model_covariance_defect",
                  model.covariance_defect(), 1e-8);
        const CovariantOptimum co = optimal_covariant(model, 1e-7);
        run_check(checks, "model_covariant_gap", co.dual_gap, 1e-6);
    }
    if (raw.weight) {
        run_check(checks, "model_weight_psd",
                  std::max(0.0, -min_eigenvalue(HermitianOp(*raw.weight))),
                  kEpsPsd);
    }
}

int run_verify(const Options& opt) {
    std::vector<Check> checks;
    std::string failure;
    try {
        checks = builtin_verify(opt);
        if (!opt.model.empty())
            model_verify(opt, parse_model_file(opt.model), checks);
    } catch (const NumericalError& e) {
        failure = e.what();
    }
    std::size_t passed = 0;
    std::vector<Report> reports;
    for (const Check& c : checks) {
        reports.push_back(
            Report{c.name, c.value, "", c.bound, std::nullopt, {}});
        reports.back().extra.emplace_back("passed", c.passed ? 1.0 : 0.0);
        if (c.passed) ++passed;
        else if (failure.empty())
            failure = "check '" + c.name + "' out of bounds";
    }
    if (opt.json) {
        std::cout << to_json(reports);
    } else {
        for (const Check& c : checks) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s %s value=%.12g bound=%.12g\n",
                          c.passed ? "ok" : "FAIL", c.name.c_str(), c.value,
                          c.bound);
            std::cout << buf;
        }
        std::cout << "verify: " << passed << "/" << checks.size()
                  << " checks passed with seed " << opt.seed << "\n";
    }
    if (!failure.empty()) throw NumericalError(failure);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical-quantum capacity, estimation bounds, and "
                 "covariant measurement optimization"};
    app.require_subcommand(0, 1);

    Options opt;
    const std::vector<std::string> names = {
        "capacity", "holevo", "measured-mi", "bounds",
        "hn-bound", "covariant", "hunt-stein", "verify"};
    const std::vector<std::string> descriptions = {
        "channel capacity with a convergence certificate",
        "mixture-entropy gap of a channel at the uniform prior",
        "classical mutual information of the measured channel",
        "closed-form quadratic estimation bounds",
        "optimized estimation bound over measurement collections",
        "optimal covariant measurement risk",
        "compare covariant, worst-case, and average optimal risks",
        "run the deterministic self-check suite"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--model", opt.model, "model file path");
        sub->add_option("--units", opt.units, "output units for entropic quantities")
            ->check(CLI::IsMember({"nats", "bits"}));
        sub->add_option("--tol", opt.tol, "certification tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "seed for randomized checks");
        sub->add_flag("--oracle", opt.oracle, "include an independent oracle value");
        sub->add_flag("--json", opt.json, "emit a JSON report");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ExtrasError& e) {
        const bool known_sub =
            argc > 1 && std::find(names.begin(), names.end(),
                                  std::string(argv[1])) != names.end();
        std::cerr << e.what() << "\n";
        if (!known_sub) {
            std::cerr << app.help();
            return 1;
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        std::vector<Report> reports;
        if (sub == "capacity") reports = run_capacity(opt);
        else if (sub == "holevo") reports = run_holevo(opt);
        else if (sub == "measured-mi") reports = run_measured_mi(opt);
        else if (sub == "bounds") reports = run_bounds(opt);
        else if (sub == "hn-bound") reports = run_hn_bound(opt);
        else if (sub == "covariant") reports = run_covariant(opt);
        else if (sub == "hunt-stein") reports = run_hunt_stein(opt);
        else return run_verify(opt);
        std::cout << (opt.json ? to_json(reports) : to_text(reports));
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
