#include "qib/examples.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qib/linalg.hpp"

namespace qib::examples {

CqChannel binary_symmetric(double flip) {
    ComplexMatrix w0(2, 2), w1(2, 2);
    w0(0, 0) = 1.0 - flip;
    w0(1, 1) = flip;
    w1(0, 0) = flip;
    w1(1, 1) = 1.0 - flip;
    return CqChannel({"0", "1"}, {DensityMatrix(w0), DensityMatrix(w1)});
}

CqChannel pure_pair(double angle) {
    const DensityMatrix a = DensityMatrix::pure({1.0, 0.0});
    const DensityMatrix b =
        DensityMatrix::pure({std::cos(angle), std::sin(angle)});
    return CqChannel({"a", "b"}, {a, b});
}

StateFamily full_qubit(double rz) {
    ComplexMatrix dx = pauli_x(), dy = pauli_y(), dz = pauli_z();
    dx *= cplx(0.5, 0.0);
    dy *= cplx(0.5, 0.0);
    dz *= cplx(0.5, 0.0);
    return StateFamily({0.0, 0.0, rz}, qubit_state(0.0, 0.0, rz),
                       {HermitianOp(std::move(dx)), HermitianOp(std::move(dy)),
                        HermitianOp(std::move(dz))});
}

StateFamily diagonal_qubit(double theta) {
    ComplexMatrix dz = pauli_z();
    dz *= cplx(0.5, 0.0);
    return StateFamily({theta}, qubit_state(0.0, 0.0, theta),
                       {HermitianOp(std::move(dz))});
}

CovariantModel phase_orbit(std::size_t n) {
    std::vector<std::size_t> table(n * n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) table[g * n + h] = (g + h) % n;
    std::vector<ComplexMatrix> us;
    for (std::size_t g = 0; g < n; ++g) {
        ComplexMatrix u(2, 2);
        u(0, 0) = 1.0;
        const double ang =
            2.0 * M_PI * static_cast<double>(g) / static_cast<double>(n);
        u(1, 1) = cplx(std::cos(ang), std::sin(ang));
        us.push_back(std::move(u));
    }
    GroupRep rep(table, us);
    const DensityMatrix plus = DensityMatrix::pure(
        {cplx(M_SQRT1_2, 0.0), cplx(M_SQRT1_2, 0.0)});
    std::vector<DensityMatrix> states;
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix& u = rep.unitary(j);
        states.emplace_back(u * plus.matrix() * u.adjoint());
    }
    std::vector<double> by_diff(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s =
            std::sin(M_PI * static_cast<double>(k) / static_cast<double>(n));
        by_diff[k] = s * s;
    }
    std::vector<double> err(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            err[i * n + j] = by_diff[(i + n - j) % n];
    std::vector<std::vector<double>> params;
    for (std::size_t j = 0; j < n; ++j)
        params.push_back(
            {2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n)});
    return CovariantModel(std::move(rep), table, std::move(states),
                          std::move(err), 0, std::move(params));
}

CovariantModel two_state_discrimination(double overlap) {
    const double a = 0.5 * std::acos(overlap);
    ComplexMatrix u1(2, 2);
    u1(0, 0) = 1.0;
    u1(1, 1) = -1.0;
    GroupRep rep({0, 1, 1, 0}, {ComplexMatrix::identity(2), u1});
    std::vector<DensityMatrix> states = {
        DensityMatrix::pure({std::cos(a), std::sin(a)}),
        DensityMatrix::pure({std::cos(a), -std::sin(a)})};
    return CovariantModel(std::move(rep), {0, 1, 1, 0}, std::move(states),
                          {0.0, 1.0, 1.0, 0.0}, 0, {{0.0}, {1.0}});
}

RawModel raw_channel(const CqChannel& w) {
    RawModel m;
    for (std::size_t x = 0; x < w.alphabet_size(); ++x) {
        m.channel_labels.push_back(w.label(x));
        m.channel_outputs.push_back(w.output(x).matrix());
    }
    return m;
}

RawModel raw_family(const StateFamily& fam) {
    RawModel m;
    m.theta = fam.theta();
    m.family_rho = fam.rho().matrix();
    for (std::size_t k = 0; k < fam.params(); ++k)
        m.family_derivs.push_back(fam.deriv(k).matrix());
    return m;
}

RawModel raw_covariant(const CovariantModel& model) {
    RawModel m;
    const std::size_t n = model.rep().order();
    const std::size_t s = model.orbit_size();
    m.group_order = n;
    m.mult_table.resize(n * n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            m.mult_table[g * n + h] = model.rep().mul(g, h);
    for (std::size_t g = 0; g < n; ++g)
        m.unitaries.push_back(model.rep().unitary(g));
    m.orbit_size = s;
    m.theta0 = model.theta0();
    m.action.resize(n * s);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t j = 0; j < s; ++j)
            m.action[g * s + j] = model.act(g, j);
    for (std::size_t j = 0; j < s; ++j)
        m.orbit_states.push_back(model.state(j).matrix());
    m.error.resize(s * s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            m.error[i * s + j] = model.error(i, j);
    return m;
}

}  // namespace qib::examples
