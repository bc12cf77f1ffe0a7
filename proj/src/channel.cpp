#include "qib/channel.hpp"

#include <algorithm>
#include <cmath>

#include "qib/entropy.hpp"
#include "qib/spectral.hpp"

namespace qib {

CqChannel::CqChannel(std::vector<std::string> labels,
                     std::vector<DensityMatrix> outputs)
    : labels_(std::move(labels)), outputs_(std::move(outputs)) {
    if (outputs_.empty())
        throw DimensionError("channel needs at least one input letter");
    if (labels_.empty())
        for (std::size_t i = 0; i < outputs_.size(); ++i)
            labels_.push_back(std::to_string(i));
    if (labels_.size() != outputs_.size())
        throw DimensionError("label count does not match alphabet size");
    for (const DensityMatrix& w : outputs_)
        if (w.dim() != outputs_.front().dim())
            throw DimensionError("channel outputs have mixed dimensions");
}

CqChannel::CqChannel(std::vector<DensityMatrix> outputs)
    : CqChannel({}, std::move(outputs)) {}

Prior::Prior(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw DimensionError("empty prior");
    double tot = 0.0;
    for (double v : p_) {
        if (v < -kProbTol) throw NumericalError("prior has negative mass");
        tot += v;
    }
    if (std::abs(tot - 1.0) > kProbTol)
        throw NumericalError("prior sums to " + std::to_string(tot));
    for (double& v : p_) v = std::max(v, 0.0) / tot;
}

Prior Prior::uniform(std::size_t n) {
    return Prior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DensityMatrix average_output(const Prior& p, const CqChannel& w) {
    if (p.size() != w.alphabet_size())
        throw DimensionError("prior length does not match alphabet");
    ComplexMatrix avg(w.dim(), w.dim());
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (p[x] == 0.0) continue;
        ComplexMatrix term = w.output(x).matrix();
        term *= cplx(p[x], 0.0);
        avg += term;
    }
    return DensityMatrix(avg);
}

double holevo_quantity(const Prior& p, const CqChannel& w) {
    const DensityMatrix sigma = average_output(p, w);
    double chi = von_neumann_entropy(sigma);
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x] > 0.0) chi -= p[x] * von_neumann_entropy(w.output(x));
    return chi;
}

std::vector<double> induced_joint(const Prior& p, const CqChannel& w,
                                  const Povm& pov) {
    if (pov.dim() != w.dim())
        throw DimensionError("POVM dimension does not match channel output");
    if (p.size() != w.alphabet_size())
        throw DimensionError("prior length does not match alphabet");
    const std::size_t nx = p.size(), ny = pov.size();
    std::vector<double> joint(nx * ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        const HermitianOp wx(w.output(x).matrix());
        for (std::size_t m = 0; m < ny; ++m) {
            double v = p[x] * trace_prod_real(wx, pov.element(m));
            joint[x * ny + m] = std::max(v, 0.0);
        }
    }
    return joint;
}

double measured_mutual_information(const Prior& p, const CqChannel& w,
                                   const Povm& pov) {
    return classical_mutual_information(induced_joint(p, w, pov), p.size(),
                                        pov.size());
}

CapacityResult capacity(const CqChannel& w, double tol, std::size_t max_iter) {
    const std::size_t n = w.alphabet_size();
    std::vector<double> p(n, 1.0 / static_cast<double>(n));
    std::vector<double> div(n, 0.0);

    double value = 0.0;
    double cert = 0.0;
    std::size_t it = 0;
    for (it = 1; it <= max_iter; ++it) {
        const DensityMatrix sigma = average_output(Prior(p), w);
        value = 0.0;
        double dmax = -1.0;
        for (std::size_t x = 0; x < n; ++x) {
            div[x] = quantum_relative_entropy(w.output(x), sigma);
            value += p[x] * div[x];
            dmax = std::max(dmax, div[x]);
        }
        cert = dmax;
        if (cert - value <= tol) break;

        // Multiplicative update P'(x) proportional to P(x) exp(D_x); shift
        // exponents by dmax for stability, drop vanishing mass.
        double tot = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            p[x] *= std::exp(div[x] - dmax);
            if (p[x] < 1e-15) p[x] = 0.0;
            tot += p[x];
        }
        for (double& v : p) v /= tot;
    }
    if (cert - value > tol)
        throw ConvergenceError("capacity iteration exhausted " +
                               std::to_string(max_iter) +
                               " steps with gap " + std::to_string(cert - value));
    return CapacityResult{value, p, std::min(it, max_iter), cert - value};
}

CqChannel product_channel(const CqChannel& w, std::size_t n) {
    if (n == 0) throw DimensionError("product channel needs n >= 1");
    double out_dim = 1.0;
    for (std::size_t i = 0; i < n; ++i) out_dim *= static_cast<double>(w.dim());
    if (out_dim > static_cast<double>(max_dim()))
        throw DimensionError("product channel output dimension exceeds cap");

    std::vector<std::string> labels;
    std::vector<DensityMatrix> outputs;
    const std::size_t total = [&] {
        std::size_t t = 1;
        for (std::size_t i = 0; i < n; ++i) t *= w.alphabet_size();
        return t;
    }();
    labels.reserve(total);
    outputs.reserve(total);
    std::vector<std::size_t> word(n, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t i = n; i-- > 0;) {
            word[i] = rem % w.alphabet_size();
            rem /= w.alphabet_size();
        }
        ComplexMatrix out = w.output(word[0]).matrix();
        std::string label = w.label(word[0]);
        for (std::size_t i = 1; i < n; ++i) {
            out = tensor(out, w.output(word[i]).matrix());
            label += "," + w.label(word[i]);
        }
        labels.push_back(std::move(label));
        outputs.emplace_back(out);
    }
    return CqChannel(std::move(labels), std::move(outputs));
}

double code_error(const CqChannel& w, const Code& code) {
    const std::size_t m_count = code.codewords.size();
    if (m_count == 0) throw DimensionError("code has no messages");
    if (code.decoder.size() < m_count)
        throw DimensionError("decoder has fewer outcomes than messages");
    double correct = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        const std::vector<std::size_t>& word = code.codewords[m];
        if (word.size() != code.block_length)
            throw DimensionError("codeword length does not match block length");
        ComplexMatrix out = w.output(word.at(0)).matrix();
        for (std::size_t i = 1; i < word.size(); ++i)
            out = tensor(out, w.output(word[i]).matrix());
        if (out.rows() != code.decoder.dim())
            throw DimensionError("decoder dimension does not match block output");
        correct += trace_prod_real(HermitianOp(std::move(out)),
                                   code.decoder.element(m));
    }
    return 1.0 - correct / static_cast<double>(m_count);
}

}  // namespace qib
