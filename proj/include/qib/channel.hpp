#pragma once

#include <string>
#include <vector>

#include "qib/types.hpp"

namespace qib {

// Classical-quantum channel: finite input alphabet, one output state per
// letter, all on a common Hilbert space.
class CqChannel {
  public:
    CqChannel(std::vector<std::string> labels, std::vector<DensityMatrix> outputs);
    explicit CqChannel(std::vector<DensityMatrix> outputs);

    std::size_t alphabet_size() const { return outputs_.size(); }
    std::size_t dim() const { return outputs_.front().dim(); }
    const DensityMatrix& output(std::size_t x) const { return outputs_[x]; }
    const std::string& label(std::size_t x) const { return labels_[x]; }

  private:
    std::vector<std::string> labels_;
    std::vector<DensityMatrix> outputs_;
};

// Input distribution; must sum to 1 within kProbTol.
class Prior {
  public:
    explicit Prior(std::vector<double> p);
    static Prior uniform(std::size_t n);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t x) const { return p_[x]; }
    const std::vector<double>& values() const { return p_; }

  private:
    std::vector<double> p_;
};

// Block code: codeword assignment m -> input letter sequence, plus a
// decoding POVM on the n-fold output space.
struct Code {
    std::size_t block_length;
    std::vector<std::vector<std::size_t>> codewords;  // M rows of n letters
    Povm decoder;
};

struct CapacityResult {
    double value;                 // nats
    std::vector<double> prior;    // argmax input distribution
    std::size_t iterations;
    double gap;                   // certified upper bound minus value
};

// I(P, W) = S(sum_x P(x) W_x) - sum_x P(x) S(W_x), in nats.
double holevo_quantity(const Prior& p, const CqChannel& w);

// Average output state sum_x P(x) W_x.
DensityMatrix average_output(const Prior& p, const CqChannel& w);

// Joint distribution p(x, m) = P(x) Tr W_x Pi_m, row-major with x slow.
std::vector<double> induced_joint(const Prior& p, const CqChannel& w,
                                  const Povm& pov);

// Classical mutual information of the induced joint distribution, nats.
double measured_mutual_information(const Prior& p, const CqChannel& w,
                                   const Povm& pov);

// Blahut-Arimoto ascent with a KKT certificate: stops once
// max_x D(W_x || sigma_P) - I(P, W) <= tol, which brackets the capacity.
CapacityResult capacity(const CqChannel& w, double tol = 1e-7,
                        std::size_t max_iter = 100000);

// n-fold product channel with product inputs; output dimension dim^n must
// stay within the dimension cap.
CqChannel product_channel(const CqChannel& w, std::size_t n);

// Average decoding error 1 - (1/M) sum_m Tr W_phi(m) Pi_m for a block code.
double code_error(const CqChannel& w, const Code& code);

}  // namespace qib
