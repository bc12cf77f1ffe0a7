#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qib/types.hpp"

namespace qib {

// Deterministic random source.  Distributions are implemented by hand on top
// of mt19937_64 so that streams are identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    // Standard normal via Box-Muller.
    double normal();
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    cplx complex_normal();

    // Probability vector of length n via normalized exponentials.
    std::vector<double> random_prior(std::size_t n);
    // Ginibre-induced full-rank density matrix.
    DensityMatrix random_density(std::size_t dim);
    // Pure state density matrix from a Gaussian amplitude vector.
    DensityMatrix random_pure(std::size_t dim);
    // Random POVM with m elements on dimension dim: draw PSD A_i, set
    // S = sum A_i, return S^{-1/2} A_i S^{-1/2}.
    std::vector<HermitianOp> random_povm(std::size_t dim, std::size_t m);
    // Random Hermitian matrix with Gaussian entries.
    HermitianOp random_hermitian(std::size_t dim);

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qib
