#pragma once

#include <cstdint>
#include <vector>

#include "qib/estimation.hpp"
#include "qib/rng.hpp"
#include "qib/types.hpp"

namespace qib::oracle {

// Shared knobs for the reference oracles.  The seed has no default on
// purpose; oracle runs must be reproducible by construction.
struct OracleConfig {
    OracleConfig(std::size_t resolution, std::uint64_t seed);
    std::size_t resolution;
    std::uint64_t seed;
};

// Classical Blahut-Arimoto capacity of a row-stochastic transition matrix
// p(y|x), in nats, certified by the divergence-radius upper bound.
double classical_ba_capacity(const std::vector<std::vector<double>>& channel,
                             double tol = 1e-9,
                             std::size_t max_iter = 100000);

struct GridCapacityResult {
    double value;               // nats
    std::vector<double> prior;  // best grid point
};

// Exhaustive prior-grid maximization of the mixture-entropy functional for
// alphabets of size at most 3.  Entropies are computed here from scratch.
GridCapacityResult grid_capacity(const std::vector<DensityMatrix>& outputs,
                                 const OracleConfig& config);

// Randomized locally unbiased estimators at the given model point.  The
// first returned POVM is the spectral estimator of the symmetric
// logarithmic derivatives (parameter-randomized when there are several);
// the rest are random POVMs whose outcome estimates are solved to satisfy
// local unbiasedness.  All logarithmic derivatives are recomputed here via
// a vectorized linear solve.
std::vector<Povm> random_unbiased_estimators(const StateFamily& fam,
                                             std::size_t count,
                                             const OracleConfig& config);

// Random feasible points of { V : V >= R, V >= -R }.  The first sample is
// the spectral absolute value of R itself, the tight corner.
std::vector<HermitianOp> feasible_v_sampler(const HermitianOp& r,
                                            std::size_t count,
                                            const OracleConfig& config);

}  // namespace qib::oracle
