#pragma once

#include <vector>

#include "qib/types.hpp"

namespace qib {

// All entropic quantities are in nats.  Conversion to bits happens at the
// presentation layer only.

double von_neumann_entropy(const DensityMatrix& rho);

// D(rho || sigma).  Returns +infinity when supp(rho) is not contained in
// supp(sigma) (support judged at the kEpsPsd threshold).
double quantum_relative_entropy(const DensityMatrix& rho,
                                const DensityMatrix& sigma);

// D(rho_AB || rho_A (x) rho_B) with B the fast tensor index.
double quantum_mutual_information(const DensityMatrix& rho_ab,
                                  std::size_t dim_a, std::size_t dim_b);

double classical_entropy(const std::vector<double>& p);
double classical_relative_entropy(const std::vector<double>& p,
                                  const std::vector<double>& q);
// joint is row-major p(x, y); x indexes rows.
double classical_mutual_information(const std::vector<double>& joint,
                                    std::size_t nx, std::size_t ny);

inline double nats_to_bits(double nats) { return nats / std::log(2.0); }

}  // namespace qib
