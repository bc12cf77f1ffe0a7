#pragma once

#include <vector>

#include "qib/types.hpp"

namespace qib {

// Finite group with a unitary (possibly projective) representation.  The
// constructor verifies the group axioms exhaustively, unitarity of every
// matrix, and the homomorphism property up to a global phase.
class GroupRep {
  public:
    GroupRep(std::vector<std::size_t> mult_table,
             std::vector<ComplexMatrix> unitaries);

    std::size_t order() const { return order_; }
    std::size_t dim() const { return unitaries_.front().rows(); }
    std::size_t mul(std::size_t g, std::size_t h) const {
        return table_[g * order_ + h];
    }
    std::size_t inverse(std::size_t g) const { return inverse_[g]; }
    std::size_t identity() const { return identity_; }
    const ComplexMatrix& unitary(std::size_t g) const { return unitaries_[g]; }

    bool commutative() const;
    // Commutant of the representation is trivial.
    bool irreducible() const;

  private:
    std::size_t order_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_;
    std::vector<ComplexMatrix> unitaries_;
};

// Group-covariant state family over a finite orbit of parameter points,
// with an invariant error function.
class CovariantModel {
  public:
    // action[g * orbit_size + j] = index of g . theta_j.
    // error[i * orbit_size + j] = R(theta_i, theta_j).
    CovariantModel(GroupRep rep, std::vector<std::size_t> action,
                   std::vector<DensityMatrix> states,
                   std::vector<double> error, std::size_t theta0,
                   std::vector<std::vector<double>> orbit_params = {});

    const GroupRep& rep() const { return rep_; }
    std::size_t orbit_size() const { return states_.size(); }
    std::size_t theta0() const { return theta0_; }
    std::size_t act(std::size_t g, std::size_t j) const {
        return action_[g * orbit_size() + j];
    }
    const DensityMatrix& state(std::size_t j) const { return states_[j]; }
    double error(std::size_t i, std::size_t j) const {
        return error_[i * orbit_size() + j];
    }
    // Smallest group element carrying theta0 to j.
    std::size_t transporter(std::size_t j) const { return transporter_[j]; }
    const std::vector<std::size_t>& stabilizer() const { return stabilizer_; }
    const std::vector<double>& orbit_param(std::size_t j) const {
        return orbit_params_[j];
    }
    // Largest covariance violation max_{g,j} ||U_g rho_j U_g^+ - rho_{gj}||.
    double covariance_defect() const { return covariance_defect_; }

  private:
    GroupRep rep_;
    std::vector<std::size_t> action_;
    std::vector<DensityMatrix> states_;
    std::vector<double> error_;
    std::size_t theta0_;
    std::vector<std::size_t> transporter_;
    std::vector<std::size_t> stabilizer_;
    std::vector<std::vector<double>> orbit_params_;
    double covariance_defect_;
};

// max_{g,j} ||U_g rho_j U_g^+ - rho_{g.j}||_F for an arbitrary family.
double check_covariance(const GroupRep& rep,
                        const std::vector<std::size_t>& action,
                        const std::vector<DensityMatrix>& states);

// Covariant POVM from a seed: the seed is averaged over the stabilizer of
// theta0, the resolution-of-identity condition is verified within 1e-8, and
// the element at theta_j is (1/|orbit|) U_{g_j} T U_{g_j}^+.
Povm povm_from_seed(const CovariantModel& model, const HermitianOp& seed);

// sum_j R(theta_i, theta_j) Tr rho_i Pi_j.
double risk_point(const CovariantModel& model, const Povm& pov, std::size_t i);
// Uniform average of risk_point over the orbit.
double risk_bayes(const CovariantModel& model, const Povm& pov);
double risk_minimax(const CovariantModel& model, const Povm& pov);

struct CovariantOptimum {
    double value;        // constant risk of the optimal covariant POVM
    Povm povm;
    HermitianOp seed;    // stabilizer-invariant optimal seed
    double dual_gap;     // value minus the certified lower bound
    std::size_t newton_steps;
    bool irreducible_fast_path;
};

// Minimize the (constant) risk over covariant POVMs.  Solved in closed form
// for irreducible representations, otherwise by a barrier method with a dual
// certificate.
CovariantOptimum optimal_covariant(const CovariantModel& model,
                                   double tol = 1e-7);

struct UnrestrictedOptimum {
    double value;      // minimal uniform-prior Bayes risk over all POVMs
    Povm povm;
    double dual_gap;   // value minus the certified lower bound
    std::size_t iterations;
};

// Minimize the uniform-prior Bayes risk over all POVMs with outcomes on the
// orbit (fixed-point iteration with damping, certified by the dual).
UnrestrictedOptimum optimal_unrestricted(const CovariantModel& model,
                                         double tol = 1e-6);

struct HuntSteinReport {
    double covariant_value;    // optimal covariant constant risk
    double covariant_max;      // worst-case risk of that same POVM
    double unrestricted_value; // optimal unrestricted Bayes risk
    double spread;             // max - min of the three numbers
    bool equal;                // spread <= 1e-5
};

// Verify that the covariant optimum, its worst-case risk, and the
// unrestricted Bayes optimum coincide.
HuntSteinReport hunt_stein_verify(const CovariantModel& model,
                                  double tol = 1e-5);

}  // namespace qib
