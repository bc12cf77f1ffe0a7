#pragma once

#include <cstddef>

#include "qib/channel.hpp"
#include "qib/covariant.hpp"
#include "qib/estimation.hpp"
#include "qib/model_io.hpp"

// Small reference models used by the CLI self-checks, the bundled model
// files, and the test suite.
namespace qib::examples {

// Two-letter channel with diagonal outputs diag(1-flip, flip) and its swap.
CqChannel binary_symmetric(double flip);

// Pure-state pair |0> and cos(angle)|0> + sin(angle)|1>.
CqChannel pure_pair(double angle);

// Three-parameter qubit family: Bloch coordinates around (0, 0, rz).
StateFamily full_qubit(double rz);

// One-parameter diagonal qubit family rho = diag((1+t)/2, (1-t)/2).
StateFamily diagonal_qubit(double theta);

// Cyclic phase rotations diag(1, e^{2 pi i g / n}) acting on the orbit of
// |+>, with risk sin^2(pi (i - j) / n) between orbit points i and j.
CovariantModel phase_orbit(std::size_t n);

// Two pure states (cos a, +-sin a) swapped by diag(1, -1), hit-or-miss
// risk.  `overlap` is the inner product cos(2a), in [0, 1).
CovariantModel two_state_discrimination(double overlap);

// Serializable forms of the same models.
RawModel raw_channel(const CqChannel& w);
RawModel raw_family(const StateFamily& fam);
RawModel raw_covariant(const CovariantModel& model);

}  // namespace qib::examples
