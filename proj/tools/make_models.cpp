// Regenerates the sample model files shipped in models/.
#include <cmath>
#include <iostream>
#include <string>

#include "qib/examples.hpp"
#include "qib/model_io.hpp"
#include "qib/types.hpp"

int main(int argc, char** argv) {
    using namespace qib;
    const std::string dir = argc > 1 ? argv[1] : "models";

    write_model_file(dir + "/bsc01.cqc",
                     examples::raw_channel(examples::binary_symmetric(0.1)));
    write_model_file(dir + "/pure_pair.cqc",
                     examples::raw_channel(examples::pure_pair(M_PI / 4.0)));

    RawModel full = examples::raw_family(examples::full_qubit(0.5));
    full.weight = ComplexMatrix::identity(3);
    write_model_file(dir + "/qubit_full.fam", full);

    RawModel diag = examples::raw_family(examples::diagonal_qubit(0.5));
    diag.weight = ComplexMatrix::identity(1);
    write_model_file(dir + "/qubit_diag.fam", diag);

    write_model_file(dir + "/z4_phase.cov",
                     examples::raw_covariant(examples::phase_orbit(4)));
    write_model_file(dir + "/z8_phase.cov",
                     examples::raw_covariant(examples::phase_orbit(8)));
    write_model_file(
        dir + "/two_state.cov",
        examples::raw_covariant(examples::two_state_discrimination(0.5)));

    std::cout << "wrote 7 model files under " << dir << "\n";
    return 0;
}
