// Builds the quadruped trot {1,4}<{2,3}, prints its system matrix and
// eigenstructure, and steps it a few times from the eigenvector.

#include <iostream>

#include "tropgait/tropgait.hpp"

int main() {
    using namespace tropgait;

    const Gait trot(4, {{1, 4}, {2, 3}});
    const GaitParams params{1.0, 3.0, 2.0};
    const GaitMatrices mats = system_matrix(trot, params);

    std::cout << "A =\n" << mats.A << "\n";
    const Eigenpair pair = closed_form_eigenpair(trot, params);
    std::cout << "lambda (closed form) = " << pair.lambda << ", Karp = " << max_cycle_mean(mats.A) << "\n";
    std::cout << "v = " << pair.v.transpose();

    const CouplingReport coupling = coupling_params(mats.A);
    std::cout << "cyclicity " << coupling.cyclicity << ", coupling time " << coupling.coupling_time << "\n\n";

    EventState x = EventState::from_stacked(pair.v, 0);
    for (int k = 0; k < 3; ++k) {
        x = step(mats.A, x);
        std::cout << "x(" << x.k << ") = " << x.stacked().transpose();
    }
}
