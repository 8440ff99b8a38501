#pragma once

#include "tcf/scalar.hpp"

namespace tcf {

// Perturbation velocity/pressure at one time. Invariants (enforced by the
// stepper, checked by tests): v1 = v2 = 0 on the top row j = Ns, v2 = 0 on the
// bottom row j = 0, discrete divergence <= proj_tol after every accepted step.
struct State {
    Field v1;
    Field v2;
    Field p;
    double t = 0.0;

    static State zero(int Nq, int Ns) {
        State st;
        st.v1.setZero(Nq, Ns + 1);
        st.v2.setZero(Nq, Ns + 1);
        st.p.setZero(Nq, Ns + 1);
        return st;
    }
};

}  // namespace tcf
