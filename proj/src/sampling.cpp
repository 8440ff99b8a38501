#include "tcf/sampling.hpp"

#include <cmath>
#include <random>

namespace tcf {

namespace {

// v1 carries cos((l+1/2) pi s): free value at the friction wall, zero at the
// top. v2 carries sin((l+1) pi s): pinned at both walls.
Field eval_component(const Grid& g, const Mat& coef, int q_modes, bool cross) {
    const int Nq = g.Nq, Ns = g.Ns;
    const int nq_cols = 2 * q_modes + 1;
    const int ns_cols = int(coef.cols());
    Mat Aq(Nq, nq_cols);
    for (int i = 0; i < Nq; ++i) {
        Aq(i, 0) = 1.0;
        for (int k = 1; k <= q_modes; ++k) {
            const double a = 2.0 * kPi * k * g.q[i] / g.L;
            Aq(i, 2 * k - 1) = std::cos(a);
            Aq(i, 2 * k) = std::sin(a);
        }
    }
    Mat Bs(Ns + 1, ns_cols);
    for (int j = 0; j <= Ns; ++j)
        for (int l = 0; l < ns_cols; ++l)
            Bs(j, l) = cross ? std::sin((l + 1.0) * kPi * g.s[j])
                             : std::cos((l + 0.5) * kPi * g.s[j]);
    return (Aq * coef * Bs.transpose()).array();
}

}  // namespace

State sample_state(const Operators& ops, const Projector& pr, std::uint64_t seed,
                   std::uint64_t index, const SampleSpec& spec) {
    const Grid& g = ops.grid();
    std::mt19937_64 rng(seed + index);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const int nq_cols = 2 * spec.q_modes + 1;
    const auto draw = [&](int ns_cols) {
        Mat c(nq_cols, ns_cols);
        for (int k = 0; k <= spec.q_modes; ++k)
            for (int l = 0; l < ns_cols; ++l) {
                const double amp = std::pow(1.0 + k * k + l * l, -spec.decay);
                c(k == 0 ? 0 : 2 * k - 1, l) = gauss(rng) * amp;
                if (k > 0) c(2 * k, l) = gauss(rng) * amp;
            }
        return c;
    };

    State st = State::zero(g.Nq, g.Ns);
    st.v1 = eval_component(g, draw(spec.s_modes + 1), spec.q_modes, false);
    st.v2 = eval_component(g, draw(spec.s_modes), spec.q_modes, true);
    st.v1.col(g.Ns).setZero();
    st.v2.col(0).setZero();
    st.v2.col(g.Ns).setZero();

    pr.project(st.v1, st.v2);
    if (spec.normalize) {
        const double n = std::sqrt(wdot(g, st.v1, st.v1) + wdot(g, st.v2, st.v2));
        if (n > 1e-300) {
            st.v1 /= n;
            st.v2 /= n;
        }
    }
    return st;
}

}  // namespace tcf
