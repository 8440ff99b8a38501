#include "tcf/operators.hpp"

#include "tcf/errors.hpp"

namespace tcf {

namespace {

// cyclic row shifts along the channel
Field shift_next(const Field& f) {
    const auto n = f.rows();
    Field out(n, f.cols());
    out.topRows(n - 1) = f.bottomRows(n - 1);
    out.row(n - 1) = f.row(0);
    return out;
}

Field shift_prev(const Field& f) {
    const auto n = f.rows();
    Field out(n, f.cols());
    out.bottomRows(n - 1) = f.topRows(n - 1);
    out.row(0) = f.row(n - 1);
    return out;
}

void check_shape(const Grid& g, const Field& f, const char* what) {
    if (f.rows() != g.Nq || f.cols() != g.Ns + 1)
        throw ConfigError(std::string(what) + ": field shape does not match the grid");
}

}  // namespace

Operators make_operators(const Grid& grid) {
    Operators op;
    op.gr = &grid;
    const int Nq = grid.Nq, Ns = grid.Ns;
    const double dq = grid.dq, ds = grid.ds;

    op.Ds = Mat::Zero(Ns + 1, Ns + 1);
    for (int j = 1; j < Ns; ++j) {
        op.Ds(j, j - 1) = -0.5 / ds;
        op.Ds(j, j + 1) = 0.5 / ds;
    }
    op.Ds(0, 0) = -1.5 / ds;
    op.Ds(0, 1) = 2.0 / ds;
    op.Ds(0, 2) = -0.5 / ds;
    op.Ds(Ns, Ns) = 1.5 / ds;
    op.Ds(Ns, Ns - 1) = -2.0 / ds;
    op.Ds(Ns, Ns - 2) = 0.5 / ds;

    op.m1 = Field::Ones(Nq, Ns + 1);
    op.m1.col(Ns).setZero();
    op.m2 = Field::Ones(Nq, Ns + 1);
    op.m2.col(0).setZero();
    op.m2.col(Ns).setZero();

    // trapezoid weight across the channel
    Vec w = Vec::Ones(Ns + 1);
    w[0] = 0.5;
    w[Ns] = 0.5;

    op.cq.resize(Nq, Ns + 1);
    for (int i = 0; i < Nq; ++i)
        for (int j = 0; j <= Ns; ++j) op.cq(i, j) = grid.Hmid[i] * ds * w[j] / dq;

    op.cs.resize(Nq, Ns);
    for (int i = 0; i < Nq; ++i)
        for (int j = 0; j < Ns; ++j) {
            const double smid = (j + 0.5) * ds;
            op.cs(i, j) =
                (1.0 + smid * smid * grid.Hp[i] * grid.Hp[i]) / grid.H[i] * dq / ds;
        }

    op.gamma.resize(Nq, Ns + 1);
    op.sHpH.resize(Nq, Ns + 1);
    op.WoverH.resize(Nq, Ns + 1);
    for (int i = 0; i < Nq; ++i)
        for (int j = 0; j <= Ns; ++j) {
            op.gamma(i, j) = grid.s[j] * grid.Hp[i] * dq * ds * w[j];
            op.sHpH(i, j) = grid.s[j] * grid.Hp[i] / grid.H[i];
            op.WoverH(i, j) = dq * ds * w[j];
        }
    if (grid.h_const) op.gamma.setZero();
    return op;
}

Field dq_deriv(const Operators& op, const Field& f) {
    return (shift_next(f) - shift_prev(f)) / (2.0 * op.gr->dq);
}

Field ds_deriv(const Operators& op, const Field& f) {
    return (f.matrix() * op.Ds.transpose()).array();
}

Field ds_transpose(const Operators& op, const Field& f) {
    return (f.matrix() * op.Ds).array();
}

Field d1(const Operators& op, const Field& f) {
    if (op.gr->h_const) return dq_deriv(op, f);
    return dq_deriv(op, f) - op.sHpH * ds_deriv(op, f);
}

Field d2(const Operators& op, const Field& f) {
    Field out = ds_deriv(op, f);
    out.colwise() /= op.gr->H.array();
    return out;
}

double wdot(const Grid& g, const Field& a, const Field& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ConfigError("wdot: mismatched field shapes");
    check_shape(g, a, "wdot");
    return (g.W * a * b).sum();
}

Field apply_stiffness(const Operators& op, const Field& v) {
    const Grid& g = *op.gr;
    check_shape(g, v, "apply_stiffness");
    const int Ns = g.Ns;

    Field fq = op.cq * (shift_next(v) - v);
    Field out = shift_prev(fq) - fq;

    Field fs = op.cs * (v.rightCols(Ns) - v.leftCols(Ns));
    out.leftCols(Ns) -= fs;
    out.rightCols(Ns) += fs;

    if (!g.h_const)
        out += dq_deriv(op, op.gamma * ds_deriv(op, v)) -
               ds_transpose(op, op.gamma * dq_deriv(op, v));
    return out;
}

double dirichlet_form(const Operators& op, const Field& u, const Field& v) {
    return (apply_stiffness(op, u) * v).sum();
}

double dirichlet_form(const Operators& op, const State& u, const State& v) {
    return dirichlet_form(op, u.v1, v.v1) + dirichlet_form(op, u.v2, v.v2);
}

Field advect(const Operators& op, const Field& u1, const Field& u2, const Field& f) {
    return u1 * d1(op, f) + u2 * d2(op, f);
}

Field advect_adjoint(const Operators& op, const Field& u1, const Field& u2,
                     const Field& g) {
    const Field b = op.gr->W * u1 * g;
    Field across = op.gr->W * u2 * g;
    across.colwise() /= op.gr->H.array();
    Field out = -dq_deriv(op, b) + ds_transpose(op, across);
    if (!op.gr->h_const) out -= ds_transpose(op, op.sHpH * b);
    return out / op.gr->W;
}

Field skew_advect(const Operators& op, const Field& u1, const Field& u2,
                  const Field& f) {
    return 0.5 * (advect(op, u1, u2, f) - advect_adjoint(op, u1, u2, f));
}

double skew_form(const Operators& op, const State& u, const State& v, const State& w) {
    const Grid& g = *op.gr;
    return wdot(g, skew_advect(op, u.v1, u.v2, v.v1), w.v1) +
           wdot(g, skew_advect(op, u.v1, u.v2, v.v2), w.v2);
}

double cross_term(const Operators& op, const BackgroundFlow& bg, const State& v) {
    return wdot(*op.gr, v.v2 * bg.Uy, v.v1);
}

void add_forcing(const Operators& op, const BackgroundFlow& bg, double nu,
                 const State& v, Field& f1, Field& f2) {
    f1 += -bg.U * d1(op, v.v1) - v.v2 * bg.Uy + nu * bg.Uyy;
    f2 += -bg.U * d1(op, v.v2);
}

Field divergence_weighted(const Operators& op, const Field& a1, const Field& a2) {
    const Field b1 = op.gr->W * op.m1 * a1;
    Field out = dq_deriv(op, b1) - ds_transpose(op, op.WoverH * op.m2 * a2);
    if (!op.gr->h_const) out += ds_transpose(op, op.sHpH * b1);
    return out;
}

Field divergence(const Operators& op, const Field& a1, const Field& a2) {
    return divergence_weighted(op, a1, a2) / op.gr->W;
}

void masked_gradient(const Operators& op, const Field& phi, Field& g1, Field& g2) {
    g1 = op.m1 * d1(op, phi);
    g2 = op.m2 * d2(op, phi);
}

Field pressure_apply(const Operators& op, const Field& phi) {
    Field g1, g2;
    masked_gradient(op, phi, g1, g2);
    return -divergence_weighted(op, g1, g2);
}

}  // namespace tcf
