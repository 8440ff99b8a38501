#pragma once

#include "tcf/background.hpp"
#include "tcf/geometry.hpp"
#include "tcf/state.hpp"

namespace tcf {

// Precomputed discrete machinery on the mapped rectangle. Fields are
// Nq x (Ns+1): row i runs along the channel, column j across it.
//
// The cross-channel derivative is a dense (Ns+1)^2 matrix: centered in the
// interior, one-sided second order at the walls. The along-channel derivative
// is the centered periodic stencil. Physical derivatives follow from the
// chain rule on x1 = q, x2 = s h(q).
struct Operators {
    const Grid* gr = nullptr;

    Mat Ds;        // cross-channel derivative matrix
    Field m1, m2;  // component masks: m1 open at the friction wall, m2 pinned at both
    Field cq;      // along-channel edge coefficients, Nq x (Ns+1)
    Field cs;      // cross-channel edge coefficients, Nq x Ns
    Field gamma;   // node weights of the metric cross term (zero for a flat top)
    Field sHpH;    // s * h'/h at nodes
    Field WoverH;  // quadrature weight with the height factor removed

    const Grid& grid() const { return *gr; }
};

Operators make_operators(const Grid& grid);

// elementary derivatives
Field dq_deriv(const Operators& op, const Field& f);
Field ds_deriv(const Operators& op, const Field& f);
Field ds_transpose(const Operators& op, const Field& f);
Field d1(const Operators& op, const Field& f);
Field d2(const Operators& op, const Field& f);

// weighted inner product over the channel
double wdot(const Grid& g, const Field& a, const Field& b);

// stiffness operator of the Dirichlet form, plain-symmetric with the
// quadrature weights folded in: dirichlet_form(u, v) = sum(apply_stiffness(u) * v)
Field apply_stiffness(const Operators& op, const Field& v);
double dirichlet_form(const Operators& op, const Field& u, const Field& v);
double dirichlet_form(const Operators& op, const State& u, const State& v);

// advection of a scalar by the velocity (u1, u2): pointwise transport, its
// adjoint in the weighted inner product, and the skew-symmetric average
Field advect(const Operators& op, const Field& u1, const Field& u2, const Field& f);
Field advect_adjoint(const Operators& op, const Field& u1, const Field& u2, const Field& g);
Field skew_advect(const Operators& op, const Field& u1, const Field& u2, const Field& f);

// trilinear advection form <skew_advect(u) v, w> summed over components
double skew_form(const Operators& op, const State& u, const State& v, const State& w);

// coupling of the perturbation with the background shear: <v2 Uy, v1>
double cross_term(const Operators& op, const BackgroundFlow& bg, const State& v);

// pointwise forcing exerted by the background flow on the perturbation
void add_forcing(const Operators& op, const BackgroundFlow& bg, double nu,
                 const State& v, Field& f1, Field& f2);

// divergence compatible with the masked gradient: the two are exact
// adjoints in the weighted inner product
Field divergence(const Operators& op, const Field& a1, const Field& a2);
Field divergence_weighted(const Operators& op, const Field& a1, const Field& a2);
void masked_gradient(const Operators& op, const Field& phi, Field& g1, Field& g2);

// weighted pressure operator: phi -> -W div(mask grad phi), plain-symmetric PSD
Field pressure_apply(const Operators& op, const Field& phi);

}  // namespace tcf
