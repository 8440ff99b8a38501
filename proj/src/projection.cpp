#include "tcf/projection.hpp"

#include <cmath>

#include "tcf/errors.hpp"
#include "tcf/modal.hpp"

namespace tcf {

struct PressureCore {
    // direct solver: exact on a flat-top channel, preconditioner otherwise
    std::unique_ptr<Grid> flat_grid;
    std::unique_ptr<Operators> flat_ops;
    std::unique_ptr<ModalSolver> modal;
    bool exact = false;
};

Projector::~Projector() = default;
Projector::Projector(Projector&&) noexcept = default;
Projector& Projector::operator=(Projector&&) noexcept = default;

Projector::Projector(const Operators& ops, double tol, int max_iter)
    : ops_(&ops), tol_(tol), max_iter_(max_iter), core_(new PressureCore) {
    const Grid& g = ops.grid();
    const int Nq = g.Nq, Ns = g.Ns;

    // kernel: constant and the three checkerboards, orthonormalized
    std::vector<Field> raw(4, Field::Ones(Nq, Ns + 1));
    for (int i = 0; i < Nq; ++i)
        for (int j = 0; j <= Ns; ++j) {
            const double a = (i % 2 == 0) ? 1.0 : -1.0;
            const double b = (j % 2 == 0) ? 1.0 : -1.0;
            raw[1](i, j) = a;
            raw[2](i, j) = b;
            raw[3](i, j) = a * b;
        }
    for (auto& n : raw) {
        for (const auto& prev : nulls_) n -= prev * (prev * n).sum();
        const double len = std::sqrt((n * n).sum());
        if (len < 1e-12) throw NumericsError("pressure kernel basis degenerated");
        nulls_.push_back(n / len);
    }
    for (const auto& n : nulls_)
        if (pressure_apply(ops, n).abs().maxCoeff() > 1e-11)
            throw NumericsError("pressure kernel direction is not annihilated");

    if (g.h_const) {
        core_->exact = true;
        core_->modal.reset(new ModalSolver(
            [&ops](const Field& f) { return pressure_apply(ops, f); },
            Symbol::SpectralSquare, Nq, Ns, true));
    } else {
        ChannelGeometry flat;
        flat.L = g.L;
        flat.h.mean = g.H.mean();
        flat.Nq = Nq;
        flat.Ns = Ns;
        core_->flat_grid.reset(new Grid(build_grid(flat)));
        core_->flat_ops.reset(new Operators(make_operators(*core_->flat_grid)));
        const Operators& fo = *core_->flat_ops;
        core_->modal.reset(new ModalSolver(
            [&fo](const Field& f) { return pressure_apply(fo, f); },
            Symbol::SpectralSquare, Nq, Ns, true));
    }
}

Field Projector::kernel_project(const Field& phi) const {
    Field out = phi;
    for (const auto& n : nulls_) out -= n * (n * out).sum();
    return out;
}

Field Projector::solve_pressure(const Field& rhs, int& iters) const {
    iters = 0;
    if (core_->exact) return kernel_project(core_->modal->solve(rhs));

    // deflated preconditioned conjugate gradients on the plain-symmetric system
    const Field& W = ops_->gr->W;
    Field x = Field::Zero(rhs.rows(), rhs.cols());
    Field r = rhs;
    Field z = kernel_project(core_->modal->solve(r));
    Field p = z;
    double rz = (r * z).sum();
    for (int it = 0; it < max_iter_; ++it) {
        if ((r.abs() / W).maxCoeff() <= tol_) {
            iters = it;
            return x;
        }
        const Field Ap = kernel_project(pressure_apply(*ops_, p));
        const double pAp = (p * Ap).sum();
        if (!(pAp > 0))
            throw NumericsError("pressure solve lost positivity");
        const double alpha = rz / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        z = kernel_project(core_->modal->solve(r));
        const double rz_new = (r * z).sum();
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    if ((r.abs() / W).maxCoeff() <= tol_) {
        iters = max_iter_;
        return x;
    }
    throw NumericsError("pressure solve did not reach the requested tolerance");
}

ProjectionReport Projector::project(Field& v1, Field& v2, Field* phi_out) const {
    ProjectionReport rep;
    Field rhs = kernel_project(-divergence_weighted(*ops_, v1, v2));
    Field phi = solve_pressure(rhs, rep.iters);
    phi = kernel_project(phi);
    Field g1, g2;
    masked_gradient(*ops_, phi, g1, g2);
    v1 -= g1;
    v2 -= g2;
    rep.residual = divergence(*ops_, v1, v2).abs().maxCoeff();
    if (phi_out) *phi_out = phi;
    return rep;
}

}  // namespace tcf
