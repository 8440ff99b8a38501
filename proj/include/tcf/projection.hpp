#pragma once

#include <memory>
#include <vector>

#include "tcf/operators.hpp"

namespace tcf {

struct ProjectionReport {
    int iters = 0;        // conjugate gradient iterations (0 on the direct path)
    double residual = 0;  // max pointwise divergence left behind
};

// solver guts kept out of the header
struct PressureCore;

// Removes the divergence from a velocity field by a weighted-orthogonal
// correction along the masked gradient. On a channel of constant height the
// pressure system is solved directly mode by mode; otherwise by deflated
// conjugate gradients preconditioned with the mean-height direct solver.
//
// The discrete pressure operator has a four-dimensional kernel spanned by
// the constant and the three checkerboards; all four directions are
// deflated explicitly.
class Projector {
public:
    Projector(const Operators& ops, double tol, int max_iter);
    ~Projector();
    Projector(Projector&&) noexcept;
    Projector& operator=(Projector&&) noexcept;

    ProjectionReport project(Field& v1, Field& v2, Field* phi_out = nullptr) const;

    // remove the kernel components from a pressure-like field
    Field kernel_project(const Field& phi) const;

    const std::vector<Field>& kernel() const { return nulls_; }

private:
    const Operators* ops_;
    double tol_;
    int max_iter_;
    std::vector<Field> nulls_;
    std::unique_ptr<PressureCore> core_;

    Field solve_pressure(const Field& rhs, int& iters) const;
};

}  // namespace tcf
