#pragma once

#include <functional>

#include "tcf/errors.hpp"
#include "tcf/scalar.hpp"

namespace tcf {

// Conjugate gradients for plain-symmetric positive operators on fields,
// restricted to a subspace by a pinning callback that zeroes constrained
// entries. Used by the fallback paths on channels with a wavy top, where the
// mode-by-mode direct solver does not apply.
inline Field cg_solve(const std::function<Field(const Field&)>& apply, const Field& rhs,
                      const std::function<void(Field&)>& pin, double tol, int max_iter,
                      const char* what) {
    Field b = rhs;
    pin(b);
    Field x = Field::Zero(b.rows(), b.cols());
    Field r = b;
    const double scale = std::max(1.0, r.abs().maxCoeff());
    Field p = r;
    double rr = (r * r).sum();
    for (int it = 0; it < max_iter; ++it) {
        if (r.abs().maxCoeff() <= tol * scale) return x;
        Field Ap = apply(p);
        pin(Ap);
        const double pAp = (p * Ap).sum();
        if (!(pAp > 0)) throw NumericsError(std::string(what) + ": lost positivity");
        const double alpha = rr / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        const double rr_new = (r * r).sum();
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    if (r.abs().maxCoeff() <= tol * scale) return x;
    throw NumericsError(std::string(what) + ": iteration cap exceeded");
}

}  // namespace tcf
