#pragma once

#include <Eigen/LU>
#include <functional>
#include <vector>

#include "tcf/scalar.hpp"

namespace tcf {

using FieldOp = std::function<Field(const Field&)>;

// Orthonormal real trigonometric basis along the channel: column 0 is the
// constant, columns 2m-1 / 2m the cosine / sine of mode m, the last column
// the alternating vector.
Mat make_trig_basis(int Nq);

// Along-channel symbols of the two stencil shapes that appear in the solvers:
// nearest-neighbour edge differences and the doubled-step centered square.
enum class Symbol { EdgeStiffness, SpectralSquare };
double symbol_value(Symbol fam, int m, int Nq);

// Direct solver for operators that are translation invariant along the
// channel. The operator is probed on three single-mode fields; each mode's
// cross-channel block must come out affine in the symbol, block_m = S + x_m T,
// which the third probe verifies. One LU per distinct mode.
//
// With singular_pair set (the pressure operator), the constant and the
// alternating mode share one singular block whose two-dimensional kernel is
// handled by a bordered factorization; right-hand sides are projected onto
// the range and the returned solution is kernel-free.
class ModalSolver {
public:
    ModalSolver(const FieldOp& op, Symbol fam, int Nq, int Ns, bool singular_pair);

    // solve op(x) = rhs mode by mode
    Field solve(const Field& rhs) const;

    // solve (op + wall_beta * friction-wall identity)(x) = rhs; the rank-one
    // wall closure is folded in by the Sherman-Morrison update
    Field solve(const Field& rhs, double wall_beta) const;

    // reassemble the operator action from the blocks (cross-checks)
    Field apply(const Field& f) const;

    const Mat& basis() const { return B_; }
    const Mat& base_block() const { return S_; }
    const Mat& mode_block() const { return T_; }

private:
    int Nq_ = 0, Ns_ = 0;
    Symbol fam_ = Symbol::EdgeStiffness;
    bool singular_ = false;
    Mat B_;
    Mat S_, T_;
    Mat null2_;  // orthonormal kernel of the singular block
    std::vector<Eigen::PartialPivLU<Mat>> lu_;
    std::vector<Vec> zwall_;  // block inverse applied to the wall unit vector

    int mode_of_row(int r) const;
};

}  // namespace tcf
