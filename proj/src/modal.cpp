#include "tcf/modal.hpp"

#include <cmath>

#include "tcf/errors.hpp"

namespace tcf {

Mat make_trig_basis(int Nq) {
    if (Nq < 2 || Nq % 2 != 0) throw ConfigError("modal basis needs an even channel resolution");
    Mat B(Nq, Nq);
    const double r = 1.0 / std::sqrt(double(Nq));
    const double r2 = std::sqrt(2.0 / double(Nq));
    for (int i = 0; i < Nq; ++i) {
        B(i, 0) = r;
        B(i, Nq - 1) = (i % 2 == 0) ? r : -r;
        for (int m = 1; m < Nq / 2; ++m) {
            const double a = 2.0 * kPi * m * i / Nq;
            B(i, 2 * m - 1) = r2 * std::cos(a);
            B(i, 2 * m) = r2 * std::sin(a);
        }
    }
    return B;
}

double symbol_value(Symbol fam, int m, int Nq) {
    const double a = 2.0 * kPi * m / Nq;
    if (fam == Symbol::EdgeStiffness) return 2.0 - 2.0 * std::cos(a);
    const double s = std::sin(a);
    return s * s;
}

namespace {

// apply the operator to a field carried by one basis column and read off the
// cross-channel block; complains if the output leaks into other modes
Mat probe_block(const FieldOp& op, const Mat& B, int col, int Ns) {
    const int Nq = int(B.rows());
    const int n = Ns + 1;
    Mat blk(n, n);
    Field probe = Field::Zero(Nq, n);
    for (int j0 = 0; j0 < n; ++j0) {
        probe.setZero();
        probe.col(j0) = B.col(col).array();
        const Field r = op(probe);
        for (int j = 0; j < n; ++j) blk(j, j0) = B.col(col).dot(r.col(j).matrix());
        const Field recon = (B.col(col) * blk.col(j0).transpose()).array();
        const double leak = (r - recon).abs().maxCoeff();
        const double scale = std::max(1.0, r.abs().maxCoeff());
        if (leak > 1e-10 * scale)
            throw NumericsError("modal probe: operator is not translation invariant along the channel");
    }
    return blk;
}

}  // namespace

int ModalSolver::mode_of_row(int r) const {
    if (r == 0) return 0;
    if (r == Nq_ - 1) return Nq_ / 2;
    return (r + 1) / 2;
}

ModalSolver::ModalSolver(const FieldOp& op, Symbol fam, int Nq, int Ns, bool singular_pair)
    : Nq_(Nq), Ns_(Ns), fam_(fam), singular_(singular_pair), B_(make_trig_basis(Nq)) {
    const int n = Ns + 1;
    S_ = probe_block(op, B_, 0, Ns);
    const Mat blk1 = probe_block(op, B_, 1, Ns);
    const double x1 = symbol_value(fam, 1, Nq);
    T_ = (blk1 - S_) / x1;

    const Mat blk2 = probe_block(op, B_, 3, Ns);
    const Mat pred = S_ + symbol_value(fam, 2, Nq) * T_;
    if ((blk2 - pred).norm() > 1e-9 * std::max(1.0, blk2.norm()))
        throw NumericsError("modal probe: blocks are not affine in the mode symbol");

    if (singular_) {
        null2_.resize(n, 2);
        Vec n1 = Vec::Ones(n);
        Vec n2(n);
        for (int j = 0; j < n; ++j) n2[j] = (j % 2 == 0) ? 1.0 : -1.0;
        n1.normalize();
        n2 -= n1 * n1.dot(n2);
        n2.normalize();
        null2_.col(0) = n1;
        null2_.col(1) = n2;
    }

    const int nm = Nq / 2 + 1;
    lu_.reserve(nm);
    zwall_.reserve(nm);
    for (int m = 0; m <= Nq / 2; ++m) {
        Mat M = S_ + symbol_value(fam, m, Nq) * T_;
        if (singular_ && (m == 0 || m == Nq / 2))
            M += null2_ * null2_.transpose();
        lu_.emplace_back(M);
        zwall_.push_back(lu_.back().solve(Vec::Unit(n, 0)));
    }
}

Field ModalSolver::solve(const Field& rhs) const {
    const int n = Ns_ + 1;
    Mat hat = B_.transpose() * rhs.matrix();
    for (int r = 0; r < Nq_; ++r) {
        const int m = mode_of_row(r);
        Vec b = hat.row(r).transpose();
        if (singular_ && (m == 0 || m == Nq_ / 2))
            b -= null2_ * (null2_.transpose() * b);
        Vec x = lu_[m].solve(b);
        if (singular_ && (m == 0 || m == Nq_ / 2))
            x -= null2_ * (null2_.transpose() * x);
        hat.row(r) = x.transpose();
    }
    return (B_ * hat).array();
}

Field ModalSolver::solve(const Field& rhs, double wall_beta) const {
    if (singular_) throw NumericsError("wall update is not defined for the singular solver");
    Mat hat = B_.transpose() * rhs.matrix();
    for (int r = 0; r < Nq_; ++r) {
        const int m = mode_of_row(r);
        Vec y = lu_[m].solve(Vec(hat.row(r).transpose()));
        const Vec& z = zwall_[m];
        y -= (wall_beta * y[0] / (1.0 + wall_beta * z[0])) * z;
        hat.row(r) = y.transpose();
    }
    return (B_ * hat).array();
}

Field ModalSolver::apply(const Field& f) const {
    Mat hat = B_.transpose() * f.matrix();
    for (int r = 0; r < Nq_; ++r) {
        const int m = mode_of_row(r);
        const Mat M = S_ + symbol_value(fam_, m, Nq_) * T_;
        hat.row(r) = (M * hat.row(r).transpose()).transpose();
    }
    return (B_ * hat).array();
}

}  // namespace tcf
