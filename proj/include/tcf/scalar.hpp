#pragma once

#include <Eigen/Dense>

namespace tcf {

// Node fields are Nq x (Ns+1) arrays: row index i runs over the periodic
// coordinate q = x1, column index j over the wall-normal level s = x2/h(x1).
using Field = Eigen::ArrayXXd;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Tangential samples on the bottom wall (one per q node).
using WallTrace = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace tcf
