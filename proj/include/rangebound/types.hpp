#pragma once

#include <Eigen/Dense>

namespace rangebound {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

} // namespace rangebound
