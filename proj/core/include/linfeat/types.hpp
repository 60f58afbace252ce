#pragma once

#include <Eigen/Dense>

namespace linfeat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace linfeat
