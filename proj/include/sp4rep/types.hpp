#pragma once
#include <Eigen/Dense>
#include "sp4rep/config.hpp"

namespace sp4rep {

using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using MatX = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

} // namespace sp4rep
