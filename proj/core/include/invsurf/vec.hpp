#pragma once

#include <Eigen/Dense>

namespace invsurf {

using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

} // namespace invsurf
