#pragma once

#include <complex>

#include <Eigen/Dense>

namespace rotquad {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Complex = std::complex<double>;
using CVec3 = Eigen::Vector3cd;

}  // namespace rotquad
