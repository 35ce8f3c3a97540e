#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace nhse {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

enum class Boundary { Open, Periodic };

std::string to_string(Boundary b);

} // namespace nhse
