#pragma once

#include <complex>

#include <Eigen/Dense>

namespace phrmt {

using Complex = std::complex<double>;

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

// 2x2 complex matrix; also used for the blocks of block circulants.
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

}  // namespace phrmt
