#pragma once

#include <complex>

#include <Eigen/Core>

namespace lovewave {

using Complex = std::complex<double>;

template <int N>
using RealMatrix = Eigen::Matrix<double, N, N>;
template <int N>
using ComplexMatrix = Eigen::Matrix<Complex, N, N>;
template <int N>
using ComplexVector = Eigen::Matrix<Complex, N, 1>;

using Matrix3 = RealMatrix<3>;
using Matrix2 = RealMatrix<2>;
using ComplexMatrix3 = ComplexMatrix<3>;
using ComplexVector3 = ComplexVector<3>;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace lovewave
