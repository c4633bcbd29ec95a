#pragma once

#include <Eigen/Dense>
#include <complex>

namespace floqlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

using MatrixRef = const Eigen::Ref<const Matrix>&;
using VectorRef = const Eigen::Ref<const Vector>&;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr Complex imag_unit{0.0, 1.0};

}  // namespace floqlab
