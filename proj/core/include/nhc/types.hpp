#pragma once

#include <complex>

#include <Eigen/Dense>

namespace nhc {

using Complex = std::complex<double>;

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<Complex, 8, 8>;
using Vec8 = Eigen::Matrix<Complex, 8, 1>;

// imaginary unit
inline constexpr Complex iu{0.0, 1.0};

}  // namespace nhc
