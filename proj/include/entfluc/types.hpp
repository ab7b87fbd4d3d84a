#pragma once

#include <complex>

#include <Eigen/Dense>

namespace entfluc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class Boundary { Open, Periodic, Antiperiodic };

}  // namespace entfluc
