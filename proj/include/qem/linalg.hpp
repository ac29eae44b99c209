#pragma once

#include <complex>

#include <Eigen/Dense>

#include "json.hpp"

namespace qem {

using cxd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using RRowVector = Eigen::RowVectorXd;

// Matrix infinity-norm: maximum absolute row sum.
double matrix_inf_norm(const RMatrix& m);

// Matrix 1-norm: maximum absolute column sum.
double matrix_one_norm(const RMatrix& m);

// Kronecker products in row-major qubit order (first factor most significant).
CMatrix kron(const CMatrix& a, const CMatrix& b);
RMatrix kron(const RMatrix& a, const RMatrix& b);

// Debug serialization: row-major nested arrays, complex entries as [re, im].
nlohmann::json matrix_to_json(const CMatrix& m);
nlohmann::json matrix_to_json(const RMatrix& m);

}  // namespace qem
