#include "qem/linalg.hpp"

#include "qem/errors.hpp"

namespace qem {

double matrix_inf_norm(const RMatrix& m) {
  if (m.size() == 0) throw StructuralError("matrix_inf_norm: empty matrix");
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double matrix_one_norm(const RMatrix& m) {
  if (m.size() == 0) throw StructuralError("matrix_one_norm: empty matrix");
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

namespace {

template <typename Mat>
Mat kron_impl(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) { return kron_impl(a, b); }
RMatrix kron(const RMatrix& a, const RMatrix& b) { return kron_impl(a, b); }

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json matrix_to_json(const RMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qem
