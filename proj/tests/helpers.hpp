#pragma once

#include <cmath>
#include <numbers>

#include "qem/noise_models.hpp"
#include "qem/quantum_core.hpp"
#include "qem/sampling.hpp"

namespace qem::test {

// Gaussian draws on top of a seeded stream (Box-Muller).
inline double gaussian(SeededStream& stream) {
  const double u1 = 1.0 - stream.next_unit();
  const double u2 = stream.next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline cxd complex_gaussian(SeededStream& stream) {
  return {gaussian(stream), gaussian(stream)};
}

inline DensityMatrix random_density_matrix(int n, SeededStream& stream) {
  const Eigen::Index d = Eigen::Index(1) << n;
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = complex_gaussian(stream);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  // Symmetrize away the last bits of rounding noise.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(n, std::move(rho));
}

// A Haar-flavored random channel: stack a complex Gaussian, orthonormalize
// its columns, and slice the isometry into `rank` Kraus blocks.
inline KrausChannel random_kraus_channel(int n, int rank, SeededStream& stream) {
  const Eigen::Index d = Eigen::Index(1) << n;
  CMatrix g(d * rank, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = complex_gaussian(stream);
  Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix thin_q = qr.householderQ() * CMatrix::Identity(d * rank, d);
  std::vector<CMatrix> ops;
  ops.reserve(rank);
  for (int b = 0; b < rank; ++b) ops.push_back(thin_q.block(b * d, 0, d, d));
  return KrausChannel(n, std::move(ops));
}

inline DiagonalObservable random_diag_observable(int n, SeededStream& stream) {
  const Eigen::Index d = Eigen::Index(1) << n;
  RVector diag(d);
  for (Eigen::Index i = 0; i < d; ++i) diag(i) = 2.0 * stream.next_unit() - 1.0;
  return DiagonalObservable(n, std::move(diag));
}

// Column-stochastic matrix with uniform entries, columns normalized.
inline RMatrix random_stochastic_matrix(Eigen::Index dim, SeededStream& stream) {
  RMatrix m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    double colsum = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      m(i, j) = stream.next_unit();
      colsum += m(i, j);
    }
    m.col(j) /= colsum;
  }
  return m;
}

// Brute-force channel composition: the Kraus set of (a after b).
inline KrausChannel compose_kraus(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMatrix> ops;
  ops.reserve(a.kraus_ops().size() * b.kraus_ops().size());
  for (const auto& ea : a.kraus_ops())
    for (const auto& eb : b.kraus_ops()) ops.push_back(ea * eb);
  return KrausChannel(a.qubits(), std::move(ops));
}

}  // namespace qem::test
