#include "qem/noise_models.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qem/sampling.hpp"

namespace qem {

namespace {

void check_unit_interval(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0))
    throw ParameterError(std::string(what) + " parameter must lie in [0, 1], got " +
                         std::to_string(value));
}

}  // namespace

//-------------------------------------------------------------------------
// GateNoiseSpec
//-------------------------------------------------------------------------

GateNoiseSpec GateNoiseSpec::depolarizing(double p) {
  check_unit_interval(p, "depolarizing");
  return GateNoiseSpec(GateNoiseKind::depolarizing, p);
}

GateNoiseSpec GateNoiseSpec::dephasing(double p) {
  check_unit_interval(p, "dephasing");
  return GateNoiseSpec(GateNoiseKind::dephasing, p);
}

GateNoiseSpec GateNoiseSpec::amplitude_damping(double gamma) {
  check_unit_interval(gamma, "amplitude_damping");
  return GateNoiseSpec(GateNoiseKind::amplitude_damping, gamma);
}

GateNoiseSpec GateNoiseSpec::custom(KrausChannel ch) {
  GateNoiseSpec spec(GateNoiseKind::custom, 0.0);
  spec.custom_.push_back(std::move(ch));
  return spec;
}

const KrausChannel& GateNoiseSpec::custom_channel() const {
  if (custom_.empty()) throw StructuralError("GateNoiseSpec: not a custom channel");
  return custom_.front();
}

KrausChannel make_channel(const GateNoiseSpec& spec) {
  const double p = spec.parameter();
  CMatrix id = CMatrix::Identity(2, 2);
  switch (spec.kind()) {
    case GateNoiseKind::depolarizing: {
      // (1-p) rho + p I/2 written as a Pauli mixture.
      CMatrix x(2, 2), y(2, 2), z(2, 2);
      x << 0, 1, 1, 0;
      y << 0, cxd(0, -1), cxd(0, 1), 0;
      z << 1, 0, 0, -1;
      std::vector<CMatrix> ops;
      ops.push_back(std::sqrt(1.0 - 0.75 * p) * id);
      ops.push_back(std::sqrt(0.25 * p) * x);
      ops.push_back(std::sqrt(0.25 * p) * y);
      ops.push_back(std::sqrt(0.25 * p) * z);
      return KrausChannel(1, std::move(ops));
    }
    case GateNoiseKind::dephasing: {
      CMatrix z(2, 2);
      z << 1, 0, 0, -1;
      std::vector<CMatrix> ops;
      ops.push_back(std::sqrt(1.0 - p) * id);
      ops.push_back(std::sqrt(p) * z);
      return KrausChannel(1, std::move(ops));
    }
    case GateNoiseKind::amplitude_damping: {
      CMatrix e1 = CMatrix::Zero(2, 2), e2 = CMatrix::Zero(2, 2);
      e1(0, 0) = 1.0;
      e1(1, 1) = std::sqrt(1.0 - p);
      e2(0, 1) = std::sqrt(p);
      return KrausChannel(1, {e1, e2});
    }
    default:
      return spec.custom_channel();
  }
}

PauliTransferMatrix noise_ptm(const GateNoiseSpec& spec, int n) {
  if (spec.kind() == GateNoiseKind::custom) {
    const KrausChannel& ch = spec.custom_channel();
    if (ch.qubits() != n) throw StructuralError("noise_ptm: custom channel qubit count mismatch");
    return ptm_from_kraus(ch);
  }
  if (n < 1) throw ParameterError("noise_ptm: qubit count must be >= 1");
  if (n > kMaxPtmQubits)
    throw ResourceLimitError("noise_ptm: " + std::to_string(n) + " qubits exceeds the cap of " +
                             std::to_string(kMaxPtmQubits));
  const RMatrix single = ptm_from_kraus(make_channel(spec)).entries();
  RMatrix acc = single;
  for (int q = 1; q < n; ++q) acc = kron(acc, single);
  return PauliTransferMatrix(n, std::move(acc));
}

DensityMatrix apply_noise(const GateNoiseSpec& spec, const DensityMatrix& rho, int k) {
  if (k < 0) throw ParameterError("apply_noise: repetition count must be >= 0");
  if (k == 0) return rho;
  const int n = rho.qubits();
  if (spec.kind() == GateNoiseKind::custom) return apply_channel(spec.custom_channel(), rho, k);
  if (n == 1) return apply_channel(make_channel(spec), rho, k);
  std::vector<KrausChannel> per_qubit;
  per_qubit.reserve(n);
  const KrausChannel single = make_channel(spec);
  for (int q = 0; q < n; ++q) per_qubit.push_back(embed_single_qubit(single, n, q));
  CMatrix acc = rho.entries();
  for (int rep = 0; rep < k; ++rep)
    for (const auto& ch : per_qubit) acc = ch.apply(acc);
  return DensityMatrix(n, std::move(acc));
}

double noise_resistance_gate(const PauliTransferMatrix& ptm) {
  const Eigen::Index d = ptm.entries().rows();
  return matrix_inf_norm(RMatrix::Identity(d, d) - ptm.entries());
}

//-------------------------------------------------------------------------
// ErrorMatrix
//-------------------------------------------------------------------------

ErrorMatrix::ErrorMatrix(int n, RMatrix entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1) throw ParameterError("ErrorMatrix: qubit count must be >= 1");
  if (n > kMaxDiagQubits)
    throw ResourceLimitError("ErrorMatrix: " + std::to_string(n) + " qubits exceeds the cap of " +
                             std::to_string(kMaxDiagQubits));
  const Eigen::Index d = Eigen::Index(1) << n;
  if (entries_.rows() != d || entries_.cols() != d)
    throw StructuralError("ErrorMatrix: entries must be 2^n x 2^n");
  for (Eigen::Index j = 0; j < d; ++j) {
    double colsum = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (entries_(i, j) < -1e-12)
        throw StructuralError("ErrorMatrix: negative entry at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      if (entries_(i, j) < 0.0) entries_(i, j) = 0.0;
      colsum += entries_(i, j);
    }
    if (std::abs(colsum - 1.0) > 1e-10)
      throw StructuralError("ErrorMatrix: column " + std::to_string(j) + " sums to " +
                            std::to_string(colsum));
  }
}

ErrorMatrix ErrorMatrix::identity(int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  return ErrorMatrix(n, RMatrix::Identity(d, d));
}

void ErrorMatrix::to_csv(std::ostream& out) const {
  out << "dim=" << entries_.rows() << "\n";
  char buf[32];
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", entries_(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

ErrorMatrix ErrorMatrix::from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("dim=", 0) != 0)
    throw ParameterError("ErrorMatrix: CSV must start with a dim=<2^n> header");
  const long dim = std::strtol(line.c_str() + 4, nullptr, 10);
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw ParameterError("ErrorMatrix: dim must be a power of two, got " + line);
  int n = 0;
  while ((1L << n) < dim) ++n;
  RMatrix m(dim, dim);
  for (long i = 0; i < dim; ++i) {
    if (!std::getline(in, line))
      throw ParameterError("ErrorMatrix: CSV ended after " + std::to_string(i) + " rows");
    std::stringstream row(line);
    std::string cell;
    for (long j = 0; j < dim; ++j) {
      if (!std::getline(row, cell, ','))
        throw ParameterError("ErrorMatrix: row " + std::to_string(i) + " has too few columns");
      m(i, j) = std::strtod(cell.c_str(), nullptr);
    }
  }
  return ErrorMatrix(n, std::move(m));
}

void ErrorMatrix::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("ErrorMatrix: cannot open " + path + " for writing");
  to_csv(out);
}

ErrorMatrix ErrorMatrix::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("ErrorMatrix: cannot open " + path);
  return from_csv(in);
}

double noise_resistance_meas(const ErrorMatrix& a) {
  return 2.0 * (1.0 - a.entries().diagonal().minCoeff());
}

ErrorMatrix random_error_matrix(int n, double target_xi, std::uint64_t seed) {
  if (n < 1) throw ParameterError("random_error_matrix: qubit count must be >= 1");
  if (n > kMaxDiagQubits)
    throw ResourceLimitError("random_error_matrix: qubit count exceeds the cap of " +
                             std::to_string(kMaxDiagQubits));
  if (!(target_xi >= 0.0 && target_xi < 1.0))
    throw ParameterError("random_error_matrix: target noise resistance " +
                         std::to_string(target_xi) + " is infeasible (need 0 <= xi < 1)");
  const Eigen::Index d = Eigen::Index(1) << n;
  if (target_xi == 0.0) return ErrorMatrix::identity(n);

  // Confusion profile with zero diagonal and heavy-tailed random columns.
  RMatrix confusion = RMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    SeededStream stream(seed, "error-matrix", static_cast<std::uint64_t>(n),
                        static_cast<std::uint64_t>(j));
    double colsum = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i == j) continue;
      const double e = -std::log(1.0 - stream.next_unit());
      confusion(i, j) = e * e * e;
      colsum += confusion(i, j);
    }
    if (colsum <= 0.0) {
      confusion.col(j).setConstant(1.0 / static_cast<double>(d - 1));
      confusion(j, j) = 0.0;
    } else {
      confusion.col(j) /= colsum;
    }
  }

  // A(t) = (1-t) I + t confusion has noise resistance exactly 2t; solve
  // for the target by bisection anyway so the construction stays valid if
  // the profile ever gains diagonal mass.
  const RMatrix identity = RMatrix::Identity(d, d);
  auto xi_at = [&](double t) {
    return 2.0 * (1.0 - ((1.0 - t) * identity + t * confusion).diagonal().minCoeff());
  };
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (xi_at(mid) < target_xi ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  ErrorMatrix result(n, (1.0 - t) * identity + t * confusion);
  if (std::abs(noise_resistance_meas(result) - target_xi) > 0.01)
    throw ParameterError("random_error_matrix: could not reach target noise resistance");
  return result;
}

ErrorMatrix tensor_local_error(const std::vector<ErrorMatrix>& factors) {
  if (factors.empty()) throw ParameterError("tensor_local_error: no factors");
  RMatrix acc = factors.front().entries();
  int n = factors.front().qubits();
  if (factors.front().dim() != 2)
    throw StructuralError("tensor_local_error: factors must be single-qubit 2x2 matrices");
  for (std::size_t f = 1; f < factors.size(); ++f) {
    if (factors[f].dim() != 2)
      throw StructuralError("tensor_local_error: factors must be single-qubit 2x2 matrices");
    acc = kron(acc, factors[f].entries());
    n += 1;
  }
  return ErrorMatrix(n, std::move(acc));
}

}  // namespace qem
