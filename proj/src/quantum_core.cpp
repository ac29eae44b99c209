#include "qem/quantum_core.hpp"

#include <bit>
#include <cmath>

namespace qem {

namespace {

constexpr char kPauliChars[4] = {'I', 'X', 'Y', 'Z'};

void check_qubit_count(int n, int cap, const char* what) {
  if (n < 1) throw ParameterError(std::string(what) + ": qubit count must be >= 1");
  if (n > cap)
    throw ResourceLimitError(std::string(what) + ": " + std::to_string(n) +
                             " qubits exceeds the dense cap of " + std::to_string(cap));
}

Eigen::Index pow2(int n) { return Eigen::Index(1) << n; }

CMatrix single_qubit_pauli(int digit) {
  CMatrix m(2, 2);
  const cxd i(0.0, 1.0);
  switch (digit) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Decode a base-4 Pauli index into per-qubit digits, qubit 0 first.
std::vector<int> pauli_digits(std::uint64_t index, int n) {
  std::vector<int> digits(n);
  for (int q = n - 1; q >= 0; --q) {
    digits[q] = static_cast<int>(index & 3u);
    index >>= 2;
  }
  return digits;
}

std::string pauli_label(std::uint64_t index, int n) {
  auto digits = pauli_digits(index, n);
  std::string label(n, 'I');
  for (int q = 0; q < n; ++q) label[q] = kPauliChars[digits[q]];
  return label;
}

// Sparse structure of a Pauli string: P(a, a ^ flip) = weight(a), zero
// elsewhere. flip has a bit set for every X or Y factor.
struct PauliAction {
  std::uint64_t flip = 0;
  std::uint64_t zmask = 0;   // bits with a Z factor
  std::uint64_t ymask = 0;   // bits with a Y factor
  int n = 0;

  explicit PauliAction(const std::vector<int>& digits) {
    n = static_cast<int>(digits.size());
    for (int q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t(1) << (n - 1 - q);
      if (digits[q] == 1 || digits[q] == 2) flip |= bit;
      if (digits[q] == 2) ymask |= bit;
      if (digits[q] == 3) zmask |= bit;
    }
  }

  // Entry P(a, a ^ flip).
  cxd weight(std::uint64_t a) const {
    // Z factors contribute (-1)^(a & zmask); each Y factor contributes
    // -i when the row bit is 0 and +i when it is 1.
    int zpar = std::popcount(a & zmask) & 1;
    int ones = std::popcount(a & ymask);
    int ycount = std::popcount(ymask);
    // product of ycount factors of (+/- i): i^ycount * (-1)^(zeros among Y bits)
    int zeros = ycount - ones;
    cxd w = (zpar ? -1.0 : 1.0);
    if (zeros & 1) w = -w;
    switch (ycount & 3) {
      case 1: w *= cxd(0, 1); break;
      case 2: w *= -1.0; break;
      case 3: w *= cxd(0, -1); break;
      default: break;
    }
    return w;
  }
};

CMatrix pauli_dense(const PauliAction& act) {
  const Eigen::Index d = pow2(act.n);
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    m(a, static_cast<Eigen::Index>(a ^ act.flip)) = act.weight(static_cast<std::uint64_t>(a));
  return m;
}

// tr[P M] for dense M, using the sparse Pauli structure.
cxd pauli_trace(const PauliAction& act, const CMatrix& m) {
  const Eigen::Index d = m.rows();
  cxd sum = 0.0;
  for (Eigen::Index a = 0; a < d; ++a)
    sum += act.weight(static_cast<std::uint64_t>(a)) * m(static_cast<Eigen::Index>(a ^ act.flip), a);
  return sum;
}

}  // namespace

//-------------------------------------------------------------------------
// DensityMatrix
//-------------------------------------------------------------------------

DensityMatrix::DensityMatrix(int n, CMatrix entries) : n_(n), entries_(std::move(entries)) {
  check_qubit_count(n, kMaxDenseQubits, "DensityMatrix");
  const Eigen::Index d = pow2(n);
  if (entries_.rows() != d || entries_.cols() != d)
    throw StructuralError("DensityMatrix: entries must be 2^n x 2^n");
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kConstructionTol)
    throw StructuralError("DensityMatrix: not Hermitian");
  if (std::abs(entries_.trace() - cxd(1.0)) > kConstructionTol)
    throw StructuralError("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw StructuralError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::computational_basis(int n, std::uint64_t x) {
  check_qubit_count(n, kMaxDenseQubits, "DensityMatrix");
  const Eigen::Index d = pow2(n);
  if (x >= static_cast<std::uint64_t>(d))
    throw ParameterError("DensityMatrix: basis index out of range");
  CMatrix m = CMatrix::Zero(d, d);
  m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::from_pure(int n, const Eigen::VectorXcd& amplitudes) {
  check_qubit_count(n, kMaxDenseQubits, "DensityMatrix");
  if (amplitudes.size() != pow2(n))
    throw StructuralError("DensityMatrix: amplitude vector must have length 2^n");
  const double norm = amplitudes.norm();
  if (norm <= 0.0) throw ParameterError("DensityMatrix: zero state vector");
  Eigen::VectorXcd psi = amplitudes / norm;
  return DensityMatrix(n, psi * psi.adjoint());
}

RVector DensityMatrix::diagonal() const { return entries_.diagonal().real(); }

//-------------------------------------------------------------------------
// DiagonalObservable
//-------------------------------------------------------------------------

DiagonalObservable::DiagonalObservable(int n, RVector diag) : n_(n), diag_(std::move(diag)) {
  check_qubit_count(n, kMaxDiagQubits, "DiagonalObservable");
  if (diag_.size() != pow2(n))
    throw StructuralError("DiagonalObservable: diagonal must have length 2^n");
  if (diag_.cwiseAbs().maxCoeff() > 1.0 + kConstructionTol)
    throw StructuralError("DiagonalObservable: entries must satisfy |O(x)| <= 1");
}

DiagonalObservable z_observable(int n) {
  check_qubit_count(n, kMaxDiagQubits, "z_observable");
  const Eigen::Index d = pow2(n);
  RVector diag(d);
  for (Eigen::Index x = 0; x < d; ++x)
    diag(x) = (std::popcount(static_cast<std::uint64_t>(x)) & 1) ? -1.0 : 1.0;
  return DiagonalObservable(n, std::move(diag));
}

DiagonalObservable identity_observable(int n) {
  check_qubit_count(n, kMaxDiagQubits, "identity_observable");
  return DiagonalObservable(n, RVector::Ones(pow2(n)));
}

//-------------------------------------------------------------------------
// Pauli basis
//-------------------------------------------------------------------------

std::vector<PauliString> pauli_basis(int n) {
  check_qubit_count(n, kMaxPtmQubits, "pauli_basis");
  const std::uint64_t count = std::uint64_t(1) << (2 * n);
  std::vector<PauliString> basis;
  basis.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto digits = pauli_digits(i, n);
    CMatrix m = single_qubit_pauli(digits[0]);
    for (int q = 1; q < n; ++q) m = kron(m, single_qubit_pauli(digits[q]));
    basis.push_back({pauli_label(i, n), std::move(m)});
  }
  return basis;
}

//-------------------------------------------------------------------------
// KrausChannel
//-------------------------------------------------------------------------

KrausChannel::KrausChannel(int n, std::vector<CMatrix> kraus_ops)
    : n_(n), dim_(pow2(n)), ops_(std::move(kraus_ops)) {
  check_qubit_count(n, kMaxDenseQubits, "KrausChannel");
  if (ops_.empty()) throw StructuralError("KrausChannel: no Kraus operators");
  for (const auto& op : ops_)
    if (op.rows() != dim_ || op.cols() != dim_)
      throw StructuralError("KrausChannel: operator dimension mismatch");
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (const auto& op : ops_) sum += op.adjoint() * op;
  if ((sum - CMatrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > kVerifyTol)
    throw StructuralError("KrausChannel: not trace preserving");
}

KrausChannel KrausChannel::identity(int n) {
  return KrausChannel(n, {CMatrix::Identity(pow2(n), pow2(n))});
}

CMatrix KrausChannel::apply(const CMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_)
    throw StructuralError("KrausChannel: state dimension mismatch");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& op : ops_) out += op * rho * op.adjoint();
  return out;
}

KrausChannel embed_single_qubit(const KrausChannel& ch, int n, int q) {
  if (ch.qubits() != 1) throw StructuralError("embed_single_qubit: channel must be single qubit");
  if (q < 0 || q >= n) throw ParameterError("embed_single_qubit: qubit position out of range");
  const Eigen::Index dl = pow2(q);
  const Eigen::Index dr = pow2(n - 1 - q);
  std::vector<CMatrix> ops;
  ops.reserve(ch.kraus_ops().size());
  for (const auto& op : ch.kraus_ops())
    ops.push_back(kron(kron(CMatrix::Identity(dl, dl), op), CMatrix::Identity(dr, dr)));
  return KrausChannel(n, std::move(ops));
}

//-------------------------------------------------------------------------
// Pauli transfer matrices
//-------------------------------------------------------------------------

PauliTransferMatrix::PauliTransferMatrix(int n, RMatrix entries)
    : n_(n), entries_(std::move(entries)) {
  check_qubit_count(n, kMaxPtmQubits, "PauliTransferMatrix");
  const Eigen::Index d = Eigen::Index(1) << (2 * n);
  if (entries_.rows() != d || entries_.cols() != d)
    throw StructuralError("PauliTransferMatrix: entries must be 4^n x 4^n");
}

PauliTransferMatrix PauliTransferMatrix::identity(int n) {
  const Eigen::Index d = Eigen::Index(1) << (2 * n);
  return PauliTransferMatrix(n, RMatrix::Identity(d, d));
}

PauliTransferMatrix ptm_from_kraus(const KrausChannel& ch) {
  const int n = ch.qubits();
  check_qubit_count(n, kMaxPtmQubits, "ptm_from_kraus");
  const std::uint64_t count = std::uint64_t(1) << (2 * n);
  const double scale = 1.0 / static_cast<double>(pow2(n));

  std::vector<PauliAction> actions;
  actions.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) actions.emplace_back(pauli_digits(i, n));

  RMatrix out(count, count);
  for (std::uint64_t j = 0; j < count; ++j) {
    const CMatrix image = ch.apply(pauli_dense(actions[j]));
    for (std::uint64_t i = 0; i < count; ++i)
      out(i, j) = pauli_trace(actions[i], image).real() * scale;
  }
  return PauliTransferMatrix(n, std::move(out));
}

PauliTransferMatrix ptm_compose(const PauliTransferMatrix& a, const PauliTransferMatrix& b) {
  if (a.qubits() != b.qubits()) throw StructuralError("ptm_compose: qubit count mismatch");
  return PauliTransferMatrix(a.qubits(), a.entries() * b.entries());
}

PauliTransferMatrix ptm_power(const PauliTransferMatrix& a, int k) {
  if (k < 1) throw ParameterError("ptm_power: exponent must be >= 1");
  RMatrix acc = a.entries();
  for (int i = 1; i < k; ++i) acc = acc * a.entries();
  return PauliTransferMatrix(a.qubits(), std::move(acc));
}

//-------------------------------------------------------------------------
// Pauli-basis vectors
//-------------------------------------------------------------------------

RRowVector observable_vec(const DiagonalObservable& obs) {
  const int n = obs.qubits();
  check_qubit_count(n, kMaxPtmQubits, "observable_vec");
  const Eigen::Index d = pow2(n);
  const Eigen::Index count = Eigen::Index(1) << (2 * n);
  RRowVector vec = RRowVector::Zero(count);
  // Only {I,Z} words have a nonzero diagonal; walk them by z-pattern.
  for (std::uint64_t zpat = 0; zpat < static_cast<std::uint64_t>(d); ++zpat) {
    std::uint64_t index = 0;
    for (int q = 0; q < n; ++q) {
      index <<= 2;
      if (zpat & (std::uint64_t(1) << (n - 1 - q))) index |= 3;
    }
    double sum = 0.0;
    for (Eigen::Index x = 0; x < d; ++x) {
      const int par = std::popcount(static_cast<std::uint64_t>(x) & zpat) & 1;
      sum += par ? -obs.diag()(x) : obs.diag()(x);
    }
    vec(static_cast<Eigen::Index>(index)) = sum / static_cast<double>(d);
  }
  return vec;
}

RVector state_vec(const DensityMatrix& rho) {
  const int n = rho.qubits();
  check_qubit_count(n, kMaxPtmQubits, "state_vec");
  const std::uint64_t count = std::uint64_t(1) << (2 * n);
  RVector vec(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    PauliAction act(pauli_digits(i, n));
    vec(static_cast<Eigen::Index>(i)) = pauli_trace(act, rho.entries()).real();
  }
  return vec;
}

double observable_inf_norm(const DiagonalObservable& obs) {
  const int n = obs.qubits();
  const Eigen::Index d = pow2(n);
  double norm = 0.0;
  for (std::uint64_t zpat = 0; zpat < static_cast<std::uint64_t>(d); ++zpat) {
    double sum = 0.0;
    for (Eigen::Index x = 0; x < d; ++x) {
      const int par = std::popcount(static_cast<std::uint64_t>(x) & zpat) & 1;
      sum += par ? -obs.diag()(x) : obs.diag()(x);
    }
    norm += std::abs(sum) / static_cast<double>(d);
  }
  return norm;
}

//-------------------------------------------------------------------------
// Evolution and expectation values
//-------------------------------------------------------------------------

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, int k) {
  if (k < 0) throw ParameterError("apply_channel: repetition count must be >= 0");
  if (ch.qubits() != rho.qubits()) throw StructuralError("apply_channel: qubit count mismatch");
  if (k == 0) return rho;
  CMatrix acc = rho.entries();
  for (int i = 0; i < k; ++i) acc = ch.apply(acc);
  return DensityMatrix(rho.qubits(), std::move(acc));
}

double exact_expectation(const DiagonalObservable& obs, const DensityMatrix& rho) {
  if (obs.qubits() != rho.qubits())
    throw StructuralError("exact_expectation: qubit count mismatch");
  return obs.diag().dot(rho.diagonal());
}

DensityMatrix max_superposition_state(int n) {
  check_qubit_count(n, kMaxDenseQubits, "max_superposition_state");
  const Eigen::Index d = pow2(n);
  return DensityMatrix(n, CMatrix::Constant(d, d, cxd(1.0 / static_cast<double>(d), 0.0)));
}

}  // namespace qem
