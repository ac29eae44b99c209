#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qem/errors.hpp"
#include "qem/linalg.hpp"

namespace qem {

//=========================================================================
// Exact finite-dimensional quantum objects: states, diagonal observables,
// Kraus channels, and the Pauli transfer matrix representation.
//=========================================================================

// Hard caps for dense objects. Transfer matrices are 4^n x 4^n, density
// matrices 2^n x 2^n; diagonal-only pipelines work with 2^n vectors.
inline constexpr int kMaxPtmQubits = 6;
inline constexpr int kMaxDenseQubits = 10;
inline constexpr int kMaxDiagQubits = 12;

// Tolerances: construction-time invariant checks and numeric verification.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kVerifyTol = 1e-10;

// An n-qubit state. Hermitian, unit trace, positive semidefinite
// (eigenvalues >= -1e-10); all checked at construction.
class DensityMatrix {
public:
  DensityMatrix(int n, CMatrix entries);

  static DensityMatrix computational_basis(int n, std::uint64_t x);
  static DensityMatrix from_pure(int n, const Eigen::VectorXcd& amplitudes);

  int qubits() const { return n_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }

  // Outcome probabilities in the computational basis (real diagonal).
  RVector diagonal() const;

private:
  int n_;
  CMatrix entries_;
};

// An observable that is diagonal in the computational basis, with
// max |O(x)| <= 1.
class DiagonalObservable {
public:
  DiagonalObservable(int n, RVector diag);

  int qubits() const { return n_; }
  Eigen::Index dim() const { return diag_.size(); }
  const RVector& diag() const { return diag_; }
  double operator()(std::uint64_t x) const { return diag_(static_cast<Eigen::Index>(x)); }

private:
  int n_;
  RVector diag_;
};

// Parity observable Z tensored over all n qubits: O(x) = (-1)^popcount(x).
DiagonalObservable z_observable(int n);
// Identity observable: O(x) = 1 for every outcome.
DiagonalObservable identity_observable(int n);

// A word over {I,X,Y,Z} together with its (unnormalized) matrix, so each
// Pauli string squares to the identity and has eigenvalues +/-1.
struct PauliString {
  std::string label;
  CMatrix matrix;
};

// All 4^n Pauli strings in lexicographic label order with I < X < Y < Z;
// the identity string comes first.
std::vector<PauliString> pauli_basis(int n);

// A completely positive trace-preserving map given by Kraus operators.
// Trace preservation (sum E^dag E = identity) is checked to 1e-10.
class KrausChannel {
public:
  KrausChannel(int n, std::vector<CMatrix> kraus_ops);

  static KrausChannel identity(int n);

  int qubits() const { return n_; }
  Eigen::Index dim() const { return dim_; }
  const std::vector<CMatrix>& kraus_ops() const { return ops_; }

  CMatrix apply(const CMatrix& rho) const;

private:
  int n_;
  Eigen::Index dim_;
  std::vector<CMatrix> ops_;
};

// Embed a single-qubit channel at qubit position q of an n-qubit register
// (qubit 0 is the most significant bit of the outcome index).
KrausChannel embed_single_qubit(const KrausChannel& ch, int n, int q);

// The 4^n x 4^n real transfer matrix of a channel in the Pauli basis,
// indexed by Pauli labels in pauli_basis order.
class PauliTransferMatrix {
public:
  PauliTransferMatrix(int n, RMatrix entries);

  static PauliTransferMatrix identity(int n);

  int qubits() const { return n_; }
  const RMatrix& entries() const { return entries_; }

private:
  int n_;
  RMatrix entries_;
};

// entries[i][j] = tr[P_i N(P_j)] / 2^n, so the identity channel maps to
// the identity matrix and composition is matrix multiplication.
PauliTransferMatrix ptm_from_kraus(const KrausChannel& ch);

PauliTransferMatrix ptm_compose(const PauliTransferMatrix& a, const PauliTransferMatrix& b);
PauliTransferMatrix ptm_power(const PauliTransferMatrix& a, int k);

// Pauli-basis vectors: <<O| has entries tr[O P_i]/2^n (row), |rho>> has
// entries tr[P_j rho] (column). With this pairing
// <<O| [N] |rho>> = tr[O N(rho)], every entry of |rho>> lies in [-1, 1],
// and the row-vector infinity-norm of <<Z...Z| is exactly 1.
RRowVector observable_vec(const DiagonalObservable& obs);
RVector state_vec(const DensityMatrix& rho);

// Sum of absolute entries of <<O| (its matrix infinity-norm as a row).
double observable_inf_norm(const DiagonalObservable& obs);

// k sequential applications of the channel; k = 0 returns rho unchanged.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, int k);

// tr[O rho] for a diagonal observable: sum_x O(x) rho(x, x).
double exact_expectation(const DiagonalObservable& obs, const DensityMatrix& rho);

// The maximal superposition state: every matrix entry equals 1/2^n.
DensityMatrix max_superposition_state(int n);

}  // namespace qem
