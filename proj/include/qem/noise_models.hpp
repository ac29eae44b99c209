#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qem/quantum_core.hpp"

namespace qem {

//=========================================================================
// Gate-noise catalog, readout error matrices, and the two noise
// resistance functionals.
//=========================================================================

enum class GateNoiseKind { depolarizing, dephasing, amplitude_damping, custom };

// A gate-noise model: one of the single-qubit catalog channels with a
// parameter in [0, 1], or a custom Kraus channel on any register size.
// Catalog noise acts independently on every qubit of a register.
class GateNoiseSpec {
public:
  static GateNoiseSpec depolarizing(double p);
  static GateNoiseSpec dephasing(double p);
  static GateNoiseSpec amplitude_damping(double gamma);
  static GateNoiseSpec custom(KrausChannel ch);

  GateNoiseKind kind() const { return kind_; }
  double parameter() const { return parameter_; }
  const KrausChannel& custom_channel() const;

private:
  GateNoiseSpec(GateNoiseKind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  GateNoiseKind kind_;
  double parameter_;
  std::vector<KrausChannel> custom_;  // empty unless kind == custom
};

// Kraus realization of a catalog entry (single qubit) or the custom
// channel as given.
KrausChannel make_channel(const GateNoiseSpec& spec);

// Transfer matrix of the noise acting on an n-qubit register. Catalog
// noise tensors per qubit; a custom channel must match n.
PauliTransferMatrix noise_ptm(const GateNoiseSpec& spec, int n);

// k sequential applications of the noise to an n-qubit state. Catalog
// noise is applied qubit by qubit, which avoids materializing the 4^n
// tensored Kraus set.
DensityMatrix apply_noise(const GateNoiseSpec& spec, const DensityMatrix& rho, int k);

// Gate noise resistance: || I - [N] ||_inf.
double noise_resistance_gate(const PauliTransferMatrix& ptm);

// Column-stochastic readout confusion matrix: A(x, y) is the probability
// of reading outcome x when the true outcome is y.
class ErrorMatrix {
public:
  ErrorMatrix(int n, RMatrix entries);

  static ErrorMatrix identity(int n);

  int qubits() const { return n_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const RMatrix& entries() const { return entries_; }

  // Interchange format: first line "dim=<2^n>", then one row per line.
  void to_csv(std::ostream& out) const;
  static ErrorMatrix from_csv(std::istream& in);
  void save_csv(const std::string& path) const;
  static ErrorMatrix load_csv(const std::string& path);

private:
  int n_;
  RMatrix entries_;
};

// Measurement noise resistance: 2 (1 - min diagonal element), which
// equals || I - A ||_1 for column-stochastic A.
double noise_resistance_meas(const ErrorMatrix& a);

// Seed-deterministic random error matrix with the requested noise
// resistance (within 1e-2; the construction actually lands much closer).
ErrorMatrix random_error_matrix(int n, double target_xi, std::uint64_t seed);

// Kronecker product of per-qubit 2x2 error matrices, first factor acting
// on the most significant bit.
ErrorMatrix tensor_local_error(const std::vector<ErrorMatrix>& factors);

}  // namespace qem
