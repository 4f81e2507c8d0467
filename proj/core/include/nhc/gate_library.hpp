#pragma once

#include <string>
#include <vector>

#include "nhc/types.hpp"

namespace nhc {

// A named unitary together with a Hermitian generator such that
// unitary = exp(-i * generator * epsilon).
struct Gate {
  std::string name;
  int arity = 1;               // number of qubits acted on
  Eigen::MatrixXcd unitary;    // 2^arity x 2^arity
  Eigen::MatrixXcd generator;  // Hermitian, same size
  double epsilon = 0.0;
};

// Three-qubit Toffoli: permutation of basis states 6 and 7. The generator is
// the idempotent projector 1/2 [[1,-1],[-1,1]] on that block, epsilon = pi.
Gate toffoli();

// One-qubit split 1/sqrt(2) [[1,1],[1,-1]], epsilon = pi.
Gate split_gate();

// Two-qubit conditional phase diag(1,1,1,e^{i phi}): generator diag(0,0,0,-1),
// epsilon = phi.
Gate phase_gate(double phi);

// Two-qubit state exchange |01> <-> |10>; generator from the principal log.
Gate swap_gate();

// Identity on `arity` qubits (zero generator, epsilon 0).
Gate identity_gate(int arity = 3);

// Hermitian H with exp(-i H) = u, eigenphases of H in (-pi, pi].
// Throws BranchAmbiguityError when two nearly equal eigenvalues of u straddle
// the branch cut at -1, and Error if u is not unitary to 1e-8.
Eigen::MatrixXcd generator_of(const Eigen::MatrixXcd& u);

// exp(-i h t) for a Hermitian matrix of any size.
Eigen::MatrixXcd hermitian_expm(const Eigen::MatrixXcd& h, double t);

// Embed a 2^arity unitary (or Hermitian) so it acts on the listed 1-based
// qubits of an n-qubit register, identity elsewhere. positions[0] receives
// the matrix's least significant qubit; basis index x = sum x_r 2^r with
// qubit i holding bit i-1. Throws BadPositionsError.
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& m, int arity,
                       const std::vector<int>& positions, int n_qubits);
Eigen::MatrixXcd embed(const Gate& g, const std::vector<int>& positions, int n_qubits);

// Catalog lookup: "toffoli", "split", "swap", "identity", "phase(<angle>)".
// <angle> accepts "pi", "pi/<int>", "<num>*pi", "<num>*pi/<int>", or a
// decimal literal; a leading '-' negates.
Gate gate_by_name(const std::string& name);

// A catalog gate placed on specific cell qubits, parsed from a label such as
// "swap@(1,3)", "split@2", "phase(pi/4)@(1,2)", "toffoli", "identity".
// Without an "@" suffix, defaults are (1), (1,2) or (1,2,3) by arity.
struct CellGateSpec {
  Gate gate;
  std::vector<int> positions;  // ascending canonical order
};

CellGateSpec parse_cell_gate(const std::string& label);

// Canonical label for a spec (what parse_cell_gate accepts and the device
// compiler emits): positions sorted, angles normalized.
std::string cell_gate_label(const CellGateSpec& spec);

// The 8x8 unitary / generator of a cell gate spec (3-qubit register).
Mat8 cell_unitary(const CellGateSpec& spec);
Mat8 cell_generator(const CellGateSpec& spec);  // exp(-i G eps) = cell_unitary

}  // namespace nhc
