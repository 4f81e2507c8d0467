#pragma once

#include <array>
#include <string>

#include "nhc/types.hpp"

namespace nhc {

// Physical parameters of one three-atom cell. Energies are in units of E_u,
// times in hbar/E_u. The perturbation matrices built from these are
// unit-strength: the dimensionless control C_k multiplies them.
struct CellParams {
  std::array<double, 3> dipole{1.1, 0.946, 0.86};      // D12, D23, D13
  std::array<double, 3> detuning{0.0, 0.0, 0.0};       // A1, A2, A3
  std::array<double, 3> stark_unit{0.1, 0.11, 0.312};  // Delta_i at unit static field
  std::array<double, 3> em_unit{0.3, 0.33, 0.24};      // V_i at unit EM field
  double tau = 250.0 / 64.0;                           // interval length; period T = 64 tau

  double period() const { return 64.0 * tau; }

  // Throws Error if any entry is non-finite or tau <= 0.
  void validate() const;
};

// The cell's principal Hamiltonian and the two unit-strength perturbations,
// all 8x8 Hermitian in the computational basis.
struct HamiltonianTriple {
  Mat8 h0;       // dipole-dipole couplings + detunings; row/column 0 decoupled
  Mat8 p_s;      // Stark shifts, diagonal
  Mat8 p_omega;  // single-photon EM couplings, zero diagonal
};

// Computational-basis index x = x0 + 2 x1 + 4 x2; atom i encodes bit i-1.
int basis_index(int x2, int x1, int x0);

// Principal Hamiltonian: diagonal (0, A1, A2, A12, A3, A13, A23, A_sigma) with
// pair detunings A_ij = A_i + A_j, and D_ij on every excitation-conserving
// two-bit flip-flop.
Mat8 build_h0(const CellParams& params);

// Stark perturbation at unit control: diagonal (0, d1, d2, d12, d3, d13, d23, d_sigma).
Mat8 build_p_s(const CellParams& params);

// EM perturbation at unit control: V_i on every pair of states differing in
// bit i-1 only.
Mat8 build_p_omega(const CellParams& params);

HamiltonianTriple build_triple(const CellParams& params);

// FNV-1a over the parameter bytes; ties seed and schedule files to the cell
// they were solved for.
std::string cell_params_hash(const CellParams& params);

}  // namespace nhc
