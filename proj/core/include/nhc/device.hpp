#pragma once

#include <map>
#include <string>
#include <vector>

#include "nhc/control_solver.hpp"
#include "nhc/gate_library.hpp"

namespace nhc {

enum class CellId { C1, C2, C3, P };

std::string to_string(CellId cell);
CellId cell_id_from_string(const std::string& s);

// Nine atoms in a two-level tree: three child triads plus the parent triad
// made of one atom from each child. Atoms 3, 6 and 7 belong to both their
// child cell and the parent; moving a state "up" is pure relabeling.
struct DeviceTopology {
  std::array<std::array<int, 3>, 3> child_cells{{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}};
  std::array<int, 3> parent_cell{3, 6, 7};
  int n_qubits = 9;

  static DeviceTopology standard();
  void validate() const;  // throws Error on a malformed tree

  std::array<int, 3> atoms_of(CellId cell) const;      // ascending
  bool contains(CellId cell, int atom) const;
  int position_in_cell(CellId cell, int atom) const;   // 1..3; throws AtomNotInCellError
  CellId child_cell_of(int atom) const;                // the (unique) child triad
  std::vector<CellId> cells_of_atom(int atom) const;
  int port_atom(CellId child) const;                   // the atom shared with the parent
  bool disjoint(CellId a, CellId b) const;
};

// 2^9 = 512 amplitudes over |x8 ... x0>, qubit i = bit i-1.
struct RegisterState {
  Eigen::VectorXcd amplitudes;

  static RegisterState basis_state(int x);
  // Checks dimension 512 and unit norm to 1e-9.
  static RegisterState from_amplitudes(Eigen::VectorXcd a);
};

// One 8x8 unitary applied to a cell's three atoms (least significant qubit =
// lowest atom index). The label is the schedule key in physical mode.
struct CellOp {
  CellId cell;
  Mat8 gate;
  std::string label;
};

struct CompiledProgram {
  std::vector<CellOp> ops;
  std::vector<std::string> annotations;  // one per op: the algorithm step it implements
};

enum class SimulationMode { Ideal, Physical };

// Synthesized schedules keyed by op label. Physical mode also needs the
// "identity" entry, applied to every cell disjoint from the acting one.
struct ScheduleSet {
  std::map<std::string, ControlSchedule> by_label;
};

// The realized 8x8 matrices U(base)^{n*} per label, built once per run.
struct PhysicalGates {
  std::map<std::string, Mat8> by_label;
};

PhysicalGates realize_schedules(const HamiltonianTriple& triple, double tau,
                                const ScheduleSet& schedules);

// Exchange the qubit states of two atoms of one cell (identity on the third).
CellOp exchange_op(const DeviceTopology& topo, CellId cell, int atom_a, int atom_b);

// Exchanges that bring the logical states of two qubits into one cell, the
// host, plus the exact reverse. Same-cell pairs need no moves; every other
// pair meets at the parent after at most two exchanges.
struct RoutePlan {
  std::vector<CellOp> prologue;
  CellId host;
  std::array<int, 2> host_positions;  // cell-local positions of (i, j) after the prologue
  std::vector<CellOp> epilogue;
};

RoutePlan route_pair(const DeviceTopology& topo, int qubit_i, int qubit_j);

// Net action |x8...x0> -> |x0...x8|: routed swaps on pairs (1,9), (2,8),
// (3,7), (4,6).
CompiledProgram bit_reversal_program(const DeviceTopology& topo);

// Bit reversal, then for i = 1..9 the conditional phases pi/2^{i-j} against
// every earlier qubit j followed by a split of qubit i. Equals the discrete
// Fourier transform on 512 basis states.
CompiledProgram qft_program(const DeviceTopology& topo);

// Entry (y, x) = exp(2 pi i x y / n) / sqrt(n).
Eigen::MatrixXcd dft_reference(int n);

// Run a program. Ideal mode applies each op's exact 8x8 unitary. Physical mode
// applies the realized schedule matrix for the op's label on the acting cell
// and the "identity" schedule matrix on every disjoint cell; atoms covered by
// no driven cell are untouched. Throws MissingScheduleError.
RegisterState apply_program(const RegisterState& state, const CompiledProgram& program,
                            const DeviceTopology& topo, SimulationMode mode,
                            const PhysicalGates* physical = nullptr);

// The full 512x512 matrix of a program, for oracle comparison.
Eigen::MatrixXcd program_unitary(const CompiledProgram& program, const DeviceTopology& topo,
                                 SimulationMode mode, const PhysicalGates* physical = nullptr);

// Distinct op labels of a program plus "identity": what physical mode needs.
std::vector<std::string> required_schedule_labels(const CompiledProgram& program);

}  // namespace nhc
