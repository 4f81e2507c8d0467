#include "nhc/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "nhc/errors.hpp"

namespace nhc {

namespace {

constexpr double pi = std::numbers::pi;

const std::array<CellId, 4> kAllCells{CellId::C1, CellId::C2, CellId::C3, CellId::P};

// Apply an 8x8 gate to the three (ascending) atoms of a cell inside the
// 512-dimensional register; least significant gate qubit = lowest atom.
void apply_cell_gate(Eigen::VectorXcd& amplitudes, const std::array<int, 3>& atoms,
                     const Mat8& gate) {
  const int m0 = 1 << (atoms[0] - 1);
  const int m1 = 1 << (atoms[1] - 1);
  const int m2 = 1 << (atoms[2] - 1);
  const int mask = m0 | m1 | m2;
  const int dim = static_cast<int>(amplitudes.size());
  std::array<int, 8> idx;
  for (int s = 0; s < 8; ++s)
    idx[s] = ((s & 1) ? m0 : 0) | ((s & 2) ? m1 : 0) | ((s & 4) ? m2 : 0);
  for (int rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    Vec8 v;
    for (int s = 0; s < 8; ++s) v(s) = amplitudes(rest | idx[s]);
    const Vec8 w = gate * v;
    for (int s = 0; s < 8; ++s) amplitudes(rest | idx[s]) = w(s);
  }
}

const Mat8& physical_gate(const PhysicalGates& gates, const std::string& label) {
  const auto it = gates.by_label.find(label);
  if (it == gates.by_label.end())
    throw MissingScheduleError("no schedule for op '" + label + "'", label);
  return it->second;
}

void apply_op(Eigen::VectorXcd& amplitudes, const DeviceTopology& topo, const CellOp& op,
              SimulationMode mode, const PhysicalGates* physical) {
  if (mode == SimulationMode::Ideal) {
    apply_cell_gate(amplitudes, topo.atoms_of(op.cell), op.gate);
    return;
  }
  if (physical == nullptr)
    throw MissingScheduleError("physical mode needs realized schedules", op.label);
  apply_cell_gate(amplitudes, topo.atoms_of(op.cell), physical_gate(*physical, op.label));
  // hold every cell that shares no atom with the acting one
  const Mat8& idle = physical_gate(*physical, "identity");
  for (CellId cell : kAllCells) {
    if (cell == op.cell || !topo.disjoint(cell, op.cell)) continue;
    apply_cell_gate(amplitudes, topo.atoms_of(cell), idle);
  }
}

void append_op(CompiledProgram& program, CellOp op, std::string annotation) {
  program.ops.push_back(std::move(op));
  program.annotations.push_back(std::move(annotation));
}

CellOp swap_on_host(CellId host, std::array<int, 2> positions) {
  CellGateSpec spec{swap_gate(), {positions[0], positions[1]}};
  std::sort(spec.positions.begin(), spec.positions.end());
  return CellOp{host, cell_unitary(spec), cell_gate_label(spec)};
}

// cells containing both atoms (at most one for distinct atoms of this tree)
std::vector<CellId> shared_cells(const DeviceTopology& topo, int atom_a, int atom_b) {
  std::vector<CellId> out;
  for (CellId cell : topo.cells_of_atom(atom_a))
    if (topo.contains(cell, atom_b)) out.push_back(cell);
  return out;
}

}  // namespace

std::string to_string(CellId cell) {
  switch (cell) {
    case CellId::C1: return "C1";
    case CellId::C2: return "C2";
    case CellId::C3: return "C3";
    case CellId::P: return "P";
  }
  throw Error("bad cell id");
}

CellId cell_id_from_string(const std::string& s) {
  if (s == "C1") return CellId::C1;
  if (s == "C2") return CellId::C2;
  if (s == "C3") return CellId::C3;
  if (s == "P") return CellId::P;
  throw Error("unknown cell '" + s + "'");
}

DeviceTopology DeviceTopology::standard() { return DeviceTopology{}; }

void DeviceTopology::validate() const {
  std::set<int> seen;
  for (const auto& triad : child_cells)
    for (int atom : triad) {
      if (atom < 1 || atom > n_qubits) throw Error("atom index out of range");
      if (!seen.insert(atom).second) throw Error("atom appears in two child cells");
    }
  if (static_cast<int>(seen.size()) != n_qubits) throw Error("child cells must cover all atoms");
  std::set<int> parent(parent_cell.begin(), parent_cell.end());
  if (parent.size() != 3) throw Error("parent cell needs three distinct atoms");
  for (const auto& triad : child_cells) {
    int shared = 0;
    for (int atom : triad) shared += parent.count(atom);
    if (shared != 1) throw Error("parent cell must share exactly one atom with each child");
  }
}

std::array<int, 3> DeviceTopology::atoms_of(CellId cell) const {
  std::array<int, 3> atoms{};
  switch (cell) {
    case CellId::C1: atoms = child_cells[0]; break;
    case CellId::C2: atoms = child_cells[1]; break;
    case CellId::C3: atoms = child_cells[2]; break;
    case CellId::P: atoms = parent_cell; break;
  }
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

bool DeviceTopology::contains(CellId cell, int atom) const {
  const auto atoms = atoms_of(cell);
  return std::find(atoms.begin(), atoms.end(), atom) != atoms.end();
}

int DeviceTopology::position_in_cell(CellId cell, int atom) const {
  const auto atoms = atoms_of(cell);
  for (int p = 0; p < 3; ++p)
    if (atoms[p] == atom) return p + 1;
  throw AtomNotInCellError("atom " + std::to_string(atom) + " is not in cell " + to_string(cell));
}

CellId DeviceTopology::child_cell_of(int atom) const {
  const std::array<CellId, 3> children{CellId::C1, CellId::C2, CellId::C3};
  for (int i = 0; i < 3; ++i) {
    const auto& triad = child_cells[i];
    if (std::find(triad.begin(), triad.end(), atom) != triad.end()) return children[i];
  }
  throw Error("atom " + std::to_string(atom) + " out of range");
}

std::vector<CellId> DeviceTopology::cells_of_atom(int atom) const {
  std::vector<CellId> cells{child_cell_of(atom)};
  if (contains(CellId::P, atom)) cells.push_back(CellId::P);
  return cells;
}

int DeviceTopology::port_atom(CellId child) const {
  const auto atoms = atoms_of(child);
  for (int atom : atoms)
    if (contains(CellId::P, atom)) return atom;
  throw Error("cell " + to_string(child) + " has no atom shared with the parent");
}

bool DeviceTopology::disjoint(CellId a, CellId b) const {
  const auto atoms = atoms_of(a);
  for (int atom : atoms)
    if (contains(b, atom)) return false;
  return true;
}

RegisterState RegisterState::basis_state(int x) {
  if (x < 0 || x >= 512) throw Error("basis index out of range");
  RegisterState s;
  s.amplitudes = Eigen::VectorXcd::Zero(512);
  s.amplitudes(x) = 1.0;
  return s;
}

RegisterState RegisterState::from_amplitudes(Eigen::VectorXcd a) {
  if (a.size() != 512) throw Error("register state needs 512 amplitudes");
  if (std::abs(a.squaredNorm() - 1.0) > 1e-9) throw Error("register state is not normalized");
  RegisterState s;
  s.amplitudes = std::move(a);
  return s;
}

PhysicalGates realize_schedules(const HamiltonianTriple& triple, double tau,
                                const ScheduleSet& schedules) {
  PhysicalGates out;
  for (const auto& [label, schedule] : schedules.by_label) {
    const Mat8 base = sequence_unitary(triple, schedule.base, tau);
    Mat8 u = Mat8::Identity();
    for (int i = 0; i < schedule.n_star; ++i) u = base * u;
    out.by_label.emplace(label, u);
  }
  return out;
}

CellOp exchange_op(const DeviceTopology& topo, CellId cell, int atom_a, int atom_b) {
  if (atom_a == atom_b) throw AtomNotInCellError("exchange needs two distinct atoms");
  const std::array<int, 2> positions{topo.position_in_cell(cell, atom_a),
                                     topo.position_in_cell(cell, atom_b)};
  return swap_on_host(topo, cell, positions);
}

RoutePlan route_pair(const DeviceTopology& topo, int qubit_i, int qubit_j) {
  if (qubit_i == qubit_j) throw Error("route_pair needs two distinct qubits");
  if (qubit_i < 1 || qubit_i > topo.n_qubits || qubit_j < 1 || qubit_j > topo.n_qubits)
    throw Error("route_pair qubit out of range");

  RoutePlan plan;
  // a shared cell means no moves at all
  for (CellId cell : cells_of_atom_shared(topo, qubit_i, qubit_j)) {
    plan.host = cell;
    plan.host_positions = {topo.position_in_cell(cell, qubit_i),
                           topo.position_in_cell(cell, qubit_j)};
    return plan;
  }

  // otherwise both states meet at the parent: lift each non-parent qubit onto
  // its cell's port atom
  std::array<int, 2> parent_atoms{};
  const std::array<int, 2> qubits{qubit_i, qubit_j};
  for (int q = 0; q < 2; ++q) {
    if (topo.contains(CellId::P, qubits[q])) {
      parent_atoms[q] = qubits[q];
      continue;
    }
    const CellId child = topo.child_cell_of(qubits[q]);
    const int port = topo.port_atom(child);
    plan.prologue.push_back(exchange_op(topo, child, qubits[q], port));
    parent_atoms[q] = port;
  }
  plan.host = CellId::P;
  plan.host_positions = {topo.position_in_cell(CellId::P, parent_atoms[0]),
                         topo.position_in_cell(CellId::P, parent_atoms[1])};
  plan.epilogue.assign(plan.prologue.rbegin(), plan.prologue.rend());
  return plan;
}

CompiledProgram bit_reversal_program(const DeviceTopology& topo) {
  CompiledProgram program;
  const std::array<std::array<int, 2>, 4> pairs{{{1, 9}, {2, 8}, {3, 7}, {4, 6}}};
  for (const auto& [a, b] : pairs) {
    const RoutePlan plan = route_pair(topo, a, b);
    const std::string note =
        "reverse: swap qubits " + std::to_string(a) + " and " + std::to_string(b);
    for (const CellOp& op : plan.prologue) append_op(program, op, note);
    append_op(program, swap_on_host(topo, plan.host, plan.host_positions), note);
    for (const CellOp& op : plan.epilogue) append_op(program, op, note);
  }
  return program;
}

CompiledProgram qft_program(const DeviceTopology& topo) {
  CompiledProgram program = bit_reversal_program(topo);
  for (int i = 1; i <= topo.n_qubits; ++i) {
    const std::string step = "step " + std::to_string(i);
    for (int j = 1; j < i; ++j) {
      const double phi = pi / static_cast<double>(1 << (i - j));
      const RoutePlan plan = route_pair(topo, i, j);
      const std::string note = step + ": conditional phase on qubits (" + std::to_string(i) +
                               "," + std::to_string(j) + ")";
      for (const CellOp& op : plan.prologue) append_op(program, op, note);
      CellGateSpec spec{phase_gate(phi), {plan.host_positions[0], plan.host_positions[1]}};
      std::sort(spec.positions.begin(), spec.positions.end());
      append_op(program, CellOp{plan.host, cell_unitary(spec), cell_gate_label(spec)}, note);
      for (const CellOp& op : plan.epilogue) append_op(program, op, note);
    }
    const CellId host = topo.child_cell_of(i);
    CellGateSpec spec{split_gate(), {topo.position_in_cell(host, i)}};
    append_op(program, CellOp{host, cell_unitary(spec), cell_gate_label(spec)},
              step + ": split qubit " + std::to_string(i));
  }
  return program;
}

Eigen::MatrixXcd dft_reference(int n) {
  if (n < 1) throw Error("dft_reference needs n >= 1");
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      f(y, x) = scale * std::exp(Complex(0.0, 2.0 * pi * static_cast<double>(x) *
                                                  static_cast<double>(y) / n));
  return f;
}

RegisterState apply_program(const RegisterState& state, const CompiledProgram& program,
                            const DeviceTopology& topo, SimulationMode mode,
                            const PhysicalGates* physical) {
  RegisterState out = state;
  for (const CellOp& op : program.ops) apply_op(out.amplitudes, topo, op, mode, physical);
  return out;
}

Eigen::MatrixXcd program_unitary(const CompiledProgram& program, const DeviceTopology& topo,
                                 SimulationMode mode, const PhysicalGates* physical) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(512, 512);
  for (const CellOp& op : program.ops) {
    for (int col = 0; col < 512; ++col) {
      Eigen::VectorXcd column = u.col(col);
      apply_op(column, topo, op, mode, physical);
      u.col(col) = column;
    }
  }
  return u;
}

std::vector<std::string> required_schedule_labels(const CompiledProgram& program) {
  std::set<std::string> labels{"identity"};
  for (const CellOp& op : program.ops) labels.insert(op.label);
  return std::vector<std::string>(labels.begin(), labels.end());
}

}  // namespace nhc
