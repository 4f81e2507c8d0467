#pragma once

#include <string>

#include "nhc/cell_model.hpp"
#include "nhc/control_solver.hpp"
#include "nhc/device.hpp"

// File formats used by the CLI and tests. All complex numbers serialize as
// [re, im] with round-trip decimal precision; rereading a written file
// reproduces the exact doubles.

namespace nhc {

// Cell parameter file: {"D": [D12, D23, D13], "A": [...], "Delta": [...],
// "V": [...], "T": period}.
CellParams read_cell_params(const std::string& path);
void write_cell_params(const std::string& path, const CellParams& params);

// Output of solve-identity: the seed, its 64-interval expansion, the global
// phase and the functional value, tied to the cell by hash.
struct SeedFile {
  SeedVector seed;
  ControlVector c0;
  double phase_theta = 0.0;
  double functional = 0.0;
  std::string cell_hash;
};

SeedFile read_seed_file(const std::string& path);
void write_seed_file(const std::string& path, const SeedFile& file);

struct ScheduleFile {
  ControlSchedule schedule;  // base controls, n_star, residual, phase_theta
  std::string target_name;
  std::string cell_hash;
};

ScheduleFile read_schedule_file(const std::string& path);
void write_schedule_file(const std::string& path, const ScheduleFile& file);

// Pulse plot data: columns k, kind (S|omega), C_k, delta_C_k against the
// identity controls.
void write_pulse_csv(const std::string& path, const ControlVector& c, const ControlVector& c0);

// Register state: JSON array of 512 [re, im] pairs in basis order.
RegisterState read_state_file(const std::string& path);
void write_state_file(const std::string& path, const RegisterState& state);

// Program file: list of {"cell", "gate" (catalog label) or "matrix", "label"},
// plus optional annotations.
CompiledProgram read_program_file(const std::string& path, const DeviceTopology& topo);
void write_program_file(const std::string& path, const CompiledProgram& program);

// Schedule directory layout: one schedule file per label, named slug(label) + ".json".
std::string label_slug(const std::string& label);

// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double value);

}  // namespace nhc
