#include "nhc/gate_library.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "nhc/errors.hpp"

namespace nhc {

namespace {

constexpr double pi = std::numbers::pi;

std::string shortest_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// "pi/4", "pi", "-pi/32", "0.5*pi", plain decimals
double parse_angle(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw Error("empty angle");
  double sign = 1.0;
  if (s[0] == '-') {
    sign = -1.0;
    s = s.substr(1);
  }
  double mult = 1.0;
  if (auto star = s.find('*'); star != std::string::npos) {
    mult = std::stod(s.substr(0, star));
    s = s.substr(star + 1);
  }
  if (s.rfind("pi", 0) == 0) {
    double denom = 1.0;
    if (s.size() > 2) {
      if (s[2] != '/') throw Error("cannot parse angle '" + text + "'");
      denom = std::stod(s.substr(3));
    }
    return sign * mult * pi / denom;
  }
  return sign * mult * std::stod(s);
}

// "pi/n" when the angle is an integer fraction of pi, else a decimal
std::string angle_to_string(double phi) {
  const double a = std::abs(phi);
  if (a > 0) {
    const double n = pi / a;
    const double rounded = std::round(n);
    if (rounded >= 1.0 && rounded <= 4096.0 && std::abs(n - rounded) < 1e-9) {
      std::string body = rounded == 1.0
                             ? std::string("pi")
                             : "pi/" + std::to_string(static_cast<long>(rounded));
      return phi < 0 ? "-" + body : body;
    }
  }
  return shortest_double(phi);
}

std::vector<int> parse_positions(const std::string& text) {
  std::vector<int> out;
  std::string body = text;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw BadPositionsError("unbalanced positions in '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto comma = body.find(',', start);
    const std::string tok = body.substr(start, comma == std::string::npos ? comma : comma - start);
    if (tok.empty()) throw BadPositionsError("empty position in '" + text + "'");
    out.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string positions_to_string(const std::vector<int>& positions) {
  if (positions.size() == 1) return std::to_string(positions[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(positions[i]);
  }
  return s + ")";
}

bool symmetric_under_qubit_order(const std::string& name) {
  return name == "swap" || name.rfind("phase(", 0) == 0 || name == "identity";
}

}  // namespace

Gate toffoli() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(8, 8);
  u(6, 6) = 0.0;
  u(7, 7) = 0.0;
  u(6, 7) = 1.0;
  u(7, 6) = 1.0;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(8, 8);
  g(6, 6) = 0.5;
  g(7, 7) = 0.5;
  g(6, 7) = -0.5;
  g(7, 6) = -0.5;
  return Gate{"toffoli", 3, std::move(u), std::move(g), pi};
}

Gate split_gate() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd u(2, 2);
  u << s, s, s, -s;
  // generator with eigenvalues 0 and -1; exp(-i pi g) reproduces the split
  const double r = 1.0 / std::sqrt(8.0);
  Eigen::MatrixXcd g(2, 2);
  g << r * (1.0 - std::sqrt(2.0)), r, r, r * (-1.0 - std::sqrt(2.0));
  return Gate{"split", 1, std::move(u), std::move(g), pi};
}

Gate phase_gate(double phi) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
  u(3, 3) = std::exp(Complex(0.0, phi));
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(4, 4);
  g(3, 3) = -1.0;
  return Gate{"phase(" + angle_to_string(phi) + ")", 2, std::move(u), std::move(g), phi};
}

Gate swap_gate() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 2) = 1.0;
  u(2, 1) = 1.0;
  u(3, 3) = 1.0;
  Eigen::MatrixXcd g = generator_of(u);
  return Gate{"swap", 2, std::move(u), std::move(g), 1.0};
}

Gate identity_gate(int arity) {
  const int dim = 1 << arity;
  return Gate{"identity", arity, Eigen::MatrixXcd::Identity(dim, dim),
              Eigen::MatrixXcd::Zero(dim, dim), 0.0};
}

Eigen::MatrixXcd hermitian_expm(const Eigen::MatrixXcd& h, double t) {
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12))
    throw NotHermitianError("matrix deviates from Hermitian symmetry by " + std::to_string(dev));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const int n = static_cast<int>(h.rows());
  Eigen::VectorXcd phases(n);
  for (int i = 0; i < n; ++i) phases(i) = std::exp(Complex(0.0, -solver.eigenvalues()(i) * t));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Eigen::MatrixXcd generator_of(const Eigen::MatrixXcd& u) {
  const int n = static_cast<int>(u.rows());
  if (u.cols() != n) throw Error("generator_of needs a square matrix");
  const double unit_dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(unit_dev <= 1e-8))
    throw Error("generator_of input is not unitary (deviation " + std::to_string(unit_dev) + ")");

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  // unitary input is normal, so T is diagonal up to roundoff
  Eigen::VectorXcd lambda = schur.matrixT().diagonal();
  Eigen::VectorXd h(n);
  for (int i = 0; i < n; ++i) {
    const Complex l = lambda(i) / std::abs(lambda(i));
    double phase = -std::arg(l);  // in [-pi, pi)
    if (phase == -pi) phase = pi; // principal branch is (-pi, pi]
    h(i) = phase;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (std::abs(lambda(a) - lambda(b)) < 1e-6 && std::abs(h(a) - h(b)) > pi) {
        throw BranchAmbiguityError(
            "degenerate eigenvalues straddle the logarithm branch cut", lambda(a), lambda(b));
      }
    }
  }
  Eigen::MatrixXcd gen =
      schur.matrixU() * h.cast<Complex>().asDiagonal() * schur.matrixU().adjoint();
  return 0.5 * (gen + gen.adjoint().eval());
}

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& m, int arity,
                       const std::vector<int>& positions, int n_qubits) {
  if (arity < 1 || n_qubits < 1 || arity > n_qubits)
    throw BadPositionsError("embed: bad arity " + std::to_string(arity));
  if (static_cast<int>(positions.size()) != arity)
    throw BadPositionsError("embed: expected " + std::to_string(arity) + " positions");
  int mask = 0;
  for (int p : positions) {
    if (p < 1 || p > n_qubits)
      throw BadPositionsError("embed: position " + std::to_string(p) + " out of range");
    const int bit = 1 << (p - 1);
    if (mask & bit) throw BadPositionsError("embed: duplicate position " + std::to_string(p));
    mask |= bit;
  }
  const int small = 1 << arity;
  if (m.rows() != small || m.cols() != small)
    throw BadPositionsError("embed: matrix size does not match arity");

  const int dim = 1 << n_qubits;
  auto scatter = [&](int s) {
    int b = 0;
    for (int t = 0; t < arity; ++t)
      if ((s >> t) & 1) b |= 1 << (positions[t] - 1);
    return b;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    for (int si = 0; si < small; ++si) {
      const int col = rest | scatter(si);
      for (int so = 0; so < small; ++so) out(rest | scatter(so), col) = m(so, si);
    }
  }
  return out;
}

Eigen::MatrixXcd embed(const Gate& g, const std::vector<int>& positions, int n_qubits) {
  return embed(g.unitary, g.arity, positions, n_qubits);
}

Gate gate_by_name(const std::string& name) {
  if (name == "toffoli") return toffoli();
  if (name == "split") return split_gate();
  if (name == "swap") return swap_gate();
  if (name == "identity") return identity_gate();
  if (name.rfind("phase(", 0) == 0 && name.back() == ')')
    return phase_gate(parse_angle(name.substr(6, name.size() - 7)));
  throw Error("unknown gate '" + name + "'");
}

CellGateSpec parse_cell_gate(const std::string& label) {
  std::string name = label;
  std::vector<int> positions;
  if (auto at = label.rfind('@'); at != std::string::npos) {
    name = label.substr(0, at);
    positions = parse_positions(label.substr(at + 1));
  }
  Gate gate = gate_by_name(name);
  if (positions.empty()) {
    for (int p = 1; p <= gate.arity; ++p) positions.push_back(p);
  }
  if (static_cast<int>(positions.size()) != gate.arity)
    throw BadPositionsError("gate '" + name + "' takes " + std::to_string(gate.arity) +
                            " positions");
  if (symmetric_under_qubit_order(gate.name)) std::sort(positions.begin(), positions.end());
  return CellGateSpec{std::move(gate), std::move(positions)};
}

std::string cell_gate_label(const CellGateSpec& spec) {
  if (spec.gate.name == "identity") return spec.gate.name;
  std::vector<int> positions = spec.positions;
  if (symmetric_under_qubit_order(spec.gate.name))
    std::sort(positions.begin(), positions.end());
  std::vector<int> defaults;
  for (int p = 1; p <= spec.gate.arity; ++p) defaults.push_back(p);
  if (positions == defaults) return spec.gate.name;
  return spec.gate.name + "@" + positions_to_string(positions);
}

Mat8 cell_unitary(const CellGateSpec& spec) {
  return embed(spec.gate.unitary, spec.gate.arity, spec.positions, 3);
}

Mat8 cell_generator(const CellGateSpec& spec) {
  return embed(spec.gate.generator, spec.gate.arity, spec.positions, 3);
}

}  // namespace nhc
