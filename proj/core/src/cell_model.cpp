#include "nhc/cell_model.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "nhc/errors.hpp"

namespace nhc {

namespace {

// dipole[] index for the unordered atom pair {a, b}, 1-based atoms
int pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == 1 && b == 2) return 0;  // D12
  if (a == 2 && b == 3) return 1;  // D23
  return 2;                        // D13
}

double subset_sum(const std::array<double, 3>& v, int x) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    if (x & (1 << i)) s += v[i];
  return s;
}

}  // namespace

void CellParams::validate() const {
  auto finite3 = [](const std::array<double, 3>& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
  };
  if (!finite3(dipole) || !finite3(detuning) || !finite3(stark_unit) || !finite3(em_unit))
    throw Error("cell parameters must be finite");
  if (!std::isfinite(tau) || tau <= 0.0) throw Error("interval length tau must be positive");
}

int basis_index(int x2, int x1, int x0) { return x0 + 2 * x1 + 4 * x2; }

Mat8 build_h0(const CellParams& params) {
  Mat8 h = Mat8::Zero();
  for (int x = 0; x < 8; ++x) h(x, x) = subset_sum(params.detuning, x);
  // D_ij on flip-flops: states differing in exactly two bits with the same
  // excitation count, so state 0 stays decoupled
  for (int x = 0; x < 8; ++x) {
    for (int y = x + 1; y < 8; ++y) {
      const int diff = x ^ y;
      if (std::popcount(static_cast<unsigned>(diff)) != 2) continue;
      if (std::popcount(static_cast<unsigned>(x)) != std::popcount(static_cast<unsigned>(y)))
        continue;
      const int lo = std::countr_zero(static_cast<unsigned>(diff));
      const int hi = 31 - std::countl_zero(static_cast<unsigned>(diff));
      const double d = params.dipole[pair_index(lo + 1, hi + 1)];
      h(x, y) = d;
      h(y, x) = d;
    }
  }
  return h;
}

Mat8 build_p_s(const CellParams& params) {
  Mat8 p = Mat8::Zero();
  for (int x = 0; x < 8; ++x) p(x, x) = subset_sum(params.stark_unit, x);
  return p;
}

Mat8 build_p_omega(const CellParams& params) {
  Mat8 p = Mat8::Zero();
  // V_i on single-photon transitions: states differing in bit i-1 only
  for (int x = 0; x < 8; ++x) {
    for (int i = 0; i < 3; ++i) {
      const int y = x ^ (1 << i);
      if (y < x) continue;
      p(x, y) = params.em_unit[i];
      p(y, x) = params.em_unit[i];
    }
  }
  return p;
}

HamiltonianTriple build_triple(const CellParams& params) {
  params.validate();
  return HamiltonianTriple{build_h0(params), build_p_s(params), build_p_omega(params)};
}

std::string cell_params_hash(const CellParams& params) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (double v : params.dipole) mix(v);
  for (double v : params.detuning) mix(v);
  for (double v : params.stark_unit) mix(v);
  for (double v : params.em_unit) mix(v);
  mix(params.tau);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace nhc
