#pragma once

#include <array>
#include <vector>

#include "nhc/cell_model.hpp"

namespace nhc {

enum class PerturbationKind { Static, Electromagnetic };

// The perturbation acting during the 1-based interval k: P_S on odd k,
// P_omega on even k. Fixed convention, used everywhere.
PerturbationKind perturbation_kind(int k);

// The 64 piecewise-constant control strengths C_1..C_64 over one period
// T = 64 tau. values[k-1] holds C_k.
struct ControlVector {
  std::array<double, 64> values{};
};

// Eight strengths c_1..c_8 for the one-eighth-period product.
struct SeedVector {
  std::array<double, 8> values{};
};

// Tile a seed eight times into a full control vector. Parity is preserved
// because the tile length is even.
ControlVector expand_seed(const SeedVector& seed);

// exp(-i h t) via Hermitian eigendecomposition; unitary up to roundoff.
// Throws NotHermitianError if max |h - h^dagger| exceeds 1e-12.
Mat8 step_unitary(const Mat8& h, double t);

// Ordered product of the 64 interval propagators. Interval k = 1 acts first
// on the state, i.e. is the rightmost factor; same convention everywhere,
// including the derivatives.
Mat8 sequence_unitary(const HamiltonianTriple& triple, const ControlVector& c, double tau);

// Eight-interval product with the same ordering and parity conventions.
Mat8 seed_product(const HamiltonianTriple& triple, const SeedVector& c, double tau);

// dU/dC_k for every k. Exact: each per-interval exponential is differentiated
// in its own eigenbasis (divided differences), then sandwiched between the
// partial products on either side.
std::vector<Mat8> unitary_derivatives(const HamiltonianTriple& triple,
                                      const ControlVector& c, double tau);

}  // namespace nhc
