#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "nhc/propagator.hpp"

namespace nhc {

// Coefficients of det(lambda I - m), monic: a[j] multiplies lambda^j, a[8] = 1.
// For unitary m, |a[0]| = |det m| = 1.
struct CharPolyCoefficients {
  std::array<Complex, 9> a{};
};

// Faddeev-LeVerrier recursion; exact up to roundoff for well-scaled input.
CharPolyCoefficients char_poly(const Mat8& m);

// sum_j |a_j|^2 over the characteristic polynomial of the eight-interval
// product. Lower bound 2 on unitary products (|a_8| = |a_0| = 1); the bound is
// attained exactly when the product's eigenvalues are the 8 distinct 8th roots
// of -a_0, i.e. when the product is an 8th root of a phase times identity.
double identity_functional(const HamiltonianTriple& triple, const SeedVector& c, double tau);

struct SeedSearchConfig {
  int restarts = 32;
  std::uint64_t rng_seed = 42;  // every run with the same seed is bit-identical
  double box_lo = 0.2;          // initial strengths drawn uniformly from
  double box_hi = 2.0;          // [box_lo, box_hi]^8
  double tol_f = 1e-9;          // success means functional <= 2 + tol_f
  int max_iterations = 200;     // damped Gauss-Newton iterations per restart
  double phase_pin_weight = 0.0;  // > 0 adds a |a_0 + 1|^2 penalty pinning theta = 0
};

struct IdentitySeed {
  SeedVector seed;
  double functional = 0.0;   // value reached
  double phase_theta = 0.0;  // seed_product(seed)^8 = e^{i theta} I
  int best_restart = -1;
  int converged_restarts = 0;
};

// Multi-start minimization of the functional down to its unitary lower bound.
// Restarts are independent; the winner is the lowest functional, ties broken
// by lowest restart index. Throws NoConvergenceError with the best value found
// if no restart reaches 2 + tol_f.
IdentitySeed solve_identity_seed(const HamiltonianTriple& triple, double tau,
                                 const SeedSearchConfig& config = {});

// Target unitary exp(-i generator epsilon) on the cell.
struct SynthesisTarget {
  Mat8 generator;        // Hermitian to 1e-12
  double epsilon = 0.0;  // >= 0
};

struct SynthesisOptions {
  double tol = 1e-6;               // phase-invariant infidelity of U(C)^{n*} vs target
  std::optional<int> n_star = {};  // override the subdivision rule
  double theta_max = std::numbers::pi / 8;  // per-step rotation budget
  int max_newton_iterations = 60;
  double svd_rcond = 1e-8;  // IllConditioned below this times sigma_max
};

// Solved per-repetition control vector plus the repetition count: applying
// U(base) n_star times reproduces the target within `residual`.
struct ControlSchedule {
  ControlVector base;
  int n_star = 1;
  double residual = 0.0;  // final phase-invariant infidelity, propagator-verified
  int iterations = 0;
  double phase_theta = 0.0;  // phase of U(base) against the ideal step target
  std::vector<double> newton_residuals;  // Frobenius residual after each accepted step
};

// Smallest n* with epsilon * ||generator||_2 / n* <= theta_max (>= 1).
int choose_repetitions(const SynthesisTarget& target, const SynthesisOptions& options = {});

// One linearized step: minimum-norm least-squares solution of
// sum_k dU/dC_k deltaC_k = rhs, flattened to a 128x64 real system and solved
// by SVD. Throws IllConditionedError if sigma_min < svd_rcond * sigma_max.
std::array<double, 64> newton_step(const HamiltonianTriple& triple, const ControlVector& c,
                                   const Mat8& rhs, double tau, double svd_rcond = 1e-8);

// Newton continuation from the identity controls toward the step target
// exp(-i generator epsilon / n*), phase carried from the seed. The result is
// verified end to end through the propagator only.
ControlSchedule synthesize(const HamiltonianTriple& triple, const SynthesisTarget& target,
                           double tau, const IdentitySeed& seed,
                           const SynthesisOptions& options = {});

// 1 - |tr(a^dagger b)| / n: insensitive to global phase.
double phase_invariant_infidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace nhc
