#include "nhc/propagator.hpp"

#include <cmath>

#include "nhc/errors.hpp"

namespace nhc {

namespace {

constexpr double kHermitianTol = 1e-12;

struct EigH {
  Eigen::Matrix<double, 8, 1> values;
  Mat8 vectors;
};

void require_hermitian(const Mat8& h) {
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= kHermitianTol))
    throw NotHermitianError("matrix deviates from Hermitian symmetry by " + std::to_string(dev));
}

EigH eig_hermitian(const Mat8& h) {
  Eigen::SelfAdjointEigenSolver<Mat8> solver(h);
  return EigH{solver.eigenvalues(), solver.eigenvectors()};
}

Mat8 expm_from_eig(const EigH& e, double t) {
  Vec8 phases;
  for (int i = 0; i < 8; ++i) phases(i) = std::exp(Complex(0.0, -e.values(i) * t));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

const Mat8& perturbation(const HamiltonianTriple& triple, int k) {
  return perturbation_kind(k) == PerturbationKind::Static ? triple.p_s : triple.p_omega;
}

// Divided difference of f(x) = exp(-i x t) at (a, b), stable for a ~ b:
// f[a,b] = e^{-i (a+b) t / 2} * (-i t) * sinc((a - b) t / 2).
Complex exp_divided_difference(double a, double b, double t) {
  const double half = 0.5 * (a - b) * t;
  double sinc;
  if (std::abs(half) < 1e-4) {
    const double h2 = half * half;
    sinc = 1.0 - h2 / 6.0 * (1.0 - h2 / 20.0);
  } else {
    sinc = std::sin(half) / half;
  }
  return std::exp(Complex(0.0, -0.5 * (a + b) * t)) * Complex(0.0, -t) * sinc;
}

}  // namespace

PerturbationKind perturbation_kind(int k) {
  return (k % 2 == 1) ? PerturbationKind::Static : PerturbationKind::Electromagnetic;
}

ControlVector expand_seed(const SeedVector& seed) {
  ControlVector c;
  for (int k = 0; k < 64; ++k) c.values[k] = seed.values[k % 8];
  return c;
}

Mat8 step_unitary(const Mat8& h, double t) {
  require_hermitian(h);
  return expm_from_eig(eig_hermitian(h), t);
}

Mat8 sequence_unitary(const HamiltonianTriple& triple, const ControlVector& c, double tau) {
  Mat8 u = Mat8::Identity();
  for (int k = 1; k <= 64; ++k) {
    const Mat8 h = triple.h0 + c.values[k - 1] * perturbation(triple, k);
    u = step_unitary(h, tau) * u;
  }
  return u;
}

Mat8 seed_product(const HamiltonianTriple& triple, const SeedVector& c, double tau) {
  Mat8 u = Mat8::Identity();
  for (int k = 1; k <= 8; ++k) {
    const Mat8 h = triple.h0 + c.values[k - 1] * perturbation(triple, k);
    u = step_unitary(h, tau) * u;
  }
  return u;
}

std::vector<Mat8> unitary_derivatives(const HamiltonianTriple& triple,
                                      const ControlVector& c, double tau) {
  std::array<EigH, 64> eigs;
  std::array<Mat8, 64> props;
  for (int k = 1; k <= 64; ++k) {
    const Mat8 h = triple.h0 + c.values[k - 1] * perturbation(triple, k);
    require_hermitian(h);
    eigs[k - 1] = eig_hermitian(h);
    props[k - 1] = expm_from_eig(eigs[k - 1], tau);
  }

  // before[k] = M_{k-1} ... M_1, after[k] = M_64 ... M_{k+1}
  std::array<Mat8, 65> before;
  std::array<Mat8, 65> after;
  before[1] = Mat8::Identity();
  for (int k = 2; k <= 64; ++k) before[k] = props[k - 2] * before[k - 1];
  after[64] = Mat8::Identity();
  for (int k = 63; k >= 1; --k) after[k] = after[k + 1] * props[k];

  std::vector<Mat8> derivs(64);
  for (int k = 1; k <= 64; ++k) {
    const EigH& e = eigs[k - 1];
    const Mat8 b = e.vectors.adjoint() * perturbation(triple, k) * e.vectors;
    Mat8 core;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        core(i, j) = b(i, j) * exp_divided_difference(e.values(i), e.values(j), tau);
    const Mat8 dstep = e.vectors * core * e.vectors.adjoint();
    derivs[k - 1] = after[k] * dstep * before[k];
  }
  return derivs;
}

}  // namespace nhc
