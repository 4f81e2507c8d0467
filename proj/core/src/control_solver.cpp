#include "nhc/control_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>

#include "nhc/errors.hpp"

namespace nhc {

namespace {

constexpr double pi = std::numbers::pi;

Mat8 matrix_power(const Mat8& m, int n) {
  Mat8 out = Mat8::Identity();
  for (int i = 0; i < n; ++i) out = m * out;
  return out;
}

double spectral_norm_hermitian(const Mat8& h) {
  Eigen::SelfAdjointEigenSolver<Mat8> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void require_hermitian_generator(const Mat8& g) {
  const double dev = (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12))
    throw NotHermitianError("synthesis generator deviates from Hermitian symmetry by " +
                            std::to_string(dev));
}

// Re/Im of a_1..a_7; zero exactly at the functional's unitary lower bound.
// pin_weight > 0 appends sqrt(w) * (a_0 + 1), forcing theta = 0.
Eigen::VectorXd seed_residual(const HamiltonianTriple& triple, const SeedVector& c, double tau,
                              double pin_weight) {
  const CharPolyCoefficients cp = char_poly(seed_product(triple, c, tau));
  const int extra = pin_weight > 0.0 ? 2 : 0;
  Eigen::VectorXd r(14 + extra);
  for (int j = 1; j <= 7; ++j) {
    r(2 * (j - 1)) = cp.a[j].real();
    r(2 * (j - 1) + 1) = cp.a[j].imag();
  }
  if (extra) {
    const double w = std::sqrt(pin_weight);
    r(14) = w * (cp.a[0].real() + 1.0);
    r(15) = w * cp.a[0].imag();
  }
  return r;
}

struct LocalFit {
  SeedVector c;
  double rss = 0.0;
  int iterations = 0;
};

// Damped Gauss-Newton (Levenberg-Marquardt) with central-difference Jacobian.
LocalFit fit_seed(const HamiltonianTriple& triple, SeedVector c, double tau,
                  double pin_weight, int max_iterations) {
  Eigen::VectorXd r = seed_residual(triple, c, tau, pin_weight);
  double rss = r.squaredNorm();
  double mu = 1e-3;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    if (rss < 1e-28) break;
    Eigen::MatrixXd jac(r.size(), 8);
    for (int k = 0; k < 8; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(c.values[k]));
      SeedVector cp = c;
      SeedVector cm = c;
      cp.values[k] += h;
      cm.values[k] -= h;
      jac.col(k) = (seed_residual(triple, cp, tau, pin_weight) -
                    seed_residual(triple, cm, tau, pin_weight)) /
                   (2.0 * h);
    }
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.norm() < 1e-16) break;  // controls have no effect here

    bool stepped = false;
    for (int tries = 0; tries < 40; ++tries) {
      Eigen::MatrixXd damped = normal;
      for (int d = 0; d < 8; ++d) damped(d, d) += mu;
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      SeedVector cn = c;
      for (int k = 0; k < 8; ++k) cn.values[k] += step(k);
      const Eigen::VectorXd rn = seed_residual(triple, cn, tau, pin_weight);
      const double rssn = rn.squaredNorm();
      if (rssn < rss) {
        c = cn;
        r = rn;
        rss = rssn;
        mu = std::max(mu / 3.0, 1e-14);
        stepped = true;
        break;
      }
      mu *= 4.0;
      if (mu > 1e14) break;
    }
    if (!stepped) break;
  }
  return LocalFit{c, rss, iter};
}

}  // namespace

CharPolyCoefficients char_poly(const Mat8& m) {
  // Faddeev-LeVerrier: p(lambda) = lambda^8 + c_1 lambda^7 + ... + c_8
  CharPolyCoefficients out;
  out.a[8] = 1.0;
  Mat8 aux = Mat8::Identity();
  Complex c = -m.trace();
  out.a[7] = c;
  for (int k = 2; k <= 8; ++k) {
    aux = m * aux + c * Mat8::Identity();
    c = -(m * aux).trace() / static_cast<double>(k);
    out.a[8 - k] = c;
  }
  return out;
}

double identity_functional(const HamiltonianTriple& triple, const SeedVector& c, double tau) {
  const CharPolyCoefficients cp = char_poly(seed_product(triple, c, tau));
  double f = 0.0;
  for (const Complex& a : cp.a) f += std::norm(a);
  return f;
}

IdentitySeed solve_identity_seed(const HamiltonianTriple& triple, double tau,
                                 const SeedSearchConfig& config) {
  if (config.restarts < 1) throw Error("seed search needs at least one restart");
  if (!(config.box_lo < config.box_hi)) throw Error("seed search box is empty");

  // draw all starting points up front so restart i never depends on the
  // outcome of restart j
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> draw(config.box_lo, config.box_hi);
  std::vector<SeedVector> starts(config.restarts);
  for (SeedVector& s : starts)
    for (double& v : s.values) v = draw(rng);

  double best_f = std::numeric_limits<double>::infinity();
  int best_idx = -1;
  SeedVector best_seed{};
  int converged = 0;
  for (int i = 0; i < config.restarts; ++i) {
    const LocalFit fit =
        fit_seed(triple, starts[i], tau, config.phase_pin_weight, config.max_iterations);
    const double f = identity_functional(triple, fit.c, tau);
    if (f <= 2.0 + config.tol_f) ++converged;
    if (f < best_f) {
      best_f = f;
      best_idx = i;
      best_seed = fit.c;
    }
  }

  if (!(best_f <= 2.0 + config.tol_f)) {
    throw NoConvergenceError(
        "identity seed search stopped at functional " + std::to_string(best_f), best_f,
        std::vector<double>(best_seed.values.begin(), best_seed.values.end()));
  }

  const Mat8 w8 = matrix_power(seed_product(triple, best_seed, tau), 8);
  IdentitySeed out;
  out.seed = best_seed;
  out.functional = best_f;
  out.phase_theta = std::arg(w8.trace() / 8.0);
  out.best_restart = best_idx;
  out.converged_restarts = converged;
  return out;
}

int choose_repetitions(const SynthesisTarget& target, const SynthesisOptions& options) {
  if (options.n_star) {
    if (*options.n_star < 1) throw Error("n* override must be positive");
    return *options.n_star;
  }
  require_hermitian_generator(target.generator);
  if (!(target.epsilon >= 0.0)) throw Error("target epsilon must be nonnegative");
  if (!(options.theta_max > 0.0)) throw Error("theta_max must be positive");
  const double rotation = target.epsilon * spectral_norm_hermitian(target.generator);
  const int n = static_cast<int>(std::ceil(rotation / options.theta_max - 1e-9));
  return std::max(1, n);
}

std::array<double, 64> newton_step(const HamiltonianTriple& triple, const ControlVector& c,
                                   const Mat8& rhs, double tau, double svd_rcond) {
  const std::vector<Mat8> derivs = unitary_derivatives(triple, c, tau);

  // flatten the complex 8x8 equation to 128 real rows
  Eigen::MatrixXd jac(128, 64);
  Eigen::VectorXd b(128);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int row = 8 * i + j;
      b(row) = rhs(i, j).real();
      b(64 + row) = rhs(i, j).imag();
      for (int k = 0; k < 64; ++k) {
        jac(row, k) = derivs[k](i, j).real();
        jac(64 + row, k) = derivs[k](i, j).imag();
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smax > 0.0 && smin < svd_rcond * smax)
    throw IllConditionedError("Newton system is ill conditioned (sigma_min/sigma_max = " +
                                  std::to_string(smin / smax) + ")",
                              smin, smax);

  // minimum-norm least squares with threshold truncation
  const Eigen::VectorXd y = svd.matrixU().transpose() * b;
  Eigen::VectorXd z(64);
  for (int i = 0; i < 64; ++i) z(i) = sv(i) > svd_rcond * smax ? y(i) / sv(i) : 0.0;
  const Eigen::VectorXd step = svd.matrixV() * z;

  std::array<double, 64> out;
  for (int k = 0; k < 64; ++k) out[k] = step(k);
  return out;
}

double phase_invariant_infidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double n = static_cast<double>(a.rows());
  const double overlap = std::abs((a.adjoint() * b).trace()) / n;
  return std::max(0.0, 1.0 - overlap);
}

ControlSchedule synthesize(const HamiltonianTriple& triple, const SynthesisTarget& target,
                           double tau, const IdentitySeed& seed, const SynthesisOptions& options) {
  require_hermitian_generator(target.generator);
  if (!(target.epsilon >= 0.0)) throw Error("target epsilon must be nonnegative");
  if (!(options.tol > 0.0)) throw Error("synthesis tolerance must be positive");

  const Mat8 u_target = step_unitary(target.generator, target.epsilon);
  ControlVector c = expand_seed(seed.seed);

  // zero rotation: the identity controls already realize the target
  const double rotation = target.epsilon * spectral_norm_hermitian(target.generator);
  if (rotation == 0.0) {
    const Mat8 u = sequence_unitary(triple, c, tau);
    ControlSchedule s;
    s.base = c;
    s.n_star = options.n_star.value_or(1);
    s.residual = phase_invariant_infidelity(matrix_power(u, s.n_star), u_target);
    s.iterations = 0;
    s.phase_theta = std::arg(u.trace() / 8.0);
    return s;
  }

  const int n_star = choose_repetitions(target, options);
  const Mat8 u_step = step_unitary(target.generator, target.epsilon / n_star);
  const Mat8 t = std::exp(Complex(0.0, seed.phase_theta)) * u_step;

  Mat8 u = sequence_unitary(triple, c, tau);
  double res = (t - u).norm();
  std::vector<double> history{res};

  const double floor_stop = 5e-14;
  double stop = std::clamp(0.2 * std::sqrt(options.tol) / n_star, floor_stop, 1e-5);
  int iter = 0;
  bool stalled = false;
  double infid;
  while (true) {
    while (res > stop && iter < options.max_newton_iterations && !stalled) {
      const std::array<double, 64> delta = newton_step(triple, c, t - u, tau, options.svd_rcond);
      double alpha = 1.0;
      bool accepted = false;
      for (int half = 0; half < 30; ++half) {
        ControlVector cn = c;
        for (int k = 0; k < 64; ++k) cn.values[k] += alpha * delta[k];
        const Mat8 un = sequence_unitary(triple, cn, tau);
        const double rn = (t - un).norm();
        if (rn < res) {
          c = cn;
          u = un;
          res = rn;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      ++iter;
      if (!accepted) {
        stalled = true;
        break;
      }
      history.push_back(res);
    }

    // certify through the propagator only
    infid = phase_invariant_infidelity(matrix_power(u, n_star), u_target);
    if (infid <= options.tol) break;
    if (stalled || iter >= options.max_newton_iterations || stop <= floor_stop)
      throw NoConvergenceError("gate synthesis stopped at infidelity " + std::to_string(infid),
                               infid);
    stop = std::max(floor_stop, stop * 0.01);
  }

  ControlSchedule s;
  s.base = c;
  s.n_star = n_star;
  s.residual = infid;
  s.iterations = iter;
  s.phase_theta = std::arg((u_step.adjoint() * u).trace());
  s.newton_residuals = std::move(history);
  return s;
}

}  // namespace nhc
