#include "dimersim/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dimersim/errors.hpp"

namespace dimersim {

namespace {

// 2 A rho B^dag - B^dag A rho - rho B^dag A, as a superoperator.
SuperMatrix lindblad_pair(const Matrix4& a, const Matrix4& b) {
  const Matrix4 bda = b.adjoint() * a;
  return 2.0 * kron(b.conjugate(), a) - left_mult(bda) - right_mult(bda);
}

SuperVector trace_functional() {
  SuperVector t = SuperVector::Zero();
  for (int i = 0; i < 4; ++i) t(5 * i) = 1.0;
  return t;
}

}  // namespace

Matrix4 build_hamiltonian(const SystemParams& p) {
  p.validate();
  const Matrix4 s1 = sigma(1), s2 = sigma(2);
  const Matrix4 n1 = number_op(1), n2 = number_op(2);
  Matrix4 h = (-p.laser_detuning - p.delta / 2.0) * n1 +
              (-p.laser_detuning + p.delta / 2.0) * n2 +
              p.omega12 * (s1.adjoint() * s2 + s2.adjoint() * s1) +
              (p.rabi[0] / 2.0) * (s1 + s1.adjoint()) +
              (p.rabi[1] / 2.0) * (s2 + s2.adjoint());
  return h;
}

Superoperator build_liouvillian(const SystemParams& p) {
  const Matrix4 h = build_hamiltonian(p);
  const Complex i(0.0, 1.0);
  Superoperator L;
  L.m = -i * (left_mult(h) - right_mult(h));
  const Matrix4 ops[2] = {sigma(1), sigma(2)};
  const double rates[2][2] = {{p.gamma0, p.gamma12}, {p.gamma12, p.gamma0}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      L.m += (rates[a][b] / 2.0) * lindblad_pair(ops[a], ops[b]);
  for (int a = 1; a <= 2; ++a) {
    const Matrix4 n = number_op(a);
    L.m += (p.gamma_star / 2.0) * lindblad_pair(n, n);
  }
  return L;
}

Matrix4 steady_state(const Superoperator& L) {
  Eigen::JacobiSVD<SuperMatrix> svd(
      L.m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * sv(0);
  int kernel_dim = 0;
  for (int i = 0; i < 16; ++i)
    if (sv(i) <= tol) ++kernel_dim;
  if (kernel_dim != 1) throw DegenerateSteadyState(kernel_dim);

  Matrix4 rho = unvec(svd.matrixV().col(15));
  Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12)
    throw Error("steady-state kernel vector is traceless");
  rho /= tr;

  // One bordered-solve refinement: trade the trace row of L for the
  // normalization constraint and solve the square system.
  SuperMatrix M = L.m;
  M.row(0) = trace_functional().transpose();
  SuperVector rhs = SuperVector::Zero();
  rhs(0) = 1.0;
  SuperVector refined = M.partialPivLu().solve(rhs);
  if (refined.allFinite()) rho = unvec(refined);

  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();

  const double residual = (L.m * vec(rho)).norm();
  if (!(residual < 1e-8 * std::max(1.0, sv(0))))
    throw Error("steady-state residual too large: " + std::to_string(residual));
  return rho;
}

SpectralDecomposition spectral_decompose(const Superoperator& L) {
  Eigen::ComplexEigenSolver<SuperMatrix> solver(L.m, true);
  if (solver.info() != Eigen::Success)
    throw Error("eigenvalue iteration failed to converge");

  std::array<int, 16> order;
  std::iota(order.begin(), order.end(), 0);
  const auto& raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw(a).real() != raw(b).real()) return raw(a).real() > raw(b).real();
    return raw(a).imag() < raw(b).imag();
  });

  SuperMatrix V;
  SpectralDecomposition dec;
  for (int i = 0; i < 16; ++i) {
    dec.eigenvalues(i) = raw(order[i]);
    V.col(i) = solver.eigenvectors().col(order[i]);
  }

  Eigen::JacobiSVD<SuperMatrix> svd(V);
  const double smin = svd.singularValues()(15);
  dec.condition =
      smin > 0 ? svd.singularValues()(0) / smin
               : std::numeric_limits<double>::infinity();
  dec.flagged = !(dec.condition <= kConditionLimit);
  dec.generator = L.m;

  // Rows of V^-1 are the biorthogonal left eigenvectors; storing their
  // adjoints as matrices makes Tr(left^dag right) = delta automatic.
  SuperMatrix Vinv = V.partialPivLu().solve(SuperMatrix::Identity());
  for (int i = 0; i < 16; ++i) {
    dec.right_ops[i] = unvec(V.col(i));
    dec.left_ops[i] = unvec(Vinv.row(i).adjoint());
  }
  return dec;
}

namespace {

Matrix4 evolve_modes(const SpectralDecomposition& dec, const Matrix4& x0,
                     double t) {
  SuperVector acc = SuperVector::Zero();
  for (int mu = 0; mu < 16; ++mu) {
    const Complex c = vec(dec.left_ops[mu]).dot(vec(x0));
    if (c == Complex(0.0, 0.0)) continue;
    acc += c * std::exp(dec.eigenvalues(mu) * t) * vec(dec.right_ops[mu]);
  }
  return unvec(acc);
}

}  // namespace

Matrix4 propagate_spectral(const SpectralDecomposition& dec,
                           const Matrix4& rho0, double t) {
  if (dec.flagged) throw FlaggedDecomposition(dec.condition);
  Matrix4 rho = evolve_modes(dec, rho0, t);
  return 0.5 * (rho + rho.adjoint()).eval();
}

namespace {

// RK4 over a span of length dt with n equal steps (autonomous system).
SuperVector rk4_span(const SuperMatrix& L, SuperVector v, double dt, long n) {
  const double h = dt / static_cast<double>(n);
  for (long s = 0; s < n; ++s) {
    const SuperVector k1 = L * v;
    const SuperVector k2 = L * (v + (h / 2.0) * k1);
    const SuperVector k3 = L * (v + (h / 2.0) * k2);
    const SuperVector k4 = L * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return v;
}

double rate_bound(const SuperMatrix& L) {
  return L.cwiseAbs().rowwise().sum().maxCoeff();
}

std::vector<SuperVector> integrate_grid(const SuperMatrix& L,
                                        const SuperVector& v0,
                                        const std::vector<double>& times,
                                        double h) {
  std::vector<SuperVector> out;
  out.reserve(times.size());
  SuperVector v = v0;
  double t = 0.0;
  for (double target : times) {
    if (target > t) {
      const long n =
          std::max<long>(1, static_cast<long>(std::ceil((target - t) / h)));
      v = rk4_span(L, v, target - t, n);
      t = target;
    }
    out.push_back(v);
  }
  return out;
}

// Shared step-halving validation: returns states on the fine step.
std::vector<SuperVector> integrate_validated(const SuperMatrix& L,
                                             const SuperVector& v0,
                                             const std::vector<double>& times) {
  if (times.empty()) return {};
  for (size_t i = 0; i + 1 < times.size(); ++i)
    if (times[i + 1] < times[i])
      throw InvalidParameter("time grid must be non-decreasing");
  if (times.front() < 0) throw InvalidParameter("times must be >= 0");

  const double bound = rate_bound(L);
  double h = std::min(1e-3, bound > 0 ? 0.01 / bound : 1e-3);
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto fine = integrate_grid(L, v0, times, h / 2.0);
    SuperVector coarse_end = integrate_grid(L, v0, {times.back()}, h).back();
    const double diff =
        (fine.back() - coarse_end).cwiseAbs().maxCoeff();
    if (diff < 1e-8) return fine;
    h /= 2.0;
  }
  throw StepRefinementFailure(
      "step halving did not converge to 1e-8 at the endpoint");
}

}  // namespace

std::vector<Matrix4> propagate_ode(const Superoperator& L, const Matrix4& rho0,
                                   const std::vector<double>& times) {
  auto out = evolve_operator_ode(L, rho0, times);
  for (auto& rho : out) rho = 0.5 * (rho + Matrix4(rho.adjoint()));
  return out;
}

std::vector<Matrix4> evolve_operator_ode(const Superoperator& L,
                                         const Matrix4& x0,
                                         const std::vector<double>& times) {
  auto states = integrate_validated(L.m, vec(x0), times);
  std::vector<Matrix4> out;
  out.reserve(states.size());
  for (const auto& v : states) out.push_back(unvec(v));
  return out;
}

Complex two_time_correlation(const SpectralDecomposition& dec,
                             const Matrix4& rho0, const Matrix4& A,
                             const Matrix4& B, double t, double tau) {
  if (dec.flagged) {
    Superoperator L;
    L.m = dec.generator;
    return two_time_correlation_ode(L, rho0, A, B, t, tau);
  }
  const Matrix4 rho_t = evolve_modes(dec, rho0, t);
  const Matrix4 x_tau = evolve_modes(dec, rho_t * A, tau);
  return (B * x_tau).trace();
}

Complex three_op_correlation(const SpectralDecomposition& dec,
                             const Matrix4& rho0, const Matrix4& A,
                             const Matrix4& B, const Matrix4& C, double t,
                             double tau) {
  if (dec.flagged) {
    Superoperator L;
    L.m = dec.generator;
    return three_op_correlation_ode(L, rho0, A, B, C, t, tau);
  }
  const Matrix4 rho_t = evolve_modes(dec, rho0, t);
  const Matrix4 x_tau = evolve_modes(dec, C * rho_t * A, tau);
  return (B * x_tau).trace();
}

Complex two_time_correlation_ode(const Superoperator& L, const Matrix4& rho0,
                                 const Matrix4& A, const Matrix4& B, double t,
                                 double tau) {
  const Matrix4 rho_t = unvec(integrate_validated(L.m, vec(rho0), {t}).back());
  const Matrix4 x_tau =
      unvec(integrate_validated(L.m, vec(rho_t * A), {tau}).back());
  return (B * x_tau).trace();
}

Complex three_op_correlation_ode(const Superoperator& L, const Matrix4& rho0,
                                 const Matrix4& A, const Matrix4& B,
                                 const Matrix4& C, double t, double tau) {
  const Matrix4 rho_t = unvec(integrate_validated(L.m, vec(rho0), {t}).back());
  const Matrix4 x_tau =
      unvec(integrate_validated(L.m, vec(C * rho_t * A), {tau}).back());
  return (B * x_tau).trace();
}

}  // namespace dimersim
