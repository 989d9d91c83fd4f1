#include "dimersim/dynamics.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "dimersim/errors.hpp"

namespace dimersim {

namespace {

Matrix4 state_at(const SpectralDecomposition& dec, const Matrix4& rho0,
                 double t) {
  if (!dec.flagged) return propagate_spectral(dec, rho0, t);
  return propagate_ode(Superoperator{dec.generator}, rho0, {t}).front();
}

// Simpson weight pattern 1,4,2,...,2,4,1 over an even interval count.
double simpson_weight(int j, int n) {
  if (j == 0 || j == n) return 1.0;
  return (j % 2 == 1) ? 4.0 : 2.0;
}

// tau discretization of the half-range Fourier integral. The slowest decay
// rate of the correlation is >= gamma0/2 for any parameters with gamma0 > 0,
// so 40/gamma0 truncates the tail below 1e-8 of its initial value; the step
// resolves frequencies out to well past the coherent-coupling oscillation.
constexpr double kTauWindow = 40.0;
constexpr double kTauStepFactor = 0.005;

}  // namespace

std::vector<double> n_exc_trajectory(const SystemParams& p, const Matrix4& rho0,
                                     const std::vector<double>& times) {
  p.validate();
  const auto L = build_liouvillian(p);
  const auto dec = spectral_decompose(L);
  const Matrix4 n_tot = total_number();
  std::vector<double> out;
  out.reserve(times.size());
  if (dec.flagged) {
    const auto states = propagate_ode(L, rho0, times);
    for (const auto& rho : states)
      out.push_back((n_tot * rho).trace().real());
    return out;
  }
  for (double t : times)
    out.push_back((n_tot * propagate_spectral(dec, rho0, t)).trace().real());
  return out;
}

Complex g1(const SystemParams& p, const Matrix4& rho0,
           const DetectionGeometry& geom, double t, double tau) {
  p.validate();
  const auto dec = spectral_decompose(build_liouvillian(p));
  const Matrix4 D = detection_operator(geom);
  return two_time_correlation(dec, rho0, D.adjoint(), D, t, tau);
}

Spectrogram g1_spectrum(const SystemParams& p, const Matrix4& rho0,
                        const DetectionGeometry& geom,
                        const std::vector<double>& times,
                        const std::vector<double>& omegas,
                        SpectrumMethod method) {
  p.validate();
  const auto L = build_liouvillian(p);
  const auto dec = spectral_decompose(L);
  if (method == SpectrumMethod::kAuto)
    method = dec.flagged ? SpectrumMethod::kQuadrature
                         : SpectrumMethod::kResolvent;

  const Matrix4 D = detection_operator(geom);
  const Matrix4 Dd = D.adjoint();
  const auto nt = static_cast<Eigen::Index>(times.size());
  const auto nw = static_cast<Eigen::Index>(omegas.size());

  Spectrogram out;
  out.times = times;
  out.omegas = omegas;
  out.values.resize(nt, nw);

  if (method == SpectrumMethod::kResolvent) {
    if (dec.flagged)
      throw FlaggedDecomposition(dec.condition);
    // M(u, v) = Tr(left_u^dag rho0) Tr(left_v^dag (right_u D^dag)) Tr(D right_v)
    Eigen::Matrix<Complex, 16, 16> M;
    Complex a[16], b[16];
    for (int u = 0; u < 16; ++u) {
      a[u] = (dec.left_ops[u].adjoint() * rho0).trace();
      b[u] = (D * dec.right_ops[u]).trace();
    }
    for (int u = 0; u < 16; ++u) {
      const Matrix4 seed = dec.right_ops[u] * Dd;
      for (int v = 0; v < 16; ++v)
        M(u, v) = a[u] * (dec.left_ops[v].adjoint() * seed).trace() * b[v];
    }
    // Poles at numerical zero correspond to the coherent (elastic) delta
    // component; its weight vanishes for undriven initial conditions and is
    // omitted here rather than producing an infinity.
    Eigen::Matrix<Complex, 16, Eigen::Dynamic> R(16, nw);
    for (Eigen::Index j = 0; j < nw; ++j)
      for (int v = 0; v < 16; ++v) {
        const Complex pole = dec.eigenvalues(v) + Complex(0.0, omegas[j]);
        R(v, j) = (std::abs(pole) < 1e-12) ? Complex(0.0) : 1.0 / pole;
      }
    const Eigen::Matrix<Complex, 16, Eigen::Dynamic> U = M * R;
    for (Eigen::Index i = 0; i < nt; ++i) {
      Eigen::Matrix<Complex, 1, 16> w;
      for (int u = 0; u < 16; ++u)
        w(u) = std::exp(dec.eigenvalues(u) * times[i]);
      out.values.row(i) = -(w * U).real();
    }
    return out;
  }

  // Quadrature path: everything through the time stepper, so the result is
  // independent of the eigendecomposition.
  const double dtau = kTauStepFactor / p.gamma0;
  const int n = static_cast<int>(std::llround(kTauWindow / kTauStepFactor));
  std::vector<double> taus(n + 1);
  for (int j = 0; j <= n; ++j) taus[j] = j * dtau;

  const auto states = propagate_ode(L, rho0, times);
  std::vector<Complex> corr(n + 1);
  for (Eigen::Index i = 0; i < nt; ++i) {
    const Matrix4 seed = states[static_cast<size_t>(i)] * Dd;
    const auto evolved = evolve_operator_ode(L, seed, taus);
    for (int j = 0; j <= n; ++j)
      corr[static_cast<size_t>(j)] = (D * evolved[static_cast<size_t>(j)]).trace();
    for (Eigen::Index jw = 0; jw < nw; ++jw) {
      const Complex rot = std::exp(Complex(0.0, omegas[jw] * dtau));
      Complex phase(1.0, 0.0);
      double acc = 0.0;
      for (int j = 0; j <= n; ++j) {
        acc += simpson_weight(j, n) * (corr[static_cast<size_t>(j)] * phase).real();
        phase *= rot;
      }
      out.values(i, jw) = acc * dtau / 3.0;
    }
  }
  return out;
}

double g2_time(const SystemParams& p, const Matrix4& rho0,
               const DetectionGeometry& geom, double t, double tau) {
  p.validate();
  const auto dec = spectral_decompose(build_liouvillian(p));
  const Matrix4 D = detection_operator(geom);
  const Matrix4 Dd = D.adjoint();
  const Matrix4 DdD = Dd * D;

  const double i_t = (DdD * state_at(dec, rho0, t)).trace().real();
  const double i_tau = (DdD * state_at(dec, rho0, t + tau)).trace().real();
  if (i_t <= 1e-30 || i_tau <= 1e-30)
    throw UndefinedCorrelation(
        "detected intensity is numerically zero; g2 is undefined");

  const double num =
      three_op_correlation(dec, rho0, Dd, DdD, D, t, tau).real();
  return num / (i_t * i_tau);
}

double g2_equal_time_population_form(const Matrix4& rho_t,
                                     const DetectionGeometry& geom) {
  const Vector4 s = named_ket(NamedState::S);
  const Vector4 a = named_ket(NamedState::A);
  const double p_ee = rho_t(kEE, kEE).real();
  const double p_s = s.dot(rho_t * s).real();
  const double p_a = a.dot(rho_t * a).real();
  const double c = std::cos(geom.phi / 2.0);
  const double sn = std::sin(geom.phi / 2.0);
  const double intensity = p_ee + p_s * c * c + p_a * sn * sn;
  if (intensity * intensity <= 1e-30)
    throw UndefinedCorrelation(
        "detected intensity is numerically zero; g2 is undefined");
  return p_ee / (intensity * intensity);
}

double closed_form_G2(const SystemParams& p, const DetectionGeometry& geom,
                      double t, double tau) {
  p.validate();
  if (p.rabi[0] != 0.0 || p.rabi[1] != 0.0 || p.delta != 0.0)
    throw InvalidParameter(
        "closed_form_G2 requires an undriven, resonant pair");
  if (p.gamma12 == 0.0)
    throw SingularFormula(
        "closed_form_G2 branch weights require gamma12 != 0");

  const double g0 = p.gamma0;
  const double gs = p.gamma_star;
  const double g12 = p.gamma12;
  const double k = std::sqrt(gs * gs + 4.0 * g12 * g12);
  const double kp = k + gs;
  const double km = 4.0 * g12 * g12 / kp;  // k - gs without cancellation
  const double c = std::cos(geom.phi);

  const double num_s = 2.0 * g12 + kp * c;
  const double num_a = 2.0 * g12 - km * c;
  const double sym = std::exp(-k * tau / 2.0) * num_s * num_s / (4.0 * k * kp);
  const double asym = std::exp(k * tau / 2.0) * num_a * num_a / (4.0 * k * km);

  // Interference of the two doorway branches; nu goes imaginary for strong
  // dephasing, which the complex evaluation handles as hyperbolic decay.
  const Complex nu =
      std::sqrt(Complex(4.0 * p.omega12 * p.omega12 - gs * gs / 4.0, 0.0));
  Complex osc;
  if (std::abs(nu) < 1e-12) {
    osc = 1.0 - gs * tau / 2.0;
  } else {
    osc = std::cos(nu * tau) - (gs / 2.0) * std::sin(nu * tau) / nu;
  }
  const double s_phi = std::sin(geom.phi);
  const double cross = 0.5 * s_phi * s_phi * osc.real();

  return std::exp(-2.0 * g0 * t) * std::exp(-(g0 + gs / 2.0) * tau) *
         (sym + asym + cross);
}

namespace {

// Operator supported on the single-excitation sector plus the two extreme
// populations: diag is the common |ge><ge|, |eg><eg| weight, off the
// |ge><eg| (and conjugate) weight.
Matrix4 central_block(double diag, double off, double gg, double ee) {
  Matrix4 m = Matrix4::Zero();
  m(kGE, kGE) = diag;
  m(kEG, kEG) = diag;
  m(kGE, kEG) = off;
  m(kEG, kGE) = off;
  m(kGG, kGG) = gg;
  m(kEE, kEE) = ee;
  return m;
}

}  // namespace

AnalyticEigensystem analytic_eigensystem(const SystemParams& p) {
  p.validate();
  if (p.rabi[0] != 0.0 || p.rabi[1] != 0.0 || p.delta != 0.0)
    throw InvalidParameter(
        "analytic_eigensystem requires an undriven, resonant pair");
  if (p.gamma12 == 0.0)
    throw SingularFormula(
        "analytic eigenoperators are normalized by gamma12; got 0");

  const double g0 = p.gamma0;
  const double gs = p.gamma_star;
  const double g12 = p.gamma12;
  const double k = std::sqrt(gs * gs + 4.0 * g12 * g12);
  const double kp = k + gs;
  const double km = 4.0 * g12 * g12 / kp;  // k - gs without cancellation
  if (std::abs(2.0 * g0 - gs - k) < 1e-9)
    throw SingularFormula(
        "left eigenoperators diverge at the exceptional point "
        "gamma_star + k = 2 gamma0");

  AnalyticEigensystem sys;

  sys.ground.eigenvalue = Complex(0.0);
  sys.ground.right = Matrix4::Zero();
  sys.ground.right(kGG, kGG) = 1.0;
  sys.ground.left = Matrix4::Identity();

  sys.symmetric.eigenvalue = Complex(-(g0 + kp / 2.0));
  sys.symmetric.right = central_block(g12, kp / 2.0, -2.0 * g12, 0.0) / k;
  sys.symmetric.left =
      central_block(g12, kp / 2.0, 0.0,
                    2.0 * g12 * (2.0 * g0 + kp) / (2.0 * g0 - kp)) /
      kp;

  sys.antisymmetric.eigenvalue = Complex(-(g0 + (gs - k) / 2.0));
  sys.antisymmetric.right =
      central_block(g12, (gs - k) / 2.0, -2.0 * g12, 0.0) / k;
  sys.antisymmetric.left =
      central_block(g12, (gs - k) / 2.0, 0.0,
                    2.0 * g12 * (2.0 * g0 + gs - k) / (2.0 * g0 - gs + k)) /
      km;

  // Doubly excited mode at exactly -2 gamma0; its right operator leaks into
  // the doorway populations with weights fixed by the decay balance.
  const double n_e = g0 * g0 - g12 * g12 - g0 * gs;
  const double c_e = -2.0 * g0 * g12;
  const double p_e = g0 * gs - g0 * g0 - g12 * g12;
  sys.doubly_excited.eigenvalue = Complex(-2.0 * g0);
  sys.doubly_excited.right =
      central_block(p_e, c_e, -2.0 * p_e - n_e, n_e) / n_e;
  sys.doubly_excited.left = Matrix4::Zero();
  sys.doubly_excited.left(kEE, kEE) = 1.0;

  return sys;
}

}  // namespace dimersim
