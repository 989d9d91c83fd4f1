#pragma once

#include <array>
#include <vector>

#include "dimersim/model.hpp"
#include "dimersim/types.hpp"

namespace dimersim {

// Rotating-frame Hamiltonian: detuning terms, coherent dipole-dipole
// exchange, and the drive.
Matrix4 build_hamiltonian(const SystemParams& p);

// Lindblad generator acting on column-stacked density matrices:
// d vec(rho)/dt = L.m vec(rho). Collective decay uses the full gamma_ij
// matrix; dephasing acts on each emitter's number operator.
struct Superoperator {
  SuperMatrix m = SuperMatrix::Zero();
  Matrix4 apply(const Matrix4& rho) const { return unvec(m * vec(rho)); }
};

Superoperator build_liouvillian(const SystemParams& p);

// Unique trace-one fixed point, via the null space of L. Throws
// DegenerateSteadyState when the kernel dimension is not 1.
Matrix4 steady_state(const Superoperator& L);

// Eigenvector-basis conditioning above this flags the decomposition.
inline constexpr double kConditionLimit = 1e8;

// Eigen system of L, sorted by descending Re(lambda). Left operators are
// normalized against the right ones: Tr(left[i]^dag right[j]) = delta_ij,
// so rho(t) = sum_mu e^{lambda_mu t} Tr(left[mu]^dag rho0) right[mu].
struct SpectralDecomposition {
  Eigen::Matrix<Complex, 16, 1> eigenvalues;
  std::array<Matrix4, 16> right_ops;
  std::array<Matrix4, 16> left_ops;
  double condition = 0.0;
  bool flagged = false;  // condition > kConditionLimit: use the ODE path
  SuperMatrix generator = SuperMatrix::Zero();  // kept for the ODE fallback
};

SpectralDecomposition spectral_decompose(const Superoperator& L);

// rho(t) by the eigenmode sum. Throws FlaggedDecomposition when the
// decomposition is flagged; callers must then use propagate_ode.
Matrix4 propagate_spectral(const SpectralDecomposition& dec,
                           const Matrix4& rho0, double t);

// Independent fixed-step classical 4th-order integrator. Step size is
// min(1e-3, 0.01/rate_bound) and every call is validated by step halving
// at the final time (endpoint agreement 1e-8, else refine and finally
// throw StepRefinementFailure). times must be non-decreasing, >= 0.
std::vector<Matrix4> propagate_ode(const Superoperator& L, const Matrix4& rho0,
                                   const std::vector<double>& times);

// Same stepping for an arbitrary (non-Hermitian) operator, as needed by
// regression-theorem evolutions. No hermitization of the results.
std::vector<Matrix4> evolve_operator_ode(const Superoperator& L,
                                         const Matrix4& x0,
                                         const std::vector<double>& times);

// <A(t) B(t+tau)> by the quantum regression theorem: evolve rho to t,
// multiply, evolve rho(t)A over tau, close with B. Falls back to the ODE
// path automatically when the decomposition is flagged.
Complex two_time_correlation(const SpectralDecomposition& dec,
                             const Matrix4& rho0, const Matrix4& A,
                             const Matrix4& B, double t, double tau);

// <A(t) B(t+tau) C(t)>, kernel C rho(t) A.
Complex three_op_correlation(const SpectralDecomposition& dec,
                             const Matrix4& rho0, const Matrix4& A,
                             const Matrix4& B, const Matrix4& C, double t,
                             double tau);

// Same correlations computed purely with the time stepper (oracle path).
Complex two_time_correlation_ode(const Superoperator& L, const Matrix4& rho0,
                                 const Matrix4& A, const Matrix4& B, double t,
                                 double tau);
Complex three_op_correlation_ode(const Superoperator& L, const Matrix4& rho0,
                                 const Matrix4& A, const Matrix4& B,
                                 const Matrix4& C, double t, double tau);

}  // namespace dimersim
