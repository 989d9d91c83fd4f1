#include "dimersim/model.hpp"

#include <cmath>

#include "dimersim/errors.hpp"

namespace dimersim {

void SystemParams::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(gamma0) || !finite(alpha) || !finite(omega12) ||
      !finite(gamma12) || !finite(gamma_star) || !finite(delta) ||
      !finite(laser_detuning) || !finite(rabi[0]) || !finite(rabi[1]))
    throw InvalidParameter("parameters must be finite");
  if (gamma0 <= 0) throw InvalidParameter("gamma0 must be positive");
  if (alpha <= 0 || alpha > 1) throw InvalidParameter("alpha must be in (0,1]");
  if (gamma_star < 0) throw InvalidParameter("gamma_star must be >= 0");
  if (std::abs(gamma12) > alpha * gamma0)
    throw InvalidParameter("|gamma12| must not exceed alpha*gamma0");
}

Matrix4 sigma(int emitter) {
  Matrix4 s = Matrix4::Zero();
  if (emitter == 1) {
    s(kGG, kEG) = 1.0;
    s(kGE, kEE) = 1.0;
  } else if (emitter == 2) {
    s(kGG, kGE) = 1.0;
    s(kEG, kEE) = 1.0;
  } else {
    throw InvalidParameter("emitter index must be 1 or 2");
  }
  return s;
}

Matrix4 number_op(int emitter) {
  Matrix4 s = sigma(emitter);
  return s.adjoint() * s;
}

Matrix4 total_number() { return number_op(1) + number_op(2); }

Vector4 named_ket(NamedState tag) {
  Vector4 v = Vector4::Zero();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (tag) {
    case NamedState::G:
      v(kGG) = 1.0;
      break;
    case NamedState::S:
      v(kGE) = inv_sqrt2;
      v(kEG) = inv_sqrt2;
      break;
    case NamedState::A:
      v(kEG) = inv_sqrt2;
      v(kGE) = -inv_sqrt2;
      break;
    case NamedState::E:
      v(kEE) = 1.0;
      break;
  }
  return v;
}

Matrix4 named_state(NamedState tag) {
  Vector4 v = named_ket(tag);
  return v * v.adjoint();
}

Matrix4 detection_operator(const DetectionGeometry& geom) {
  const Complex i(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return inv_sqrt2 * (std::exp(i * (geom.phi / 2.0)) * sigma(1) +
                      std::exp(-i * (geom.phi / 2.0)) * sigma(2));
}

}  // namespace dimersim
