#include "core/deformation.hpp"

#include <cmath>

#include "core/error.hpp"

namespace qvib {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw_argument(std::string(what) + " must be finite");
}

// Series values shared by the closed-form fallbacks and the taylor_* functions.
double symmetric_series(double n, double tau, double sign, int order) {
  double r = n;
  if (order >= 2) r += sign * (tau * tau / 6.0) * (n - n * n * n);
  if (order >= 4) {
    const double n3 = n * n * n, n5 = n3 * n * n;
    r += (std::pow(tau, 4) / 360.0) * (7.0 * n - 10.0 * n3 + 3.0 * n5);
  }
  return r;
}

double q_series(double n, double T, int order) {
  const double n2 = n * n, n3 = n2 * n, n4 = n3 * n;
  double r = n;
  if (order >= 1) r += (T / 2.0) * (n2 - n);
  if (order >= 2) r += (T * T / 12.0) * (2.0 * n3 - 3.0 * n2 + n);
  if (order >= 3) r += (T * T * T / 24.0) * (n4 - 2.0 * n3 + n2);
  return r;
}

}  // namespace

Deformation Deformation::q_real(double tau) {
  require_finite(tau, "tau");
  return {DeformationKind::q_real, tau};
}

Deformation Deformation::q_phase(double tau) {
  require_finite(tau, "tau");
  if (std::abs(tau) >= kSmallDeformation && std::abs(std::sin(tau)) < 1e-12)
    throw_domain("q_phase deformation requires sin(tau) != 0 (tau must not be a multiple of pi)");
  return {DeformationKind::q_phase, tau};
}

Deformation Deformation::Q_real(double T) {
  require_finite(T, "T");
  return {DeformationKind::Q_real, T};
}

std::string to_string(DeformationKind kind) {
  switch (kind) {
    case DeformationKind::q_real: return "q_real";
    case DeformationKind::q_phase: return "q_phase";
    case DeformationKind::Q_real: return "Q_real";
  }
  return "?";
}

DeformationKind deformation_kind_from_string(const std::string& name) {
  if (name == "q_real") return DeformationKind::q_real;
  if (name == "q_phase") return DeformationKind::q_phase;
  if (name == "Q_real") return DeformationKind::Q_real;
  throw_config("unknown deformation kind '" + name + "' (expected q_real, q_phase or Q_real)");
}

double bracket_symmetric(double x, const Deformation& d) {
  if (!d.is_symmetric_kind())
    throw_argument("bracket_symmetric requires a q_real or q_phase deformation");
  require_finite(x, "x");
  const double tau = d.value;
  if (std::abs(tau) < kSmallDeformation) {
    const double sign = d.kind == DeformationKind::q_phase ? +1.0 : -1.0;
    return symmetric_series(x, tau, sign, 4);
  }
  if (d.kind == DeformationKind::q_real) return std::sinh(tau * x) / std::sinh(tau);
  const double s = std::sin(tau);
  if (std::abs(s) < 1e-12)
    throw_domain("symmetric bracket undefined: sin(tau) = 0");
  return std::sin(tau * x) / s;
}

double bracket_Q(double x, double T) {
  require_finite(x, "x");
  require_finite(T, "T");
  if (std::abs(T) < kSmallDeformation) return q_series(x, T, 2);
  return std::expm1(T * x) / std::expm1(T);
}

double bracket(double x, const Deformation& d) {
  return d.kind == DeformationKind::Q_real ? bracket_Q(x, d.value) : bracket_symmetric(x, d);
}

double q_factorial(int n, double T) {
  if (n < 0) throw_argument("q_factorial requires n >= 0");
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= bracket_Q(static_cast<double>(k), T);  // [1]_Q = 1
  return r;
}

double taylor_bracket_symmetric(double n, const Deformation& d, int order) {
  if (!d.is_symmetric_kind())
    throw_argument("taylor_bracket_symmetric requires a q_real or q_phase deformation");
  if (order != 0 && order != 2 && order != 4)
    throw_argument("symmetric bracket expansion order must be 0, 2 or 4");
  const double sign = d.kind == DeformationKind::q_phase ? +1.0 : -1.0;
  return symmetric_series(n, d.value, sign, order);
}

double taylor_bracket_Q(double n, double T, int order) {
  if (order < 1 || order > 3)
    throw_argument("Q bracket expansion order must be 1, 2 or 3");
  return q_series(n, T, order);
}

}  // namespace qvib
