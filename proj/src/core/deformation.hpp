#ifndef QVIB_CORE_DEFORMATION_HPP
#define QVIB_CORE_DEFORMATION_HPP

#include <string>

namespace qvib {

// Which deformed number system is in play.
//   q_real : q = e^tau,   [x] = sinh(tau x)/sinh(tau)
//   q_phase: q = e^{i tau}, [x] = sin(tau x)/sin(tau)
//   Q_real : Q = e^T,     [x] = (Q^x - 1)/(Q - 1)
enum class DeformationKind { q_real, q_phase, Q_real };

struct Deformation {
  DeformationKind kind = DeformationKind::Q_real;
  double value = 0.0;  // tau for the q kinds, T for Q_real

  static Deformation q_real(double tau);
  static Deformation q_phase(double tau);
  static Deformation Q_real(double T);

  bool is_symmetric_kind() const {
    return kind == DeformationKind::q_real || kind == DeformationKind::q_phase;
  }
};

std::string to_string(DeformationKind kind);
DeformationKind deformation_kind_from_string(const std::string& name);

// Below this magnitude the closed forms hit 0/0 cancellation; brackets switch
// to a 3-term series so they stay continuous through zero deformation.
inline constexpr double kSmallDeformation = 1e-8;

// Symmetric bracket [x]_q for the q kinds. Accepts any real x.
double bracket_symmetric(double x, const Deformation& d);

// Non-symmetric bracket [x]_Q = (e^{Tx}-1)/(e^T-1). Accepts any real x,
// including negative and half-integer arguments.
double bracket_Q(double x, double T);

// Dispatch on kind.
double bracket(double x, const Deformation& d);

// [n]_Q! = [n]_Q [n-1]_Q ... [1]_Q, with [0]! = 1 (empty product).
double q_factorial(int n, double T);

// Truncated expansion of the symmetric bracket in the deformation parameter:
//   [N] = N + s (tau^2/6)(N - N^3) + (tau^4/360)(7N - 10N^3 + 3N^5) + ...
// with s = +1 for q_phase and s = -1 for q_real. `order` is the tau power
// the series is truncated after and must be 0, 2 or 4.
double taylor_bracket_symmetric(double n, const Deformation& d, int order);

// Truncated expansion of the Q bracket:
//   [N] = N + (T/2)(N^2-N) + (T^2/12)(2N^3-3N^2+N) + (T^3/24)(N^4-2N^3+N^2)
// `order` is the T power the series is truncated after and must be 1, 2 or 3.
double taylor_bracket_Q(double n, double T, int order);

}  // namespace qvib

#endif
