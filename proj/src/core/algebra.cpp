#include "core/algebra.hpp"

#include <cmath>

#include "core/error.hpp"

namespace qvib {

namespace {

void require_two_modes(const FockBasis& basis, const char* who) {
  if (basis.mode_count() != 2)
    throw_argument(std::string(who) + " requires a two-mode basis");
}

OperatorMatrix half_number_difference(const FockBasis& basis) {
  return diagonal_operator(basis, [](std::span<const int> n) {
    return 0.5 * (n[0] - n[1]);
  });
}

}  // namespace

GeneratorTriple suq2_generators(const FockBasis& basis, const Deformation& d) {
  require_two_modes(basis, "suq2_generators");
  if (!d.is_symmetric_kind())
    throw_argument("suq2_generators requires a q_real or q_phase deformation");
  const OperatorMatrix a1 = lowering_q(basis, 1, d);
  const OperatorMatrix a2 = lowering_q(basis, 2, d);
  Matrix jplus = a1.mat.transposed() * a2.mat;
  return {half_number_difference(basis),
          {basis, jplus},
          {basis, jplus.transposed()},
          d};
}

GeneratorTriple suQ2_generators(const FockBasis& basis, const Deformation& d) {
  require_two_modes(basis, "suQ2_generators");
  if (d.kind != DeformationKind::Q_real)
    throw_argument("suQ2_generators requires a Q_real deformation");
  const double T = d.value;
  const OperatorMatrix b1 = lowering_Q(basis, 1, d);
  const OperatorMatrix b2 = lowering_Q(basis, 2, d);
  const OperatorMatrix qpow = diagonal_operator(basis, [T](std::span<const int> n) {
    return std::exp(-T * n[1] / 2.0);  // Q^{-N2/2}
  });
  Matrix jplus = b1.mat.transposed() * qpow.mat * b2.mat;
  return {half_number_difference(basis),
          {basis, jplus},
          {basis, jplus.transposed()},
          d};
}

OperatorMatrix casimir_Q(const FockBasis& basis, const Deformation& d, CasimirForm form) {
  require_two_modes(basis, "casimir_Q");
  if (d.kind != DeformationKind::Q_real)
    throw_argument("casimir_Q requires a Q_real deformation");
  const double T = d.value;

  if (form == CasimirForm::closed) {
    return diagonal_operator(basis, [T](std::span<const int> n) {
      const double s = 0.5 * (n[0] + n[1]);
      return -bracket_Q(s + 1.0, T) * bracket_Q(-s, T);
    });
  }

  const GeneratorTriple g = suQ2_generators(basis, d);
  const OperatorMatrix qminusj0 = diagonal_operator(basis, [T](std::span<const int> n) {
    return std::exp(-T * 0.5 * (n[0] - n[1]));  // Q^{-J0}
  });
  // [J0]_Q [J0 +/- 1]_Q evaluated on the diagonal J0 spectrum.
  const auto bracket_pair = [&](double shift) {
    return diagonal_operator(basis, [T, shift](std::span<const int> n) {
      const double j0 = 0.5 * (n[0] - n[1]);
      return bracket_Q(j0, T) * bracket_Q(j0 + shift, T);
    });
  };

  Matrix inner;
  if (form == CasimirForm::first)
    inner = bracket_pair(+1.0).mat + (g.jminus.mat * g.jplus.mat).scaled(std::exp(-T));
  else
    inner = g.jplus.mat * g.jminus.mat + bracket_pair(-1.0).mat.scaled(std::exp(T));
  return {basis, qminusj0.mat * inner};
}

}  // namespace qvib
