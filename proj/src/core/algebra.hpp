#ifndef QVIB_CORE_ALGEBRA_HPP
#define QVIB_CORE_ALGEBRA_HPP

#include "core/deformation.hpp"
#include "core/fock.hpp"

namespace qvib {

// Schwinger-realized generators on a two-mode basis. J0 is diagonal with
// entries (n1 - n2)/2 and Jminus is the transpose of Jplus.
struct GeneratorTriple {
  OperatorMatrix j0;
  OperatorMatrix jplus;
  OperatorMatrix jminus;
  Deformation deformation;
};

// J0 = (N1 - N2)/2, J+ = a1^+ a2, J- = a2^+ a1 with symmetric-bracket ladders.
GeneratorTriple suq2_generators(const FockBasis& basis, const Deformation& d);

// J0 = (N1 - N2)/2, J+ = b1^+ Q^{-N2/2} b2 with Q-boson ladders.
GeneratorTriple suQ2_generators(const FockBasis& basis, const Deformation& d);

enum class CasimirForm {
  first,   // Q^{-J0} ( [J0][J0+1] + Q^{-1} J- J+ )
  second,  // Q^{-J0} ( J+ J- + Q [J0][J0-1] )
  closed,  // -[ (N1+N2)/2 + 1 ] [ -(N1+N2)/2 ], diagonal in total quanta
};

OperatorMatrix casimir_Q(const FockBasis& basis, const Deformation& d, CasimirForm form);

}  // namespace qvib

#endif
