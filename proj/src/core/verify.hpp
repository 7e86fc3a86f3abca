#ifndef QVIB_CORE_VERIFY_HPP
#define QVIB_CORE_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/deformation.hpp"
#include "core/fock.hpp"

namespace qvib {

struct CheckResult {
  std::string name;
  std::string relation;  // the identity being measured
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

struct VerifyOptions {
  int n_max = 8;
  int margin = 2;
  double T = 0.1;    // Q_real checks
  double tau = 0.1;  // symmetric-kind checks
  std::optional<double> tolerance;  // overrides every per-check tolerance
};

// Residuals of the su(2)-type commutation relations for an explicit
// generator triple, so corrupted generators can be probed directly.
// Residuals are max-absolute-entry norms of the projected expressions.
double ladder_commutator_residual(const GeneratorTriple& g, int margin);
double plus_minus_residual(const GeneratorTriple& g, int margin);

// The quantum-algebra invariants (commutation relations, Casimir forms,
// Hamiltonian symmetry) on one basis and deformation.
VerificationReport verify_algebra(const FockBasis& basis, const Deformation& d, int margin,
                                  double tolerance);

// The full invariant catalog: bracket laws, boson relations, algebra
// relations, Hamiltonian identities and polyad structure.
VerificationReport verify_all(const VerifyOptions& options = {});

}  // namespace qvib

#endif
