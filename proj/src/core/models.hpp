#ifndef QVIB_CORE_MODELS_HPP
#define QVIB_CORE_MODELS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/deformation.hpp"
#include "core/fock.hpp"

namespace qvib {

// Level-formula families. The deformed ones are diagonal in the number basis;
// the empirical ones are the standard polynomial forms in (n + d/2).
enum class Family {
  q_single,              // hw/2 ([n] + [n+1]), symmetric bracket
  Q_single,              // hw/2 ([n] + [n+1]), Q bracket
  Q_gen_single,          // hw [n + c n^2]_Q
  q_coupled,             // hw [n1 + ... + nl]_q
  Q_coupled,             // hw [n1 + ... + nl]_Q
  Q_generalized,         // hw [sum_i (n_i + c_i n_i^2)]_Q
  empirical_polyatomic,  // sum_i w_i (v_i + d_i/2) + sum_{k>=i} x_ik (...)(...)
  empirical_ABA,         // two-mode Morse-type polynomial with gamma couplings
};

std::string to_string(Family family);
Family family_from_string(const std::string& name);
bool family_is_deformed(Family family);
bool family_is_single(Family family);

enum class CouplingKind { bilinear, darling_dennison };

// Off-diagonal interaction between two distinct modes; strength shares the
// energy unit of the diagonal part.
struct CouplingTerm {
  CouplingKind kind;
  int mode_i;  // 1-based
  int mode_j;
  double strength;
};

enum class ZeroPoint { raw, ground_referenced };

struct EmpiricalParams {
  std::vector<double> omega;           // per mode
  std::vector<std::vector<double>> x;  // symmetric anharmonicity matrix (polyatomic)
  std::vector<int> degeneracy;         // d_i >= 1 (polyatomic)
  std::vector<double> gamma;           // per mode (ABA)
  double gamma12 = 0.0;                // cross term (ABA)
};

struct ModelSpec {
  Family family = Family::Q_coupled;
  int mode_count = 2;
  std::optional<Deformation> deformation;  // absent for empirical families
  std::vector<double> c;                   // self-anharmonicity coefficients
  double scale = 1.0;                      // hbar*omega energy unit per bracket
  EmpiricalParams empirical;
  std::vector<CouplingTerm> couplings;
  ZeroPoint zero_point = ZeroPoint::ground_referenced;

  void validate() const;
};

struct LevelEntry {
  std::vector<int> assignment;
  int polyad = 0;  // total quanta
  double energy = 0.0;
};

// Sorted ascending by energy; lexicographic assignment breaks exact ties.
struct LevelSpectrum {
  std::vector<LevelEntry> entries;
};

void sort_spectrum(LevelSpectrum& spectrum);

// Subtracts the energy of the all-zero assignment from every entry.
LevelSpectrum ground_referenced(LevelSpectrum spectrum);

// Closed-form energy of one basis label, before any zero-point referencing.
double diagonal_energy(const ModelSpec& spec, std::span<const int> n);

// Level list of a coupling-free model over the full per-mode grid
// 0..n_max per mode, with the spec's zero-point convention applied.
LevelSpectrum analytic_levels(const ModelSpec& spec, int n_max);

// Diagonal closed form on each basis label plus symmetrized coupling blocks.
OperatorMatrix build_hamiltonian(const ModelSpec& spec, const FockBasis& basis);

// The pairwise operator-product form of the coupled Hamiltonians
// (b1^+ b1 (Q^{N2}+1)/2 + (Q^{N1}+1)/2 b2^+ b2 and its generalized-exponent
// variant). Kept solely to check equality against the bracket form.
OperatorMatrix product_form_hamiltonian(const ModelSpec& spec, const FockBasis& basis);

// Matrix element of one coupling quantum exchange, using Q brackets:
//   bilinear:          (n_i, n_j) -> (n_i+1, n_j-1), sqrt([n_i+1][n_j])
//   darling_dennison:  (n_i, n_j) -> (n_i+2, n_j-2), sqrt([n_i+2][n_i+1][n_j][n_j-1])
// Returns nothing when the source state is annihilated.
std::optional<double> coupling_element(CouplingKind kind, int n_i, int n_j, double T);

struct PolyadBlock {
  int polyad;
  std::vector<std::size_t> indices;  // basis indices, ascending
  Matrix mat;
};

// Splits H into total-quanta blocks; any off-block entry above 1e-12 is a
// structure error (all couplings in scope conserve total quanta).
std::vector<PolyadBlock> polyad_decompose(const OperatorMatrix& h);

// Deterministic per-block Jacobi diagonalization. Each eigenvector takes the
// still-unassigned basis label where it has the largest |component|
// (lexicographically smallest label on exact ties), so assignments stay
// unique even through degenerate blocks. Energies are raw.
LevelSpectrum diagonalize(const OperatorMatrix& h);

}  // namespace qvib

#endif
