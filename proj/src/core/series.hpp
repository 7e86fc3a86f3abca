#ifndef QVIB_CORE_SERIES_HPP
#define QVIB_CORE_SERIES_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/models.hpp"
#include "core/rational.hpp"

namespace qvib {

// Exponent tuple over the mode quantum numbers n_1..n_l.
using Monomial = std::vector<int>;

// Coefficient of one monomial: a truncated power series in the deformation
// parameter, index = parameter power. Exact rationals throughout.
using ParamSeries = std::vector<Rational>;

// Multivariate polynomial in the mode quantum numbers whose coefficients are
// truncated power series in the deformation parameter. All-zero coefficients
// are never stored.
struct SeriesPolynomial {
  int mode_count = 0;
  DeformationKind kind = DeformationKind::Q_real;
  int truncation_order = 0;  // highest parameter power kept (tau power for q kinds)
  std::map<Monomial, ParamSeries> terms;

  // Series of one monomial; nullptr when the monomial is absent (exact zero).
  const ParamSeries* coefficient(const Monomial& m) const;

  double evaluate(std::span<const int> n, double param) const;

  // Terms sorted by total degree, then n1-major exponent order; coefficients
  // printed as exact fractions of the parameter monomial, e.g.
  //   (1 - 1/2 T) n1 + 1/2 T n1^2 + T n1 n2
  std::string canonical_text() const;
};

// Expands the closed-form level formula of a coupling-free deformed model in
// its deformation parameter using exact polynomial algebra. For Q_real
// families `order` counts powers of T (1..3); for the symmetric kinds it
// counts powers of tau^2 (1..2).
SeriesPolynomial expand_model(const ModelSpec& spec, int order);

// Ratio of the n^2 to the n coefficient of the first-order level formula:
// c + (T/2)/(1 - T/2).
double self_anharmonicity(double T, double c);

// First-order expansion coefficients rewritten in the empirical
// (n + 1/2)-power convention: E = sum_i hw_i (n_i+1/2)
//   + sum_i gamma_i/2 (n_i+1/2)^2 + sum_{i<j} gamma_ij (n_i+1/2)(n_j+1/2).
// Monomials above total degree two are dropped before the affine change of
// variable; they have no counterpart in the quadratic empirical form.
struct EffectiveConstants {
  std::vector<double> hbar_omega;               // per mode
  std::vector<double> gamma;                    // per mode
  std::vector<std::vector<double>> gamma_cross; // symmetric, zero diagonal
};
EffectiveConstants effective_constants(const ModelSpec& spec);

// Leading cross-anharmonicity content of a two-mode diagonal model: the
// n1*n2 coefficient (exactly zero for the symmetric kinds, T for Q_real)
// and every mixed monomial of the first-order expansion.
struct CrossAnharmonicity {
  ParamSeries bilinear;  // series of the n1*n2 monomial (all zero if absent)
  std::vector<std::pair<Monomial, ParamSeries>> cross_terms;
};
CrossAnharmonicity cross_anharmonicity_report(const ModelSpec& spec);

struct CompareRow {
  std::vector<int> assignment;
  double energy_a = 0.0;
  double energy_b = 0.0;
  double residual = 0.0;  // energy_a - energy_b
};

struct SpectrumComparison {
  double max_abs = 0.0;
  double rms = 0.0;
  std::vector<CompareRow> rows;  // sorted by assignment
};

// Per-assignment residuals between two spectra covering the same assignments.
SpectrumComparison compare_spectra(const LevelSpectrum& a, const LevelSpectrum& b);

}  // namespace qvib

#endif
