#include "core/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "core/error.hpp"

namespace qvib {

std::string to_string(Family family) {
  switch (family) {
    case Family::q_single: return "q_single";
    case Family::Q_single: return "Q_single";
    case Family::Q_gen_single: return "Q_gen_single";
    case Family::q_coupled: return "q_coupled";
    case Family::Q_coupled: return "Q_coupled";
    case Family::Q_generalized: return "Q_generalized";
    case Family::empirical_polyatomic: return "empirical_polyatomic";
    case Family::empirical_ABA: return "empirical_ABA";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::q_single, Family::Q_single, Family::Q_gen_single,
                   Family::q_coupled, Family::Q_coupled, Family::Q_generalized,
                   Family::empirical_polyatomic, Family::empirical_ABA})
    if (to_string(f) == name) return f;
  throw_config("unknown model family '" + name + "'");
}

bool family_is_deformed(Family family) {
  return family != Family::empirical_polyatomic && family != Family::empirical_ABA;
}

bool family_is_single(Family family) {
  return family == Family::q_single || family == Family::Q_single ||
         family == Family::Q_gen_single;
}

namespace {

bool family_uses_c(Family family) {
  return family == Family::Q_gen_single || family == Family::Q_generalized;
}

bool family_wants_symmetric(Family family) {
  return family == Family::q_single || family == Family::q_coupled;
}

// T to use for coupling matrix elements: the model's own Q deformation, or
// the undeformed limit for the empirical families.
double coupling_T(const ModelSpec& spec) {
  if (!spec.deformation) return 0.0;
  return spec.deformation->value;
}

}  // namespace

void ModelSpec::validate() const {
  if (mode_count < 1) throw_config("mode_count must be >= 1");
  if (family_is_single(family) && mode_count != 1)
    throw_config(to_string(family) + " is a single-oscillator family (mode_count must be 1)");
  if ((family == Family::q_coupled || family == Family::Q_coupled ||
       family == Family::Q_generalized) && mode_count < 2)
    throw_config(to_string(family) + " needs at least two modes");
  if (family == Family::empirical_ABA && mode_count != 2)
    throw_config("empirical_ABA is a two-mode family");

  if (family_is_deformed(family)) {
    if (!deformation) throw_config(to_string(family) + " requires a deformation");
    const bool symmetric = deformation->is_symmetric_kind();
    if (family_wants_symmetric(family) && !symmetric)
      throw_config(to_string(family) + " requires a q_real or q_phase deformation");
    if (!family_wants_symmetric(family) && symmetric)
      throw_config(to_string(family) + " requires a Q_real deformation");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw_config("scale must be positive");
  } else {
    if (deformation) throw_config("empirical families take no deformation");
    if (static_cast<int>(empirical.omega.size()) != mode_count)
      throw_config("empirical omega list must have one entry per mode");
    if (family == Family::empirical_ABA) {
      if (empirical.gamma.size() != 2) throw_config("empirical_ABA needs gamma for both modes");
    } else {
      if (static_cast<int>(empirical.x.size()) != mode_count)
        throw_config("empirical x matrix must be mode_count x mode_count");
      for (const auto& row : empirical.x)
        if (static_cast<int>(row.size()) != mode_count)
          throw_config("empirical x matrix must be mode_count x mode_count");
      for (int i = 0; i < mode_count; ++i)
        for (int k = 0; k < mode_count; ++k)
          if (empirical.x[i][k] != empirical.x[k][i])
            throw_config("empirical x matrix must be symmetric");
      if (static_cast<int>(empirical.degeneracy.size()) != mode_count)
        throw_config("empirical degeneracy list must have one entry per mode");
      for (int d : empirical.degeneracy)
        if (d < 1) throw_config("mode degeneracies must be integers >= 1");
    }
  }

  if (family_uses_c(family)) {
    if (static_cast<int>(c.size()) != mode_count)
      throw_config(to_string(family) + " needs one c coefficient per mode");
  } else if (!c.empty()) {
    throw_config(to_string(family) + " takes no c coefficients");
  }

  for (const auto& t : couplings) {
    if (t.mode_i == t.mode_j) throw_config("coupling modes must be distinct");
    if (t.mode_i < 1 || t.mode_i > mode_count || t.mode_j < 1 || t.mode_j > mode_count)
      throw_config("coupling mode index out of range");
    if (family_wants_symmetric(family))
      throw_config("couplings use the Q-bracket convention and are not available "
                   "for symmetric-bracket families");
  }
}

void sort_spectrum(LevelSpectrum& spectrum) {
  std::sort(spectrum.entries.begin(), spectrum.entries.end(),
            [](const LevelEntry& a, const LevelEntry& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.assignment < b.assignment;
            });
}

LevelSpectrum ground_referenced(LevelSpectrum spectrum) {
  const LevelEntry* ground = nullptr;
  for (const auto& e : spectrum.entries) {
    if (std::all_of(e.assignment.begin(), e.assignment.end(), [](int n) { return n == 0; })) {
      ground = &e;
      break;
    }
  }
  if (!ground) throw_argument("ground referencing needs the all-zero assignment present");
  const double e0 = ground->energy;
  for (auto& e : spectrum.entries) e.energy -= e0;
  sort_spectrum(spectrum);
  return spectrum;
}

double diagonal_energy(const ModelSpec& spec, std::span<const int> n) {
  if (static_cast<int>(n.size()) != spec.mode_count)
    throw_argument("assignment length does not match mode count");
  switch (spec.family) {
    case Family::q_single: {
      const Deformation& d = *spec.deformation;
      return 0.5 * spec.scale * (bracket_symmetric(n[0], d) + bracket_symmetric(n[0] + 1, d));
    }
    case Family::Q_single: {
      const double T = spec.deformation->value;
      return 0.5 * spec.scale * (bracket_Q(n[0], T) + bracket_Q(n[0] + 1, T));
    }
    case Family::Q_gen_single: {
      const double T = spec.deformation->value;
      const double arg = n[0] + spec.c[0] * n[0] * n[0];
      return spec.scale * bracket_Q(arg, T);
    }
    case Family::q_coupled: {
      double total = 0.0;
      for (int v : n) total += v;
      return spec.scale * bracket_symmetric(total, *spec.deformation);
    }
    case Family::Q_coupled: {
      double total = 0.0;
      for (int v : n) total += v;
      return spec.scale * bracket_Q(total, spec.deformation->value);
    }
    case Family::Q_generalized: {
      double arg = 0.0;
      for (int i = 0; i < spec.mode_count; ++i)
        arg += n[i] + spec.c[i] * n[i] * n[i];
      return spec.scale * bracket_Q(arg, spec.deformation->value);
    }
    case Family::empirical_polyatomic: {
      double e = 0.0;
      for (int i = 0; i < spec.mode_count; ++i) {
        const double vi = n[i] + 0.5 * spec.empirical.degeneracy[i];
        e += spec.empirical.omega[i] * vi;
        for (int k = i; k < spec.mode_count; ++k) {
          const double vk = n[k] + 0.5 * spec.empirical.degeneracy[k];
          e += spec.empirical.x[i][k] * vi * vk;
        }
      }
      return e;
    }
    case Family::empirical_ABA: {
      const double m1 = n[0] + 0.5, m2 = n[1] + 0.5;
      return spec.empirical.omega[0] * m1 + spec.empirical.omega[1] * m2 +
             0.5 * spec.empirical.gamma[0] * m1 * m1 +
             0.5 * spec.empirical.gamma[1] * m2 * m2 +
             spec.empirical.gamma12 * m1 * m2;
    }
  }
  throw_argument("unhandled family");
}

LevelSpectrum analytic_levels(const ModelSpec& spec, int n_max) {
  spec.validate();
  if (!spec.couplings.empty())
    throw_argument("analytic levels exist only for coupling-free models; "
                   "build the Hamiltonian and diagonalize instead");
  const FockBasis basis(spec.mode_count, n_max);
  LevelSpectrum spectrum;
  spectrum.entries.reserve(basis.dimension());
  for (std::size_t s = 0; s < basis.dimension(); ++s) {
    const auto label = basis.label_of(s);
    LevelEntry e;
    e.assignment = label;
    e.polyad = basis.total_quanta(s);
    e.energy = diagonal_energy(spec, label);
    spectrum.entries.push_back(std::move(e));
  }
  sort_spectrum(spectrum);
  if (spec.zero_point == ZeroPoint::ground_referenced)
    spectrum = ground_referenced(std::move(spectrum));
  return spectrum;
}

std::optional<double> coupling_element(CouplingKind kind, int n_i, int n_j, double T) {
  if (n_i < 0 || n_j < 0) throw_argument("occupations must be nonnegative");
  if (kind == CouplingKind::bilinear) {
    if (n_j < 1) return std::nullopt;
    return std::sqrt(bracket_Q(n_i + 1, T) * bracket_Q(n_j, T));
  }
  if (n_j < 2) return std::nullopt;
  return std::sqrt(bracket_Q(n_i + 2, T) * bracket_Q(n_i + 1, T) *
                   bracket_Q(n_j, T) * bracket_Q(n_j - 1, T));
}

OperatorMatrix build_hamiltonian(const ModelSpec& spec, const FockBasis& basis) {
  spec.validate();
  if (basis.mode_count() != spec.mode_count)
    throw_argument("basis mode count does not match the model");
  OperatorMatrix h = diagonal_operator(
      basis, [&](std::span<const int> n) { return diagonal_energy(spec, n); });

  const double T = coupling_T(spec);
  const int quanta[2] = {1, 2};
  for (const auto& term : spec.couplings) {
    const int moved = quanta[term.kind == CouplingKind::darling_dennison ? 1 : 0];
    for (std::size_t s = 0; s < basis.dimension(); ++s) {
      auto label = basis.label_of(s);
      const int ni = label[term.mode_i - 1];
      const int nj = label[term.mode_j - 1];
      if (ni + moved > basis.n_max()) continue;  // raised state falls outside the basis
      const auto element = coupling_element(term.kind, ni, nj, T);
      if (!element) continue;
      label[term.mode_i - 1] = ni + moved;
      label[term.mode_j - 1] = nj - moved;
      const std::size_t t = basis.index_of(label);
      // One pass per source state covers both Hermitian partners.
      h.mat(t, s) += term.strength * *element;
      h.mat(s, t) += term.strength * *element;
    }
  }
  return h;
}

OperatorMatrix product_form_hamiltonian(const ModelSpec& spec, const FockBasis& basis) {
  spec.validate();
  if (spec.mode_count != 2 || basis.mode_count() != 2)
    throw_argument("the product form is defined pairwise (two modes)");
  const double T = spec.deformation ? spec.deformation->value : 0.0;

  if (spec.family == Family::Q_coupled) {
    const OperatorMatrix b1 = lowering_Q(basis, 1, *spec.deformation);
    const OperatorMatrix b2 = lowering_Q(basis, 2, *spec.deformation);
    const auto halfshift = [&](int mode) {
      return diagonal_operator(basis, [T, mode](std::span<const int> n) {
        return 0.5 * (std::exp(T * n[mode - 1]) + 1.0);  // (Q^N + 1)/2
      });
    };
    Matrix h = b1.mat.transposed() * b1.mat * halfshift(2).mat +
               halfshift(1).mat * (b2.mat.transposed() * b2.mat);
    return {basis, h.scaled(spec.scale)};
  }

  if (spec.family == Family::Q_generalized) {
    // No ladder realization exists for the generalized oscillator, so both
    // factors are functions of the number operators.
    const auto arg = [&](int mode, std::span<const int> n) {
      const int v = n[mode - 1];
      return v + spec.c[mode - 1] * v * v;
    };
    OperatorMatrix h = diagonal_operator(basis, [&](std::span<const int> n) {
      const double a1 = arg(1, n), a2 = arg(2, n);
      return bracket_Q(a1, T) * 0.5 * (std::exp(T * a2) + 1.0) +
             0.5 * (std::exp(T * a1) + 1.0) * bracket_Q(a2, T);
    });
    h.mat = h.mat.scaled(spec.scale);
    return h;
  }

  throw_argument("product form exists for the Q_coupled and Q_generalized families");
}

std::vector<PolyadBlock> polyad_decompose(const OperatorMatrix& h) {
  const FockBasis& basis = h.basis;
  const std::size_t dim = basis.dimension();
  if (h.mat.rows() != dim || h.mat.cols() != dim)
    throw_argument("operator does not match its basis");

  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t s = 0; s < dim; ++s) groups[basis.total_quanta(s)].push_back(s);

  std::vector<int> polyad_of(dim);
  for (const auto& [p, idx] : groups)
    for (std::size_t s : idx) polyad_of[s] = p;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (polyad_of[i] != polyad_of[j] && std::abs(h.mat(i, j)) >= 1e-12)
        throw_structure("off-block entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") = " + std::to_string(h.mat(i, j)) +
                        " links total quanta " + std::to_string(polyad_of[i]) + " and " +
                        std::to_string(polyad_of[j]));

  std::vector<PolyadBlock> blocks;
  blocks.reserve(groups.size());
  for (auto& [p, idx] : groups) {
    PolyadBlock block;
    block.polyad = p;
    block.mat = Matrix(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        block.mat(a, b) = h.mat(idx[a], idx[b]);
    block.indices = std::move(idx);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

LevelSpectrum diagonalize(const OperatorMatrix& h) {
  const double asym = h.mat.max_asymmetry();
  if (asym > 1e-10 * std::max(1.0, h.mat.max_abs()))
    throw_structure("Hamiltonian is not symmetric (max asymmetry " + std::to_string(asym) + ")");

  LevelSpectrum spectrum;
  for (const auto& block : polyad_decompose(h)) {
    const SymmetricEigen eig = jacobi_eigensolver(block.mat);
    const std::size_t m = block.indices.size();
    std::vector<bool> used(m, false);
    for (std::size_t k = 0; k < m; ++k) {
      // Largest |component| among labels not yet claimed in this block.
      std::size_t best = m;
      double best_mag = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (used[i]) continue;
        const double mag = std::abs(eig.vectors(i, k));
        if (mag > best_mag) {
          best_mag = mag;
          best = i;
        }
      }
      used[best] = true;
      LevelEntry e;
      e.assignment = h.basis.label_of(block.indices[best]);
      e.polyad = block.polyad;
      e.energy = eig.values[k];
      spectrum.entries.push_back(std::move(e));
    }
  }
  sort_spectrum(spectrum);
  return spectrum;
}

}  // namespace qvib
