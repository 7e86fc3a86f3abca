#include "core/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "core/error.hpp"

namespace qvib {

namespace {

struct Binding {
  std::string name;
  std::function<double(const ModelSpec&)> get;
  std::function<void(ModelSpec&, double)> set;
};

std::vector<Binding> make_bindings(const ModelSpec& spec) {
  std::vector<Binding> out;
  const auto add = [&](std::string name, auto getter, auto setter) {
    out.push_back({std::move(name), getter, setter});
  };

  if (family_is_deformed(spec.family)) {
    add("scale", [](const ModelSpec& m) { return m.scale; },
        [](ModelSpec& m, double v) { m.scale = v; });
    const bool symmetric = spec.deformation && spec.deformation->is_symmetric_kind();
    add(symmetric ? "tau" : "T",
        [](const ModelSpec& m) { return m.deformation->value; },
        [](ModelSpec& m, double v) { m.deformation->value = v; });
    for (std::size_t i = 0; i < spec.c.size(); ++i)
      add("c" + std::to_string(i + 1),
          [i](const ModelSpec& m) { return m.c[i]; },
          [i](ModelSpec& m, double v) { m.c[i] = v; });
  } else {
    for (int i = 0; i < spec.mode_count; ++i)
      add("omega" + std::to_string(i + 1),
          [i](const ModelSpec& m) { return m.empirical.omega[i]; },
          [i](ModelSpec& m, double v) { m.empirical.omega[i] = v; });
    if (spec.family == Family::empirical_ABA) {
      for (int i = 0; i < 2; ++i)
        add("gamma" + std::to_string(i + 1),
            [i](const ModelSpec& m) { return m.empirical.gamma[i]; },
            [i](ModelSpec& m, double v) { m.empirical.gamma[i] = v; });
      add("gamma12", [](const ModelSpec& m) { return m.empirical.gamma12; },
          [](ModelSpec& m, double v) { m.empirical.gamma12 = v; });
    } else {
      for (int i = 0; i < spec.mode_count; ++i)
        for (int k = i; k < spec.mode_count; ++k)
          add("x_" + std::to_string(i + 1) + "_" + std::to_string(k + 1),
              [i, k](const ModelSpec& m) { return m.empirical.x[i][k]; },
              [i, k](ModelSpec& m, double v) { m.empirical.x[i][k] = m.empirical.x[k][i] = v; });
    }
  }
  for (std::size_t t = 0; t < spec.couplings.size(); ++t)
    add("lambda" + std::to_string(t + 1),
        [t](const ModelSpec& m) { return m.couplings[t].strength; },
        [t](ModelSpec& m, double v) { m.couplings[t].strength = v; });
  return out;
}

// Deterministic Gaussian stream (Box-Muller over the raw engine output, so
// results do not depend on the standard library's distribution internals).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return radius * std::cos(2.0 * M_PI * u2);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform_open() {
    double u = uniform();
    return u > 0.0 ? u : 0x1.0p-53;
  }
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Ground-referenced model energies at the requested assignments.
std::vector<double> model_energies(const ModelSpec& spec,
                                   const std::vector<std::vector<int>>& assignments,
                                   int n_max) {
  std::vector<double> out(assignments.size());
  const std::vector<int> zeros(spec.mode_count, 0);
  if (spec.couplings.empty()) {
    const double e0 = diagonal_energy(spec, zeros);
    for (std::size_t k = 0; k < assignments.size(); ++k)
      out[k] = diagonal_energy(spec, assignments[k]) - e0;
    return out;
  }
  const FockBasis basis(spec.mode_count, n_max);
  const LevelSpectrum spectrum = diagonalize(build_hamiltonian(spec, basis));
  std::map<std::vector<int>, double> by_assignment;
  for (const auto& e : spectrum.entries) by_assignment[e.assignment] = e.energy;
  const double e0 = by_assignment.at(zeros);
  for (std::size_t k = 0; k < assignments.size(); ++k) {
    const auto it = by_assignment.find(assignments[k]);
    if (it == by_assignment.end())
      throw_data("assignment outside the diagonalization basis; raise n_max");
    out[k] = it->second - e0;
  }
  return out;
}

// Solves A x = b by Gaussian elimination with partial pivoting (A small).
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

// Least-squares seed: fit a*s + b*s^2 through the origin to (total quanta,
// energy) pairs and invert x = b/a into T = 2x/(1+x).
void seed_defaults(ModelSpec& work, const std::vector<std::string>& free_names,
                   const std::vector<std::vector<int>>& assignments,
                   const std::vector<double>& energies) {
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (std::size_t k = 0; k < assignments.size(); ++k) {
    double s = 0;
    for (int v : assignments[k]) s += v;
    const double s2 = s * s;
    s11 += s * s;
    s12 += s * s2;
    s22 += s2 * s2;
    r1 += s * energies[k];
    r2 += s2 * energies[k];
  }
  const double det = s11 * s22 - s12 * s12;
  double a = 0.0, b = 0.0;
  if (std::abs(det) > 1e-30) {
    a = (r1 * s22 - r2 * s12) / det;
    b = (s11 * r2 - s12 * r1) / det;
  } else if (s11 > 0.0) {
    a = r1 / s11;
  }

  const auto is_free = [&](const std::string& n) {
    return std::find(free_names.begin(), free_names.end(), n) != free_names.end();
  };
  if (family_is_deformed(work.family)) {
    const double x = std::abs(a) > 1e-30 ? b / a : 0.0;
    const double t0 = 2.0 * x / (1.0 + x);
    if (is_free("T") || is_free("tau")) work.deformation->value = t0;
    if (is_free("scale") && std::abs(a) > 1e-30) {
      const double scale = a / (1.0 - t0 / 2.0);
      if (scale > 0.0 && std::isfinite(scale)) work.scale = scale;
    }
    for (std::size_t i = 0; i < work.c.size(); ++i)
      if (is_free("c" + std::to_string(i + 1))) work.c[i] = 0.0;
  } else {
    for (int i = 0; i < work.mode_count; ++i)
      if (is_free("omega" + std::to_string(i + 1)) && std::abs(a) > 1e-30)
        work.empirical.omega[i] = a;
  }
  for (std::size_t t = 0; t < work.couplings.size(); ++t)
    if (is_free("lambda" + std::to_string(t + 1))) work.couplings[t].strength = 0.0;
}

}  // namespace

std::vector<std::string> fit_parameter_names(const ModelSpec& spec) {
  std::vector<std::string> names;
  for (const auto& b : make_bindings(spec)) names.push_back(b.name);
  return names;
}

LevelSpectrum simulate_levels(const ModelSpec& spec, int n_max, double noise_sigma,
                              std::uint64_t seed) {
  spec.validate();
  if (noise_sigma < 0.0) throw_argument("noise_sigma must be nonnegative");
  LevelSpectrum spectrum;
  if (spec.couplings.empty()) {
    spectrum = analytic_levels(spec, n_max);
  } else {
    const FockBasis basis(spec.mode_count, n_max);
    spectrum = diagonalize(build_hamiltonian(spec, basis));
    if (spec.zero_point == ZeroPoint::ground_referenced)
      spectrum = ground_referenced(std::move(spectrum));
  }
  if (noise_sigma > 0.0) {
    GaussianStream noise(seed);
    for (auto& e : spectrum.entries) e.energy += noise_sigma * noise.next();
    sort_spectrum(spectrum);
  }
  return spectrum;
}

FitResult fit(const LevelSpectrum& levels, const ModelSpec& base,
              const std::vector<std::string>& free_params,
              const std::optional<std::vector<double>>& init, const FitOptions& options) {
  base.validate();
  if (free_params.empty()) throw_argument("no free parameters requested");
  if (levels.entries.size() < free_params.size())
    throw_data("underdetermined fit: " + std::to_string(levels.entries.size()) +
               " levels for " + std::to_string(free_params.size()) + " free parameters");

  std::vector<std::vector<int>> assignments;
  std::vector<double> observed;
  int max_quanta = 0;
  {
    std::map<std::vector<int>, double> seen;
    for (const auto& e : levels.entries) {
      if (static_cast<int>(e.assignment.size()) != base.mode_count)
        throw_data("level assignment length does not match the model's mode count");
      if (!seen.emplace(e.assignment, e.energy).second)
        throw_data("duplicate level assignment");
      assignments.push_back(e.assignment);
      observed.push_back(e.energy);
      for (int v : e.assignment) max_quanta = std::max(max_quanta, v);
    }
  }
  // Ground reference the data: all-zero assignment when present, else the minimum.
  {
    double e0 = *std::min_element(observed.begin(), observed.end());
    for (std::size_t k = 0; k < assignments.size(); ++k)
      if (std::all_of(assignments[k].begin(), assignments[k].end(),
                      [](int v) { return v == 0; })) {
        e0 = observed[k];
        break;
      }
    for (double& y : observed) y -= e0;
  }

  const int n_max = options.n_max > 0 ? options.n_max : std::max(max_quanta, 1);

  ModelSpec work = base;
  const std::vector<Binding> all = make_bindings(work);
  std::vector<const Binding*> bindings;
  for (const auto& name : free_params) {
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const Binding& b) { return b.name == name; });
    if (it == all.end())
      throw_argument("'" + name + "' is not a parameter of family " + to_string(work.family));
    bindings.push_back(&*it);
  }

  if (init) {
    if (init->size() != bindings.size())
      throw_argument("initial vector length does not match the free parameter count");
    for (std::size_t i = 0; i < bindings.size(); ++i) bindings[i]->set(work, (*init)[i]);
  } else {
    seed_defaults(work, free_params, assignments, observed);
  }

  const std::size_t p = bindings.size();
  const std::size_t n = assignments.size();
  const auto get_params = [&]() {
    std::vector<double> theta(p);
    for (std::size_t i = 0; i < p; ++i) theta[i] = bindings[i]->get(work);
    return theta;
  };
  const auto set_params = [&](const std::vector<double>& theta) {
    for (std::size_t i = 0; i < p; ++i) bindings[i]->set(work, theta[i]);
  };
  const auto residuals_at = [&](const std::vector<double>& theta) {
    set_params(theta);
    std::vector<double> r = model_energies(work, assignments, n_max);
    for (std::size_t k = 0; k < n; ++k) r[k] -= observed[k];
    return r;
  };
  const auto sse_of = [](const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  };

  std::vector<double> theta = get_params();
  std::vector<double> res = residuals_at(theta);
  double sse = sse_of(res);

  std::vector<std::vector<double>> jac(n, std::vector<double>(p, 0.0));
  const auto fill_jacobian = [&](const std::vector<double>& at) {
    for (std::size_t j = 0; j < p; ++j) {
      const double h = 1e-6 * std::max(std::abs(at[j]), 1.0);
      std::vector<double> plus = at, minus = at;
      plus[j] += h;
      minus[j] -= h;
      const std::vector<double> rp = residuals_at(plus);
      const std::vector<double> rm = residuals_at(minus);
      for (std::size_t k = 0; k < n; ++k) jac[k][j] = (rp[k] - rm[k]) / (2.0 * h);
    }
  };

  FitResult result;
  for (const auto* b : bindings) result.names.push_back(b->name);

  double mu = 1e-3;
  bool converged = sse == 0.0;
  int iter = 0;
  while (!converged && iter < options.max_iterations) {
    ++iter;
    fill_jacobian(theta);

    std::vector<std::vector<double>> jtj(p, std::vector<double>(p, 0.0));
    std::vector<double> jtr(p, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < p; ++i) {
        jtr[i] += jac[k][i] * res[k];
        for (std::size_t j = i; j < p; ++j) jtj[i][j] += jac[k][i] * jac[k][j];
      }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < i; ++j) jtj[i][j] = jtj[j][i];

    bool accepted = false;
    while (!accepted && mu < 1e15) {
      std::vector<std::vector<double>> damped = jtj;
      for (std::size_t i = 0; i < p; ++i)
        damped[i][i] += mu * std::max(jtj[i][i], 1e-12);
      std::vector<double> rhs(p), step;
      for (std::size_t i = 0; i < p; ++i) rhs[i] = -jtr[i];
      if (!solve_linear(damped, rhs, step)) {
        mu *= 2.0;
        continue;
      }
      std::vector<double> trial = theta;
      for (std::size_t i = 0; i < p; ++i) trial[i] += step[i];
      const std::vector<double> trial_res = residuals_at(trial);
      const double trial_sse = sse_of(trial_res);
      if (trial_sse <= sse) {
        double step_norm = 0.0, theta_norm = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
          step_norm += step[i] * step[i];
          theta_norm += theta[i] * theta[i];
        }
        step_norm = std::sqrt(step_norm);
        theta_norm = std::sqrt(theta_norm);
        const double drop = sse - trial_sse;
        theta = trial;
        res = trial_res;
        sse = trial_sse;
        accepted = true;
        mu = std::max(mu / 3.0, 1e-12);
        if (sse == 0.0 || drop <= options.tol_sse * std::max(sse, 1e-300) ||
            step_norm <= options.tol_step * (theta_norm + options.tol_step))
          converged = true;
      } else {
        mu *= 2.0;
      }
    }
    if (!accepted) break;  // damping exhausted; report the best point found
  }
  set_params(theta);

  // Collinearity diagnostics on the final Jacobian.
  fill_jacobian(theta);
  std::string note;
  for (std::size_t i = 0; i < p && note.empty(); ++i) {
    for (std::size_t j = i + 1; j < p && note.empty(); ++j) {
      double dot = 0, ni = 0, nj = 0;
      for (std::size_t k = 0; k < n; ++k) {
        dot += jac[k][i] * jac[k][j];
        ni += jac[k][i] * jac[k][i];
        nj += jac[k][j] * jac[k][j];
      }
      if (ni > 0 && nj > 0) {
        const double cosine = std::abs(dot) / std::sqrt(ni * nj);
        if (cosine > 0.999)
          note = "parameters '" + result.names[i] + "' and '" + result.names[j] +
                 "' are nearly indistinguishable (|cos| = " + std::to_string(cosine) + ")";
      }
    }
  }

  result.params = theta;
  result.sse = sse;
  result.iterations = iter;
  result.converged = converged;
  result.assignments = assignments;
  result.residuals = residuals_at(theta);
  result.condition_note = note;
  return result;
}

}  // namespace qvib
