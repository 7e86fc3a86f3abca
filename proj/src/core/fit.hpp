#ifndef QVIB_CORE_FIT_HPP
#define QVIB_CORE_FIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/models.hpp"

namespace qvib {

struct FitOptions {
  int max_iterations = 500;
  double tol_sse = 1e-12;   // relative SSE change per accepted step
  double tol_step = 1e-12;  // step norm relative to the parameter norm
  int n_max = 0;            // basis cutoff for coupled models; 0 = infer from data
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> params;
  double sse = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::vector<int>> assignments;  // aligned with residuals
  std::vector<double> residuals;              // model - observed
  std::string condition_note;                 // set when parameters are nearly collinear
};

// Names a model family accepts as free parameters: "scale", "T"/"tau",
// "c1".."cl", "lambda1".."lambdaK", and the empirical constants
// ("omega1", "gamma1", "gamma12", "x_1_2", ...).
std::vector<std::string> fit_parameter_names(const ModelSpec& spec);

// Levels of the model over the per-mode grid with an optional seeded
// Gaussian perturbation; noise_sigma = 0 reproduces the exact levels.
// Identical seeds give identical output.
LevelSpectrum simulate_levels(const ModelSpec& spec, int n_max, double noise_sigma,
                              std::uint64_t seed);

// Damped least squares over the named free parameters of `base`. Levels and
// model predictions are both ground referenced, so zero-point conventions
// drop out. The Jacobian is central-difference with relative step 1e-6.
FitResult fit(const LevelSpectrum& levels, const ModelSpec& base,
              const std::vector<std::string>& free_params,
              const std::optional<std::vector<double>>& init = std::nullopt,
              const FitOptions& options = {});

}  // namespace qvib

#endif
