// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tpoe/field.hpp"
#include "tpoe/norms.hpp"
#include "tpoe/symbols.hpp"

namespace tpoe {

/// P (time mean) or P-perp = id - P (purely periodic part).
enum class TimeProjection { kMean, kOscillating };

/// Relative tolerance against max norms for the solver preconditions.
struct Tolerances {
  double precondition = 1e-10;
};

SpaceTimeField apply_time_average(const SpaceTimeField& f, TimeProjection which);
SpectralField apply_time_average(const SpectralField& f, TimeProjection which);

/// Helmholtz projection onto spectrally divergence-free fields.
SpaceTimeField apply_helmholtz(const SpaceTimeField& f);
SpectralField apply_helmholtz(const SpectralField& f);

/// Solves dt w - Lap w - lambda d1 w = f for purely periodic solenoidal f
/// through the multiplier M. Throws kNotPurelyPeriodic / kNonSolenoidal.
SpaceTimeField solve_time_periodic(const SpaceTimeField& f, const OseenParams& params, const Tolerances& tol = {});

/// Solves -Lap v - lambda d1 v = f for time-constant, solenoidal, mean-zero f.
/// Throws kNotTimeConstant, kNonSolenoidal or kIncompatibleMean.
SpaceTimeField solve_steady(const SpaceTimeField& f, double lambda, const Tolerances& tol = {});

/// Pressure p with grad p = (I - P_H) f and zero spatial mean at every time.
SpaceTimeField recover_pressure(const SpaceTimeField& f);

/// dt u - Lap u - lambda d1 u + grad p, applied spectrally.
SpaceTimeField apply_operator(const SpaceTimeField& u, const SpaceTimeField& p, const OseenParams& params);

struct SolutionBundle {
  SpaceTimeField v;  ///< steady velocity
  SpaceTimeField w;  ///< purely periodic velocity
  SpaceTimeField u;  ///< v + w
  SpaceTimeField p;  ///< pressure
  double residual_norm = 0.0;  ///< ||A(u,p) - f||_inf / ||f||_inf (absolute if f == 0)
  std::map<std::string, double> norm_report;
};

struct SolveOptions {
  Tolerances tol;
  /// Norms that must be reported. An inadmissible kind throws
  /// kInvalidExponent. When empty, every admissible norm for (n, lambda, q)
  /// is reported.
  std::vector<NormTag> requested_norms;
};

/// Full pipeline: Helmholtz split, time-average split, steady and periodic
/// solves, pressure recovery, residual and norm report.
SolutionBundle solve_full(const SpaceTimeField& f, const OseenParams& params, const SolveOptions& options = {});

}  // namespace tpoe
