// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tpoe/field.hpp"
#include "tpoe/symbols.hpp"

namespace tpoe {

// ---------------------------------------------------------------------------
// Marcinkiewicz condition scan
// ---------------------------------------------------------------------------

/// Log-radial shells in |(xi, eta)| times a fixed set of directions in
/// R^{n+1}. The direction set is closed under xi_1 -> -xi_1.
struct ScanGrid {
  double r_min = 1e-2;
  double r_max = 1e4;
  int shells = 64;
  int directions = 48;  ///< random directions before axes and reflections are added
  std::uint64_t seed = 20130401;
};

/// Points of the scan grid, each of length n+1 (xi_1..xi_n, eta).
std::vector<std::vector<double>> scan_points(int n, const ScanGrid& grid);

/// Mixed partial d^eps m by nested central differences with one Richardson
/// step. Bit j < n of `eps` selects d/d xi_{j+1}; bit n selects d/d eta.
std::complex<double> mixed_partial_fd(int n, std::span<const double> point, unsigned eps, const OseenParams& params,
                                      const CutoffSpec& cutoff = {});

/// Closed-form first partial of m in variable j (j < n: xi_{j+1}, j == n: eta).
std::complex<double> closed_form_partial(int n, std::span<const double> point, int variable, const OseenParams& params,
                                         const CutoffSpec& cutoff = {});

/// |xi^eps eta^eps_{n+1} d^eps m| at one point.
double marcinkiewicz_term(int n, std::span<const double> point, unsigned eps, const OseenParams& params,
                          const CutoffSpec& cutoff = {});

struct MarcinkiewiczReport {
  int n = 0;
  OseenParams params;
  ScanGrid grid;
  CutoffSpec cutoff;
  std::size_t points = 0;
  std::vector<double> per_epsilon;  ///< indexed by the eps bitmask, size 2^{n+1}
  double overall = 0.0;
  /// Max over grid points and single-variable eps of
  /// |x_j| |fd - closed form| / max(|m|, |x_j closed form|, 1e-6 * S), where S
  /// is the largest such scale over the grid.
  double fd_validation_error = 0.0;
};

/// Throws kInvalidGrid if the grid has no points.
MarcinkiewiczReport marcinkiewicz_scan(int n, const OseenParams& params, const ScanGrid& grid = {},
                                       const CutoffSpec& cutoff = {});

// ---------------------------------------------------------------------------
// Transference identity M = m o Phi
// ---------------------------------------------------------------------------

/// Max over the full dual grid of |M(idx) - m(Phi(idx))|.
double transference_check(const TorusDomain& domain, const OseenParams& params, const CutoffSpec& cutoff = {});

/// Same, over an explicit index set; the empty set gives 0.
double transference_check(std::span<const DualIndex> indices, const TorusDomain& domain, const OseenParams& params,
                          const CutoffSpec& cutoff = {});

// ---------------------------------------------------------------------------
// Manufactured solutions and verification
// ---------------------------------------------------------------------------

struct ManufacturedCase {
  SpaceTimeField u;
  SpaceTimeField p;
  SpaceTimeField f;
};

/// Recipes: "zero", "single-mode", "steady-periodic-mix", "random".
/// u is solenoidal, p has zero spatial mean at every time and
/// f = apply_operator(u, p). Throws kUnknownRecipe.
ManufacturedCase manufactured_case(std::string_view recipe, const TorusDomain& domain, const OseenParams& params,
                                   std::uint64_t seed = 0);

const std::vector<std::string>& recipe_catalog();

/// Second-order centered finite differences for dt u - Lap u - lambda d1 u + grad p.
SpaceTimeField fd_apply_operator(const SpaceTimeField& u, const SpaceTimeField& p, const OseenParams& params);

/// Worst ||solve_time_periodic(A w) - w||_inf / ||w||_inf over a seeded
/// ensemble of nonzero random solenoidal purely periodic fields.
double roundtrip_verify(const TorusDomain& domain, const OseenParams& params, int ensemble_size, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Constant sweeps and convergence
// ---------------------------------------------------------------------------

struct SweepRecord {
  double lambda = 0.0;
  double T = 0.0;
  double q = 0.0;
  int N = 0;
  int Nt = 0;
  std::string statistic;
  double value = 0.0;
  std::uint64_t seed = 0;
};

/// Least-squares fit of log(value) against the regressors that vary across
/// the records (from {1, log(1+|lambda|), log T}). Descriptive only.
struct PowerLawFit {
  std::vector<std::string> regressors;
  std::vector<double> coefficients;
  double rms_residual = 0.0;
  int samples = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::map<std::string, PowerLawFit> fits;  ///< keyed by statistic
};

inline constexpr std::string_view kRatioStatistic = "max_ratio_w21q_over_fq";
inline constexpr std::string_view kMarcinkiewiczStatistic = "marcinkiewicz_overall";

/// Ensemble ratio ||w||_{2,1,q} / ||f||_q for the periodic solve of seeded
/// random f, maximized over the ensemble. The same seed is reused for every
/// (lambda, T) so all parameter pairs see the same data.
double ensemble_ratio(const TorusDomain& domain, const OseenParams& params, int ensemble_size, std::uint64_t seed);

/// Throws kEmptySweep for empty lists or ensemble.
SweepResult constant_sweep(const TorusDomain& domain, double q, std::span<const double> lambdas,
                           std::span<const double> periods, int ensemble_size, std::uint64_t seed,
                           const ScanGrid& grid = {});

PowerLawFit fit_power_law(std::span<const SweepRecord> records);

struct ConvergenceRow {
  int N = 0;
  int Nt = 0;
  double residual = 0.0;        ///< spectral residual of solve_full
  double recovery_error = 0.0;  ///< max error against the manufactured (u, p)
  double fd_residual = 0.0;     ///< finite-difference residual of the solver output
  double fd_ratio = 0.0;        ///< previous fd_residual / this one (0 on the first row)
};

/// Requires at least two resolutions (kInvalidArgument otherwise).
std::vector<ConvergenceRow> convergence_study(std::string_view recipe, const TorusDomain& base,
                                              const OseenParams& params,
                                              std::span<const std::pair<int, int>> resolutions,
                                              std::uint64_t seed = 0);

}  // namespace tpoe
