// SPDX-License-Identifier: Apache-2.0
#include "tpoe/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "tpoe/error.hpp"
#include "tpoe/norms.hpp"
#include "tpoe/random_fields.hpp"
#include "tpoe/solver.hpp"

namespace tpoe {

namespace {

using Point = std::array<double, kMaxDim + 1>;

constexpr double kValidationFloor = 1e-6;

Point to_point(int n, std::span<const double> p) {
  if (p.size() != static_cast<std::size_t>(n + 1)) fail(ErrorCode::kInvalidArgument, "scan point must have n+1 coordinates");
  Point out{};
  std::copy(p.begin(), p.end(), out.begin());
  return out;
}

std::complex<double> m_at(int n, const Point& x, const OseenParams& params, const CutoffSpec& cutoff) {
  return evaluate_m(std::span<const double>(x.data(), static_cast<std::size_t>(n)), x[static_cast<std::size_t>(n)], params,
                    cutoff);
}

// Nested central differences over the selected variables, starting at `var`.
std::complex<double> nested_difference(int n, Point x, unsigned eps, int var, const Point& h, const OseenParams& params,
                                       const CutoffSpec& cutoff) {
  for (; var <= n; ++var) {
    if (eps & (1u << var)) break;
  }
  if (var > n) return m_at(n, x, params, cutoff);
  const auto v = static_cast<std::size_t>(var);
  const double center = x[v];
  Point plus = x;
  Point minus = x;
  plus[v] = center + h[v];
  minus[v] = center - h[v];
  return (nested_difference(n, plus, eps, var + 1, h, params, cutoff) -
          nested_difference(n, minus, eps, var + 1, h, params, cutoff)) /
         (2.0 * h[v]);
}

// Sample a field from a closed form g(component, x, t).
SpaceTimeField sample(const TorusDomain& d, int components, const std::function<double(int, const Point&, double)>& g) {
  SpaceTimeField out(d, components);
  const std::size_t slice = d.spatial_points();
  const auto N = static_cast<std::size_t>(d.N);
  for (int c = 0; c < components; ++c) {
    auto comp = out.component(c);
    for (int t = 0; t < d.Nt; ++t) {
      const double time = t * d.dt();
      for (std::size_t s = 0; s < slice; ++s) {
        Point x{};
        std::size_t rest = s;
        for (int dim = d.n - 1; dim >= 0; --dim) {
          x[static_cast<std::size_t>(dim)] = static_cast<double>(rest % N) * d.dx();
          rest /= N;
        }
        comp[static_cast<std::size_t>(t) * slice + s] = g(c, x, time);
      }
    }
  }
  return out;
}

// Flat index shifted by +-1 along an axis of the given stride and length (periodic).
std::size_t shifted(std::size_t i, std::size_t stride, std::size_t len, int delta) {
  const std::size_t coord = (i / stride) % len;
  const std::size_t target = (coord + len + static_cast<std::size_t>(static_cast<long>(len) + delta)) % len;
  return i - coord * stride + target * stride;
}

double relative_max(const SpaceTimeField& err, double scale) {
  const double e = err.max_abs();
  return scale > 0.0 ? e / scale : e;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::vector<double>> scan_points(int n, const ScanGrid& grid) {
  if (n != 2 && n != 3) fail(ErrorCode::kInvalidArgument, "scan needs n in {2,3}");
  if (grid.shells < 1 || grid.directions < 0 || !(grid.r_min > 0.0) || !(grid.r_max >= grid.r_min)) return {};

  const int dim = n + 1;
  std::vector<std::vector<double>> directions;
  for (int a = 0; a < dim; ++a) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
      e[static_cast<std::size_t>(a)] = sign;
      directions.push_back(e);
    }
  }
  Rng rng(grid.seed);
  for (int i = 0; i < grid.directions; ++i) {
    std::vector<double> e(static_cast<std::size_t>(dim));
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& c : e) {
        c = rng.normal();
        norm += c * c;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& c : e) c /= norm;
    directions.push_back(e);
    e[0] = -e[0];
    directions.push_back(e);
  }

  std::vector<std::vector<double>> points;
  points.reserve(directions.size() * static_cast<std::size_t>(grid.shells));
  const double ratio = grid.shells > 1 ? std::log(grid.r_max / grid.r_min) / (grid.shells - 1) : 0.0;
  for (int s = 0; s < grid.shells; ++s) {
    const double r = grid.r_min * std::exp(ratio * s);
    for (const auto& e : directions) {
      std::vector<double> p(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) p[i] = r * e[i];
      points.push_back(std::move(p));
    }
  }
  return points;
}

std::complex<double> mixed_partial_fd(int n, std::span<const double> point, unsigned eps, const OseenParams& params,
                                      const CutoffSpec& cutoff) {
  const Point x = to_point(n, point);
  if (eps == 0) return m_at(n, x, params, cutoff);
  const int order = std::popcount(eps);
  // 1e-4 for first derivatives; higher orders balance truncation against
  // the (2h)^-order amplification of rounding.
  const double base = order <= 1 ? 1e-4 : std::pow(10.0, -16.0 / (order + 4));
  // Steps scale with the coordinate, capped by the local length scale
  // |D| / |d_i D| of the denominator D = |xi|^2 + i(eta - lambda xi_1), which
  // shrinks near the origin along eta = lambda xi_1. The eta step also
  // follows the cutoff, which varies on the scale 2pi/T.
  double xi_sq = 0.0;
  for (int j = 0; j < n; ++j) xi_sq += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
  const double d_abs = std::abs(std::complex<double>(xi_sq, x[static_cast<std::size_t>(n)] - params.lambda * x[0]));
  Point h{};
  for (int i = 0; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    double grad = 1.0;
    double scale = std::max(1.0, std::abs(x[k]));
    if (i < n) {
      grad = std::abs(std::complex<double>(2.0 * x[k], i == 0 ? -params.lambda : 0.0));
    } else {
      scale = std::max(std::min(1.0, kTwoPi / params.T), std::abs(x[k]));
      // Inside the transition band, exp(-1/u) varies on the scale u^2. Below
      // u = 1/40 it is under 1e-17 and no longer resolves in double.
      const double width = cutoff.outer - cutoff.inner;
      const double u = (cutoff.outer - params.T / kTwoPi * std::abs(x[k])) / width;
      if (u > 0.0 && u < 1.0) {
        const double edge = std::max(std::min(u, 1.0 - u), 1.0 / 40.0);
        scale = std::min(scale, edge * edge * width * kTwoPi / params.T);
      }
    }
    if (grad > 0.0 && d_abs > 0.0) scale = std::min(scale, d_abs / grad);
    h[k] = base * scale;
  }
  Point h_half = h;
  for (double& v : h_half) v *= 0.5;
  const std::complex<double> coarse = nested_difference(n, x, eps, 0, h, params, cutoff);
  const std::complex<double> fine = nested_difference(n, x, eps, 0, h_half, params, cutoff);
  return (4.0 * fine - coarse) / 3.0;
}

std::complex<double> closed_form_partial(int n, std::span<const double> point, int variable, const OseenParams& params,
                                         const CutoffSpec& cutoff) {
  const Point x = to_point(n, point);
  if (variable < 0 || variable > n) fail(ErrorCode::kInvalidArgument, "variable out of range");
  const double eta = x[static_cast<std::size_t>(n)];
  double xi_sq = 0.0;
  for (int j = 0; j < n; ++j) xi_sq += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
  const double s = params.T / kTwoPi;
  const double numerator = cutoff_complement(s * eta, cutoff);
  const std::complex<double> denom(xi_sq, eta - params.lambda * x[0]);
  const std::complex<double> I(0.0, 1.0);

  if (variable == n) {
    const double dnum = -s * cutoff_chi_derivative(s * eta, cutoff);
    if (numerator == 0.0 && dnum == 0.0) return {0.0, 0.0};
    return dnum / denom - numerator * I / (denom * denom);
  }
  if (numerator == 0.0) return {0.0, 0.0};
  std::complex<double> ddenom(2.0 * x[static_cast<std::size_t>(variable)], 0.0);
  if (variable == 0) ddenom -= I * params.lambda;
  return -numerator * ddenom / (denom * denom);
}

double marcinkiewicz_term(int n, std::span<const double> point, unsigned eps, const OseenParams& params,
                          const CutoffSpec& cutoff) {
  double weight = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (eps & (1u << j)) weight *= std::abs(point[static_cast<std::size_t>(j)]);
  }
  if (weight == 0.0) return 0.0;
  return weight * std::abs(mixed_partial_fd(n, point, eps, params, cutoff));
}

MarcinkiewiczReport marcinkiewicz_scan(int n, const OseenParams& params, const ScanGrid& grid,
                                       const CutoffSpec& cutoff) {
  params.validate();
  const auto points = scan_points(n, grid);
  if (points.empty()) fail(ErrorCode::kInvalidGrid, "Marcinkiewicz scan grid is empty");

  MarcinkiewiczReport report;
  report.n = n;
  report.params = params;
  report.grid = grid;
  report.cutoff = cutoff;
  report.points = points.size();
  const unsigned count = 1u << (n + 1);
  report.per_epsilon.assign(count, 0.0);

  struct Check {
    double error;  // |x_j| |fd - closed form|
    double scale;  // max(|m|, |x_j closed form|)
  };
  std::vector<Check> checks;
  double global_scale = 0.0;
  for (const auto& p : points) {
    for (unsigned eps = 0; eps < count; ++eps) {
      const double value = marcinkiewicz_term(n, p, eps, params, cutoff);
      report.per_epsilon[eps] = std::max(report.per_epsilon[eps], value);
    }
    const double m_abs = std::abs(mixed_partial_fd(n, p, 0, params, cutoff));
    for (int j = 0; j <= n; ++j) {
      const double xj = std::abs(p[static_cast<std::size_t>(j)]);
      const std::complex<double> fd = mixed_partial_fd(n, p, 1u << j, params, cutoff);
      const std::complex<double> cf = closed_form_partial(n, p, j, params, cutoff);
      const Check c{xj * std::abs(fd - cf), std::max(m_abs, xj * std::abs(cf))};
      global_scale = std::max(global_scale, c.scale);
      checks.push_back(c);
    }
  }
  // Relative error, except that values more than six decades below the
  // largest term are compared against that floor. On the flat shoulder of
  // the cutoff both sides are ~1e-100 and a pure ratio is meaningless.
  const double floor = kValidationFloor * global_scale;
  for (const Check& c : checks) {
    const double scale = std::max(c.scale, floor);
    if (scale > 0.0) report.fd_validation_error = std::max(report.fd_validation_error, c.error / scale);
  }
  report.overall = *std::max_element(report.per_epsilon.begin(), report.per_epsilon.end());
  return report;
}

// ---------------------------------------------------------------------------

double transference_check(std::span<const DualIndex> indices, const TorusDomain& domain, const OseenParams& params,
                          const CutoffSpec& cutoff) {
  double worst = 0.0;
  const auto n = static_cast<std::size_t>(domain.n);
  for (const DualIndex& idx : indices) {
    const EmbeddedPoint e = phi_embed(idx, params.T, domain);
    const std::complex<double> lhs = evaluate_M(idx, params, domain);
    const std::complex<double> rhs = evaluate_m(std::span<const double>(e.xi.data(), n), e.eta, params, cutoff);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double transference_check(const TorusDomain& domain, const OseenParams& params, const CutoffSpec& cutoff) {
  domain.validate();
  params.validate();
  std::vector<DualIndex> all(domain.total_points());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = dual_index_at(domain, i);
  return transference_check(all, domain, params, cutoff);
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& recipe_catalog() {
  static const std::vector<std::string> catalog{"zero", "single-mode", "steady-periodic-mix", "random"};
  return catalog;
}

ManufacturedCase manufactured_case(std::string_view recipe, const TorusDomain& domain, const OseenParams& params,
                                   std::uint64_t seed) {
  domain.validate();
  const double a = domain.xi_unit();
  const double b = domain.eta_unit();
  const int n = domain.n;

  ManufacturedCase out;
  if (recipe == "zero") {
    out.u = SpaceTimeField(domain, n);
    out.p = SpaceTimeField(domain, 1);
  } else if (recipe == "single-mode") {
    // u = cos(a x1 + b t) e2, p = 0
    out.u = sample(domain, n, [&](int c, const Point& x, double t) { return c == 1 ? std::cos(a * x[0] + b * t) : 0.0; });
    out.p = SpaceTimeField(domain, 1);
  } else if (recipe == "steady-periodic-mix") {
    // steady: cos(a x2) e1; periodic: sin(a x1 + b t) e2 + cos(a(x1 + x2) - b t)(e1 - e2)
    out.u = sample(domain, n, [&](int c, const Point& x, double t) {
      const double travelling = std::cos(a * (x[0] + x[1]) - b * t);
      if (c == 0) return std::cos(a * x[1]) + travelling;
      if (c == 1) return std::sin(a * x[0] + b * t) - travelling;
      return std::cos(a * x[0]);  // x3 component, independent of x3
    });
    out.p = sample(domain, 1, [&](int, const Point& x, double t) {
      return std::sin(a * x[0]) * std::cos(a * x[1]) + std::cos(a * x[0]) * std::sin(b * t);
    });
  } else if (recipe == "random") {
    Rng rng(seed);
    RandomFieldSpec velocity;
    velocity.max_spatial_mode = 2;
    velocity.max_time_mode = 2;
    velocity.mean = MeanPolicy::kDropSteady;
    out.u = random_field(domain, n, velocity, rng);
    RandomFieldSpec pressure = velocity;
    pressure.mean = MeanPolicy::kDropAll;
    out.p = random_field(domain, 1, pressure, rng);
  } else {
    fail(ErrorCode::kUnknownRecipe, "unknown recipe '" + std::string(recipe) + "'");
  }
  out.f = apply_operator(out.u, out.p, params);
  return out;
}

SpaceTimeField fd_apply_operator(const SpaceTimeField& u, const SpaceTimeField& p, const OseenParams& params) {
  require_vector_field(u, "fd_apply_operator");
  if (p.components() != 1 || !(p.domain() == u.domain())) fail(ErrorCode::kDomainMismatch, "pressure shape mismatch");
  const TorusDomain& d = u.domain();
  const auto N = static_cast<std::size_t>(d.N);
  const auto Nt = static_cast<std::size_t>(d.Nt);
  const std::size_t slice = d.spatial_points();
  std::array<std::size_t, kMaxDim> stride{};
  for (int dim = 0; dim < d.n; ++dim) {
    std::size_t s = 1;
    for (int k = dim + 1; k < d.n; ++k) s *= N;
    stride[static_cast<std::size_t>(dim)] = s;
  }
  const double h = d.dx();
  const double tau = d.dt();
  const auto pres = p.component(0);

  SpaceTimeField out(d, d.n);
  for (int c = 0; c < d.n; ++c) {
    const auto uc = u.component(c);
    auto oc = out.component(c);
    const std::size_t sc = stride[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < uc.size(); ++i) {
      const double dt = (uc[shifted(i, slice, Nt, 1)] - uc[shifted(i, slice, Nt, -1)]) / (2.0 * tau);
      double lap = 0.0;
      for (int dim = 0; dim < d.n; ++dim) {
        const std::size_t s = stride[static_cast<std::size_t>(dim)];
        lap += (uc[shifted(i, s, N, 1)] - 2.0 * uc[i] + uc[shifted(i, s, N, -1)]) / (h * h);
      }
      const double d1 = (uc[shifted(i, stride[0], N, 1)] - uc[shifted(i, stride[0], N, -1)]) / (2.0 * h);
      const double grad_p = (pres[shifted(i, sc, N, 1)] - pres[shifted(i, sc, N, -1)]) / (2.0 * h);
      oc[i] = dt - lap - params.lambda * d1 + grad_p;
    }
  }
  return out;
}

double roundtrip_verify(const TorusDomain& domain, const OseenParams& params, int ensemble_size, std::uint64_t seed) {
  if (ensemble_size < 1) fail(ErrorCode::kInvalidArgument, "ensemble size must be >= 1");
  domain.validate();
  Rng rng(seed);
  RandomFieldSpec spec;
  spec.max_spatial_mode = std::min(4, domain.N / 2 - 1);
  spec.max_time_mode = std::min(4, domain.Nt / 2 - 1);
  spec.steady = false;
  spec.mean = MeanPolicy::kKeep;

  const SpaceTimeField zero_p(domain, 1);
  double worst = 0.0;
  for (int member = 0; member < ensemble_size; ++member) {
    SpaceTimeField w = random_field(domain, domain.n, spec, rng);
    while (w.max_abs() == 0.0) w = random_field(domain, domain.n, spec, rng);
    const SpaceTimeField back = solve_time_periodic(apply_operator(w, zero_p, params), params);
    worst = std::max(worst, relative_max(back - w, w.max_abs()));
  }
  return worst;
}

// ---------------------------------------------------------------------------

double ensemble_ratio(const TorusDomain& domain, const OseenParams& params, int ensemble_size, std::uint64_t seed) {
  if (ensemble_size < 1) fail(ErrorCode::kEmptySweep, "ensemble must not be empty");
  Rng rng(seed);
  RandomFieldSpec spec;
  spec.max_spatial_mode = std::min(3, domain.N / 2 - 1);
  spec.max_time_mode = std::min(3, domain.Nt / 2 - 1);
  spec.steady = false;
  spec.mean = MeanPolicy::kKeep;
  double worst = 0.0;
  for (int member = 0; member < ensemble_size; ++member) {
    SpaceTimeField f = random_field(domain, domain.n, spec, rng);
    while (f.max_abs() == 0.0) f = random_field(domain, domain.n, spec, rng);
    const SpaceTimeField w = solve_time_periodic(f, params);
    worst = std::max(worst, sobolev_norm_21q(w, params.q) / lq_norm(f, params.q));
  }
  return worst;
}

PowerLawFit fit_power_law(std::span<const SweepRecord> records) {
  PowerLawFit fit;
  fit.samples = static_cast<int>(records.size());
  if (records.empty()) return fit;

  using Regressor = std::function<double(const SweepRecord&)>;
  std::vector<std::pair<std::string, Regressor>> candidates{
      {"log(1+|lambda|)", [](const SweepRecord& r) { return std::log1p(std::abs(r.lambda)); }},
      {"log(T)", [](const SweepRecord& r) { return std::log(r.T); }},
  };
  std::vector<Regressor> columns{[](const SweepRecord&) { return 1.0; }};
  fit.regressors.push_back("1");
  for (auto& [name, g] : candidates) {
    const double first = g(records.front());
    const bool varies = std::any_of(records.begin(), records.end(), [&](const SweepRecord& r) { return g(r) != first; });
    if (varies) {
      fit.regressors.push_back(name);
      columns.push_back(g);
    }
  }

  // Normal equations, solved by Gaussian elimination with partial pivoting.
  const std::size_t k = columns.size();
  std::vector<std::vector<double>> A(k, std::vector<double>(k + 1, 0.0));
  for (const SweepRecord& r : records) {
    const double y = std::log(r.value);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) A[i][j] += columns[i](r) * columns[j](r);
      A[i][k] += columns[i](r) * y;
    }
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < k; ++row)
      if (std::abs(A[row][col]) > std::abs(A[pivot][col])) pivot = row;
    std::swap(A[col], A[pivot]);
    if (A[col][col] == 0.0) continue;
    for (std::size_t row = 0; row < k; ++row) {
      if (row == col) continue;
      const double factor = A[row][col] / A[col][col];
      for (std::size_t j = col; j <= k; ++j) A[row][j] -= factor * A[col][j];
    }
  }
  fit.coefficients.resize(k);
  for (std::size_t i = 0; i < k; ++i) fit.coefficients[i] = A[i][i] == 0.0 ? 0.0 : A[i][k] / A[i][i];

  double sq = 0.0;
  for (const SweepRecord& r : records) {
    double pred = 0.0;
    for (std::size_t i = 0; i < k; ++i) pred += fit.coefficients[i] * columns[i](r);
    const double e = std::log(r.value) - pred;
    sq += e * e;
  }
  fit.rms_residual = std::sqrt(sq / static_cast<double>(records.size()));
  return fit;
}

SweepResult constant_sweep(const TorusDomain& domain, double q, std::span<const double> lambdas,
                           std::span<const double> periods, int ensemble_size, std::uint64_t seed,
                           const ScanGrid& grid) {
  if (lambdas.empty() || periods.empty() || ensemble_size < 1) {
    fail(ErrorCode::kEmptySweep, "sweep needs non-empty lambda and T lists and a non-empty ensemble");
  }
  domain.validate();
  SweepResult result;
  for (double T : periods) {
    TorusDomain d = domain;
    d.T = T;
    for (double lambda : lambdas) {
      const OseenParams params{lambda, T, q};
      params.validate();
      SweepRecord base{lambda, T, q, d.N, d.Nt, "", 0.0, seed};
      SweepRecord ratio = base;
      ratio.statistic = std::string(kRatioStatistic);
      ratio.value = ensemble_ratio(d, params, ensemble_size, seed);
      result.records.push_back(ratio);
      SweepRecord scan = base;
      scan.statistic = std::string(kMarcinkiewiczStatistic);
      scan.value = marcinkiewicz_scan(d.n, params, grid).overall;
      result.records.push_back(scan);
    }
  }
  for (std::string_view stat : {kRatioStatistic, kMarcinkiewiczStatistic}) {
    std::vector<SweepRecord> subset;
    std::copy_if(result.records.begin(), result.records.end(), std::back_inserter(subset),
                 [&](const SweepRecord& r) { return r.statistic == stat; });
    result.fits[std::string(stat)] = fit_power_law(subset);
  }
  return result;
}

std::vector<ConvergenceRow> convergence_study(std::string_view recipe, const TorusDomain& base,
                                              const OseenParams& params,
                                              std::span<const std::pair<int, int>> resolutions, std::uint64_t seed) {
  if (resolutions.size() < 2) fail(ErrorCode::kInvalidArgument, "convergence study needs at least two resolutions");
  const auto& catalog = recipe_catalog();
  if (std::find(catalog.begin(), catalog.end(), recipe) == catalog.end()) {
    fail(ErrorCode::kUnknownRecipe, "unknown recipe '" + std::string(recipe) + "'");
  }
  std::vector<ConvergenceRow> rows;
  for (const auto& [N, Nt] : resolutions) {
    TorusDomain d = base;
    d.N = N;
    d.Nt = Nt;
    const ManufacturedCase mc = manufactured_case(recipe, d, params, seed);
    const SolutionBundle sol = solve_full(mc.f, params);

    ConvergenceRow row;
    row.N = N;
    row.Nt = Nt;
    row.residual = sol.residual_norm;
    const double scale = std::max(mc.u.max_abs(), mc.p.max_abs());
    row.recovery_error = std::max(relative_max(sol.u - mc.u, scale), relative_max(sol.p - mc.p, scale));
    row.fd_residual = relative_max(fd_apply_operator(sol.u, sol.p, params) - mc.f, mc.f.max_abs());
    if (!rows.empty() && row.fd_residual > 0.0) row.fd_ratio = rows.back().fd_residual / row.fd_residual;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tpoe
