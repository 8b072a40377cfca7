// SPDX-License-Identifier: Apache-2.0
#include "tpoe/solver.hpp"

#include <cmath>
#include <string>

#include "tpoe/error.hpp"
#include "tpoe/transform.hpp"

namespace tpoe {

namespace {

void require_matching_period(const TorusDomain& domain, const OseenParams& params) {
  params.validate();
  if (std::abs(params.T - domain.T) > 1e-12 * domain.T) {
    fail(ErrorCode::kDomainMismatch, "OseenParams.T differs from the domain period");
  }
}

double relative_to(double value, double scale) { return scale > 0.0 ? value / scale : value; }

// Physical time mean, replicated over all time slices.
SpaceTimeField physical_time_mean(const SpaceTimeField& f) {
  const TorusDomain& d = f.domain();
  const std::size_t slice = d.spatial_points();
  SpaceTimeField out(d, f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t x = 0; x < slice; ++x) {
      double sum = 0.0;
      for (int t = 0; t < d.Nt; ++t) sum += src[static_cast<std::size_t>(t) * slice + x];
      const double mean = sum / d.Nt;
      for (int t = 0; t < d.Nt; ++t) dst[static_cast<std::size_t>(t) * slice + x] = mean;
    }
  }
  return out;
}

SpectralField periodic_kernel(const SpectralField& rhs, const OseenParams& params) {
  const TorusDomain& domain = rhs.domain();
  SpectralField out(domain, rhs.components());
  for (std::size_t i = 0; i < rhs.modes(); ++i) {
    const Complex M = evaluate_M(dual_index_at(domain, i), params, domain);
    for (int c = 0; c < rhs.components(); ++c) out.component(c)[i] = M * rhs.component(c)[i];
  }
  return out;
}

SpectralField steady_kernel(const SpectralField& rhs, double lambda) {
  const TorusDomain& domain = rhs.domain();
  const ModeTable modes = build_mode_table(domain);
  SpectralField out(domain, rhs.components());
  for (std::size_t i = 0; i < rhs.modes(); ++i) {
    if (modes.index[i].k != 0 || modes.xi_sq[i] == 0.0) continue;
    const Complex s = steady_symbol(std::span<const double>(modes.xi[i].data(), static_cast<std::size_t>(domain.n)), lambda);
    for (int c = 0; c < rhs.components(); ++c) out.component(c)[i] = s * rhs.component(c)[i];
  }
  return out;
}

SpectralField pressure_kernel(const SpectralField& rhs) {
  const TorusDomain& domain = rhs.domain();
  const ModeTable modes = build_mode_table(domain);
  SpectralField out(domain, 1);
  for (std::size_t i = 0; i < rhs.modes(); ++i) {
    const auto sym = pressure_symbol(std::span<const double>(modes.xi[i].data(), static_cast<std::size_t>(domain.n)));
    Complex p{};
    for (int c = 0; c < domain.n; ++c) p += sym[static_cast<std::size_t>(c)] * rhs.component(c)[i];
    out.component(0)[i] = p;
  }
  return out;
}

SpectralField operator_kernel(const SpectralField& u, const SpectralField& p, const OseenParams& params) {
  const TorusDomain& domain = u.domain();
  const ModeTable modes = build_mode_table(domain);
  SpectralField out(domain, domain.n);
  for (std::size_t i = 0; i < u.modes(); ++i) {
    const Complex symbol(modes.xi_sq[i], modes.eta[i] - params.lambda * modes.xi[i][0]);
    for (int c = 0; c < domain.n; ++c) {
      out.component(c)[i] = symbol * u.component(c)[i] + Complex(0.0, modes.xi[i][static_cast<std::size_t>(c)]) * p.component(0)[i];
    }
  }
  return out;
}

double steady_mean_defect(const SpectralField& steady) {
  const DualIndex zero{};
  const double volume = std::pow(steady.domain().L, steady.domain().n);
  double worst = 0.0;
  for (int c = 0; c < steady.components(); ++c) worst = std::max(worst, std::abs(steady.at(c, zero)) / volume);
  return worst;
}

}  // namespace

SpectralField apply_time_average(const SpectralField& f, TimeProjection which) {
  SpectralField out = f;
  const TorusDomain& domain = f.domain();
  for (std::size_t i = 0; i < f.modes(); ++i) {
    const bool mean_mode = dual_index_at(domain, i).k == 0;
    const bool keep = which == TimeProjection::kMean ? mean_mode : !mean_mode;
    if (keep) continue;
    for (int c = 0; c < f.components(); ++c) out.component(c)[i] = Complex{};
  }
  return out;
}

SpaceTimeField apply_time_average(const SpaceTimeField& f, TimeProjection which) {
  return inverse(apply_time_average(forward(f), which));
}

SpectralField apply_helmholtz(const SpectralField& f) {
  const TorusDomain& domain = f.domain();
  if (f.components() != domain.n) fail(ErrorCode::kDomainMismatch, "Helmholtz projection expects a vector field");
  const ModeTable modes = build_mode_table(domain);
  SpectralField out(domain, domain.n);
  const auto n = static_cast<std::size_t>(domain.n);
  for (std::size_t i = 0; i < f.modes(); ++i) {
    const Matrix3 h = helmholtz_symbol(std::span<const double>(modes.xi[i].data(), n));
    for (std::size_t r = 0; r < n; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < n; ++c) acc += h[r][c] * f.component(static_cast<int>(c))[i];
      out.component(static_cast<int>(r))[i] = acc;
    }
  }
  return out;
}

SpaceTimeField apply_helmholtz(const SpaceTimeField& f) {
  require_vector_field(f, "apply_helmholtz");
  return inverse(apply_helmholtz(forward(f)));
}

SpaceTimeField solve_time_periodic(const SpaceTimeField& f, const OseenParams& params, const Tolerances& tol) {
  require_vector_field(f, "solve_time_periodic");
  require_matching_period(f.domain(), params);
  const double scale = f.max_abs();
  const double mean_part = physical_time_mean(f).max_abs();
  if (mean_part > tol.precondition * scale) {
    fail(ErrorCode::kNotPurelyPeriodic, "time mean of the data is " + std::to_string(relative_to(mean_part, scale)) +
                                            " relative to its max norm");
  }
  const SpectralField spectrum = forward(f);
  const double div = divergence_ratio(spectrum);
  if (div > tol.precondition) {
    fail(ErrorCode::kNonSolenoidal, "relative spectral divergence " + std::to_string(div));
  }
  return inverse(periodic_kernel(apply_helmholtz(spectrum), params));
}

SpaceTimeField solve_steady(const SpaceTimeField& f, double lambda, const Tolerances& tol) {
  require_vector_field(f, "solve_steady");
  if (!std::isfinite(lambda)) fail(ErrorCode::kInvalidArgument, "lambda must be finite");
  const double scale = f.max_abs();
  const double oscillating = (f - physical_time_mean(f)).max_abs();
  if (oscillating > tol.precondition * scale) {
    fail(ErrorCode::kNotTimeConstant, "steady data varies in time");
  }
  const SpectralField spectrum = forward(f);
  if (divergence_ratio(spectrum) > tol.precondition) fail(ErrorCode::kNonSolenoidal, "steady data is not solenoidal");
  const double mean = steady_mean_defect(spectrum);
  if (mean > tol.precondition * scale) {
    fail(ErrorCode::kIncompatibleMean, "spatial mean " + std::to_string(mean) + " has no inverse on the torus");
  }
  return inverse(steady_kernel(spectrum, lambda));
}

SpaceTimeField recover_pressure(const SpaceTimeField& f) {
  require_vector_field(f, "recover_pressure");
  return inverse(pressure_kernel(forward(f)));
}

SpaceTimeField apply_operator(const SpaceTimeField& u, const SpaceTimeField& p, const OseenParams& params) {
  require_vector_field(u, "apply_operator");
  if (p.components() != 1 || !(p.domain() == u.domain())) {
    fail(ErrorCode::kDomainMismatch, "apply_operator: pressure must be a scalar field on the velocity domain");
  }
  require_matching_period(u.domain(), params);
  return inverse(operator_kernel(forward(u), forward(p), params));
}

SolutionBundle solve_full(const SpaceTimeField& f, const OseenParams& params, const SolveOptions& options) {
  require_vector_field(f, "solve_full");
  const TorusDomain& domain = f.domain();
  require_matching_period(domain, params);
  for (NormTag tag : options.requested_norms) check_norm_kind({tag, params.q}, domain.n, params.lambda);

  const double scale = f.max_abs();
  const SpectralField spectrum = forward(f);
  const SpectralField solenoidal = apply_helmholtz(spectrum);
  const SpectralField steady = apply_time_average(solenoidal, TimeProjection::kMean);
  const SpectralField periodic = apply_time_average(solenoidal, TimeProjection::kOscillating);

  const double mean = steady_mean_defect(steady);
  if (mean > options.tol.precondition * scale) {
    fail(ErrorCode::kIncompatibleMean,
         "steady solenoidal data has spatial mean " + std::to_string(mean) + "; no torus solution exists");
  }

  const SpectralField v_hat = steady_kernel(steady, params.lambda);
  const SpectralField w_hat = periodic_kernel(periodic, params);
  const SpectralField p_hat = pressure_kernel(spectrum);
  SpectralField u_hat = v_hat;
  u_hat += w_hat;

  SolutionBundle out;
  out.v = inverse(v_hat);
  out.w = inverse(w_hat);
  out.u = out.v + out.w;
  out.p = inverse(p_hat);

  const SpaceTimeField residual = inverse(operator_kernel(forward(out.u), forward(out.p), params)) - f;
  out.residual_norm = relative_to(residual.max_abs(), scale);

  const double q = params.q;
  auto& report = out.norm_report;
  report["f.Lq"] = lq_norm(f, q);
  report["u.Lq"] = lq_norm(out.u, q);
  report["v.Lq"] = lq_norm(out.v, q);
  report["w.Lq"] = lq_norm(out.w, q);
  report["p.Lq"] = lq_norm(out.p, q);
  report["w.Sobolev21q"] = sobolev_norm_21q(out.w, q);
  if (const auto kind = steady_kind_for(domain.n, params.lambda, q)) {
    report["v." + std::string(norm_tag_name(*kind))] = steady_norm(out.v, {*kind, q}, params.lambda);
  }
  if (q < domain.n) report["p.PressureXp"] = pressure_norm(out.p, q);
  return out;
}

}  // namespace tpoe
