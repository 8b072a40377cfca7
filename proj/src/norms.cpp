// SPDX-License-Identifier: Apache-2.0
#include "tpoe/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tpoe/error.hpp"
#include "tpoe/transform.hpp"

namespace tpoe {

namespace {

using MultiIndex = std::array<int, kMaxDim>;

// Time grid used for the steady norms, whose integrands do not depend on t.
constexpr int kSteadyTimePoints = 4;

struct Term {
  int component;
  MultiIndex alpha;
  int beta;
};

MultiIndex unit(int i) {
  MultiIndex a{0, 0, 0};
  a[static_cast<std::size_t>(i)] = 1;
  return a;
}

MultiIndex unit2(int i, int j) {
  MultiIndex a = unit(i);
  a[static_cast<std::size_t>(j)] += 1;
  return a;
}

int quadrature_factor(double q) { return q == 2.0 ? 1 : 2; }

void require_exponent(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) fail(ErrorCode::kInvalidExponent, "exponent must lie in (1, inf), got " + std::to_string(q));
}

// |D|^2 summed over the stacked derivative fields, sampled on the quadrature grid.
struct SquaredMagnitude {
  TorusDomain grid;
  std::vector<double> values;
};

SquaredMagnitude squared_magnitude(const SpectralField& spectrum, const std::vector<Term>& terms, int factor) {
  const TorusDomain& domain = spectrum.domain();
  TorusDomain grid = domain.refined(factor);
  // Time-constant spectra (steady norms) need no refinement in t.
  if (domain.Nt == kSteadyTimePoints) grid.Nt = domain.Nt;
  SquaredMagnitude out{grid, {}};
  out.values.assign(out.grid.total_points(), 0.0);
  for (const Term& term : terms) {
    SpectralField single(domain, 1);
    const auto src = spectrum.component(term.component);
    std::copy(src.begin(), src.end(), single.component(0).begin());
    const SpaceTimeField sampled = inverse(resample(spectral_derivative(single, term.alpha, term.beta), out.grid));
    const auto s = sampled.samples();
    for (std::size_t i = 0; i < s.size(); ++i) out.values[i] += s[i] * s[i];
  }
  return out;
}

// int |D|^q over space and the 1/T-normalized period.
double integral_of_power(const SquaredMagnitude& mag, double q) {
  double sum = 0.0;
  for (double v : mag.values) sum += std::pow(v, 0.5 * q);
  return sum * std::pow(mag.grid.dx(), mag.grid.n) / mag.grid.Nt;
}

double lq_of_terms(const SpectralField& spectrum, const std::vector<Term>& terms, double q) {
  return std::pow(integral_of_power(squared_magnitude(spectrum, terms, quadrature_factor(q)), q), 1.0 / q);
}

std::vector<Term> value_terms(int components) {
  std::vector<Term> terms;
  for (int c = 0; c < components; ++c) terms.push_back({c, {0, 0, 0}, 0});
  return terms;
}

std::vector<Term> gradient_terms(int n, int first, int last) {
  std::vector<Term> terms;
  for (int c = first; c < last; ++c)
    for (int i = 0; i < n; ++i) terms.push_back({c, unit(i), 0});
  return terms;
}

std::vector<Term> hessian_terms(int n, int components) {
  std::vector<Term> terms;
  for (int c = 0; c < components; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) terms.push_back({c, unit2(i, j), 0});
  return terms;
}

void require_time_constant(const SpaceTimeField& v) {
  const TorusDomain& d = v.domain();
  const std::size_t slice = d.spatial_points();
  double worst = 0.0;
  for (int c = 0; c < v.components(); ++c) {
    const auto comp = v.component(c);
    for (int t = 1; t < d.Nt; ++t)
      for (std::size_t x = 0; x < slice; ++x)
        worst = std::max(worst, std::abs(comp[static_cast<std::size_t>(t) * slice + x] - comp[x]));
  }
  if (worst > 1e-10 * v.max_abs()) fail(ErrorCode::kNotTimeConstant, "steady norms need a time-constant field");
}

// v restricted to its first time slice, on a minimal time grid.
SpaceTimeField steady_slice(const SpaceTimeField& v) {
  TorusDomain d = v.domain();
  if (d.Nt == kSteadyTimePoints) return v;
  d.Nt = kSteadyTimePoints;
  const std::size_t slice = d.spatial_points();
  SpaceTimeField out(d, v.components());
  for (int c = 0; c < v.components(); ++c) {
    const auto src = v.component(c);
    auto dst = out.component(c);
    for (int t = 0; t < d.Nt; ++t) std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(slice), dst.begin() + static_cast<std::ptrdiff_t>(t * slice));
  }
  return out;
}

}  // namespace

std::string_view norm_tag_name(NormTag tag) {
  switch (tag) {
    case NormTag::kLq: return "Lq";
    case NormTag::kSobolev21q: return "Sobolev21q";
    case NormTag::kSteadyStokes: return "SteadyStokes";
    case NormTag::kSteadyOseen: return "SteadyOseen";
    case NormTag::kSteadyOseen2D: return "SteadyOseen2D";
    case NormTag::kPressureXp: return "PressureXp";
  }
  return "Unknown";
}

void check_norm_kind(const NormKind& kind, int n, double lambda) {
  const double q = kind.q;
  require_exponent(q);
  const std::string name(norm_tag_name(kind.tag));
  auto reject = [&](const std::string& why) {
    fail(ErrorCode::kInvalidExponent, name + " with n=" + std::to_string(n) + ", q=" + std::to_string(q) + ": " + why);
  };
  switch (kind.tag) {
    case NormTag::kLq:
    case NormTag::kSobolev21q:
      return;
    case NormTag::kSteadyStokes:
      if (n < 3) reject("requires n >= 3");
      if (lambda != 0.0) reject("requires lambda == 0");
      if (q >= 0.5 * n) reject("requires q < n/2");
      return;
    case NormTag::kSteadyOseen:
      if (n < 3) reject("requires n >= 3");
      if (lambda == 0.0) reject("requires lambda != 0");
      if (q >= 0.5 * (n + 1)) reject("requires q < (n+1)/2");
      return;
    case NormTag::kSteadyOseen2D:
      if (n != 2) reject("requires n == 2");
      if (lambda == 0.0) reject("requires lambda != 0");
      if (q >= 1.5) reject("requires q < 3/2");
      return;
    case NormTag::kPressureXp:
      if (q >= n) reject("requires q < n");
      return;
  }
}

std::optional<NormTag> steady_kind_for(int n, double lambda, double q) {
  if (!(q > 1.0)) return std::nullopt;
  if (n >= 3 && lambda == 0.0 && q < 0.5 * n) return NormTag::kSteadyStokes;
  if (n >= 3 && lambda != 0.0 && q < 0.5 * (n + 1)) return NormTag::kSteadyOseen;
  if (n == 2 && lambda != 0.0 && q < 1.5) return NormTag::kSteadyOseen2D;
  return std::nullopt;
}

double lq_norm(const SpaceTimeField& f, double q) {
  require_exponent(q);
  return lq_of_terms(forward(f), value_terms(f.components()), q);
}

double sobolev_norm_21q(const SpaceTimeField& u, double q) {
  require_exponent(q);
  const SpectralField spectrum = forward(u);
  const int n = u.domain().n;
  const int factor = quadrature_factor(q);
  double total = 0.0;
  auto add = [&](const MultiIndex& alpha, int beta, double weight) {
    std::vector<Term> terms;
    for (int c = 0; c < u.components(); ++c) terms.push_back({c, alpha, beta});
    total += weight * integral_of_power(squared_magnitude(spectrum, terms, factor), q);
  };
  // alpha = 0 appears in both the spatial and the temporal sum.
  add({0, 0, 0}, 0, 2.0);
  for (int i = 0; i < n; ++i) add(unit(i), 0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) add(unit2(i, j), 0, 1.0);
  add({0, 0, 0}, 1, 1.0);
  return std::pow(total, 1.0 / q);
}

double steady_norm(const SpaceTimeField& v, const NormKind& kind, double lambda) {
  const int n = v.domain().n;
  require_vector_field(v, "steady_norm");
  if (kind.tag != NormTag::kSteadyStokes && kind.tag != NormTag::kSteadyOseen && kind.tag != NormTag::kSteadyOseen2D) {
    fail(ErrorCode::kInvalidArgument, "steady_norm needs a steady norm kind");
  }
  check_norm_kind(kind, n, lambda);
  require_time_constant(v);

  const double q = kind.q;
  const SpectralField s = forward(steady_slice(v));
  const std::vector<Term> values = value_terms(n);
  const std::vector<Term> grads = gradient_terms(n, 0, n);
  const double hessian = lq_of_terms(s, hessian_terms(n, n), q);

  if (kind.tag == NormTag::kSteadyStokes) {
    return lq_of_terms(s, values, n * q / (n - 2.0 * q)) + lq_of_terms(s, grads, n * q / (n - q)) + hessian;
  }

  const double a = std::abs(lambda);
  std::vector<Term> d1;
  for (int c = 0; c < n; ++c) d1.push_back({c, unit(0), 0});
  const double n1 = n + 1.0;
  double value = std::pow(a, 2.0 / n1) * lq_of_terms(s, values, n1 * q / (n1 - 2.0 * q)) +
                 std::pow(a, 1.0 / n1) * lq_of_terms(s, grads, n1 * q / (n1 - q)) + a * lq_of_terms(s, d1, q) + hessian;
  if (kind.tag == NormTag::kSteadyOseen2D) {
    value += a * lq_of_terms(s, gradient_terms(n, 1, 2), q);
    value += a * lq_of_terms(s, {{1, {0, 0, 0}, 0}}, 2.0 * q / (2.0 - q));
  }
  return value;
}

double pressure_norm(const SpaceTimeField& p, double q) {
  if (p.components() != 1) fail(ErrorCode::kDomainMismatch, "pressure_norm expects a scalar field");
  const int n = p.domain().n;
  check_norm_kind({NormTag::kPressureXp, q}, n, 0.0);
  const double r = n * q / (n - q);
  const SpectralField s = forward(p);

  // Time-outer, space-inner: (1/T) int ||p(.,t)||_r^q dt.
  const SquaredMagnitude mag = squared_magnitude(s, value_terms(1), quadrature_factor(q));
  const std::size_t slice = mag.grid.spatial_points();
  const double cell = std::pow(mag.grid.dx(), n);
  double outer = 0.0;
  for (int t = 0; t < mag.grid.Nt; ++t) {
    double inner = 0.0;
    for (std::size_t x = 0; x < slice; ++x) inner += std::pow(mag.values[static_cast<std::size_t>(t) * slice + x], 0.5 * r);
    outer += std::pow(inner * cell, q / r);
  }
  outer /= mag.grid.Nt;

  const double grad = integral_of_power(squared_magnitude(s, gradient_terms(n, 0, 1), quadrature_factor(q)), q);
  return std::pow(outer + grad, 1.0 / q);
}

}  // namespace tpoe
