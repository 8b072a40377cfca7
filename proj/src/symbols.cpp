// SPDX-License-Identifier: Apache-2.0
#include "tpoe/symbols.hpp"

#include <cmath>
#include <limits>

#include "tpoe/error.hpp"

namespace tpoe {

namespace {

double bump_g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double bump_g_prime(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

double smooth_step(double u) {
  const double a = bump_g(u);
  return a / (a + bump_g(1.0 - u));
}

double smooth_step_prime(double u) {
  const double a = bump_g(u);
  const double b = bump_g(1.0 - u);
  const double denom = a + b;
  return (bump_g_prime(u) * b + a * bump_g_prime(1.0 - u)) / (denom * denom);
}

double squared_norm(std::span<const double> xi) {
  double sq = 0.0;
  for (double c : xi) sq += c * c;
  return sq;
}

// Shared by M and m so the transference identity holds bit-for-bit.
std::complex<double> resolvent_quotient(double numerator, double xi_sq, double xi1, double eta, double lambda) {
  if (numerator == 0.0) return {0.0, 0.0};
  return numerator / std::complex<double>(xi_sq, eta - lambda * xi1);
}

}  // namespace

void OseenParams::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) fail(ErrorCode::kInvalidArgument, "period T must be positive");
  if (!std::isfinite(lambda)) fail(ErrorCode::kInvalidArgument, "lambda must be finite");
  if (!(q > 1.0) || !std::isfinite(q)) fail(ErrorCode::kInvalidExponent, "q must lie in (1, inf)");
}

double cutoff_chi(double eta, const CutoffSpec& spec) {
  const double a = std::abs(eta);
  if (a <= spec.inner) return 1.0;
  if (a >= spec.outer) return 0.0;
  return smooth_step((spec.outer - a) / (spec.outer - spec.inner));
}

double cutoff_chi_derivative(double eta, const CutoffSpec& spec) {
  const double a = std::abs(eta);
  if (a <= spec.inner || a >= spec.outer) return 0.0;
  const double width = spec.outer - spec.inner;
  const double sign = eta > 0.0 ? 1.0 : -1.0;
  return -sign / width * smooth_step_prime((spec.outer - a) / width);
}

double cutoff_complement(double eta, const CutoffSpec& spec) {
  const double a = std::abs(eta);
  if (a <= spec.inner) return 0.0;
  if (a >= spec.outer) return 1.0;
  const double width = spec.outer - spec.inner;
  // Both arguments are formed directly so neither side loses digits to 1 - u.
  const double near = bump_g((a - spec.inner) / width);
  return near / (near + bump_g((spec.outer - a) / width));
}

std::complex<double> evaluate_M(const DualIndex& idx, const OseenParams& params, const TorusDomain& domain) {
  const auto xi = wavevector(domain, idx);
  const double numerator = idx.k == 0 ? 0.0 : 1.0;
  return resolvent_quotient(numerator, squared_norm(xi), xi[0], temporal_frequency(idx.k, params.T), params.lambda);
}

std::complex<double> evaluate_m(std::span<const double> xi, double eta, const OseenParams& params,
                                const CutoffSpec& cutoff) {
  const double numerator = cutoff_complement((params.T / kTwoPi) * eta, cutoff);
  const double xi1 = xi.empty() ? 0.0 : xi[0];
  return resolvent_quotient(numerator, squared_norm(xi), xi1, eta, params.lambda);
}

EmbeddedPoint phi_embed(const DualIndex& idx, double T, const TorusDomain& domain) {
  return EmbeddedPoint{wavevector(domain, idx), temporal_frequency(idx.k, T)};
}

Matrix3 helmholtz_symbol(std::span<const double> xi) {
  Matrix3 out{};
  const std::size_t n = xi.size();
  const double sq = squared_norm(xi);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i][j] = (i == j ? 1.0 : 0.0) - (sq == 0.0 ? 0.0 : xi[i] * xi[j] / sq);
    }
  }
  return out;
}

std::complex<double> steady_symbol(std::span<const double> xi, double lambda) {
  const double sq = squared_norm(xi);
  if (sq == 0.0) fail(ErrorCode::kSingularMode, "steady operator has no inverse on the zero mode");
  return 1.0 / std::complex<double>(sq, -lambda * xi[0]);
}

std::array<std::complex<double>, kMaxDim> pressure_symbol(std::span<const double> xi) {
  std::array<std::complex<double>, kMaxDim> out{};
  const double sq = squared_norm(xi);
  if (sq == 0.0) return out;
  for (std::size_t i = 0; i < xi.size(); ++i) out[i] = std::complex<double>(0.0, -xi[i] / sq);
  return out;
}

}  // namespace tpoe
