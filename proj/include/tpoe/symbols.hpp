// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <span>

#include "tpoe/domain.hpp"

namespace tpoe {

/// Linearization constants. lambda == 0 selects Stokes, lambda != 0 Oseen.
struct OseenParams {
  double lambda = 0.0;
  double T = kTwoPi;
  double q = 2.0;

  /// Throws kInvalidArgument unless T > 0, lambda finite; kInvalidExponent
  /// unless 1 < q < inf.
  void validate() const;
};

/// Smooth even bump: 1 on |eta| <= inner, 0 on |eta| >= outer.
struct CutoffSpec {
  double inner = 0.5;
  double outer = 1.0;
};

/// eta = (2pi/T) k. Every symbol that needs the temporal frequency of an
/// integer index goes through this function so the arithmetic is shared.
inline double temporal_frequency(int k, double T) { return (kTwoPi / T) * static_cast<double>(k); }

/// Cut-off chi. With g(t) = exp(-1/t) (t > 0) and s(t) = g(t)/(g(t)+g(1-t)),
/// chi(eta) = s((outer - |eta|)/(outer - inner)) on the transition band.
double cutoff_chi(double eta, const CutoffSpec& spec = {});

/// 1 - chi(eta), evaluated without cancellation near the inner edge.
double cutoff_complement(double eta, const CutoffSpec& spec = {});

/// d chi / d eta.
double cutoff_chi_derivative(double eta, const CutoffSpec& spec = {});

/// Time-periodic solution multiplier
///   M(xi,k) = (1 - delta(k)) / (|xi|^2 + i((2pi/T)k - lambda xi_1)),
/// with delta the exact integer test k == 0.
std::complex<double> evaluate_M(const DualIndex& idx, const OseenParams& params, const TorusDomain& domain);

/// Euclidean multiplier
///   m(xi,eta) = (1 - chi((T/2pi) eta)) / (|xi|^2 + i(eta - lambda xi_1)).
std::complex<double> evaluate_m(std::span<const double> xi, double eta, const OseenParams& params,
                                const CutoffSpec& cutoff = {});

struct EmbeddedPoint {
  std::array<double, kMaxDim> xi{0.0, 0.0, 0.0};
  double eta = 0.0;
};

/// Phi(xi,k) = (xi, (2pi/T)k).
EmbeddedPoint phi_embed(const DualIndex& idx, double T, const TorusDomain& domain);

using Matrix3 = std::array<std::array<double, kMaxDim>, kMaxDim>;

/// I - xi xi^T / |xi|^2 on the leading n x n block; identity at xi = 0.
Matrix3 helmholtz_symbol(std::span<const double> xi);

/// 1 / (|xi|^2 - i lambda xi_1). Throws kSingularMode at xi = 0.
std::complex<double> steady_symbol(std::span<const double> xi, double lambda);

/// Covector -i xi / |xi|^2 so that p^ = pressure_symbol(xi) . f^; zero at xi = 0.
std::array<std::complex<double>, kMaxDim> pressure_symbol(std::span<const double> xi);

}  // namespace tpoe
