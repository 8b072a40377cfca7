// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tpoe/domain.hpp"

namespace tpoe {

using Complex = std::complex<double>;

/// Real scalar or vector field sampled on the physical space-time grid.
/// Storage is component-major; each component is laid out like the domain.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  /// Zero field.
  SpaceTimeField(const TorusDomain& domain, int components);
  SpaceTimeField(const TorusDomain& domain, int components, std::vector<double> samples);

  [[nodiscard]] const TorusDomain& domain() const { return domain_; }
  [[nodiscard]] int components() const { return components_; }
  [[nodiscard]] std::size_t points() const { return domain_.total_points(); }

  [[nodiscard]] std::span<double> component(int c);
  [[nodiscard]] std::span<const double> component(int c) const;
  [[nodiscard]] std::span<double> samples() { return samples_; }
  [[nodiscard]] std::span<const double> samples() const { return samples_; }

  /// Max absolute sample over all components.
  [[nodiscard]] double max_abs() const;

  SpaceTimeField& operator+=(const SpaceTimeField& other);
  SpaceTimeField& operator-=(const SpaceTimeField& other);
  SpaceTimeField& operator*=(double factor);

 private:
  TorusDomain domain_;
  int components_ = 0;
  std::vector<double> samples_;
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator*(double factor, SpaceTimeField a);

/// Complex coefficients on the truncated dual grid, in FFT slot order with
/// the same layout as the physical samples.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const TorusDomain& domain, int components);

  [[nodiscard]] const TorusDomain& domain() const { return domain_; }
  [[nodiscard]] int components() const { return components_; }
  [[nodiscard]] std::size_t modes() const { return domain_.total_points(); }

  [[nodiscard]] std::span<Complex> component(int c);
  [[nodiscard]] std::span<const Complex> component(int c) const;
  [[nodiscard]] std::span<Complex> coefficients() { return coeffs_; }
  [[nodiscard]] std::span<const Complex> coefficients() const { return coeffs_; }

  [[nodiscard]] Complex& at(int c, const DualIndex& idx);
  [[nodiscard]] Complex at(int c, const DualIndex& idx) const;

  [[nodiscard]] double max_abs() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);

 private:
  TorusDomain domain_;
  int components_ = 0;
  std::vector<Complex> coeffs_;
};

/// Throws kDomainMismatch unless both fields live on the same domain with the
/// same number of components.
void require_same_shape(const SpaceTimeField& a, const SpaceTimeField& b, const char* what);
void require_same_shape(const SpectralField& a, const SpectralField& b, const char* what);
void require_vector_field(const SpaceTimeField& f, const char* what);

}  // namespace tpoe
