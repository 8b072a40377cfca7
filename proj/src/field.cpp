// SPDX-License-Identifier: Apache-2.0
#include "tpoe/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpoe/error.hpp"

namespace tpoe {

namespace {

void check_components(const TorusDomain& domain, int components) {
  domain.validate();
  if (components != 1 && components != domain.n) {
    fail(ErrorCode::kDomainMismatch,
         "field must have 1 or n=" + std::to_string(domain.n) + " components, got " + std::to_string(components));
  }
}

}  // namespace

SpaceTimeField::SpaceTimeField(const TorusDomain& domain, int components)
    : domain_(domain), components_(components) {
  check_components(domain, components);
  samples_.assign(domain.total_points() * static_cast<std::size_t>(components), 0.0);
}

SpaceTimeField::SpaceTimeField(const TorusDomain& domain, int components, std::vector<double> samples)
    : domain_(domain), components_(components), samples_(std::move(samples)) {
  check_components(domain, components);
  if (samples_.size() != domain.total_points() * static_cast<std::size_t>(components)) {
    fail(ErrorCode::kDomainMismatch, "sample count " + std::to_string(samples_.size()) + " does not match domain");
  }
  for (double s : samples_) {
    if (!std::isfinite(s)) fail(ErrorCode::kInvalidArgument, "field samples must be finite");
  }
}

std::span<double> SpaceTimeField::component(int c) {
  const std::size_t n = points();
  return std::span<double>(samples_).subspan(static_cast<std::size_t>(c) * n, n);
}

std::span<const double> SpaceTimeField::component(int c) const {
  const std::size_t n = points();
  return std::span<const double>(samples_).subspan(static_cast<std::size_t>(c) * n, n);
}

double SpaceTimeField::max_abs() const {
  double m = 0.0;
  for (double s : samples_) m = std::max(m, std::abs(s));
  return m;
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& other) {
  require_same_shape(*this, other, "field addition");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += other.samples_[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& other) {
  require_same_shape(*this, other, "field subtraction");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= other.samples_[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(double factor) {
  for (double& s : samples_) s *= factor;
  return *this;
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
SpaceTimeField operator*(double factor, SpaceTimeField a) { return a *= factor; }

SpectralField::SpectralField(const TorusDomain& domain, int components)
    : domain_(domain), components_(components) {
  check_components(domain, components);
  coeffs_.assign(domain.total_points() * static_cast<std::size_t>(components), Complex{});
}

std::span<Complex> SpectralField::component(int c) {
  const std::size_t n = modes();
  return std::span<Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * n, n);
}

std::span<const Complex> SpectralField::component(int c) const {
  const std::size_t n = modes();
  return std::span<const Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * n, n);
}

Complex& SpectralField::at(int c, const DualIndex& idx) {
  return coeffs_[static_cast<std::size_t>(c) * modes() + flat_of(domain_, idx)];
}

Complex SpectralField::at(int c, const DualIndex& idx) const {
  return coeffs_[static_cast<std::size_t>(c) * modes() + flat_of(domain_, idx)];
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const Complex& z : coeffs_) m = std::max(m, std::abs(z));
  return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_shape(*this, other, "spectral addition");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_shape(*this, other, "spectral subtraction");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

void require_same_shape(const SpaceTimeField& a, const SpaceTimeField& b, const char* what) {
  if (!(a.domain() == b.domain()) || a.components() != b.components()) {
    fail(ErrorCode::kDomainMismatch, std::string(what) + ": fields have different shapes");
  }
}

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* what) {
  if (!(a.domain() == b.domain()) || a.components() != b.components()) {
    fail(ErrorCode::kDomainMismatch, std::string(what) + ": fields have different shapes");
  }
}

void require_vector_field(const SpaceTimeField& f, const char* what) {
  if (f.components() != f.domain().n) {
    fail(ErrorCode::kDomainMismatch, std::string(what) + " expects a vector field with n components");
  }
}

}  // namespace tpoe
