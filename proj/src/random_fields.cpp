// SPDX-License-Identifier: Apache-2.0
#include "tpoe/random_fields.hpp"

#include <cmath>
#include <vector>

#include "tpoe/error.hpp"
#include "tpoe/symbols.hpp"
#include "tpoe/transform.hpp"

namespace tpoe {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

namespace {

// Representative of each conjugate pair: the first nonzero entry of (k, m) is positive.
bool is_canonical(const DualIndex& idx, int n) {
  if (idx.k != 0) return idx.k > 0;
  for (int d = 0; d < n; ++d) {
    const int m = idx.m[static_cast<std::size_t>(d)];
    if (m != 0) return m > 0;
  }
  return true;
}

DualIndex negated(const DualIndex& idx) {
  DualIndex out = idx;
  out.k = -out.k;
  for (int& m : out.m) m = -m;
  return out;
}

}  // namespace

SpaceTimeField random_field(const TorusDomain& domain, int components, const RandomFieldSpec& spec, Rng& rng) {
  domain.validate();
  const int M = spec.max_spatial_mode;
  const int K = spec.max_time_mode;
  if (M < 0 || K < 0 || 2 * M >= domain.N || 2 * K >= domain.Nt) {
    fail(ErrorCode::kInvalidArgument, "random field band does not fit the grid");
  }
  const int n = domain.n;
  const double volume = std::pow(domain.L, n);
  SpectralField spectrum(domain, components);

  const int side = 2 * M + 1;
  const int spatial_count = n == 2 ? side * side : side * side * side;
  for (int k = -K; k <= K; ++k) {
    if (k == 0 ? !spec.steady : !spec.periodic) continue;
    for (int s = 0; s < spatial_count; ++s) {
      DualIndex idx;
      idx.k = k;
      int rest = s;
      for (int d = n - 1; d >= 0; --d) {
        idx.m[static_cast<std::size_t>(d)] = rest % side - M;
        rest /= side;
      }
      if (!is_canonical(idx, n)) continue;
      const auto xi = wavevector(domain, idx);
      double m_sq = 0.0;
      for (int d = 0; d < n; ++d) m_sq += static_cast<double>(idx.m[static_cast<std::size_t>(d)]) * idx.m[static_cast<std::size_t>(d)];
      const bool self_conjugate = (idx == negated(idx));

      // Draw unconditionally so the sequence is independent of which modes are kept.
      std::array<Complex, kMaxDim> c{};
      for (int comp = 0; comp < components; ++comp) {
        const double re = rng.normal();
        const double im = rng.normal();
        c[static_cast<std::size_t>(comp)] = Complex(re, self_conjugate ? 0.0 : im);
      }
      if (m_sq == 0.0 && (spec.mean == MeanPolicy::kDropAll || (spec.mean == MeanPolicy::kDropSteady && k == 0))) continue;

      const double amplitude = volume / (1.0 + m_sq + std::abs(k));
      if (spec.solenoidal && components == n) {
        const Matrix3 h = helmholtz_symbol(std::span<const double>(xi.data(), static_cast<std::size_t>(n)));
        std::array<Complex, kMaxDim> p{};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)];
        c = p;
      }
      for (int comp = 0; comp < components; ++comp) {
        const Complex value = amplitude * c[static_cast<std::size_t>(comp)];
        spectrum.at(comp, idx) = value;
        spectrum.at(comp, negated(idx)) = std::conj(value);
      }
    }
  }
  return inverse(spectrum);
}

}  // namespace tpoe
