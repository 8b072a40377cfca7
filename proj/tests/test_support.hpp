// SPDX-License-Identifier: Apache-2.0
// Shared oracles and generators for the unit and acceptance tests. Nothing
// here calls the transform or solver code under test.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tpoe/domain.hpp"
#include "tpoe/field.hpp"

namespace tpoe::testing {

using PointFn = std::function<double(int component, const std::array<double, 3>& x, double t)>;

/// Samples an analytic field on the physical grid.
inline SpaceTimeField sample(const TorusDomain& d, int components, const PointFn& fn) {
  SpaceTimeField f(d, components);
  const std::size_t pts = d.total_points();
  const std::size_t spatial = d.spatial_points();
  for (int c = 0; c < components; ++c) {
    auto out = f.component(c);
    for (std::size_t flat = 0; flat < pts; ++flat) {
      const std::size_t it = flat / spatial;
      std::size_t rem = flat % spatial;
      std::array<double, 3> x{0.0, 0.0, 0.0};
      for (int j = d.n - 1; j >= 0; --j) {
        x[j] = d.dx() * static_cast<double>(rem % static_cast<std::size_t>(d.N));
        rem /= static_cast<std::size_t>(d.N);
      }
      out[flat] = fn(c, x, d.dt() * static_cast<double>(it));
    }
  }
  return f;
}

/// Direct O(P^2) evaluation of the forward transform with the library's
/// normalization: (1/Nt)(L/N)^n sum f exp(-i xi.x - i eta t). Nyquist rows are
/// zeroed. Used to pin the sign and scale of the FFT-backed path.
inline std::vector<std::complex<double>> naive_forward(const SpaceTimeField& f, int component) {
  const TorusDomain& d = f.domain();
  const std::size_t pts = d.total_points();
  const std::size_t spatial = d.spatial_points();
  auto unpack = [&](std::size_t flat, std::array<int, 3>& idx, int& it) {
    it = static_cast<int>(flat / spatial);
    std::size_t rem = flat % spatial;
    for (int j = d.n - 1; j >= 0; --j) {
      idx[j] = static_cast<int>(rem % static_cast<std::size_t>(d.N));
      rem /= static_cast<std::size_t>(d.N);
    }
  };
  const double weight = std::pow(d.L / d.N, d.n) / d.Nt;
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<std::complex<double>> out(pts);
  const auto samples = f.component(component);
  for (std::size_t mode = 0; mode < pts; ++mode) {
    std::array<int, 3> m{};
    int k = 0;
    unpack(mode, m, k);
    bool nyquist = (k == d.Nt / 2);
    for (int j = 0; j < d.n; ++j) nyquist = nyquist || (m[j] == d.N / 2);
    if (nyquist) continue;
    std::complex<double> acc = 0.0;
    for (std::size_t p = 0; p < pts; ++p) {
      std::array<int, 3> x{};
      int t = 0;
      unpack(p, x, t);
      // Phase in exact integer arithmetic modulo the grid before scaling.
      long long sp = 0;
      for (int j = 0; j < d.n; ++j) sp += static_cast<long long>(m[j]) * x[j];
      const double phase = two_pi * (static_cast<double>(sp % d.N) / d.N +
                                     static_cast<double>((static_cast<long long>(k) * t) % d.Nt) / d.Nt);
      acc += samples[p] * std::complex<double>(std::cos(phase), -std::sin(phase));
    }
    out[mode] = acc * weight;
  }
  return out;
}

/// Centered second-order difference of a sampled field along one axis
/// (axis < n: x_{axis+1}, axis == n: t), written independently of the library.
inline SpaceTimeField centered_difference(const SpaceTimeField& f, int axis, int order) {
  const TorusDomain& d = f.domain();
  const std::size_t spatial = d.spatial_points();
  std::size_t stride = 1;
  int len = 0;
  double h = 0.0;
  if (axis == d.n) {
    stride = spatial;
    len = d.Nt;
    h = d.dt();
  } else {
    for (int j = d.n - 1; j > axis; --j) stride *= static_cast<std::size_t>(d.N);
    len = d.N;
    h = d.dx();
  }
  SpaceTimeField out(d, f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto in = f.component(c);
    auto res = out.component(c);
    for (std::size_t flat = 0; flat < in.size(); ++flat) {
      const int pos = static_cast<int>((flat / stride) % static_cast<std::size_t>(len));
      const std::size_t base = flat - static_cast<std::size_t>(pos) * stride;
      const std::size_t plus = base + static_cast<std::size_t>((pos + 1) % len) * stride;
      const std::size_t minus = base + static_cast<std::size_t>((pos + len - 1) % len) * stride;
      res[flat] = order == 1 ? (in[plus] - in[minus]) / (2.0 * h) : (in[plus] - 2.0 * in[flat] + in[minus]) / (h * h);
    }
  }
  return out;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Small deterministic generator for property tests (SplitMix64), separate
/// from the library's ensemble generator.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

/// Random trigonometric field with a few modes |m_j| <= band, |k| <= kband,
/// built from explicit cos/sin terms. Not solenoidal, not mean-free.
inline SpaceTimeField random_trig_field(const TorusDomain& d, int components, Gen& gen, int terms = 6, int band = 3,
                                        int kband = 3) {
  struct Term {
    int c;
    std::array<int, 3> m;
    int k;
    double a, b;
  };
  std::vector<Term> list;
  for (int i = 0; i < terms * components; ++i) {
    Term t{gen.integer(0, components - 1), {0, 0, 0}, gen.integer(-kband, kband), gen.uniform(-1, 1),
           gen.uniform(-1, 1)};
    for (int j = 0; j < d.n; ++j) t.m[j] = gen.integer(-band, band);
    list.push_back(t);
  }
  const double xs = 6.283185307179586476925286766559 / d.L;
  const double ts = 6.283185307179586476925286766559 / d.T;
  return sample(d, components, [&](int c, const std::array<double, 3>& x, double t) {
    double v = 0.0;
    for (const Term& term : list) {
      if (term.c != c) continue;
      double phase = ts * term.k * t;
      for (int j = 0; j < d.n; ++j) phase += xs * term.m[j] * x[j];
      v += term.a * std::cos(phase) + term.b * std::sin(phase);
    }
    return v;
  });
}

}  // namespace tpoe::testing
