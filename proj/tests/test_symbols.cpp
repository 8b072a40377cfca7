// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>

#include "test_support.hpp"
#include "tpoe/error.hpp"
#include "tpoe/symbols.hpp"

namespace {

using namespace tpoe;
using C = std::complex<double>;
using tpoe::testing::Gen;

// Independent transcription of the bump: g(t) = exp(-1/t), s = g(t)/(g(t)+g(1-t)).
double bump_oracle(double eta) {
  const double a = std::abs(eta);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double t = 2.0 * (1.0 - a);
  const double g1 = std::exp(-1.0 / t), g2 = std::exp(-1.0 / (1.0 - t));
  return g1 / (g1 + g2);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(OseenParams, Validation) {
  EXPECT_NO_THROW((OseenParams{-3.0, 1.0, 1.5}.validate()));
  EXPECT_EQ(code_of([] { OseenParams{0.0, 1.0, 1.0}.validate(); }), ErrorCode::kInvalidExponent);
  EXPECT_EQ(code_of([] { OseenParams{0.0, 1.0, INFINITY}.validate(); }), ErrorCode::kInvalidExponent);
  EXPECT_EQ(code_of([] { OseenParams{0.0, 0.0, 2.0}.validate(); }), ErrorCode::kInvalidArgument);
}

TEST(CutoffChi, PlateauValues) {
  EXPECT_EQ(cutoff_chi(0.0), 1.0);
  EXPECT_EQ(cutoff_chi(0.5), 1.0);
  EXPECT_EQ(cutoff_chi(-0.3), 1.0);
  EXPECT_EQ(cutoff_chi(1.0), 0.0);
  EXPECT_EQ(cutoff_chi(1.5), 0.0);
  EXPECT_EQ(cutoff_chi(-7.0), 0.0);
}

TEST(CutoffChi, MidpointMatchesClosedForm) {
  const double v = cutoff_chi(0.75);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1.0);
  EXPECT_NEAR(v, bump_oracle(0.75), 1e-15);
  EXPECT_NEAR(v, 0.5, 1e-15);
}

TEST(CutoffChi, EvenMonotoneAndMatchesOracle) {
  double prev = 1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double eta = 0.5 + 0.5 * i / 1000.0;
    const double v = cutoff_chi(eta);
    EXPECT_LE(v, prev);
    EXPECT_EQ(v, cutoff_chi(-eta));
    EXPECT_NEAR(v, bump_oracle(eta), 1e-14);
    prev = v;
  }
}

TEST(CutoffChi, ComplementKeepsRelativeDigitsNearInnerEdge) {
  EXPECT_EQ(cutoff_complement(0.3), 0.0);
  EXPECT_EQ(cutoff_complement(1.0), 1.0);
  EXPECT_EQ(cutoff_complement(-2.0), 1.0);
  for (double delta : {1e-1, 3e-2, 2e-2, 1e-2}) {
    const long double t = 2.0L * delta;  // distance from the inner edge, unit width
    const long double g_in = std::exp(-1.0L / t), g_out = std::exp(-1.0L / (1.0L - t));
    const double want = static_cast<double>(g_in / (g_in + g_out));
    const double got = cutoff_complement(0.5 + delta);
    EXPECT_NEAR(got, want, 1e-13 * want) << delta;
    EXPECT_NEAR(got + cutoff_chi(0.5 + delta), 1.0, 1e-15);
  }
}

TEST(CutoffChi, DerivativeMatchesCentralDifference) {
  for (double eta : {0.55, 0.6, 0.75, 0.9, 0.97, -0.8}) {
    const double h = 1e-6;
    const double fd = (cutoff_chi(eta + h) - cutoff_chi(eta - h)) / (2 * h);
    EXPECT_NEAR(cutoff_chi_derivative(eta), fd, 1e-7) << eta;
  }
  EXPECT_EQ(cutoff_chi_derivative(0.2), 0.0);
  EXPECT_EQ(cutoff_chi_derivative(1.2), 0.0);
}

TEST(EvaluateM, SteadyStratumVanishes) {
  const TorusDomain d{3, kTwoPi, 8, kTwoPi, 8};
  for (int m1 = -3; m1 <= 3; ++m1) {
    EXPECT_EQ(evaluate_M(DualIndex{{m1, 2, -1}, 0}, OseenParams{5.0, kTwoPi, 2.0}, d), C(0.0, 0.0));
  }
}

TEST(EvaluateM, DirectSubstitution) {
  const TorusDomain d{3, kTwoPi, 8, kTwoPi, 8};
  for (double lambda : {0.0, 1.0, -4.0}) {
    const C v = evaluate_M(DualIndex{{0, 0, 0}, 1}, OseenParams{lambda, kTwoPi, 2.0}, d);
    EXPECT_NEAR(std::abs(v - C(0.0, -1.0)), 0.0, 1e-15);
  }
  const C w = evaluate_M(DualIndex{{1, 0, 0}, 1}, OseenParams{1.0, kTwoPi, 2.0}, d);
  EXPECT_NEAR(std::abs(w - C(1.0, 0.0)), 0.0, 1e-15);
}

TEST(EvaluateM, HermitianSymmetryOnGrid) {
  const TorusDomain d{2, 3.0, 8, 7.0, 8};
  const OseenParams p{2.5, 7.0, 2.0};
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int k = -3; k <= 3; ++k) {
        const C plus = evaluate_M(DualIndex{{a, b, 0}, k}, p, d);
        const C minus = evaluate_M(DualIndex{{-a, -b, 0}, -k}, p, d);
        EXPECT_NEAR(std::abs(minus - std::conj(plus)), 0.0, 1e-15);
      }
}

TEST(EvaluateEuclidean, DirectSubstitution) {
  const OseenParams p{1.0, kTwoPi, 2.0};
  const std::array<double, 3> zero{0, 0, 0}, e1{1, 0, 0};
  EXPECT_EQ(evaluate_m(std::span(e1).first(3), 0.0, p), C(0.0, 0.0));
  EXPECT_NEAR(std::abs(evaluate_m(zero, 2.0, OseenParams{7.0, kTwoPi, 2.0}) - C(0.0, -0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(evaluate_m(e1, 1.0, p) - C(1.0, 0.0)), 0.0, 1e-15);
}

TEST(EvaluateEuclidean, HermitianSymmetryAtRandomPoints) {
  Gen gen(8);
  for (int i = 0; i < 500; ++i) {
    const OseenParams p{gen.uniform(-10, 10), gen.uniform(0.5, 70), 2.0};
    std::array<double, 3> xi{gen.uniform(-5, 5), gen.uniform(-5, 5), gen.uniform(-5, 5)};
    std::array<double, 3> neg{-xi[0], -xi[1], -xi[2]};
    const double eta = gen.uniform(-20, 20);
    EXPECT_NEAR(std::abs(evaluate_m(neg, -eta, p) - std::conj(evaluate_m(xi, eta, p))), 0.0, 1e-15);
  }
}

TEST(PhiEmbed, PassesSpatialPartAndScalesTime) {
  const TorusDomain d{2, kTwoPi, 8, kTwoPi, 8};
  EXPECT_EQ(phi_embed(DualIndex{{1, 2, 0}, 0}, kTwoPi, d).eta, 0.0);
  const EmbeddedPoint e = phi_embed(DualIndex{{1, -2, 0}, 3}, kTwoPi, d);
  EXPECT_DOUBLE_EQ(e.eta, 3.0);
  EXPECT_DOUBLE_EQ(e.xi[0], 1.0);
  EXPECT_DOUBLE_EQ(e.xi[1], -2.0);
}

TEST(PhiEmbed, TransferenceIsBitExactOnGrid) {
  const TorusDomain d{3, 2.0, 8, 20 * std::acos(-1.0), 8};
  for (double lambda : {0.0, 1.0, 10.0}) {
    const OseenParams p{lambda, d.T, 2.0};
    for (std::size_t flat = 0; flat < d.total_points(); ++flat) {
      const DualIndex idx = dual_index_at(d, flat);
      const EmbeddedPoint e = phi_embed(idx, p.T, d);
      EXPECT_EQ(evaluate_M(idx, p, d), evaluate_m(std::span(e.xi).first(3), e.eta, p));
    }
  }
}

TEST(HelmholtzSymbol, Examples) {
  const std::array<double, 3> e1{1, 0, 0}, zero{0, 0, 0}, d11{1, 1, 0};
  const Matrix3 a = helmholtz_symbol(e1);
  const Matrix3 b = helmholtz_symbol(zero);
  const Matrix3 c = helmholtz_symbol(d11);
  const Matrix3 ea{{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const Matrix3 eb{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const Matrix3 ec{{{0.5, -0.5, 0}, {-0.5, 0.5, 0}, {0, 0, 1}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(a[i][j], ea[i][j], 1e-15);
      EXPECT_NEAR(b[i][j], eb[i][j], 1e-15);
      EXPECT_NEAR(c[i][j], ec[i][j], 1e-15);
    }
}

TEST(HelmholtzSymbol, IdempotentSymmetricAndAnnihilatesXi) {
  Gen gen(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    std::array<double, 3> xi{gen.uniform(-9, 9), gen.uniform(-9, 9), n == 3 ? gen.uniform(-9, 9) : 0.0};
    const Matrix3 h = helmholtz_symbol(std::span(xi).first(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      double hx = 0.0;
      for (int j = 0; j < n; ++j) {
        double hh = 0.0;
        for (int k = 0; k < n; ++k) hh += h[i][k] * h[k][j];
        EXPECT_NEAR(hh, h[i][j], 1e-14);
        EXPECT_EQ(h[i][j], h[j][i]);
        hx += h[i][j] * xi[j];
      }
      EXPECT_NEAR(hx, 0.0, 1e-14 * 9.0);
    }
  }
}

TEST(SteadySymbol, Examples) {
  const std::array<double, 3> e1{1, 0, 0}, zero{0, 0, 0};
  EXPECT_NEAR(std::abs(steady_symbol(e1, 0.0) - C(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(steady_symbol(e1, 1.0) - C(0.5, 0.5)), 0.0, 1e-15);
  EXPECT_EQ(code_of([&] { (void)steady_symbol(zero, 1.0); }), ErrorCode::kSingularMode);
}

TEST(PressureSymbol, Examples) {
  const std::array<double, 3> e1{1, 0, 0}, zero{0, 0, 0}, two{0, 2, 0};
  const auto a = pressure_symbol(e1);
  const auto b = pressure_symbol(zero);
  const auto c = pressure_symbol(two);
  EXPECT_NEAR(std::abs(a[0] - C(0, -1)), 0.0, 1e-15);
  EXPECT_EQ(a[1], C(0, 0));
  for (const C& v : b) EXPECT_EQ(v, C(0, 0));
  EXPECT_NEAR(std::abs(c[1] - C(0, -0.5)), 0.0, 1e-15);
  EXPECT_EQ(c[0], C(0, 0));
}

// i xi . pressure_symbol(xi) = 1 for xi != 0: the gradient of the recovered
// pressure returns the longitudinal part.
TEST(PressureSymbol, GradientInvertsDivergence) {
  Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    std::array<double, 3> xi{gen.uniform(-4, 4), gen.uniform(-4, 4), gen.uniform(-4, 4)};
    const auto s = pressure_symbol(xi);
    C acc = 0.0;
    for (int j = 0; j < 3; ++j) acc += C(0, xi[j]) * s[j];
    EXPECT_NEAR(std::abs(acc - C(1, 0)), 0.0, 1e-14);
  }
}

}  // namespace
