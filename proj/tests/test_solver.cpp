// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "tpoe/error.hpp"
#include "tpoe/random_fields.hpp"
#include "tpoe/solver.hpp"
#include "tpoe/transform.hpp"

namespace {

using namespace tpoe;
using tpoe::testing::Gen;
using tpoe::testing::max_abs_diff;
using tpoe::testing::sample;

TorusDomain box2(int N = 16, int Nt = 16) { return TorusDomain{2, kTwoPi, N, kTwoPi, Nt}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

SpaceTimeField vec2(const TorusDomain& d, auto f1, auto f2) {
  return sample(d, 2, [&](int c, const auto& x, double t) { return c == 0 ? f1(x, t) : f2(x, t); });
}

const auto zero_fn = [](const auto&, double) { return 0.0; };

// Physical-space quadrature of the time average, independent of the library.
SpaceTimeField quadrature_time_mean(const SpaceTimeField& f) {
  const TorusDomain& d = f.domain();
  const std::size_t slice = d.spatial_points();
  SpaceTimeField out(d, f.components());
  for (int c = 0; c < f.components(); ++c)
    for (std::size_t x = 0; x < slice; ++x) {
      double s = 0.0;
      for (int t = 0; t < d.Nt; ++t) s += f.component(c)[t * slice + x];
      for (int t = 0; t < d.Nt; ++t) out.component(c)[t * slice + x] = s / d.Nt;
    }
  return out;
}

TEST(TimeAverage, TimeConstantFieldIsFixed) {
  const TorusDomain d = box2(8, 8);
  const SpaceTimeField f = vec2(d, [](const auto& x, double) { return std::sin(x[0]); }, zero_fn);
  EXPECT_LE(max_abs_diff(apply_time_average(f, TimeProjection::kMean).samples(), f.samples()), 1e-15);
  EXPECT_LE(apply_time_average(f, TimeProjection::kOscillating).max_abs(), 1e-15);
}

TEST(TimeAverage, FullPeriodCosineAveragesToZero) {
  const TorusDomain d{2, kTwoPi, 8, 3.0, 8};
  const SpaceTimeField f = sample(d, 1, [&](int, const auto& x, double t) { return std::cos(x[1]) * std::cos(kTwoPi / 3.0 * t); });
  EXPECT_LE(apply_time_average(f, TimeProjection::kMean).max_abs(), 1e-15);
}

TEST(TimeAverage, SpectralCoefficientsAreDeltaTimesInput) {
  Gen gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const TorusDomain d{2 + trial % 2, 2.0, 8, 1.5, 8};
    const SpaceTimeField f = tpoe::testing::random_trig_field(d, d.n, gen);
    const SpectralField pf = forward(apply_time_average(f, TimeProjection::kMean));
    const SpectralField ff = forward(f);
    double err = 0.0;
    for (int c = 0; c < d.n; ++c)
      for (std::size_t i = 0; i < ff.modes(); ++i) {
        const Complex expected = dual_index_at(d, i).k == 0 ? ff.component(c)[i] : Complex{};
        err = std::max(err, std::abs(pf.component(c)[i] - expected));
      }
    EXPECT_LE(err, 1e-12 * ff.max_abs());
    EXPECT_LE(max_abs_diff(apply_time_average(f, TimeProjection::kMean).samples(), quadrature_time_mean(f).samples()),
              1e-12 * f.max_abs());
  }
}

TEST(TimeAverage, ProjectionAlgebra) {
  Gen gen(32);
  for (int trial = 0; trial < 10; ++trial) {
    const TorusDomain d = box2(8, 8);
    const SpaceTimeField f = tpoe::testing::random_trig_field(d, 2, gen);
    const SpaceTimeField P = apply_time_average(f, TimeProjection::kMean);
    const SpaceTimeField Q = apply_time_average(f, TimeProjection::kOscillating);
    const double s = 1e-12 * f.max_abs();
    EXPECT_LE(max_abs_diff((P + Q).samples(), f.samples()), s);
    EXPECT_LE(max_abs_diff(apply_time_average(P, TimeProjection::kMean).samples(), P.samples()), s);
    EXPECT_LE(max_abs_diff(apply_time_average(Q, TimeProjection::kOscillating).samples(), Q.samples()), s);
    EXPECT_LE(apply_time_average(Q, TimeProjection::kMean).max_abs(), s);
  }
}

TEST(Helmholtz, PureGradientIsAnnihilated) {
  const TorusDomain d = box2(8, 8);
  const SpaceTimeField f = vec2(d, [](const auto& x, double) { return -std::sin(x[0]); }, zero_fn);
  EXPECT_LE(apply_helmholtz(f).max_abs(), 1e-15);
}

TEST(Helmholtz, SolenoidalFieldIsUnchanged) {
  const TorusDomain d = box2(8, 8);
  const SpaceTimeField f = vec2(d, zero_fn, [](const auto& x, double) { return std::cos(x[0]); });
  EXPECT_LE(max_abs_diff(apply_helmholtz(f).samples(), f.samples()), 1e-15);
}

TEST(Helmholtz, IdempotentAndDivergenceFree) {
  Gen gen(33);
  for (int trial = 0; trial < 10; ++trial) {
    const TorusDomain d{2 + trial % 2, 3.0, 8, 2.0, 6};
    const SpaceTimeField f = tpoe::testing::random_trig_field(d, d.n, gen);
    const SpaceTimeField ph = apply_helmholtz(f);
    EXPECT_LE(max_abs_diff(apply_helmholtz(ph).samples(), ph.samples()), 1e-12 * f.max_abs());
    const SpectralField c = forward(ph);
    const ModeTable modes = build_mode_table(d);
    double div = 0.0;
    for (std::size_t i = 0; i < c.modes(); ++i) {
      Complex s{};
      for (int j = 0; j < d.n; ++j) s += modes.xi[i][j] * c.component(j)[i];
      div = std::max(div, std::abs(s));
    }
    EXPECT_LE(div, 1e-12 * forward(f).max_abs());
  }
}

TEST(Helmholtz, RejectsScalarField) {
  EXPECT_EQ(code_of([] { (void)apply_helmholtz(SpaceTimeField(box2(8, 8), 1)); }), ErrorCode::kDomainMismatch);
}

TEST(SolveTimePeriodic, SingleModeClosedForm) {
  const TorusDomain d = box2(16, 16);
  const SpaceTimeField f = vec2(d, zero_fn, [](const auto& x, double t) { return std::cos(x[0] + t); });
  const SpaceTimeField w = solve_time_periodic(f, OseenParams{0.0, kTwoPi, 2.0});
  const SpaceTimeField expected =
      vec2(d, zero_fn, [](const auto& x, double t) { return 0.5 * (std::cos(x[0] + t) + std::sin(x[0] + t)); });
  EXPECT_LE(max_abs_diff(w.samples(), expected.samples()), 1e-14);
  // Apply dt - Lap by hand: dt w = (1/2)(-sin + cos), -Lap w = w.
  const SpaceTimeField applied = vec2(d, zero_fn, [](const auto& x, double t) {
    const double c = std::cos(x[0] + t), s = std::sin(x[0] + t);
    return 0.5 * (-s + c) + 0.5 * (c + s);
  });
  EXPECT_LE(max_abs_diff(applied.samples(), f.samples()), 1e-15);
}

TEST(SolveTimePeriodic, ZeroDataGivesZero) {
  const TorusDomain d = box2(8, 8);
  EXPECT_EQ(solve_time_periodic(SpaceTimeField(d, 2), OseenParams{}).max_abs(), 0.0);
}

TEST(SolveTimePeriodic, PreconditionErrors) {
  const TorusDomain d = box2(8, 8);
  const SpaceTimeField steady = vec2(d, zero_fn, [](const auto& x, double) { return std::cos(x[0]); });
  EXPECT_EQ(code_of([&] { (void)solve_time_periodic(steady, OseenParams{}); }), ErrorCode::kNotPurelyPeriodic);
  const SpaceTimeField gradient = vec2(d, [](const auto& x, double t) { return std::sin(x[0]) * std::cos(t); }, zero_fn);
  EXPECT_EQ(code_of([&] { (void)solve_time_periodic(gradient, OseenParams{}); }), ErrorCode::kNonSolenoidal);
  const SpaceTimeField ok = vec2(d, zero_fn, [](const auto& x, double t) { return std::cos(x[0] + t); });
  EXPECT_EQ(code_of([&] { (void)solve_time_periodic(ok, OseenParams{0.0, 3.0, 2.0}); }), ErrorCode::kDomainMismatch);
}

TEST(SolveTimePeriodic, OutputIsPeriodicSolenoidalAndSolves) {
  for (double lambda : {0.0, 1.0, -10.0}) {
    const TorusDomain d{3, 2.0, 8, 5.0, 8};
    const OseenParams p{lambda, d.T, 2.0};
    Rng rng(44);
    const SpaceTimeField f = random_field(d, 3, RandomFieldSpec{.steady = false}, rng);
    const SpaceTimeField w = solve_time_periodic(f, p);
    EXPECT_LE(apply_time_average(w, TimeProjection::kMean).max_abs(), 1e-12 * w.max_abs());
    EXPECT_LE(divergence_ratio(forward(w)), 1e-12);
    const SpaceTimeField r = apply_operator(w, SpaceTimeField(d, 1), p) - f;
    EXPECT_LE(r.max_abs(), 1e-10 * f.max_abs());
  }
}

TEST(SolveSteady, StokesCosine) {
  const TorusDomain d = box2(8, 4);
  const SpaceTimeField f = vec2(d, zero_fn, [](const auto& x, double) { return std::cos(x[0]); });
  EXPECT_LE(max_abs_diff(solve_steady(f, 0.0).samples(), f.samples()), 1e-15);
}

TEST(SolveSteady, OseenCosine) {
  const TorusDomain d = box2(8, 4);
  const SpaceTimeField f = vec2(d, zero_fn, [](const auto& x, double) { return std::cos(x[0]); });
  const SpaceTimeField v = solve_steady(f, 1.0);
  const SpaceTimeField expected =
      vec2(d, zero_fn, [](const auto& x, double) { return 0.5 * (std::cos(x[0]) - std::sin(x[0])); });
  EXPECT_LE(max_abs_diff(v.samples(), expected.samples()), 1e-15);
  // -Lap v - d1 v = v - d1 v = (1/2)(c - s) + (1/2)(s + c) = c.
  const SpaceTimeField applied = vec2(d, zero_fn, [](const auto& x, double) {
    const double c = std::cos(x[0]), s = std::sin(x[0]);
    return 0.5 * (c - s) + 0.5 * (s + c);
  });
  EXPECT_LE(max_abs_diff(applied.samples(), f.samples()), 1e-15);
}

TEST(SolveSteady, PreconditionErrors) {
  const TorusDomain d = box2(8, 4);
  const SpaceTimeField constant = vec2(d, zero_fn, [](const auto&, double) { return 1.0; });
  EXPECT_EQ(code_of([&] { (void)solve_steady(constant, 0.0); }), ErrorCode::kIncompatibleMean);
  const SpaceTimeField moving = vec2(d, zero_fn, [](const auto& x, double t) { return std::cos(x[0] + t); });
  EXPECT_EQ(code_of([&] { (void)solve_steady(moving, 0.0); }), ErrorCode::kNotTimeConstant);
  const SpaceTimeField gradient = vec2(d, [](const auto& x, double) { return std::sin(x[0]); }, zero_fn);
  EXPECT_EQ(code_of([&] { (void)solve_steady(gradient, 0.0); }), ErrorCode::kNonSolenoidal);
}

TEST(RecoverPressure, GradientOfCosine) {
  const TorusDomain d = box2(8, 4);
  const SpaceTimeField f = vec2(d, [](const auto& x, double) { return -std::sin(x[0]); }, zero_fn);
  const SpaceTimeField p = recover_pressure(f);
  const SpaceTimeField expected = sample(d, 1, [](int, const auto& x, double) { return std::cos(x[0]); });
  EXPECT_LE(max_abs_diff(p.samples(), expected.samples()), 1e-15);
}

TEST(RecoverPressure, SolenoidalDataGivesZero) {
  Rng rng(45);
  const TorusDomain d{3, kTwoPi, 8, kTwoPi, 8};
  const SpaceTimeField f = random_field(d, 3, RandomFieldSpec{}, rng);
  EXPECT_LE(recover_pressure(f).max_abs(), 1e-12 * f.max_abs());
}

TEST(RecoverPressure, GradientIdentityOnRandomFields) {
  Gen gen(46);
  for (int trial = 0; trial < 10; ++trial) {
    const TorusDomain d{2 + trial % 2, 2.5, 8, 4.0, 8};
    const SpaceTimeField f = tpoe::testing::random_trig_field(d, d.n, gen);
    const SpectralField ph = forward(recover_pressure(f));
    const SpaceTimeField longitudinal = f - apply_helmholtz(f);
    for (int j = 0; j < d.n; ++j) {
      std::array<int, 3> alpha{0, 0, 0};
      alpha[j] = 1;
      const SpaceTimeField dp = inverse(spectral_derivative(ph, alpha, 0));
      EXPECT_LE(max_abs_diff(dp.samples(), longitudinal.component(j)), 1e-10 * f.max_abs());
    }
    // Zero spatial mean at every time.
    const SpectralField c = ph;
    for (int k = -d.Nt / 2 + 1; k < d.Nt / 2; ++k) EXPECT_LE(std::abs(c.at(0, DualIndex{{0, 0, 0}, k})), 1e-12 * c.max_abs());
  }
}

TEST(ApplyOperator, Examples) {
  const TorusDomain d = box2(16, 16);
  const OseenParams p{0.0, kTwoPi, 2.0};
  EXPECT_EQ(apply_operator(SpaceTimeField(d, 2), SpaceTimeField(d, 1), p).max_abs(), 0.0);
  const SpaceTimeField u = vec2(d, zero_fn, [](const auto& x, double t) { return std::cos(x[0] + t); });
  const SpaceTimeField expected =
      vec2(d, zero_fn, [](const auto& x, double t) { return -std::sin(x[0] + t) + std::cos(x[0] + t); });
  EXPECT_LE(max_abs_diff(apply_operator(u, SpaceTimeField(d, 1), p).samples(), expected.samples()), 1e-13);
  EXPECT_EQ(code_of([&] { (void)apply_operator(u, SpaceTimeField(d, 2), p); }), ErrorCode::kDomainMismatch);
}

TEST(ApplyOperator, CommutesWithTimeAverage) {
  Gen gen(47);
  const TorusDomain d = box2(8, 8);
  const OseenParams p{3.0, kTwoPi, 2.0};
  const SpaceTimeField u = tpoe::testing::random_trig_field(d, 2, gen);
  const SpaceTimeField zero(d, 1);
  const SpaceTimeField a = apply_time_average(apply_operator(u, zero, p), TimeProjection::kMean);
  const SpaceTimeField b = apply_operator(apply_time_average(u, TimeProjection::kMean), zero, p);
  EXPECT_LE(max_abs_diff(a.samples(), b.samples()), 1e-12 * a.max_abs());
}

TEST(SolveFull, KernelIsTrivial) {
  const TorusDomain d = box2(8, 8);
  const SolutionBundle b = solve_full(SpaceTimeField(d, 2), OseenParams{1.0, kTwoPi, 2.0});
  EXPECT_EQ(b.u.max_abs(), 0.0);
  EXPECT_EQ(b.p.max_abs(), 0.0);
  EXPECT_EQ(b.residual_norm, 0.0);
}

TEST(SolveFull, SolenoidalPeriodicDataHasNoSteadyPartOrPressure) {
  Rng rng(48);
  const TorusDomain d = box2(16, 16);
  const SpaceTimeField f = random_field(d, 2, RandomFieldSpec{.steady = false}, rng);
  const SolutionBundle b = solve_full(f, OseenParams{2.0, kTwoPi, 2.0});
  EXPECT_LE(b.v.max_abs(), 1e-12 * f.max_abs());
  EXPECT_LE(b.p.max_abs(), 1e-12 * f.max_abs());
}

TEST(SolveFull, TimeConstantGradientGoesToPressure) {
  const TorusDomain d{3, kTwoPi, 8, kTwoPi, 8};
  auto g = [](const auto& x) { return 0.7 + std::cos(x[0]) * std::sin(2 * x[2]); };
  const SpaceTimeField f = sample(d, 3, [&](int c, const auto& x, double) {
    if (c == 0) return -std::sin(x[0]) * std::sin(2 * x[2]);
    if (c == 2) return 2 * std::cos(x[0]) * std::cos(2 * x[2]);
    return 0.0;
  });
  const SolutionBundle b = solve_full(f, OseenParams{0.0, kTwoPi, 1.4});
  EXPECT_LE(b.u.max_abs(), 1e-14);
  const SpaceTimeField expected = sample(d, 1, [&](int, const auto& x, double) { return g(x) - 0.7; });
  EXPECT_LE(max_abs_diff(b.p.samples(), expected.samples()), 1e-14);
}

TEST(SolveFull, BundleInvariantsOnMixedData) {
  for (double lambda : {0.0, 1.0, 10.0}) {
    Rng rng(49);
    const TorusDomain d{3, kTwoPi, 8, 3.0, 8};
    RandomFieldSpec spec{.solenoidal = false, .mean = MeanPolicy::kDropSteady};
    const SpaceTimeField f = random_field(d, 3, spec, rng);
    const SolutionBundle b = solve_full(f, OseenParams{lambda, d.T, 1.2});
    EXPECT_LE(b.residual_norm, 1e-10);
    EXPECT_LE(max_abs_diff(b.u.samples(), (b.v + b.w).samples()), 1e-12 * b.u.max_abs());
    EXPECT_LE(apply_time_average(b.w, TimeProjection::kMean).max_abs(), 1e-12 * b.u.max_abs());
    EXPECT_LE(apply_time_average(b.v, TimeProjection::kOscillating).max_abs(), 1e-12 * b.u.max_abs());
    EXPECT_LE(divergence_ratio(forward(b.u)), 1e-10);
    EXPECT_TRUE(b.norm_report.contains("w.Sobolev21q"));
    EXPECT_TRUE(b.norm_report.contains("p.PressureXp"));
    EXPECT_TRUE(b.norm_report.contains(lambda == 0.0 ? "v.SteadyStokes" : "v.SteadyOseen"));
  }
}

TEST(SolveFull, IncompatibleMeanAndInvalidExponent) {
  const TorusDomain d = box2(8, 8);
  const SpaceTimeField constant = vec2(d, zero_fn, [](const auto&, double) { return 1.0; });
  EXPECT_EQ(code_of([&] { (void)solve_full(constant, OseenParams{}); }), ErrorCode::kIncompatibleMean);
  const SpaceTimeField f = vec2(d, zero_fn, [](const auto& x, double t) { return std::cos(x[0] + t); });
  SolveOptions options;
  options.requested_norms = {NormTag::kPressureXp};
  EXPECT_EQ(code_of([&] { (void)solve_full(f, OseenParams{0.0, kTwoPi, 2.5}, options); }), ErrorCode::kInvalidExponent);
  options.requested_norms = {NormTag::kSteadyStokes};
  EXPECT_EQ(code_of([&] { (void)solve_full(f, OseenParams{0.0, kTwoPi, 1.2}, options); }), ErrorCode::kInvalidExponent);
}

// A time-dependent spatial mean is a pure time derivative and solvable; only
// the steady spatial mean is obstructed.
TEST(SolveFull, OscillatingSpatialMeanIsSolvable) {
  const TorusDomain d = box2(8, 8);
  const SpaceTimeField f = vec2(d, [](const auto&, double t) { return std::cos(t); }, zero_fn);
  const SolutionBundle b = solve_full(f, OseenParams{});
  EXPECT_LE(b.residual_norm, 1e-14);
  const SpaceTimeField expected = vec2(d, [](const auto&, double t) { return std::sin(t); }, zero_fn);
  EXPECT_LE(max_abs_diff(b.u.samples(), expected.samples()), 1e-14);
}

TEST(RoundTrip, RandomSolenoidalPeriodicFields) {
  for (int seed = 0; seed < 5; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const TorusDomain d{2 + seed % 2, 1.5, 16, 2.0, 16};
    const OseenParams p{seed * 2.5, d.T, 2.0};
    const SpaceTimeField w = random_field(d, d.n, RandomFieldSpec{.steady = false}, rng);
    const SpaceTimeField back = solve_time_periodic(apply_operator(w, SpaceTimeField(d, 1), p), p);
    EXPECT_LE(max_abs_diff(back.samples(), w.samples()), 1e-10 * w.max_abs());
  }
}

}  // namespace
