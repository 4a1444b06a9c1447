#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lctconv/params.hpp"
#include "lctconv/grid.hpp"

namespace lctconv {
namespace {

TEST(Params, FourierMatrixIsValid) {
  const auto m = make_params(0, 1, -1, 0);
  EXPECT_EQ(m.a(), 0.0);
  EXPECT_EQ(m.b(), 1.0);
  EXPECT_EQ(m.c(), -1.0);
  EXPECT_EQ(m.d(), 0.0);
}

TEST(Params, ShearIsValid) { EXPECT_NO_THROW(make_params(1, 1, 0, 1)); }

TEST(Params, SingularMatrixRejected) {
  EXPECT_THROW(make_params(1, 1, 1, 1), DeterminantViolation);
  EXPECT_THROW(make_params(2, 1, 0, 1), DeterminantViolation);
}

TEST(Params, ZeroBRejected) {
  EXPECT_THROW(make_params(1, 0, 0, 1), ZeroB);
  EXPECT_THROW(make_params(1, 1e-13, 0, 1), ZeroB);
}

TEST(Params, NonFiniteRejected) {
  EXPECT_THROW(make_params(NAN, 1, -1, 0), DeterminantViolation);
}

TEST(Params, DeterminantToleranceIsTight) {
  EXPECT_NO_THROW(make_params(1, 1, 0, 1 + 5e-13));
  EXPECT_THROW(make_params(1, 1, 0, 1 + 5e-12), DeterminantViolation);
}

TEST(Params, InverseOfFourier) {
  const auto inv = invert_params(make_params(0, 1, -1, 0));
  EXPECT_EQ(inv, make_params(0, -1, 1, 0));
}

TEST(Params, InverseOfShear) {
  EXPECT_EQ(invert_params(make_params(1, 1, 0, 1)), make_params(1, -1, 0, 1));
}

TEST(Params, InversionIsAnInvolution) {
  for (double alpha : {0.3, 1.1, 2.5, -0.7}) {
    const auto m = fractional_fourier_params(alpha);
    EXPECT_EQ(invert_params(invert_params(m)), m);
    const auto inv = invert_params(m);
    EXPECT_NEAR(inv.a() * inv.d() - inv.b() * inv.c(), 1.0, 1e-12);
  }
}

TEST(Params, InverseComposesToIdentity) {
  const auto m = make_params(1, 2, 1, 3);
  const auto n = invert_params(m);
  // [[a b][c d]] * [[d -b][-c a]] = I
  EXPECT_DOUBLE_EQ(m.a() * n.a() + m.b() * n.c(), 1.0);
  EXPECT_DOUBLE_EQ(m.a() * n.b() + m.b() * n.d(), 0.0);
  EXPECT_DOUBLE_EQ(m.c() * n.a() + m.d() * n.c(), 0.0);
  EXPECT_DOUBLE_EQ(m.c() * n.b() + m.d() * n.d(), 1.0);
}

TEST(Params, PrefactorIsPrincipalBranch) {
  using std::numbers::pi;
  for (double b : {0.5, 1.0, -1.0, -3.0}) {
    const double a = 1.0, d = 1.0 + b * 2.0;
    const auto m = make_params(a, b, (a * d - 1.0) / b, d);
    const cplx k = lct_prefactor(m);
    // k^2 = 1 / (j 2 pi b), and arg k in (-pi/2, pi/2].
    const cplx want = 1.0 / (cplx(0, 1) * 2.0 * pi * b);
    EXPECT_NEAR(std::abs(k * k - want), 0.0, 1e-15);
    EXPECT_GT(k.real(), 0.0);
  }
}

TEST(Grid, PointsAreReproducible) {
  const SampleGrid g(-1.0, 0.25, 9);
  EXPECT_EQ(g.point(0), -1.0);
  EXPECT_EQ(g.point(4), 0.0);
  EXPECT_EQ(g.last(), 1.0);
}

TEST(Grid, InvalidGridsRejected) {
  EXPECT_THROW(SampleGrid(0.0, 0.0, 10), InvalidGrid);
  EXPECT_THROW(SampleGrid(0.0, -1.0, 10), InvalidGrid);
  EXPECT_THROW(SampleGrid(0.0, 1.0, 1), InvalidGrid);
}

TEST(Grid, SignalInvariants) {
  const SampleGrid g(0.0, 1.0, 3);
  EXPECT_THROW(SampledSignal(g, CVector(2)), InvalidSignal);
  EXPECT_THROW(SampledSignal(g, CVector{1.0, NAN, 0.0}), InvalidSignal);
  EXPECT_THROW(SampledSignal(g, CVector{1.0, cplx(0, INFINITY), 0.0}),
               InvalidSignal);
}

TEST(Grid, EmbedPlacesSamplesOnLattice) {
  const SampledSignal s(SampleGrid(1.0, 0.5, 3), CVector{1.0, 2.0, 3.0});
  const auto e = embed(s, SampleGrid(0.0, 0.5, 8));
  EXPECT_EQ(e[2], cplx(1.0));
  EXPECT_EQ(e[4], cplx(3.0));
  EXPECT_EQ(e[0], cplx(0.0));
  EXPECT_THROW(embed(s, SampleGrid(0.1, 0.5, 8)), IncompatibleGrids);
  EXPECT_THROW(embed(s, SampleGrid(0.0, 0.25, 8)), IncompatibleGrids);
}

} // namespace
} // namespace lctconv
