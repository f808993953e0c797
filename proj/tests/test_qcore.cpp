#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qgraf/bessel.hpp"
#include "qgraf/gamma.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/quadrature.hpp"
#include "qgraf/summation.hpp"
#include "test_support.hpp"

using namespace qgraf;
using qgraf::test::near;
using qgraf::test::raises;
using C = std::complex<double>;

namespace {

// Plain product until the factors stop mattering; independent of qpoch_infinite.
double euler_product(double a, double q) {
  double p = 1, qi = 1;
  for (int i = 0; i < 5000 && std::abs(a) * qi > 1e-18; ++i, qi *= q) p *= 1 - a * qi;
  return p;
}

}  // namespace

TEST(Context, RejectsBadBase) {
  EXPECT_TRUE(raises(ErrorKind::DomainError, [] { QContext(0.0); }));
  EXPECT_TRUE(raises(ErrorKind::DomainError, [] { QContext(1.0); }));
  EXPECT_TRUE(raises(ErrorKind::DomainError, [] { QContext(-0.2); }));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [] { QContext(0.5, 0.0); }));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [] { QContext(0.5, 1e-12, 0); }));
  const QContext ctx(0.5);
  EXPECT_EQ(ctx.tol(), 1e-12);
  EXPECT_EQ(ctx.max_terms(), 10000u);
  EXPECT_EQ(ctx.max_product_factors(), 20000u);
}

TEST(QPochFinite, EmptyProductAndZeroFactor) {
  const QContext ctx(0.5);
  EXPECT_EQ(qpoch_finite(C(3.7, -1), ctx, 0), C(1));
  for (std::size_t k = 1; k < 6; ++k) EXPECT_EQ(qpoch_finite(C(1), ctx, k), C(0));
  EXPECT_NEAR(qpoch_finite(C(0.5), ctx, 2).real(), 0.375, 1e-16);
}

TEST(QPochFinite, StepRelation) {
  const QContext ctx(0.7);
  const C a(0.3, 0.4);
  for (std::size_t k = 0; k < 20; ++k) {
    const C lhs = qpoch_finite(a, ctx, k + 1);
    const C rhs = qpoch_finite(a, ctx, k) * (C(1) - a * std::pow(0.7, double(k)));
    EXPECT_LE(std::abs(lhs - rhs), 4 * std::numeric_limits<double>::epsilon() * std::abs(lhs));
  }
}

TEST(QPochInfinite, EulerProduct) {
  const QContext ctx(0.5, 1e-14);
  const auto v = qpoch_infinite(C(0.5), ctx);
  EXPECT_TRUE(near(v.value, euler_product(0.5, 0.5), 1e-14));
  EXPECT_NEAR(v.value.real(), 0.2887880951, 1e-10);
  EXPECT_EQ(qpoch_infinite(C(0), ctx).value, C(1));
  EXPECT_EQ(qpoch_infinite(C(0), ctx).tail_bound, 0.0);
}

TEST(QPochInfinite, FunctionalEquationOnGrid) {
  for (double q : {0.3, 0.5, 0.9}) {
    const QContext ctx(q, 1e-14);
    for (double r : {0.1, 0.5, 0.9}) {
      for (C a : {C(r), C(-r), std::polar(r, 2.0)}) {
        const auto full = qpoch_infinite(a, ctx);
        const auto shifted = qpoch_infinite(a * q, ctx);
        const double slack = full.tail_bound + std::abs(C(1) - a) * shifted.tail_bound + 1e-15;
        EXPECT_LE(std::abs(full.value - (C(1) - a) * shifted.value), slack) << "q=" << q << " a=" << a;
      }
    }
  }
}

TEST(QPochInfinite, TailBoundCoversTruncation) {
  const QContext loose(0.9, 1e-6);
  const auto v = qpoch_infinite(C(0.8), loose);
  EXPECT_LE(std::abs(v.value - euler_product(0.8, 0.9)), v.tail_bound);
  EXPECT_GT(v.tail_bound, 0.0);
}

TEST(QPochInfinite, FactorCap) {
  const QContext ctx(0.999, 1e-14, 10000, 100);
  EXPECT_TRUE(raises(ErrorKind::CapExceeded, [&] { qpoch_infinite(C(0.5), ctx); }));
}

TEST(PhiRs, UpperParameterOneGivesOne) {
  const QContext ctx(0.5);
  const auto v = phi_rs<double>({C(1), C(0.3)}, {C(0.7)}, C(0.9), ctx);
  EXPECT_EQ(v.value, C(1));
}

TEST(PhiRs, QExponentialAgainstProduct) {
  const QContext ctx(0.5, 1e-15);
  const auto v = phi_rs<double>({C(0)}, {}, C(0.3), ctx);
  EXPECT_TRUE(near(v.value, 1 / euler_product(0.3, 0.5), 1e-13));
}

TEST(PhiRs, QBinomialTheorem) {
  const QContext ctx(0.6, 1e-15);
  const C a(0.4, 0.2), z(0.5, -0.3);
  const auto v = phi_rs<double>({a}, {}, z, ctx);
  const auto want = qpoch_infinite(a * z, ctx).value / qpoch_infinite(z, ctx).value;
  EXPECT_TRUE(near(v.value, want, 1e-13));
}

TEST(PhiRs, TerminatingSumsExactlyNPlusOneTerms) {
  const double q = 0.5;
  const QContext ctx(q);
  for (int n = 0; n < 6; ++n) {
    const auto v = phi_rs<double>({C(std::pow(q, -n)), C(0.3)}, {C(0.6)}, C(5.0), ctx);
    EXPECT_EQ(v.terms_used, std::size_t(n + 1));
    EXPECT_EQ(v.tail_bound, 0.0);
  }
}

TEST(PhiRs, TerminatingThreePhiTwoGivesFirstPolynomial) {
  // a^{-1}(ab;q)_1 3phi2(q^-1, a e^{it}, a e^{-it}; ab, 0; q, q) = 2 cos t - a - b.
  const double q = 0.5, a = 0.3, b = 0.2, t = 1.1;
  const QContext ctx(q);
  const C e = std::polar(1.0, t);
  const auto v = phi_rs<double>({C(1 / q), a * e, a / e}, {C(a * b), C(0)}, C(q), ctx);
  EXPECT_TRUE(near((1 - a * b) / a * v.value, 2 * std::cos(t) - a - b, 1e-14));
}

TEST(PhiRs, Errors) {
  const double q = 0.5;
  const QContext ctx(q);
  EXPECT_TRUE(raises(ErrorKind::PoleInLowerParameter, [&] { phi_rs<double>({C(0.3)}, {C(1 / (q * q))}, C(0.2), ctx); }));
  EXPECT_TRUE(raises(ErrorKind::NonConvergent, [&] { phi_rs<double>({C(0.3), C(0.2), C(0.1)}, {}, C(0.2), ctx); }));
  const QContext tiny(0.5, 1e-12, 5);
  EXPECT_TRUE(raises(ErrorKind::CapExceeded, [&] { phi_rs<double>({C(0.3), C(0.4)}, {C(0.2)}, C(0.95), tiny); }));
}

TEST(PhiRs, EqualPairsCancelAndAreCounted) {
  const QContext ctx(0.5, 1e-15);
  const auto with = phi_rs<double>({C(0.3), C(0.7)}, {C(0.7)}, C(0.4), ctx);
  const auto without = phi_rs<double>({C(0.3)}, {}, C(0.4), ctx);
  EXPECT_TRUE(near(with.value, without.value, 1e-15));
  EXPECT_EQ(with.cancellations, 1u);
}

TEST(PhiRs, TailBoundHolds) {
  const QContext loose(0.8, 1e-5), tight(0.8, 1e-16);
  const auto lo = phi_rs<double>({C(0.5), C(0.4)}, {C(0.3)}, C(0.9), loose);
  const auto hi = phi_rs<double>({C(0.5), C(0.4)}, {C(0.3)}, C(0.9), tight);
  EXPECT_LE(std::abs(lo.value - hi.value), lo.tail_bound + hi.tail_bound + 1e-14);
}

TEST(PhiRegularized, ZeroIsPlainSeriesTimesPrefactor) {
  const double q = 0.5;
  const QContext ctx(q, 1e-15);
  const auto v = phi_regularized<double>({C(0.3)}, 0, {}, C(0.7), ctx);
  const auto plain = phi_rs<double>({C(0.3)}, {C(q)}, C(0.7), ctx);
  EXPECT_TRUE(near(v.value, euler_product(q, q) * plain.value, 1e-14));
}

TEST(PhiRegularized, VanishesWhenSeriesStopsBeforeShift) {
  const double q = 0.5;
  const QContext ctx(q);
  // (q^-2;q)_k = 0 for k > 2, so dropping the first three terms leaves nothing.
  const auto v = phi_regularized<double>({C(1 / (q * q)), C(0.4)}, 3, {C(0.2)}, C(0.6), ctx);
  EXPECT_EQ(v.value, C(0));
}

TEST(PhiRegularized, ReindexedAgreesWithTermwise) {
  for (double q : {0.3, 0.5, 0.8}) {
    const QContext ctx(q, 1e-15);
    for (long n = 1; n <= 4; ++n) {
      for (C z : {C(0.7), C(-1.2), C(0.3, 0.5)}) {
        const auto a = phi_regularized<double>({C(0.3)}, n, {}, z, ctx);
        const auto b = phi_regularized_middle<double>({C(0.3)}, n, {}, z, ctx);
        EXPECT_TRUE(near(a.value, b.value, 1e-12 * std::max(1.0, std::abs(a.value))));
      }
    }
  }
}

TEST(PhiRegularized, ContinuousAcrossTheReindexing) {
  // Lower parameter q^{1-n} approached through q^{1-n+eps}.
  const double q = 0.5;
  const QContext ctx(q, 1e-15);
  const long n = 2;
  const auto exact = phi_regularized<double>({C(0.3)}, n, {}, C(0.6), ctx);
  const double eps = 1e-7;
  const double lam = 1 - n + eps;
  const auto nearby = qpoch_infinite(C(std::pow(q, lam)), ctx) * phi_rs<double>({C(0.3)}, {C(std::pow(q, lam))}, C(0.6), ctx);
  EXPECT_TRUE(near(nearby.value, exact.value, 1e-5));
}

TEST(QGamma, Values) {
  const QContext ctx(0.5, 1e-15);
  EXPECT_NEAR(qgamma(1.0, ctx), 1.0, 1e-15);
  EXPECT_NEAR(qgamma(2.0, ctx), 1.0, 1e-15);
  // Gamma_q(x+1) = (1-q^x)/(1-q) Gamma_q(x)
  for (double x : {0.3, 1.7, 2.5}) {
    EXPECT_NEAR(qgamma(x + 1, ctx), (1 - std::pow(0.5, x)) / 0.5 * qgamma(x, ctx), 1e-13);
  }
  const QContext near_one(0.99, 1e-14, 10000, 200000);
  EXPECT_NEAR(qgamma(0.5, near_one), std::sqrt(std::numbers::pi), 5e-3);  // 0.999 underflows (q;q)_inf in double
  EXPECT_TRUE(raises(ErrorKind::PoleAtNonpositiveInteger, [&] { qgamma(-2.0, ctx); }));
  EXPECT_TRUE(raises(ErrorKind::PoleAtNonpositiveInteger, [&] { qgamma(0.0, ctx); }));
}

TEST(Gamma, AgainstStd) {
  for (double x : {0.5, 1.3, 4.0, 11.7, 30.2, 49.9}) {
    EXPECT_NEAR(gamma_fn(x) / std::tgamma(x), 1.0, 1e-13) << x;
  }
}

TEST(BesselJ, Values) {
  EXPECT_EQ(bessel_j(0.0, 0.0), 1.0);
  const double z = 1.3;
  EXPECT_NEAR(bessel_j(0.5, z), std::sqrt(2 / (std::numbers::pi * z)) * std::sin(z), 1e-12);
  for (double nu : {0.0, 1.0, 2.5, 7.0}) {
    for (double x : {0.1, 2.0, 10.0, 35.0}) {
      EXPECT_NEAR(bessel_j(nu, x), std::cyl_bessel_j(nu, x), 1e-12) << nu << " " << x;
    }
  }
  // Negative integer order: J_{-n} = (-1)^n J_n.
  EXPECT_NEAR(bessel_j(-3.0, 2.2), -bessel_j(3.0, 2.2), 1e-15);
}

TEST(BesselJ, SumOfSquares) {
  double s = 0;
  for (int n = -40; n <= 40; ++n) s += bessel_j(double(n), 2.0) * bessel_j(double(n), 2.0);
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Summation, CompensatedSumKeepsSmallTerms) {
  CompensatedSum<double> acc;
  acc.add(C(1e16));
  for (int i = 0; i < 1000; ++i) acc.add(C(1.0));
  acc.add(C(-1e16));
  EXPECT_EQ(acc.value(), C(1000));
}

TEST(Quadrature, CosineMomentsVanish) {
  const QuadratureGrid grid(64, 512, 1e-14);
  for (int k = 1; k <= 20; ++k) {
    const auto v = integrate_raw<double>([k](double t) { return std::cos(k * t); }, 0.0, std::numbers::pi, grid);
    EXPECT_LT(std::abs(v.value), 1e-13) << k;
  }
}

TEST(Quadrature, NormalizationAndWeightlessCase) {
  const QuadratureGrid grid;
  // The integral carries the 1/(2 pi) over [0, pi]; the constant 2 integrates to 1.
  EXPECT_TRUE(near(integrate<double>([](double) { return 2.0; }, grid).value, 1.0, 1e-15));
  const QContext ctx(0.5, 1e-15);
  const auto v = integrate<double>(
      [&](double t) {
        const C e = std::polar(1.0, 2 * t);
        return (qpoch_infinite(e, ctx).value * qpoch_infinite(std::conj(e), ctx).value).real();
      },
      grid);
  EXPECT_NEAR(v.value.real(), 1 / euler_product(0.5, 0.5), 1e-12);
}

TEST(Quadrature, DoublingCap) {
  const QuadratureGrid grid(16, 32, 1e-15);
  EXPECT_TRUE(raises(ErrorKind::DoublingCapExceeded, [&] {
    integrate<double>([](double t) { return std::cos(60 * t) * std::exp(t); }, grid);
  }));
}
