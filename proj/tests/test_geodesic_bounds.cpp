#include <cmath>
#include <random>

#include "doctest.h"
#include "freeprod/error.hpp"
#include "freeprod/geodesic_bounds.hpp"

using namespace freeprod;
using boost::multiprecision::cpp_int;

namespace {

MetricParams params(const char* L, const char* L1) { return {parse_rational(L), parse_rational(L1)}; }

Summand summand(Pi1Class c, std::int64_t order = 0, std::int64_t b1 = 0) { return {c, order, b1}; }

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("1e2") == Rational(100));
  CHECK(to_string(Rational(256, 75)) == "256/75");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
}

TEST_CASE("exponential bound") {
  const auto b = exponential_lower_bound(params("1", "1"), Rational(30));
  CHECK(b.r == 10);
  CHECK(b.value == Rational(1024, 300));
  CHECK(b.value == Rational(256, 75));
  CHECK_FALSE(b.below_range);

  CHECK(exponential_lower_bound(params("2", "1"), Rational(6)).value == Rational(2, 3 * 2));
  CHECK(exponential_lower_bound(params("1", "1"), Rational(3)).value == Rational(2, 3));
  CHECK(exponential_lower_bound(params("1", "1"), Rational(5)).r == 1);

  const auto low = exponential_lower_bound(params("1", "1"), Rational(2));
  CHECK(low.below_range);
  CHECK(low.value == 0);

  // Linear in L1.
  for (int t = 3; t <= 60; t += 7) {
    CHECK(exponential_lower_bound(params("4", "2"), Rational(t)).value ==
          2 * exponential_lower_bound(params("4", "1"), Rational(t)).value);
  }

  const auto curve = exponential_bound_curve(params("1", "1/2"), 5);
  REQUIRE(curve.size() == 5);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const std::int64_t r = static_cast<std::int64_t>(i) + 1;
    CHECK(curve[i].t == Rational(3 * r));
    CHECK(curve[i].bound == Rational(cpp_int(1) << r, 6 * r * r));
  }

  CHECK_THROWS_AS(exponential_lower_bound(params("1", "2"), Rational(10)), InvalidInput);
  CHECK_THROWS_AS(exponential_lower_bound(params("1", "0"), Rational(10)), InvalidInput);
  CHECK_THROWS_AS(exponential_lower_bound(params("1", "1"), Rational(0)), InvalidInput);
}

TEST_CASE("polynomial bound against an independent computation") {
  CHECK(polynomial_lower_bound(2, 4, Rational(1, 2), Rational(10)) == Rational(100, 8));
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> kd(1, 12), rd(1, 50), num(1, 1000), den(1, 97);
  for (int i = 0; i < 100; ++i) {
    const int k = kd(rng);
    const int r = rd(rng);
    const cpp_int ln = num(rng), ld = den(rng), tn = num(rng), td = den(rng);
    const auto got = polynomial_lower_bound(k, r, Rational(ln, ld), Rational(tn, td));
    // (ln / ld) / r * (tn / td)^k compared by cross-multiplication.
    const cpp_int pn = ln * boost::multiprecision::pow(tn, static_cast<unsigned>(k));
    const cpp_int pd = ld * r * boost::multiprecision::pow(td, static_cast<unsigned>(k));
    CHECK(boost::multiprecision::numerator(got) * pd == pn * boost::multiprecision::denominator(got));
    const double approx = (static_cast<double>(ln) / static_cast<double>(ld)) / r *
                          std::pow(static_cast<double>(tn) / static_cast<double>(td), k);
    CHECK(to_double(got) == doctest::Approx(approx).epsilon(1e-9));
  }
  CHECK_THROWS_AS(polynomial_lower_bound(0, 1, Rational(1), Rational(1)), InvalidInput);
  CHECK_THROWS_AS(polynomial_lower_bound(1, 0, Rational(1), Rational(1)), InvalidInput);
  CHECK_THROWS_AS(polynomial_lower_bound(1, 1, Rational(0), Rational(1)), InvalidInput);
}

TEST_CASE("three-manifold classifier") {
  ManifoldDescriptor rp3;
  rp3.summands = {summand(Pi1Class::Z2), summand(Pi1Class::Z2)};
  auto c = classify_three_manifold(rp3);
  CHECK(c.growth.kind == GrowthKind::PrimeLike);
  CHECK(c.rule() == rules::kRp3SumRp3);

  ManifoldDescriptor lens;
  lens.summands = {summand(Pi1Class::Z2), summand(Pi1Class::FiniteOther, 3)};
  c = classify_three_manifold(lens);
  CHECK(c.growth.kind == GrowthKind::Exponential);
  CHECK(c.rule() == rules::kNonPrimeExponential);

  ManifoldDescriptor three;
  three.summands = {summand(Pi1Class::Z2), summand(Pi1Class::Z2), summand(Pi1Class::Z2)};
  CHECK(classify_three_manifold(three).growth.kind == GrowthKind::Exponential);

  ManifoldDescriptor hyp;
  hyp.summands = {summand(Pi1Class::InfiniteOther)};
  c = classify_three_manifold(hyp);
  CHECK(c.growth.kind == GrowthKind::AllPolynomial);
  CHECK(c.rule() == rules::kPrimeNonSolvable);

  ManifoldDescriptor torus;
  torus.summands = {summand(Pi1Class::SolvableInfinite, 0, 3)};
  c = classify_three_manifold(torus);
  CHECK(c.growth == GrowthClass{GrowthKind::PolynomialAtLeast, 3});
  CHECK(c.rule() == rules::kFiniteCoverBetti);
  CHECK(c.trace.front().rule == rules::kPrimeSolvable);

  ManifoldDescriptor nil;
  nil.summands = {summand(Pi1Class::SolvableInfinite, 0, 1)};
  CHECK(classify_three_manifold(nil).growth.kind == GrowthKind::PrimeLike);

  ManifoldDescriptor sphere;
  sphere.summands = {summand(Pi1Class::Trivial)};
  CHECK(classify_three_manifold(sphere).rule() == rules::kFiniteGeneric);
  ManifoldDescriptor poincare;
  poincare.summands = {summand(Pi1Class::FiniteOther, 120), summand(Pi1Class::Trivial)};
  CHECK(classify_three_manifold(poincare).growth.kind == GrowthKind::GenericOnly);

  ManifoldDescriptor nonorient;
  nonorient.orientable = false;
  nonorient.summands = {summand(Pi1Class::SolvableInfinite, 0, 1)};
  CHECK(classify_three_manifold(nonorient).rule() == rules::kOrientationCover);

  ManifoldDescriptor empty;
  CHECK_THROWS_AS(classify_three_manifold(empty), InvalidInput);
  ManifoldDescriptor bad;
  bad.summands = {summand(Pi1Class::Z2, 0, 1)};
  CHECK_THROWS_AS(classify_three_manifold(bad), InvalidInput);
  bad.summands = {summand(Pi1Class::FiniteOther, 2)};
  CHECK_THROWS_AS(classify_three_manifold(bad), InvalidInput);
}

TEST_CASE("connected-sum classifier") {
  auto c = classify_connected_sum({summand(Pi1Class::Z2), summand(Pi1Class::Z2)});
  CHECK(c.growth.kind == GrowthKind::PrimeLike);
  CHECK(c.rule() == rules::kSumDihedral);

  c = classify_connected_sum({summand(Pi1Class::Z2), summand(Pi1Class::FiniteOther, 3)});
  CHECK(c.growth.kind == GrowthKind::Exponential);
  CHECK(c.rule() == rules::kSumBothNontrivial);

  c = classify_connected_sum({summand(Pi1Class::SolvableInfinite, 0, 1), summand(Pi1Class::Trivial)});
  CHECK(c.rule() == rules::kSumBetti);

  c = classify_connected_sum({summand(Pi1Class::FiniteOther, 5), summand(Pi1Class::Trivial)});
  CHECK(c.growth.kind == GrowthKind::InfinitelyMany);

  c = classify_connected_sum({summand(Pi1Class::InfiniteOther, 0, 0), summand(Pi1Class::Trivial)});
  CHECK(c.growth.kind == GrowthKind::Unknown);
  CHECK(c.rule() == rules::kSumRemainingCase);

  c = classify_connected_sum({summand(Pi1Class::Z2), summand(Pi1Class::Trivial), true});
  CHECK(c.rule() == rules::kSumSphere);
  CHECK(classify_connected_sum({summand(Pi1Class::Trivial), summand(Pi1Class::Trivial)}).rule() ==
        rules::kSumSimplyConnected);

  CHECK_THROWS_AS(classify_connected_sum({summand(Pi1Class::Trivial), summand(Pi1Class::Z2)}), InvalidInput);
  CHECK_THROWS_AS(classify_connected_sum({summand(Pi1Class::Z2), summand(Pi1Class::Z2), true}), InvalidInput);
  CHECK_THROWS_AS(classify_connected_sum({summand(Pi1Class::Trivial), summand(Pi1Class::Trivial), true}),
                  InvalidInput);
}

TEST_CASE("pi1 class names") {
  for (auto c : {Pi1Class::Trivial, Pi1Class::Z2, Pi1Class::FiniteOther, Pi1Class::SolvableInfinite,
                 Pi1Class::InfiniteOther})
    CHECK(parse_pi1_class(to_string(c)) == c);
  CHECK_THROWS_AS(parse_pi1_class("z3"), InvalidInput);
}
