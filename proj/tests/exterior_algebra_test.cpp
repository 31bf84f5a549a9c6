#include <gtest/gtest.h>

#include <random>

#include "abelfourier/exterior_algebra.hpp"
#include "abelfourier/io.hpp"
#include "oracles.hpp"

using namespace abelfourier;

namespace {

Multivector e(unsigned rank, std::vector<unsigned> gens, long c = 1) { return Multivector::monomial(rank, gens, Int(c)); }

}  // namespace

TEST(Wedge, BasicProducts) {
  EXPECT_EQ(wedge(e(4, {0}), e(4, {1})), e(4, {0, 1}));
  EXPECT_EQ(wedge(e(4, {1}), e(4, {0})), e(4, {0, 1}, -1));
  EXPECT_TRUE(wedge(e(4, {0}), e(4, {0})).is_zero());
  const Multivector w = e(4, {0, 1}) + e(4, {2, 3});
  EXPECT_EQ(wedge(w, w), e(4, {0, 1, 2, 3}, 2));
}

TEST(Wedge, SignAgreesWithBubbleSortOnRankSix) {
  for (Mask a = 0; a < 64; ++a)
    for (Mask b = 0; b < 64; ++b)
      if (!(a & b)) {
        ASSERT_EQ(wedge_sign(a, b), oracle::bubble_sign(a, b)) << a << " " << b;
      }
}

TEST(Wedge, AgreesWithNaiveProduct) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const unsigned n = 2 + t % 9;
    const auto x = oracle::random_class(rng, n), y = oracle::random_class(rng, n);
    EXPECT_EQ(wedge(x, y), oracle::naive_wedge(x, y));
  }
}

TEST(Wedge, AssociativeOnRandomTriples) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const unsigned n = 3 + t % 8;
    const auto x = oracle::random_class(rng, n), y = oracle::random_class(rng, n), z = oracle::random_class(rng, n);
    EXPECT_EQ(wedge(wedge(x, y), z), wedge(x, wedge(y, z)));
  }
}

TEST(Wedge, GradedCommutative) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    const unsigned n = 6;
    const unsigned p = t % 4, q = (t / 4) % 4;
    const auto x = oracle::random_homogeneous(rng, n, p), y = oracle::random_homogeneous(rng, n, q);
    const Int s = (p * q) % 2 ? Int(-1) : Int(1);
    EXPECT_EQ(wedge(x, y), s * wedge(y, x));
  }
}

TEST(Wedge, RankMismatchThrows) {
  try {
    wedge(e(2, {0}), e(4, {0}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::RankMismatch);
  }
}

TEST(Multivector, RejectsOversizedRankAndIndex) {
  EXPECT_THROW(Multivector(65), Error);
  EXPECT_THROW(e(3, {3}), Error);
  EXPECT_NO_THROW(Multivector::generator(64, 63));
}

TEST(GradedComponent, Examples) {
  const Multivector x = Multivector::one(2) + e(2, {0, 1});
  EXPECT_EQ(graded_component(x, 2), e(2, {0, 1}));
  EXPECT_TRUE(graded_component(e(2, {0}), 0).is_zero());
  EXPECT_EQ(x.homogeneous_degree(), std::nullopt);
  EXPECT_EQ(e(4, {1, 3}).homogeneous_degree(), 2u);
}

TEST(Integrate, TopCoefficientWithOrientation) {
  EXPECT_EQ(integrate(e(2, {0, 1}), Orientation{1}), 1);
  EXPECT_EQ(integrate(e(2, {0, 1}, 3), Orientation{-1}), -3);
  EXPECT_EQ(integrate(e(4, {0, 1}) + Multivector::one(4), Orientation{1}), 0);
}

TEST(PoincarePairing, UnimodularInEveryDegree) {
  for (unsigned n = 1; n <= 6; ++n)
    for (unsigned k = 0; k <= n; ++k) {
      const auto left = masks_of_degree(n, k), right = masks_of_degree(n, n - k);
      IntMatrix P(left.size(), right.size());
      for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
          P(i, j) = integrate(wedge(Multivector::monomial(n, left[i]), Multivector::monomial(n, right[j])),
                              Orientation{1});
      EXPECT_EQ(abs(determinant(P)), 1) << "n=" << n << " k=" << k;
    }
}

TEST(ApplyLinear, Examples) {
  EXPECT_EQ(apply_linear(IntMatrix::scalar(2, 2), e(2, {0, 1})), e(2, {0, 1}, 4));
  EXPECT_EQ(apply_linear(IntMatrix::scalar(2, -1), e(2, {0})), e(2, {0}, -1));
  const IntMatrix M{{3, 5}, {-2, 7}};
  EXPECT_EQ(apply_linear(M, e(2, {0, 1})), e(2, {0, 1}, 31));
  EXPECT_EQ(apply_linear(M, Multivector::one(2)), Multivector::one(2));
}

TEST(ApplyLinear, AgreesWithMinorsOracle) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    const unsigned n = 2 + t % 5;
    const IntMatrix L = oracle::random_matrix(rng, n, n, 3);
    const auto x = oracle::random_class(rng, n);
    EXPECT_EQ(apply_linear(L, x), oracle::exterior_power_by_minors(L, x));
  }
  // sparse fast path: signed permutation
  IntMatrix P(4, 4);
  P(1, 0) = -1;
  P(0, 1) = 2;
  P(3, 2) = 1;
  P(2, 3) = -3;
  const auto x = oracle::random_class(rng, 4, 10);
  EXPECT_EQ(apply_linear(P, x), oracle::exterior_power_by_minors(P, x));
}

TEST(ApplyLinear, FunctorialAndMultiplicative) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const unsigned n = 2 + t % 5;
    const IntMatrix M = oracle::random_matrix(rng, n, n, 3), N = oracle::random_matrix(rng, n, n, 3);
    const auto x = oracle::random_class(rng, n), y = oracle::random_class(rng, n);
    EXPECT_EQ(apply_linear(M * N, x), apply_linear(M, apply_linear(N, x)));
    EXPECT_EQ(apply_linear(M, wedge(x, y)), wedge(apply_linear(M, x), apply_linear(M, y)));
  }
}

TEST(ApplyLinear, RationalMatrixIntegrality) {
  RatMatrix half = RatMatrix::identity(2);
  half(0, 0) = make_rat(1, 2);
  EXPECT_EQ(apply_linear(half, e(2, {1}, 5)), e(2, {1}, 5));
  try {
    apply_linear(half, e(2, {0}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NonIntegralResult);
  }
}

TEST(DivideExact, Examples) {
  EXPECT_EQ(divide_exact(e(4, {0, 1, 2, 3}, 2), 2), e(4, {0, 1, 2, 3}));
  const Multivector theta = e(4, {0, 1}) + e(4, {2, 3});
  EXPECT_EQ(divide_exact(wedge(theta, theta), 2), e(4, {0, 1, 2, 3}));
  try {
    divide_exact(e(2, {0, 1}), 2);
    FAIL();
  } catch (const NonDivisibleError& err) {
    EXPECT_EQ(err.code(), ErrorCode::NonDivisible);
    EXPECT_EQ(err.mask(), Mask(3));
    EXPECT_EQ(err.coefficient(), 1);
    EXPECT_EQ(err.divisor(), 2);
  }
  const DivisionResult r = try_divide_exact(e(3, {0}, 4) + e(3, {1}, 3), 2);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.mask, Mask(2));
}

TEST(DivideExact, InvertsScaling) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    const auto x = oracle::random_class(rng, 6);
    const Int n = Int(static_cast<long>(rng() % 11)) - 5;
    if (n == 0) {
      EXPECT_THROW(divide_exact(x, n), Error);
      continue;
    }
    EXPECT_EQ(divide_exact(n * x, n), x);
  }
}

TEST(CupExponential, Examples) {
  EXPECT_EQ(cup_exponential(Multivector(4)), Multivector::one(4));
  const Multivector theta = e(2, {0, 1});
  EXPECT_EQ(cup_exponential(theta), Multivector::one(2) + theta);
  EXPECT_THROW(cup_exponential(Multivector::one(2)), Error);
  const Multivector w = e(4, {0, 1}) + e(4, {2, 3});
  EXPECT_EQ(divided_cup_power(w, 2), e(4, {0, 1, 2, 3}));
  EXPECT_EQ(cup_exponential(w), Multivector::one(4) + w + e(4, {0, 1, 2, 3}));
}

TEST(Coordinates, RoundTrip) {
  std::mt19937_64 rng(12);
  for (unsigned k = 0; k <= 6; ++k) {
    const auto x = oracle::random_homogeneous(rng, 6, k);
    EXPECT_EQ(from_coordinates(6, k, coordinates(x, k)), x);
  }
  EXPECT_EQ(masks_of_degree(4, 2).size(), 6u);
  EXPECT_EQ(masks_of_degree(4, 2).front(), Mask(3));
}

TEST(Serialization, RoundTripIsByteExact) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    Multivector x = oracle::random_class(rng, 1 + t % 10, 8);
    x.add_term(0, Int("123456789012345678901234567890"));
    const std::string text = to_json(x).dump();
    const Multivector y = multivector_from_json(json::parse(text));
    EXPECT_EQ(x, y);
    EXPECT_EQ(to_json(y).dump(), text);
  }
}

TEST(Serialization, RejectsMalformedClasses) {
  EXPECT_THROW(multivector_from_json(json::parse(R"({"rank":2,"terms":[{"generators":[1,0],"coeff":"1"}]})")),
               Error);
  EXPECT_THROW(multivector_from_json(json::parse(R"({"rank":2,"terms":[{"generators":[2],"coeff":"1"}]})")), Error);
  EXPECT_THROW(multivector_from_json(json::parse(
                   R"({"rank":2,"terms":[{"generators":[0],"coeff":"1"},{"generators":[0],"coeff":"2"}]})")),
               Error);
  EXPECT_THROW(multivector_from_json(json::parse(R"({"rank":2,"terms":[{"generators":[0],"coeff":"1.5"}]})")),
               Error);
  EXPECT_THROW(multivector_from_json(json::parse(R"({"terms":[]})")), Error);
}
